#pragma once

#include <Eigen/Dense>

#include "garchs/model.hpp"

namespace garchs {

/// Bijection between valid GarchSParams and an unconstrained 7-vector u:
///   mu     = tanh(u0)
///   alpha0 = exp(u1)
///   alpha1 = p * w,        p = logistic(u2) (persistence alpha1 + alpha2)
///   alpha2 = p * (1 - w),  w = logistic(u3) (share alpha1 / (alpha1 + alpha2))
///   beta0  = u4
///   beta1  = u5
///   beta2  = tanh(u6)
/// Every u maps to parameters satisfying the model invariants; the inverse
/// requires alpha1 > 0 and alpha2 > 0 (interior points).
Eigen::VectorXd to_unconstrained(const GarchSParams& params);
GarchSParams to_constrained(const Eigen::VectorXd& u);

/// Jacobian d(constrained)/d(unconstrained), 7x7, rows in GarchSParams
/// field order. Used by the delta method to move standard errors into the
/// constrained space.
Eigen::MatrixXd constrained_jacobian(const Eigen::VectorXd& u);

} // namespace garchs
