#pragma once

#include "sbseries/bseries.hpp"

#include <string>
#include <vector>

namespace sbs::problems {

/// dX = (X/2 + sqrt(X^2+1)) dt + sqrt(X^2+1) dW, X(0) = 0.
/// Exact solution X(t) = sinh(t + W(t)). Analytic derivatives to order 3.
SdeProblem sinh_problem();

/// Two-dimensional problem with drift
///   (X1/2 + sqrt(X1^2 + X2^2 + 1), X1/2 + sqrt(X2^2 + 1))
/// and diffusion (cos X1, sin X2), X(0) = 0. No closed-form solution.
SdeProblem planar_problem();

/// Scalar dX = a X dt + b X dW with exact solution
/// x0 exp((a - b^2/2) t + b W(t)).
SdeProblem linear_problem(double a, double b);

/// "sinh", "planar" ("2d" is accepted as an alias).
SdeProblem by_name(const std::string& name);
std::vector<std::string> names();

}  // namespace sbs::problems
