#pragma once

#include "sbseries/bseries.hpp"

#include <cstdint>
#include <vector>

namespace sbs {

/// One element (theta, omega) of ST(tau) with its multiplicity gamma.
/// theta shares the root of tau (or is empty); omega is the sorted multiset
/// of trees cut off. The full tree appears as (tau, {}).
struct Decomposition {
  Tree theta;
  std::vector<Tree> omega;
  std::int64_t gamma = 1;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// All distinct (theta, omega) of ST(t), sorted by theta (empty first), then
/// omega. gamma counts the rooted cuts of one fixed ordered representative
/// of t that produce the pair. Throws std::invalid_argument for the empty tree.
std::vector<Decomposition> decompositions(const Tree& t);

/// gamma(t, theta, omega) through the multinomial recursion over the root's
/// children, summed over every distinct way the pair can be realized. Throws
/// std::invalid_argument when (theta, omega) is not in ST(t).
std::int64_t gamma_recursive(const Tree& t, const Tree& theta, const std::vector<Tree>& omega);

/// (phi_x o phi_y)(t) = sum gamma * phi_y(theta) * prod_{d in omega} phi_x(d).
/// Requires phi_x(empty) = 1.
IntegralExpr compose(const CoeffMap& phi_x, const CoeffMap& phi_y, const Tree& t);

/// Phi with Phi(empty) = 1 and Phi(t) = Phi_ex(t) + (Phi o Phi_im)(t) on all
/// trees with colors <= m and rho <= max_rho. Requires Phi_ex(empty) = 1 and
/// Phi_im(empty) = 0.
CoeffMap implicit_taylor_coeffs(const CoeffMap& phi_ex, const CoeffMap& phi_im, int m, HalfInt max_rho);

/// Decompositions of t with theta neither empty nor t itself: the terms of
/// Phi(t) - Phi_ex(t) - Phi_im(t).
std::vector<Decomposition> correction_decompositions(const Tree& t);

/// R(t) = sum over correction_decompositions(t) of gamma Phi_im(theta) prod Phi(d).
IntegralExpr correction_terms(const CoeffMap& phi_im, const Tree& t, const CoeffMap& phi);

}  // namespace sbs
