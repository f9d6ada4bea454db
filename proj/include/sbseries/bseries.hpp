#pragma once

#include "sbseries/integral_algebra.hpp"
#include "sbseries/tree.hpp"

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sbs {

/// Weight function on trees: canonical tree -> IntegralExpr. The value on the
/// empty tree is a fixed rational (1 for exact/method maps, 0 for implicit
/// parts); absent trees map to zero.
class CoeffMap {
 public:
  explicit CoeffMap(Calculus calculus = Calculus::ito, Rational empty_value = Rational(1))
      : calculus_(calculus), empty_value_(empty_value) {}

  Calculus calculus() const noexcept { return calculus_; }
  const Rational& empty_value() const noexcept { return empty_value_; }

  /// Stores e under canonical(t); a zero expression erases the entry.
  void set(const Tree& t, IntegralExpr e);
  IntegralExpr at(const Tree& t) const;
  bool contains(const Tree& t) const;

  const std::map<Tree, IntegralExpr>& entries() const noexcept { return entries_; }

 private:
  Calculus calculus_;
  Rational empty_value_;
  std::map<Tree, IntegralExpr> entries_;
};

/// Weight of the exact solution: phi(empty) = 1, phi(leaf_l) = I(l),
/// phi([t_1..t_k]_l) = int prod phi(t_j) dW_l. Memoized per thread.
IntegralExpr exact_weight(const Tree& t, Calculus calculus);

/// exact_weight on every tree with colors <= m and rho <= max_rho.
CoeffMap exact_weights(int m, HalfInt max_rho, Calculus calculus);

/// Tree with root labeled f: sorted multiset of ordinary trees.
class FTree {
 public:
  FTree() = default;
  explicit FTree(std::vector<Tree> children);

  const std::vector<Tree>& children() const noexcept { return children_; }
  HalfInt rho() const;
  /// "f[]" for [empty]_f, otherwise "f[1,0[1]]".
  std::string to_string() const;

  friend bool operator==(const FTree&, const FTree&) = default;

 private:
  std::vector<Tree> children_;
};

/// 1 / (r_1! ... r_q!) * prod alpha(child), r_i counting equal children.
Rational beta_coeff(const FTree& u);

/// Product of phi over the children; 1 for [empty]_f.
IntegralExpr psi_weight(const CoeffMap& phi, const FTree& u);

/// Every multiset drawn from the duplicate-free `pool` (the empty multiset
/// included) whose total order is at most max_rho.
std::vector<FTree> enumerate_ftrees(const std::vector<Tree>& pool, HalfInt max_rho);

using Vector = Eigen::VectorXd;

/// Drift (l = 0) and diffusion (l >= 1) fields g_l(x).
using FieldFn = std::function<Vector(int l, const Vector& x)>;
/// Directional derivative D^k g_l(x)[v_1, ..., v_k], k = dirs.size() >= 1.
using DerivativeFn = std::function<Vector(int l, const Vector& x, std::span<const Vector> dirs)>;
/// Exact solution at time t given the Wiener path values W(t), one per channel.
using ExactSolutionFn = std::function<Vector(double t, const Vector& x0, const Vector& w)>;

/// dX = sum_{l=0}^m g_l(X) * dW_l with W_0(t) = t.
struct SdeProblem {
  std::string name;
  int dim = 1;
  int noise_dim = 1;
  FieldFn field;
  /// Optional analytic oracle; without one, derivatives come from nested
  /// central differences.
  DerivativeFn derivative;
  int max_derivative_order = 3;
  ExactSolutionFn exact;
  Vector initial_state;

  Vector g(int l, const Vector& x) const;
  Vector d(int l, const Vector& x, std::span<const Vector> dirs) const;
};

/// Nested central differences, one level per direction. The step for the
/// k-th level is eps^(1/(k+2)) (1 + |x|_inf) / |v|_inf.
Vector finite_difference_derivative(const FieldFn& field, int l, const Vector& x,
                                    std::span<const Vector> dirs);

/// F(empty)(x) = x, F(leaf_l)(x) = g_l(x),
/// F([t_1..t_k]_l)(x) = D^k g_l(x)[F(t_1)(x), ..., F(t_k)(x)].
Vector elementary_differential(const Tree& t, const SdeProblem& p, const Vector& x);

/// x * phi(empty) + sum_{t : rho(t) <= max_rho} alpha(t) phi(t)(samples) F(t)(x).
Vector bseries_eval(const CoeffMap& phi, const SdeProblem& p, const Vector& x,
                    const WordSamples& samples, HalfInt max_rho);

}  // namespace sbs
