#include "sbseries/bseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sbs {

void CoeffMap::set(const Tree& t, IntegralExpr e) {
  if (t.empty()) throw std::invalid_argument("the empty-tree value of a CoeffMap is fixed at construction");
  if (e.calculus() != calculus_) throw std::invalid_argument("calculus mismatch in CoeffMap::set");
  Tree key = canonical(t);
  if (e.is_zero()) {
    entries_.erase(key);
    return;
  }
  entries_.insert_or_assign(std::move(key), std::move(e));
}

IntegralExpr CoeffMap::at(const Tree& t) const {
  if (t.empty()) return IntegralExpr::constant(empty_value_, calculus_);
  auto it = entries_.find(canonical(t));
  return it == entries_.end() ? IntegralExpr(calculus_) : it->second;
}

bool CoeffMap::contains(const Tree& t) const {
  return !t.empty() && entries_.count(canonical(t)) > 0;
}

IntegralExpr exact_weight(const Tree& t, Calculus calculus) {
  if (t.empty()) return IntegralExpr::constant(Rational(1), calculus);
  thread_local std::map<std::string, IntegralExpr> memo[2];
  auto& cache = memo[calculus == Calculus::ito ? 0 : 1];
  const Tree c = canonical(t);
  if (auto it = cache.find(c.encoding()); it != cache.end()) return it->second;
  IntegralExpr product = IntegralExpr::constant(Rational(1), calculus);
  for (const auto& child : c.children()) product = mul(product, exact_weight(child, calculus));
  IntegralExpr result = integrate(product, c.color(), c.color());
  cache.emplace(c.encoding(), result);
  return result;
}

CoeffMap exact_weights(int m, HalfInt max_rho, Calculus calculus) {
  CoeffMap phi(calculus, Rational(1));
  for (const auto& t : enumerate_trees(m, max_rho)) phi.set(t, exact_weight(t, calculus));
  return phi;
}

FTree::FTree(std::vector<Tree> children) : children_(std::move(children)) {
  std::erase_if(children_, [](const Tree& t) { return t.empty(); });
  for (auto& c : children_) c = canonical(c);
  std::sort(children_.begin(), children_.end());
}

HalfInt FTree::rho() const {
  HalfInt r;
  for (const auto& c : children_) r += sbs::rho(c);
  return r;
}

std::string FTree::to_string() const {
  std::string s = "f[";
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (i) s += ',';
    s += children_[i].encoding();
  }
  return s + ']';
}

Rational beta_coeff(const FTree& u) {
  Rational b(1);
  const auto& kids = u.children();
  for (std::size_t i = 0; i < kids.size();) {
    std::size_t j = i;
    while (j < kids.size() && kids[j] == kids[i]) ++j;
    b /= Rational(factorial(static_cast<int>(j - i)));
    i = j;
  }
  for (const auto& c : kids) b *= alpha(c);
  return b;
}

IntegralExpr psi_weight(const CoeffMap& phi, const FTree& u) {
  IntegralExpr out = IntegralExpr::constant(Rational(1), phi.calculus());
  for (const auto& c : u.children()) out = mul(out, phi.at(c));
  return out;
}

std::vector<FTree> enumerate_ftrees(const std::vector<Tree>& pool, HalfInt max_rho) {
  std::vector<Tree> items;
  std::vector<HalfInt> orders;
  for (const auto& t : pool) {
    if (t.empty()) continue;
    items.push_back(canonical(t));
    orders.push_back(rho(t));
  }
  std::vector<FTree> out;
  std::vector<Tree> picked;
  auto choose = [&](auto&& self, std::size_t start, HalfInt budget) -> void {
    out.emplace_back(picked);
    for (std::size_t i = start; i < items.size(); ++i) {
      if (orders[i] > budget) continue;
      picked.push_back(items[i]);
      self(self, i, budget - orders[i]);
      picked.pop_back();
    }
  };
  choose(choose, 0, max_rho);
  return out;
}

Vector SdeProblem::g(int l, const Vector& x) const {
  if (l < 0 || l > noise_dim) throw std::invalid_argument("field index out of range");
  return field(l, x);
}

Vector SdeProblem::d(int l, const Vector& x, std::span<const Vector> dirs) const {
  if (dirs.empty()) return g(l, x);
  if (static_cast<int>(dirs.size()) > max_derivative_order) {
    throw std::domain_error("derivative of order " + std::to_string(dirs.size()) +
                            " exceeds the oracle's maximum " + std::to_string(max_derivative_order));
  }
  if (derivative) return derivative(l, x, dirs);
  return finite_difference_derivative(field, l, x, dirs);
}

namespace {

Vector nested_difference(const FieldFn& field, int l, const Vector& x, std::span<const Vector> dirs,
                         double step) {
  if (dirs.empty()) return field(l, x);
  const Vector& v = dirs.back();
  const double norm = v.lpNorm<Eigen::Infinity>();
  const auto rest = dirs.first(dirs.size() - 1);
  if (norm == 0.0) return Vector::Zero(nested_difference(field, l, x, rest, step).size());
  const Vector dx = v * (step / norm);
  const Vector plus = nested_difference(field, l, x + dx, rest, step);
  const Vector minus = nested_difference(field, l, x - dx, rest, step);
  return (plus - minus) * (norm / (2.0 * step));
}

}  // namespace

Vector finite_difference_derivative(const FieldFn& field, int l, const Vector& x,
                                    std::span<const Vector> dirs) {
  const double k = static_cast<double>(dirs.size());
  const double eps = std::numeric_limits<double>::epsilon();
  const double step = std::pow(eps, 1.0 / (k + 2.0)) * (1.0 + x.lpNorm<Eigen::Infinity>());
  return nested_difference(field, l, x, dirs, step);
}

Vector elementary_differential(const Tree& t, const SdeProblem& p, const Vector& x) {
  if (t.empty()) return x;
  if (t.color() > p.noise_dim) {
    throw std::invalid_argument("tree " + t.encoding() + " uses a color above the noise dimension");
  }
  std::vector<Vector> dirs;
  dirs.reserve(t.children().size());
  for (const auto& c : t.children()) dirs.push_back(elementary_differential(c, p, x));
  return p.d(t.color(), x, dirs);
}

Vector bseries_eval(const CoeffMap& phi, const SdeProblem& p, const Vector& x,
                    const WordSamples& samples, HalfInt max_rho) {
  Vector y = x * to_double(phi.empty_value());
  for (const auto& t : enumerate_trees(p.noise_dim, max_rho)) {
    const IntegralExpr w = phi.at(t);
    if (w.is_zero()) continue;
    const double weight = to_double(alpha(t)) * evaluate_numeric(w, samples);
    y += weight * elementary_differential(t, p, x);
  }
  return y;
}

}  // namespace sbs
