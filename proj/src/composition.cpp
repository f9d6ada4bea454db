#include "sbseries/composition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace sbs {

namespace {

struct Cut {
  Tree theta;
  std::vector<Tree> omega;
};

// Every cut of t that keeps the root: each child is either pruned whole into
// omega or kept, recursively cut.
std::vector<Cut> rooted_cuts(const Tree& t) {
  struct Partial {
    std::vector<Tree> kept;
    std::vector<Tree> omega;
  };
  std::vector<Partial> partials{Partial{}};
  for (const auto& child : t.children()) {
    const std::vector<Cut> child_cuts = rooted_cuts(child);
    std::vector<Partial> next;
    next.reserve(partials.size() * (child_cuts.size() + 1));
    for (const auto& p : partials) {
      Partial pruned = p;
      pruned.omega.push_back(child);
      next.push_back(std::move(pruned));
      for (const auto& cut : child_cuts) {
        Partial kept = p;
        kept.kept.push_back(cut.theta);
        kept.omega.insert(kept.omega.end(), cut.omega.begin(), cut.omega.end());
        next.push_back(std::move(kept));
      }
    }
    partials = std::move(next);
  }
  std::vector<Cut> out;
  out.reserve(partials.size());
  for (auto& p : partials) out.push_back({Tree::node(t.color(), std::move(p.kept)), std::move(p.omega)});
  return out;
}

bool theta_less(const Tree& a, const Tree& b) {
  if (a.empty() != b.empty()) return a.empty();
  return a < b;
}

bool decomposition_less(const Decomposition& a, const Decomposition& b) {
  if (a.theta != b.theta) return theta_less(a.theta, b.theta);
  return std::lexicographical_compare(a.omega.begin(), a.omega.end(), b.omega.begin(), b.omega.end());
}

std::vector<Tree> sorted_canonical(std::vector<Tree> trees) {
  std::erase_if(trees, [](const Tree& t) { return t.empty(); });
  for (auto& t : trees) t = canonical(t);
  std::sort(trees.begin(), trees.end());
  return trees;
}

std::vector<Decomposition> compute_decompositions(const Tree& t) {
  std::map<std::pair<Tree, std::vector<Tree>>, std::int64_t> counts;
  counts[{Tree{}, {t}}] = 1;
  for (auto& cut : rooted_cuts(t)) {
    ++counts[{canonical(cut.theta), sorted_canonical(std::move(cut.omega))}];
  }
  std::vector<Decomposition> out;
  out.reserve(counts.size());
  for (auto& [key, gamma] : counts) out.push_back({key.first, key.second, gamma});
  std::sort(out.begin(), out.end(), decomposition_less);
  return out;
}

// ---------------------------------------------------------------------------
// Recursive gamma, from the set definition of ST and the multinomial formula.

using Multiset = std::vector<Tree>;

// All injective assignments of `need` slots to `have` slots.
void for_each_injection(std::size_t need, std::size_t have,
                        const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> pick;
  std::vector<bool> used(have, false);
  auto rec = [&](auto&& self) -> void {
    if (pick.size() == need) {
      visit(pick);
      return;
    }
    for (std::size_t j = 0; j < have; ++j) {
      if (used[j]) continue;
      used[j] = true;
      pick.push_back(j);
      self(self);
      pick.pop_back();
      used[j] = false;
    }
  };
  rec(rec);
}

// {omega : (theta, omega) in ST(t)}, following the recursive set definition.
const std::set<Multiset>& remainder_sets(const Tree& t, const Tree& theta) {
  thread_local std::map<std::pair<std::string, std::string>, std::set<Multiset>> memo;
  const auto key = std::make_pair(t.encoding(), theta.encoding());
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  std::set<Multiset> out;
  if (theta.empty()) {
    out.insert(Multiset{t});
  } else if (!t.empty() && t.color() == theta.color()) {
    const auto& kids = t.children();
    const auto& parts = theta.children();
    for_each_injection(parts.size(), kids.size(), [&](const std::vector<std::size_t>& pick) {
      std::vector<bool> matched(kids.size(), false);
      for (auto j : pick) matched[j] = true;
      Multiset base;
      for (std::size_t j = 0; j < kids.size(); ++j) {
        if (!matched[j]) base.push_back(kids[j]);
      }
      std::vector<Multiset> partial{base};
      for (std::size_t i = 0; i < parts.size() && !partial.empty(); ++i) {
        std::vector<Multiset> next;
        for (const auto& rem : remainder_sets(kids[pick[i]], parts[i])) {
          for (const auto& p : partial) {
            Multiset merged = p;
            merged.insert(merged.end(), rem.begin(), rem.end());
            next.push_back(std::move(merged));
          }
        }
        partial = std::move(next);
      }
      for (auto& p : partial) {
        std::sort(p.begin(), p.end());
        out.insert(std::move(p));
      }
    });
  }
  return memo.emplace(key, std::move(out)).first->second;
}

// Product of factorials of the multiplicities in a sorted range.
template <typename T>
std::int64_t multiplicity_factorials(const std::vector<T>& sorted) {
  std::int64_t f = 1;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    f *= factorial(static_cast<int>(j - i));
    i = j;
  }
  return f;
}

}  // namespace

std::vector<Decomposition> decompositions(const Tree& t) {
  if (t.empty()) throw std::invalid_argument("decompositions of the empty tree are not defined");
  thread_local std::map<std::string, std::vector<Decomposition>> memo;
  const Tree c = canonical(t);
  if (auto it = memo.find(c.encoding()); it != memo.end()) return it->second;
  return memo.emplace(c.encoding(), compute_decompositions(c)).first->second;
}

std::int64_t gamma_recursive(const Tree& t_in, const Tree& theta_in, const std::vector<Tree>& omega_in) {
  const Tree t = canonical(t_in);
  const Tree theta = canonical(theta_in);
  const Multiset omega = sorted_canonical(omega_in);
  auto invalid = [&]() {
    return std::invalid_argument("(" + theta.encoding() + ", {...}) is not a decomposition of " + t.encoding());
  };

  if (t.empty()) {
    if (theta.empty() && omega.empty()) return 1;
    throw invalid();
  }
  if (theta.empty()) {
    if (omega == Multiset{t}) return 1;
    throw invalid();
  }
  if (t.color() != theta.color()) throw invalid();

  const auto& kids = t.children();
  const auto& parts = theta.children();

  // A realization: which children of t carry which child of theta, with
  // which remainder, plus the children cut off directly at the root.
  using Triple = std::tuple<Tree, Tree, Multiset>;  // (theta_i, t_i, omega_i)
  std::set<std::pair<std::vector<Triple>, Multiset>> realizations;
  for_each_injection(parts.size(), kids.size(), [&](const std::vector<std::size_t>& pick) {
    std::vector<bool> matched(kids.size(), false);
    for (auto j : pick) matched[j] = true;
    Multiset direct;
    for (std::size_t j = 0; j < kids.size(); ++j) {
      if (!matched[j]) direct.push_back(kids[j]);
    }
    std::vector<Triple> triples(parts.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == parts.size()) {
        Multiset total = direct;
        for (const auto& tr : triples) {
          const auto& rem = std::get<2>(tr);
          total.insert(total.end(), rem.begin(), rem.end());
        }
        std::sort(total.begin(), total.end());
        if (total != omega) return;
        std::vector<Triple> key = triples;
        std::sort(key.begin(), key.end());
        realizations.emplace(std::move(key), direct);
        return;
      }
      for (const auto& rem : remainder_sets(kids[pick[i]], parts[i])) {
        triples[i] = Triple{parts[i], kids[pick[i]], rem};
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  });
  if (realizations.empty()) throw invalid();

  const std::int64_t big_r = multiplicity_factorials(kids);
  std::int64_t gamma = 0;
  for (const auto& [triples, direct] : realizations) {
    const std::int64_t denom = multiplicity_factorials(direct) * multiplicity_factorials(triples);
    if (big_r % denom != 0) throw std::logic_error("non-integral multinomial in gamma recursion");
    std::int64_t term = big_r / denom;
    for (const auto& [sub_theta, sub_t, sub_omega] : triples) term *= gamma_recursive(sub_t, sub_theta, sub_omega);
    gamma += term;
  }
  return gamma;
}

IntegralExpr compose(const CoeffMap& phi_x, const CoeffMap& phi_y, const Tree& t) {
  if (phi_x.empty_value() != 1) throw std::invalid_argument("compose requires phi_x(empty) = 1");
  if (phi_x.calculus() != phi_y.calculus()) throw std::invalid_argument("calculus mismatch in compose");
  if (t.empty()) return phi_y.at(Tree{});
  IntegralExpr sum(phi_x.calculus());
  for (const auto& d : decompositions(t)) {
    IntegralExpr term = phi_y.at(d.theta);
    if (term.is_zero()) continue;
    for (const auto& delta : d.omega) term = mul(term, phi_x.at(delta));
    sum += term * Rational(d.gamma);
  }
  return sum;
}

CoeffMap implicit_taylor_coeffs(const CoeffMap& phi_ex, const CoeffMap& phi_im, int m, HalfInt max_rho) {
  if (phi_ex.empty_value() != 1) throw std::invalid_argument("Phi_ex(empty) must be 1");
  if (phi_im.empty_value() != 0) throw std::invalid_argument("Phi_im(empty) must be 0");
  if (phi_ex.calculus() != phi_im.calculus()) throw std::invalid_argument("calculus mismatch between Phi_ex and Phi_im");

  std::vector<Tree> trees = enumerate_trees(m, max_rho);
  // Remainder trees always have fewer nodes than their parent.
  std::stable_sort(trees.begin(), trees.end(),
                   [](const Tree& a, const Tree& b) { return a.node_count() < b.node_count(); });

  CoeffMap phi(phi_ex.calculus(), Rational(1));
  for (const auto& t : trees) {
    IntegralExpr value = phi_ex.at(t);
    for (const auto& d : decompositions(t)) {
      if (d.theta.empty()) continue;
      IntegralExpr term = phi_im.at(d.theta);
      if (term.is_zero()) continue;
      for (const auto& delta : d.omega) term = mul(term, phi.at(delta));
      value += term * Rational(d.gamma);
    }
    phi.set(t, std::move(value));
  }
  return phi;
}

std::vector<Decomposition> correction_decompositions(const Tree& t) {
  const Tree c = canonical(t);
  std::vector<Decomposition> out;
  for (auto& d : decompositions(c)) {
    if (d.theta.empty() || d.theta == c) continue;
    out.push_back(std::move(d));
  }
  return out;
}

IntegralExpr correction_terms(const CoeffMap& phi_im, const Tree& t, const CoeffMap& phi) {
  IntegralExpr sum(phi.calculus());
  if (t.empty()) return sum;
  for (const auto& d : correction_decompositions(t)) {
    IntegralExpr term = phi_im.at(d.theta);
    if (term.is_zero()) continue;
    for (const auto& delta : d.omega) term = mul(term, phi.at(delta));
    sum += term * Rational(d.gamma);
  }
  return sum;
}

}  // namespace sbs
