// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances and study sizes are fixed here and nowhere else.

#include "cli.hpp"
#include "sbseries/composition.hpp"
#include "sbseries/order_conditions.hpp"
#include "sbseries/problems.hpp"
#include "sbseries/sde_lab.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

using namespace sbs;

namespace {

// Convergence bands.
constexpr double kFamilyLo = 1.35, kFamilyHi = 1.65;
constexpr double kEulerLo = 0.35, kEulerHi = 0.65;
constexpr double kMilsteinLo = 0.85, kMilsteinHi = 1.15;
constexpr double kPlanarLo = 1.3, kPlanarHi = 1.7;
constexpr std::uint64_t kSeed = 42;

// Property thresholds.
constexpr double kSigmas = 5.0;
constexpr int kMomentDraws = 100000;
constexpr double kOneStepMinSlope = 1.7;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s [%d] %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
}

IntegralExpr I(std::initializer_list<int> w, Rational c = Rational(1)) {
  return IntegralExpr::word(Word(w), Calculus::ito, c);
}
IntegralExpr J(std::initializer_list<int> w, Rational c = Rational(1)) {
  return IntegralExpr::word(Word(w), Calculus::stratonovich, c);
}

std::vector<Tree> trees(std::initializer_list<const char*> enc) {
  std::vector<Tree> out;
  for (const char* e : enc) out.push_back(parse_tree(e));
  std::sort(out.begin(), out.end());
  return out;
}

using Term = std::tuple<std::string, std::vector<std::string>, std::int64_t>;

std::multiset<Term> as_terms(const std::vector<Decomposition>& ds) {
  std::multiset<Term> out;
  for (const auto& d : ds) {
    std::vector<std::string> om;
    for (const auto& t : d.omega) om.push_back(t.encoding());
    out.emplace(d.theta.encoding(), om, d.gamma);
  }
  return out;
}

Term term(const char* theta, std::initializer_list<const char*> omega, std::int64_t gamma) {
  std::vector<std::string> om;
  for (const auto& t : trees(omega)) om.push_back(t.encoding());
  return {parse_tree(theta).encoding(), om, gamma};
}

// ---------------------------------------------------------------------------

Outcome symbolic_example() {
  Outcome o;
  const Tree t = parse_tree("0[1,1[2,2]]");
  o.require(exact_weight(t, Calculus::stratonovich) == J({2, 2, 1, 1, 0}, 4) + J({2, 1, 2, 1, 0}, 2) + J({1, 2, 2, 1, 0}, 2),
            "Stratonovich expansion");
  const IntegralExpr ito = I({2, 2, 1, 1, 0}, 4) + I({2, 1, 2, 1, 0}, 2) + I({1, 2, 2, 1, 0}, 2) + I({0, 1, 1, 0}, 2) +
                           I({2, 2, 0, 0}, 2) + I({1, 0, 1, 0}) + I({0, 0, 0});
  const IntegralExpr got = exact_weight(t, Calculus::ito);
  o.require(got == ito, "Ito expansion: " + got.to_string());
  o.require(got.terms().size() == 7, "seven Ito words");
  o.require(alpha(t) == Rational(1, 2), "alpha");
  o.require(rho(t) == HalfInt::whole(3), "rho");
  return o;
}

Outcome gamma_fidelity() {
  Outcome o;
  auto gamma_of = [](const Tree& t, const Tree& theta, const std::vector<Tree>& omega) -> std::int64_t {
    for (const auto& d : decompositions(t)) {
      if (d.theta == theta && d.omega == omega) return d.gamma;
    }
    return -1;
  };
  const Tree bush = parse_tree("1[1,1]");
  const Tree big = parse_tree("1[1,1,1,1[1,1]]");
  const std::vector<std::tuple<Tree, Tree, std::vector<Tree>, std::int64_t>> printed{
      {bush, Tree::leaf(1), trees({"1", "1"}), 1},
      {bush, parse_tree("1[1]"), trees({"1"}), 2},
      {big, parse_tree("1[1,1]"), trees({"1", "1", "1", "1"}), 3},
      {big, parse_tree("1[1[1]]"), trees({"1", "1", "1", "1"}), 2},
  };
  for (const auto& [t, theta, omega, g] : printed) {
    o.require(gamma_of(t, theta, omega) == g, "cut count for " + theta.encoding() + " in " + t.encoding());
    o.require(gamma_recursive(t, theta, omega) == g, "recursion for " + theta.encoding() + " in " + t.encoding());
  }
  std::size_t checked = 0;
  for (int m = 0; m <= 2; ++m) {
    for (const auto& t : enumerate_trees_by_nodes(m, 5)) {
      for (const auto& d : decompositions(t)) {
        ++checked;
        if (gamma_recursive(t, d.theta, d.omega) != d.gamma) {
          o.require(false, "mismatch at " + t.encoding() + " / " + d.theta.encoding());
        }
      }
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " decompositions cross-checked";
  return o;
}

Outcome composition_examples() {
  Outcome o;
  // j = 1, l = 2
  const Tree first = parse_tree("1[1,2,2]");
  const std::multiset<Term> first_expected{
      term("()", {"1[1,2,2]"}, 1), term("1", {"2", "2", "1"}, 1), term("1[2]", {"2", "1"}, 2),
      term("1[1]", {"2", "2"}, 1), term("1[1,2]", {"2"}, 2),       term("1[2,2]", {"1"}, 1),
      term("1[1,2,2]", {}, 1)};
  o.require(as_terms(decompositions(first)) == first_expected, "first expansion");

  // j = 1, k = 2, l = 3; the last term is phi_y of the whole tree.
  const Tree second = parse_tree("1[2[3]]");
  const std::multiset<Term> second_expected{term("()", {"1[2[3]]"}, 1), term("1", {"2[3]"}, 1),
                                            term("1[2]", {"3"}, 1), term("1[2[3]]", {}, 1)};
  o.require(as_terms(decompositions(second)) == second_expected, "second expansion");

  // compose() on generic coefficient maps reproduces the expansion sums.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> draw(1, 97);
  CoeffMap phi_x(Calculus::ito, Rational(1)), phi_y(Calculus::ito, Rational(1));
  std::map<std::string, Rational> vx, vy;
  vx["()"] = vy["()"] = Rational(1);
  for (const auto& t : enumerate_trees_by_nodes(3, 4)) {
    const Rational a(draw(rng), draw(rng)), b(draw(rng), draw(rng));
    phi_x.set(t, IntegralExpr::constant(a, Calculus::ito));
    phi_y.set(t, IntegralExpr::constant(b, Calculus::ito));
    vx[t.encoding()] = a;
    vy[t.encoding()] = b;
  }
  for (const auto& [t, expected] : {std::pair{first, first_expected}, std::pair{second, second_expected}}) {
    Rational sum(0);
    for (const auto& [theta, omega, g] : expected) {
      Rational prod = vy[theta] * Rational(g);
      for (const auto& d : omega) prod *= vx[d];
      sum += prod;
    }
    o.require(compose(phi_x, phi_y, t) == IntegralExpr::constant(sum, Calculus::ito), "compose() on " + t.encoding());
  }
  return o;
}

Outcome correction_table() {
  Outcome o;
  std::ostringstream out, err;
  if (cli::run_cli({"table", "--max-nodes", "4", "--format", "json"}, out, err) != cli::kOk) {
    o.require(false, "table command failed: " + err.str());
    return o;
  }
  const auto doc = nlohmann::json::parse(out.str());
  std::map<std::string, std::multiset<std::string>> got;
  for (const auto& row : doc["rows"]) {
    auto& terms = got[row["label"].get<std::string>()];
    for (const auto& t : row["terms"]) terms.insert(t["text"].get<std::string>());
  }
  using Row = std::pair<std::string, std::multiset<std::string>>;
  const std::vector<Row> printed{
      {"i[j]", {"Phi_im(i) Phi(j)"}},
      {"i[j,k]", {"Phi_im(i) Phi(j) Phi(k)", "Phi_im(i[j]) Phi(k)", "Phi_im(i[k]) Phi(j)"}},
      {"i[j[k]]", {"Phi_im(i) Phi(j[k])", "Phi_im(i[j]) Phi(k)"}},
      {"i[j,k,l]",
       {"Phi_im(i) Phi(j) Phi(k) Phi(l)", "Phi_im(i[j]) Phi(k) Phi(l)", "Phi_im(i[k]) Phi(j) Phi(l)",
        "Phi_im(i[l]) Phi(j) Phi(k)", "Phi_im(i[j,k]) Phi(l)", "Phi_im(i[j,l]) Phi(k)", "Phi_im(i[k,l]) Phi(j)"}},
      {"i[j,k[l]]",
       {"Phi_im(i) Phi(j) Phi(k[l])", "Phi_im(i[j]) Phi(k[l])", "Phi_im(i[k]) Phi(j) Phi(l)",
        "Phi_im(i[j,k]) Phi(l)"}},
      {"i[j[k,l]]",
       {"Phi_im(i) Phi(j[k,l])", "Phi_im(i[j]) Phi(k) Phi(l)", "Phi_im(i[j[k]]) Phi(l)", "Phi_im(i[j[l]]) Phi(k)"}},
      {"i[j[k[l]]]", {"Phi_im(i) Phi(j[k[l]])", "Phi_im(i[j]) Phi(k[l])", "Phi_im(i[j[k]]) Phi(l)"}},
  };
  // The printed row for i[j,k[l]] leaves out the cut that keeps the k[l]
  // branch with the root; it is a genuine decomposition with gamma 1.
  const std::string missing_row = "i[j,k[l]]";
  const std::string missing_term = "Phi_im(i[k[l]]) Phi(j)";
  o.require(gamma_recursive(parse_tree("1[1,1[1]]"), parse_tree("1[1[1]]"), trees({"1"})) == 1,
            "extra decomposition of i[j,k[l]]");

  o.require(got.size() == 8 && got.count("i") && got["i"].empty(), "eight rows with R(i) = 0");
  for (const auto& [label, terms] : printed) {
    auto expected = terms;
    if (label == missing_row) expected.insert(missing_term);
    if (got[label] != expected) o.require(false, "row " + label);
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("7 nontrivial rows; i[j,k[l]] also carries ") + missing_term;
  return o;
}

Outcome order_conditions() {
  Outcome o;
  const Rational half(1, 2);
  const HalfInt p15 = HalfInt::from_twice(3);
  o.require(check_strong(family_spec({half, half, half, half, half, half}), p15).pass(), "family(1/2) at 3/2");
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 9);
  FamilyCoefficients generic{};
  for (int trial = 0; trial < 5; ++trial) {
    FamilyCoefficients c;
    for (auto& x : c) x = Rational(num(rng), den(rng));
    if (trial == 0) generic = c;
    o.require(check_strong(family_spec(c), p15).pass(), "random tuple " + std::to_string(trial) + " at 3/2");
  }
  o.require(!check_strong(family_spec(generic), HalfInt::whole(2)).pass(), "generic tuple fails at 2");

  const MethodSpec em = euler_maruyama_spec(1);
  o.require(check_strong(em, kHalf).pass(), "Euler at 1/2");
  const auto em1 = check_strong(em, HalfInt::whole(1));
  bool named = false;
  for (const auto& v : em1.failures()) {
    if (v.subject == "1[1]" && std::find(v.offending.begin(), v.offending.end(), "I(1,1)") != v.offending.end()) {
      named = true;
    }
  }
  o.require(!em1.pass() && named, "Euler fails at 1 with I(1,1) on 1[1]");
  o.require(check_strong(milstein_spec(), HalfInt::whole(1)).pass(), "Milstein at 1");
  o.require(!check_strong(milstein_spec(), p15).pass(), "Milstein fails at 3/2");
  return o;
}

lab::StudyResult study(const std::string& scheme, const SdeProblem& p, int level_max, std::size_t paths) {
  lab::StudyConfig cfg;
  cfg.scheme = lab::scheme_by_name(scheme, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
  cfg.level_min = 4;
  cfg.level_max = level_max;
  cfg.paths = paths;
  cfg.seed = kSeed;
  return lab::strong_error_study(cfg, p, p.initial_state);
}

std::string fmt(const char* name, double slope) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s %.3f", name, slope);
  return buf;
}

Outcome convergence_sinh() {
  Outcome o;
  const SdeProblem p = problems::sinh_problem();
  const double family = study("family", p, 9, 500).slope;
  const double euler = study("euler", p, 9, 500).slope;
  const double milstein = study("milstein", p, 9, 500).slope;
  o.require(family >= kFamilyLo && family <= kFamilyHi, "family slope out of band");
  o.require(euler >= kEulerLo && euler <= kEulerHi, "euler slope out of band");
  o.require(milstein >= kMilsteinLo && milstein <= kMilsteinHi, "milstein slope out of band");
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("family", family) + ", " + fmt("euler", euler) + ", " +
              fmt("milstein", milstein);
  return o;
}

Outcome convergence_planar() {
  Outcome o;
  const auto r = study("family", problems::planar_problem(), 8, 300);
  o.require(r.slope >= kPlanarLo && r.slope <= kPlanarHi, "slope out of band");
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("family", r.slope) + " against " + r.reference;
  return o;
}

// --- property suites ---------------------------------------------------------

IntegralExpr random_expr(std::mt19937& rng, Calculus calc) {
  std::uniform_int_distribution<int> nterms(1, 3), len(0, 3), letter(0, 2), coeff(-4, 4);
  IntegralExpr e(calc);
  for (int i = nterms(rng); i > 0; --i) {
    Word w(len(rng));
    for (auto& l : w) l = letter(rng);
    e.add_term(w, Rational(coeff(rng), 1 + i % 2));
  }
  return e;
}

bool algebra_laws() {
  std::mt19937 rng(77);
  for (Calculus calc : {Calculus::ito, Calculus::stratonovich}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_expr(rng, calc), b = random_expr(rng, calc), c = random_expr(rng, calc);
      if (!(a * b == b * a) || !((a * b) * c == a * (b * c)) || !(a * (b + c) == a * b + a * c)) return false;
      for (const auto& [u, cu] : a.terms()) {
        for (const auto& [v, cv] : b.terms()) {
          const auto p = IntegralExpr::word(u, calc) * IntegralExpr::word(v, calc);
          for (const auto& [w, cw] : p.terms()) {
            if (word_order(w) != word_order(u) + word_order(v)) return false;
          }
        }
      }
    }
  }
  return true;
}

bool within(const std::vector<double>& xs, double exact) {
  double s = 0, s2 = 0;
  for (double x : xs) {
    s += x;
    s2 += x * x;
  }
  const double n = static_cast<double>(xs.size());
  const double mean = s / n;
  return std::abs(mean - exact) <= kSigmas * std::sqrt((s2 / n - mean * mean) / n);
}

bool sampler_moments() {
  const double h = 0.01;
  std::mt19937_64 rng(kSeed);
  std::vector<double> zz, wz;
  for (int i = 0; i < kMomentDraws; ++i) {
    const auto inc = lab::sample_increments(h, rng);
    zz.push_back(inc.dZ * inc.dZ);
    wz.push_back(inc.dW * inc.dZ);
  }
  return within(zz, h * h * h / 3) && within(wz, h * h / 2);
}

bool pathwise_identities() {
  std::mt19937_64 rng(5);
  for (int draw = 0; draw < 100; ++draw) {
    const double h = std::ldexp(1.0, -(draw % 5));
    const auto s = lab::word_samples(lab::sample_increments(h, rng), h);
    for (const auto& [u, su] : s) {
      for (const auto& [v, sv] : s) {
        const auto p = IntegralExpr::word(u, Calculus::ito) * IntegralExpr::word(v, Calculus::ito);
        bool covered = true;
        for (const auto& [w, c] : p.terms()) covered = covered && s.count(w);
        if (covered && std::abs(evaluate_numeric(p, s) - su * sv) > 1e-12 * (1 + std::abs(su * sv))) return false;
      }
    }
  }
  return true;
}

bool aggregation_law() {
  for (std::uint64_t path = 0; path < 20; ++path) {
    const lab::PathPlan plan(kSeed, path, 8);
    for (int level = 0; level < 8; ++level) {
      const auto& coarse = plan.increments(level);
      const auto& fine = plan.increments(level + 1);
      const double h = plan.step(level + 1);
      for (std::size_t i = 0; i < coarse.size(); ++i) {
        const auto& a = fine[2 * i];
        const auto& b = fine[2 * i + 1];
        if (std::abs(coarse[i].dZ - (a.dZ + b.dZ + h * a.dW)) > 1e-13) return false;
        if (std::abs(coarse[i].dW - (a.dW + b.dW)) > 1e-13) return false;
      }
    }
  }
  return true;
}

void graft_all(const Tree& theta, const std::vector<Tree>& omega, std::size_t next, std::vector<std::size_t>& where,
               std::set<std::string>& out) {
  if (next == omega.size()) {
    std::size_t counter = 0;
    std::function<Tree(const Tree&)> rebuild = [&](const Tree& t) {
      const std::size_t me = counter++;
      std::vector<Tree> kids;
      for (const auto& c : t.children()) kids.push_back(rebuild(c));
      for (std::size_t i = 0; i < omega.size(); ++i) {
        if (where[i] == me) kids.push_back(omega[i]);
      }
      return Tree::node(t.color(), std::move(kids));
    };
    out.insert(canonical(rebuild(theta)).encoding());
    return;
  }
  for (std::size_t v = 0; v < theta.node_count(); ++v) {
    where[next] = v;
    graft_all(theta, omega, next + 1, where, out);
  }
}

void multisets(const std::vector<Tree>& pool, std::size_t start, std::size_t budget, std::vector<Tree>& cur,
               std::vector<std::vector<Tree>>& out) {
  out.push_back(cur);
  for (std::size_t i = start; i < pool.size(); ++i) {
    if (pool[i].node_count() > budget) continue;
    cur.push_back(pool[i]);
    multisets(pool, i, budget - pool[i].node_count(), cur, out);
    cur.pop_back();
  }
}

std::string omega_key(const std::vector<Tree>& omega) {
  std::vector<std::string> enc;
  for (const auto& t : omega) enc.push_back(t.encoding());
  std::sort(enc.begin(), enc.end());
  std::string s;
  for (const auto& e : enc) s += e + ";";
  return s;
}

// Summing over trees then their decompositions visits the same (tau, theta,
// omega) triples as summing over theta then every grafting of omega onto it.
bool switched_sums() {
  const std::size_t max_nodes = 4;
  for (int m : {0, 1}) {
    const auto pool = enumerate_trees_by_nodes(m, max_nodes);
    std::set<std::tuple<std::string, std::string, std::string>> by_tau, by_theta;
    for (const auto& t : pool) {
      for (const auto& d : decompositions(t)) by_tau.emplace(t.encoding(), d.theta.encoding(), omega_key(d.omega));
      by_theta.emplace(t.encoding(), Tree().encoding(), omega_key({t}));
    }
    for (const auto& theta : pool) {
      std::vector<std::vector<Tree>> omegas;
      std::vector<Tree> cur;
      multisets(pool, 0, max_nodes - theta.node_count(), cur, omegas);
      for (const auto& omega : omegas) {
        std::set<std::string> grafted;
        std::vector<std::size_t> where(omega.size());
        graft_all(theta, omega, 0, where, grafted);
        for (const auto& tau : grafted) by_theta.emplace(tau, theta.encoding(), omega_key(omega));
      }
    }
    if (by_tau != by_theta) return false;
  }
  return true;
}

std::int64_t tree_factorial(const Tree& t) {
  std::int64_t f = static_cast<std::int64_t>(t.node_count());
  for (const auto& c : t.children()) f *= tree_factorial(c);
  return f;
}

// Two deterministic flow steps of size h compose to one of size 2h.
bool deterministic_composition() {
  const CoeffMap phi = exact_weights(0, HalfInt::whole(5), Calculus::ito);
  for (const auto& t : enumerate_trees(0, HalfInt::whole(5))) {
    const auto n = static_cast<int>(t.node_count());
    const HPolynomial expected{{n, Rational(std::int64_t{1} << n, tree_factorial(t))}};
    if (expectation_ito(compose(phi, phi, t)) != expected) return false;
    if (compose(phi, phi, t).terms().size() != 1) return false;
  }
  return true;
}

double one_step_slope() {
  const SdeProblem p = problems::sinh_problem();
  const lab::FamilyParams c{0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  const Rational half(1, 2);
  const MethodSpec spec = family_spec({half, half, half, half, half, half});
  const HalfInt bound = HalfInt::from_twice(3);
  const CoeffMap full = implicit_taylor_coeffs(spec.phi_ex, spec.phi_im, 1, bound);
  CoeffMap phi(Calculus::ito, Rational(1));
  for (const auto& [t, e] : full.entries()) phi.set(t, truncate(e, bound));
  const Vector x = Vector::Constant(1, 0.4);
  const std::vector<double> hs{0.02, 0.005};
  std::vector<double> diffs;
  for (double h : hs) {
    std::mt19937_64 rng(21);
    double total = 0;
    const int n = 400;
    for (int i = 0; i < n; ++i) {
      const auto inc = lab::sample_increments(h, rng);
      total += std::abs(lab::family_step(c, p, x, inc, h)(0) -
                        bseries_eval(phi, p, x, lab::word_samples(inc, h), bound)(0));
    }
    diffs.push_back(total / n);
  }
  return std::log(diffs[0] / diffs[1]) / std::log(hs[0] / hs[1]);
}

Outcome property_suites() {
  Outcome o;
  o.require(algebra_laws(), "algebra laws");
  o.require(sampler_moments(), "sampler moments");
  o.require(pathwise_identities(), "pathwise sampler identities");
  o.require(aggregation_law(), "aggregation law");
  o.require(switched_sums(), "switched composition sums");
  o.require(deterministic_composition(), "deterministic composition");
  const double slope = one_step_slope();
  o.require(slope >= kOneStepMinSlope, "one-step agreement");
  char buf[64];
  std::snprintf(buf, sizeof buf, "one-step difference slope %.2f", slope);
  o.detail += (o.detail.empty() ? "" : "; ") + std::string(buf);
  return o;
}

}  // namespace

int main() {
  report(1, "exact weight of the worked example", symbolic_example);
  report(2, "subtree multiplicities", gamma_fidelity);
  report(3, "composition expansions", composition_examples);
  report(4, "correction table up to four nodes", correction_table);
  report(5, "order conditions", order_conditions);
  report(6, "strong convergence on the sinh problem", convergence_sinh);
  report(7, "strong convergence on the planar problem", convergence_planar);
  report(8, "property suites", property_suites);
  return failures == 0 ? 0 : 1;
}
