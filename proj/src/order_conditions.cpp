#include "sbseries/order_conditions.hpp"

#include "sbseries/composition.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace sbs {

namespace {

IntegralExpr ito(std::initializer_list<int> letters, const Rational& coeff = Rational(1)) {
  return IntegralExpr::word(Word(letters), Calculus::ito, coeff);
}

void set_entry(CoeffMap& map, const char* tree, IntegralExpr e) { map.set(parse_tree(tree), std::move(e)); }

std::vector<std::string> offending_words(const IntegralExpr& e) {
  std::vector<std::string> out;
  for (const auto& [w, c] : e.terms()) out.push_back(format_word(w, e.calculus()));
  return out;
}

// Mean residuals must vanish for every power h^k with k < p + 1.
int mean_power_limit(HalfInt p) { return (p + kHalf).floor(); }

}  // namespace

void validate(const MethodSpec& spec) {
  if (spec.phi_ex.empty_value() != 1) throw std::invalid_argument(spec.name + ": Phi_ex(empty) must be 1");
  if (spec.phi_im.empty_value() != 0) throw std::invalid_argument(spec.name + ": Phi_im(empty) must be 0");
  if (spec.phi_ex.calculus() != spec.calculus || spec.phi_im.calculus() != spec.calculus) {
    throw std::invalid_argument(spec.name + ": coefficient maps disagree on the calculus");
  }
  for (const CoeffMap* map : {&spec.phi_ex, &spec.phi_im}) {
    for (const auto& [t, e] : map->entries()) {
      if (t.max_color() > spec.m) {
        throw std::invalid_argument(spec.name + ": tree " + t.encoding() + " exceeds noise dimension");
      }
      for (const auto& [w, c] : e.terms()) {
        if (word_order(w) < rho(t)) {
          throw std::invalid_argument(spec.name + ": word " + format_word(w, e.calculus()) + " on tree " +
                                      t.encoding() + " has order below rho(tree)");
        }
        for (int letter : w) {
          if (letter > spec.m) throw std::invalid_argument(spec.name + ": letter exceeds noise dimension");
        }
      }
    }
  }
}

MethodSpec euler_maruyama_spec(int m) {
  MethodSpec s;
  s.name = "euler";
  s.m = m;
  for (int l = 0; l <= m; ++l) s.phi_ex.set(Tree::leaf(l), ito({l}));
  validate(s);
  return s;
}

MethodSpec milstein_spec() {
  MethodSpec s = euler_maruyama_spec(1);
  s.name = "milstein";
  set_entry(s.phi_ex, "1[1]", ito({1, 1}));
  validate(s);
  return s;
}

MethodSpec family_spec(const FamilyCoefficients& c) {
  const auto& [c1, c2, c3, c4, c5, c6] = c;
  const Rational one(1);
  MethodSpec s;
  s.name = "family";
  s.m = 1;
  s.params = c;

  // Implicit part, evaluated at Y_{n+1}.
  CoeffMap& im = s.phi_im;
  set_entry(im, "1", ito({1}, c1));
  set_entry(im, "0", ito({0}, c2));
  set_entry(im, "1[1]", ito({1, 1}, c3) + ito({0}, c4));
  set_entry(im, "0[0]", ito({0, 0}, c5));          // c5 h^2/2 g0'g0
  set_entry(im, "0[1,1]", ito({0, 0}, c6));        // c6 h^2/4 g0''(g1,g1), alpha = 1/2

  // Explicit part, evaluated at Y_n. h I_1 = I(0,1) + I(1,0), h^2 = 2 I(0,0).
  CoeffMap& ex = s.phi_ex;
  const IntegralExpr h_i1 = ito({0, 1}) + ito({1, 0});
  set_entry(ex, "1", ito({1}, one - c1));
  set_entry(ex, "0", ito({0}, one - c2));
  set_entry(ex, "1[1]", ito({0}, -c1 - c4) + ito({1, 1}, one - 2 * c1 - c3));
  set_entry(ex, "1[0]", ito({0, 1}, one - c1) + ito({1, 0}, -c1));
  set_entry(ex, "0[1]", ito({0, 1}, -c2) + ito({1, 0}, one - c2));
  // g1''(g1,g1), alpha = 1/2
  set_entry(ex, "1[1,1]",
            (ito({0, 1}, Rational(1, 2)) - h_i1 * (Rational(3, 2) * c1 + c3 + c4) +
             ito({1, 1, 1}, one - 3 * c1 - 3 * c3)) *
                Rational(2));
  set_entry(ex, "1[1[1]]", h_i1 * (-(c1 + c3 + c4)) + ito({1, 1, 1}, -(3 * c1 + 3 * c3 - one)));
  set_entry(ex, "0[0]", ito({0, 0}, one - 2 * c2 - c5));
  set_entry(ex, "1[0,1]", ito({0, 0}, -2 * (c1 + c4)));
  set_entry(ex, "1[0[1]]", ito({0, 0}, -c1));
  set_entry(ex, "1[1[0]]", ito({0, 0}, -(c1 + 2 * c4)));
  set_entry(ex, "0[1,1]", ito({0, 0}, one - 2 * c2 - c6));               // alpha = 1/2
  set_entry(ex, "1[1[1[1]]]", ito({0, 0}, -c3));
  set_entry(ex, "1[1[1,1]]", ito({0, 0}, -(c1 + 2 * c3 + 2 * c4)));      // alpha = 1/2
  set_entry(ex, "1[1,1[1]]", ito({0, 0}, -(2 * c1 + 3 * c3 + 2 * c4)));
  set_entry(ex, "1[1,1,1]", ito({0, 0}, -6 * (c1 + c3 + c4)));          // alpha = 1/6
  validate(s);
  return s;
}

MethodSpec exact_spec(int m, HalfInt max_rho, Calculus calculus) {
  MethodSpec s;
  s.name = "exact";
  s.calculus = calculus;
  s.m = m;
  s.phi_ex = exact_weights(m, max_rho, calculus);
  s.phi_im = CoeffMap(calculus, Rational(0));
  validate(s);
  return s;
}

MethodSpec method_by_name(const std::string& name, const std::optional<FamilyCoefficients>& params,
                          HalfInt exact_truncation) {
  if (name == "euler") return euler_maruyama_spec(1);
  if (name == "milstein") return milstein_spec();
  if (name == "explicit15") {
    MethodSpec s = family_spec(FamilyCoefficients{});
    s.name = "explicit15";
    return s;
  }
  if (name == "family") {
    if (!params) throw std::invalid_argument("method 'family' needs six parameters c1..c6");
    return family_spec(*params);
  }
  if (name == "exact") return exact_spec(1, exact_truncation, Calculus::ito);
  throw std::invalid_argument("unknown method '" + name + "' (expected euler, milstein, family, explicit15, exact)");
}

bool OrderReport::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.ok(); });
}

std::vector<Verdict> OrderReport::failures() const {
  std::vector<Verdict> out;
  for (const auto& v : verdicts) {
    if (!v.ok()) out.push_back(v);
  }
  return out;
}

OrderReport check_strong(const MethodSpec& spec, HalfInt p, bool with_mean_condition) {
  validate(spec);
  if (with_mean_condition && spec.calculus != Calculus::ito) {
    throw UnsupportedError("the mean-value strong condition needs Ito expectations; Stratonovich is unsupported");
  }
  OrderReport report{spec.name, "strong", p, {}};
  const HalfInt horizon = p + kHalf;
  const CoeffMap phi = implicit_taylor_coeffs(spec.phi_ex, spec.phi_im, spec.m, horizon);
  const int max_power = mean_power_limit(p);
  for (const auto& t : enumerate_trees(spec.m, horizon)) {
    const IntegralExpr diff = phi.at(t) - exact_weight(t, spec.calculus);
    if (rho(t) <= p) {
      const IntegralExpr low = truncate(diff, p);
      report.verdicts.push_back({t.encoding(), "pathwise", offending_words(low), diff.to_string()});
    }
    if (with_mean_condition) {
      const HPolynomial mean = expectation_ito(diff);
      std::vector<std::string> bad;
      for (const auto& [k, c] : mean) {
        if (k <= max_power) bad.push_back("h^" + std::to_string(k) + ": " + to_string(c));
      }
      report.verdicts.push_back({t.encoding(), "mean", std::move(bad), format_polynomial(mean)});
    }
  }
  return report;
}

OrderReport check_weak(const MethodSpec& spec, int p) {
  validate(spec);
  if (spec.calculus != Calculus::ito) {
    throw UnsupportedError("weak order conditions need Ito expectations; Stratonovich is unsupported");
  }
  OrderReport report{spec.name, "weak", HalfInt::whole(p), {}};
  const HalfInt horizon = HalfInt::whole(p) + kHalf;
  const CoeffMap phi = implicit_taylor_coeffs(spec.phi_ex, spec.phi_im, spec.m, horizon);
  const CoeffMap exact = exact_weights(spec.m, horizon, spec.calculus);
  for (const auto& u : enumerate_ftrees(enumerate_trees(spec.m, horizon), horizon)) {
    const IntegralExpr diff = psi_weight(phi, u) - psi_weight(exact, u);
    const HPolynomial mean = expectation_ito(diff);
    std::vector<std::string> bad;
    for (const auto& [k, c] : mean) {
      if (k <= p) bad.push_back("h^" + std::to_string(k) + ": " + to_string(c));
    }
    report.verdicts.push_back({u.to_string(), "weak", std::move(bad), format_polynomial(mean)});
  }
  return report;
}

std::string report_to_json(const OrderReport& report, int indent) {
  nlohmann::ordered_json j;
  j["method"] = report.method;
  j["kind"] = report.kind;
  j["order"] = report.order.to_string();
  j["pass"] = report.pass();
  j["checked"] = report.verdicts.size();
  auto& verdicts = j["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : report.verdicts) {
    nlohmann::ordered_json e;
    e["subject"] = v.subject;
    e["condition"] = v.condition;
    e["ok"] = v.ok();
    e["offending"] = v.offending;
    e["residual"] = v.residual;
    verdicts.push_back(std::move(e));
  }
  return j.dump(indent);
}

std::string report_to_text(const OrderReport& report) {
  std::ostringstream os;
  os << report.kind << " order " << report.order.to_string() << " for " << report.method << ": "
     << (report.pass() ? "PASS" : "FAIL") << " (" << report.verdicts.size() << " conditions checked)\n";
  for (const auto& v : report.failures()) {
    os << "  " << v.condition << " condition fails at " << v.subject << ":";
    for (const auto& o : v.offending) os << ' ' << o;
    os << "\n    residual: " << v.residual << '\n';
  }
  return os.str();
}

}  // namespace sbs
