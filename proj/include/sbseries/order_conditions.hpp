#pragma once

#include "sbseries/bseries.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbs {

using FamilyCoefficients = std::array<Rational, 6>;

/// One step Y_1 = B(Phi_ex, x_0; h) + B(Phi_im, Y_1; h).
struct MethodSpec {
  std::string name;
  Calculus calculus = Calculus::ito;
  int m = 1;
  CoeffMap phi_ex{Calculus::ito, Rational(1)};
  CoeffMap phi_im{Calculus::ito, Rational(0)};
  std::optional<FamilyCoefficients> params;
};

/// Checks Phi_ex(empty) = 1, Phi_im(empty) = 0, shared calculus, colors <= m,
/// and that every stored word has order >= rho(tree). Throws
/// std::invalid_argument naming the first offending entry.
void validate(const MethodSpec& spec);

MethodSpec euler_maruyama_spec(int m = 1);
MethodSpec milstein_spec();

/// Strong order 1.5 implicit Taylor family for scalar-noise Ito SDEs. The
/// implicit part carries c_1 ... c_6; the explicit part is fixed by the
/// order conditions. Entries divide the displayed scheme coefficients by
/// alpha(tree), e.g. the h^2/4 g_0''(g_1, g_1) term becomes c_6 I(0,0) on
/// 0[1,1] because alpha(0[1,1]) = 1/2 and I(0,0) = h^2/2.
MethodSpec family_spec(const FamilyCoefficients& c);

/// Phi_ex = exact weights truncated at rho <= max_rho, Phi_im = 0.
MethodSpec exact_spec(int m, HalfInt max_rho, Calculus calculus);

/// Built-in methods by name: euler, milstein, family (needs params),
/// explicit15 (family with c = 0), exact.
MethodSpec method_by_name(const std::string& name, const std::optional<FamilyCoefficients>& params,
                          HalfInt exact_truncation = HalfInt::whole(3));

class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Verdict {
  std::string subject;     // tree or f-tree in the literal grammar
  std::string condition;   // "pathwise", "mean" or "weak"
  std::vector<std::string> offending;  // residual words or "h^k: coeff"
  std::string residual;    // full residual that was tested

  bool ok() const { return offending.empty(); }
};

struct OrderReport {
  std::string method;
  std::string kind;  // "strong" or "weak"
  HalfInt order;
  std::vector<Verdict> verdicts;

  bool pass() const;
  std::vector<Verdict> failures() const;
};

/// Mean-square order p:
///   pathwise: truncate(Phi(t) - phi(t), p) = 0 for rho(t) <= p;
///   mean:     E(Phi(t) - phi(t)) = O(h^(p+1)) for rho(t) <= p + 1/2.
/// The mean condition needs Ito calculus; for Stratonovich specs pass
/// with_mean_condition = false or get UnsupportedError.
OrderReport check_strong(const MethodSpec& spec, HalfInt p, bool with_mean_condition = true);

/// Weak order p: E psi_Phi(u) = E psi_phi(u) + O(h^(p+1)) for all f-trees u
/// with rho(u) <= p + 1/2. Ito only.
OrderReport check_weak(const MethodSpec& spec, int p);

/// Machine-readable report: {"method", "kind", "order", "pass", "verdicts": [...]}.
std::string report_to_json(const OrderReport& report, int indent = 2);
std::string report_to_text(const OrderReport& report);

}  // namespace sbs
