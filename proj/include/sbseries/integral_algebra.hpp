#pragma once

#include "sbseries/half_int.hpp"
#include "sbseries/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace sbs {

enum class Calculus { ito, stratonovich };

std::string to_string(Calculus c);
/// "ito" / "strat" / "stratonovich".
Calculus parse_calculus(const std::string& name);

// Multi-index of a multiple stochastic integral. The leftmost letter is the
// innermost integral and the rightmost the outermost one:
//   I(2,2,1,1,0) = int_0^h ( ... dW_2 ... dW_1 ... ) ds.
// Letter 0 integrates against time.
using Word = std::vector<int>;

/// (#zero letters) + 1/2 (#nonzero letters).
HalfInt word_order(const Word& w);

/// "I(2,2,1,1,0)" or "J(2,2,1,1,0)"; the empty word prints as "1".
std::string format_word(const Word& w, Calculus c);

/// Finite rational combination of multiple Ito (I_w) or Stratonovich (J_w)
/// integrals over [0, h]. Zero coefficients are never stored; the empty word
/// is the constant 1.
class IntegralExpr {
 public:
  explicit IntegralExpr(Calculus calculus = Calculus::ito) : calculus_(calculus) {}

  static IntegralExpr constant(const Rational& value, Calculus calculus);
  static IntegralExpr word(Word w, Calculus calculus, const Rational& coeff = Rational(1));

  Calculus calculus() const noexcept { return calculus_; }
  const std::map<Word, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Word& w) const;

  void add_term(const Word& w, const Rational& coeff);

  IntegralExpr& operator+=(const IntegralExpr& other);
  IntegralExpr& operator-=(const IntegralExpr& other);
  IntegralExpr& operator*=(const Rational& s);

  friend IntegralExpr operator+(IntegralExpr a, const IntegralExpr& b) { return a += b; }
  friend IntegralExpr operator-(IntegralExpr a, const IntegralExpr& b) { return a -= b; }
  friend IntegralExpr operator*(IntegralExpr a, const Rational& s) { return a *= s; }
  friend IntegralExpr operator*(const Rational& s, IntegralExpr a) { return a *= s; }
  friend bool operator==(const IntegralExpr&, const IntegralExpr&) = default;

  /// Terms sorted by word length (longest first), then by word descending:
  /// "4*J(2,2,1,1,0) + 2*J(2,1,2,1,0) + 2*J(1,2,2,1,0)".
  std::string to_string() const;

 private:
  Calculus calculus_;
  std::map<Word, Rational> terms_;
};

/// Product in the algebra: quasi-shuffle for Ito, shuffle for Stratonovich.
/// Throws std::invalid_argument on calculus mismatch.
IntegralExpr mul(const IntegralExpr& a, const IntegralExpr& b);
inline IntegralExpr operator*(const IntegralExpr& a, const IntegralExpr& b) { return mul(a, b); }

/// int_0^h a(s) * dW_letter(s): appends `letter` to every word.
/// Throws std::invalid_argument unless 0 <= letter <= max_letter.
IntegralExpr integrate(const IntegralExpr& a, int letter, int max_letter);

/// Polynomial in h: power -> coefficient.
using HPolynomial = std::map<int, Rational>;
std::string format_polynomial(const HPolynomial& p);

/// E I_w = h^k / k! when w = (0,...,0) of length k, zero otherwise.
/// Throws std::invalid_argument for Stratonovich input.
HPolynomial expectation_ito(const IntegralExpr& a);

/// Keeps the words with word_order <= max_order.
IntegralExpr truncate(const IntegralExpr& a, HalfInt max_order);

/// Realized values of the integrals for one sample path.
using WordSamples = std::map<Word, double>;

/// Sum of coeff * samples[word]. A word without a sample throws
/// std::out_of_range naming the word.
double evaluate_numeric(const IntegralExpr& a, const WordSamples& samples);

}  // namespace sbs
