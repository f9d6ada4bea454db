#include "sbseries/integral_algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sbs {

std::string to_string(Calculus c) { return c == Calculus::ito ? "ito" : "stratonovich"; }

Calculus parse_calculus(const std::string& name) {
  if (name == "ito" || name == "Ito" || name == "itô") return Calculus::ito;
  if (name == "strat" || name == "stratonovich" || name == "Stratonovich") return Calculus::stratonovich;
  throw std::invalid_argument("unknown calculus '" + name + "' (expected ito or strat)");
}

HalfInt word_order(const Word& w) {
  int twice = 0;
  for (int letter : w) twice += letter == 0 ? 2 : 1;
  return HalfInt::from_twice(twice);
}

std::string format_word(const Word& w, Calculus c) {
  if (w.empty()) return "1";
  std::string s = c == Calculus::ito ? "I(" : "J(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s + ')';
}

IntegralExpr IntegralExpr::constant(const Rational& value, Calculus calculus) {
  IntegralExpr e(calculus);
  e.add_term({}, value);
  return e;
}

IntegralExpr IntegralExpr::word(Word w, Calculus calculus, const Rational& coeff) {
  IntegralExpr e(calculus);
  e.add_term(w, coeff);
  return e;
}

Rational IntegralExpr::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void IntegralExpr::add_term(const Word& w, const Rational& coeff) {
  if (coeff == 0) return;
  for (int letter : w) {
    if (letter < 0) throw std::invalid_argument("negative letter in word");
  }
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

void require_same_calculus(const IntegralExpr& a, const IntegralExpr& b) {
  if (a.calculus() != b.calculus()) {
    throw std::invalid_argument("calculus mismatch: " + to_string(a.calculus()) + " vs " +
                                to_string(b.calculus()));
  }
}

using Terms = std::map<Word, Rational>;

// Product of two single-word integrals, by integration by parts on the
// outermost letters:
//   I_w I_v = int I_{w-} I_v dW_a + int I_w I_{v-} dW_b
//             [+ int I_{w-} I_{v-} ds   if a == b >= 1, Ito only]
// with a, b the last letters of w, v. Memoized per thread.
const Terms& word_product(const Word& w, const Word& v, Calculus calc) {
  thread_local std::map<std::pair<Word, Word>, Terms> cache[2];
  auto& memo = cache[calc == Calculus::ito ? 0 : 1];
  std::pair<Word, Word> key = w <= v ? std::make_pair(w, v) : std::make_pair(v, w);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  Terms out;
  auto accumulate = [&out](const Terms& src, int letter) {
    for (const auto& [u, c] : src) {
      Word ext = u;
      ext.push_back(letter);
      auto [it, inserted] = out.try_emplace(std::move(ext), c);
      if (!inserted) it->second += c;
    }
  };
  const Word& x = key.first;
  const Word& y = key.second;
  if (x.empty()) {
    out.emplace(y, Rational(1));
  } else {
    const int a = x.back();
    const int b = y.back();
    const Word x_head(x.begin(), x.end() - 1);
    const Word y_head(y.begin(), y.end() - 1);
    accumulate(word_product(x_head, y, calc), a);
    accumulate(word_product(x, y_head, calc), b);
    if (calc == Calculus::ito && a == b && a >= 1) accumulate(word_product(x_head, y_head, calc), 0);
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  }
  return memo.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace

IntegralExpr& IntegralExpr::operator+=(const IntegralExpr& other) {
  require_same_calculus(*this, other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

IntegralExpr& IntegralExpr::operator-=(const IntegralExpr& other) {
  require_same_calculus(*this, other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

IntegralExpr& IntegralExpr::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

std::string IntegralExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Word, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first > b.first;
  });
  std::string s;
  bool first = true;
  for (const auto& [w, c] : sorted) {
    Rational mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (w.empty()) {
      s += sbs::to_string(mag);
    } else {
      if (mag != 1) s += sbs::to_string(mag) + "*";
      s += format_word(w, calculus_);
    }
  }
  return s;
}

IntegralExpr mul(const IntegralExpr& a, const IntegralExpr& b) {
  require_same_calculus(a, b);
  IntegralExpr out(a.calculus());
  for (const auto& [w, cw] : a.terms()) {
    for (const auto& [v, cv] : b.terms()) {
      const Rational scale = cw * cv;
      for (const auto& [u, cu] : word_product(w, v, a.calculus())) out.add_term(u, scale * cu);
    }
  }
  return out;
}

IntegralExpr integrate(const IntegralExpr& a, int letter, int max_letter) {
  if (letter < 0 || letter > max_letter) {
    throw std::invalid_argument("integrator letter " + std::to_string(letter) + " outside 0.." +
                                std::to_string(max_letter));
  }
  IntegralExpr out(a.calculus());
  for (const auto& [w, c] : a.terms()) {
    Word ext = w;
    ext.push_back(letter);
    out.add_term(ext, c);
  }
  return out;
}

std::string format_polynomial(const HPolynomial& p) {
  std::string s;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [k, c] = *it;
    if (c == 0) continue;
    Rational mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      s += to_string(mag);
      continue;
    }
    if (mag != 1) s += to_string(mag) + "*";
    s += k == 1 ? std::string("h") : "h^" + std::to_string(k);
  }
  return first ? "0" : s;
}

HPolynomial expectation_ito(const IntegralExpr& a) {
  if (a.calculus() != Calculus::ito) {
    throw std::invalid_argument("expectations are only available for Ito integrals");
  }
  HPolynomial p;
  for (const auto& [w, c] : a.terms()) {
    if (!std::all_of(w.begin(), w.end(), [](int l) { return l == 0; })) continue;
    const int k = static_cast<int>(w.size());
    p[k] += c / Rational(factorial(k));
    if (p[k] == 0) p.erase(k);
  }
  return p;
}

IntegralExpr truncate(const IntegralExpr& a, HalfInt max_order) {
  IntegralExpr out(a.calculus());
  for (const auto& [w, c] : a.terms()) {
    if (word_order(w) <= max_order) out.add_term(w, c);
  }
  return out;
}

double evaluate_numeric(const IntegralExpr& a, const WordSamples& samples) {
  double sum = 0.0;
  for (const auto& [w, c] : a.terms()) {
    auto it = samples.find(w);
    if (it == samples.end()) {
      throw std::out_of_range("no sample for " + format_word(w, a.calculus()));
    }
    sum += to_double(c) * it->second;
  }
  return sum;
}

}  // namespace sbs
