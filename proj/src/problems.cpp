#include "sbseries/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace sbs::problems {

namespace {

// Derivatives of s(x) = sqrt(x^2 + 1) up to third order.
double sqrt1p_derivative(double x, int k) {
  const double s = std::sqrt(x * x + 1.0);
  switch (k) {
    case 0: return s;
    case 1: return x / s;
    case 2: return 1.0 / (s * s * s);
    case 3: return -3.0 * x / std::pow(s, 5);
    default: throw std::domain_error("derivative order above 3");
  }
}

double product_of_component(std::span<const Vector> dirs, Eigen::Index i) {
  double p = 1.0;
  for (const auto& v : dirs) p *= v(i);
  return p;
}

// k-th derivative of cos / sin.
double cos_derivative(double x, int k) {
  switch (k % 4) {
    case 0: return std::cos(x);
    case 1: return -std::sin(x);
    case 2: return -std::cos(x);
    default: return std::sin(x);
  }
}
double sin_derivative(double x, int k) { return cos_derivative(x, k + 3); }

// Directional derivatives of r(x) = sqrt(1 + |x|^2).
double radius_derivative(const Vector& x, std::span<const Vector> dirs) {
  const double r = std::sqrt(1.0 + x.squaredNorm());
  switch (dirs.size()) {
    case 0: return r;
    case 1: return x.dot(dirs[0]) / r;
    case 2: {
      const auto& u = dirs[0];
      const auto& v = dirs[1];
      return u.dot(v) / r - x.dot(u) * x.dot(v) / (r * r * r);
    }
    case 3: {
      const auto& u = dirs[0];
      const auto& v = dirs[1];
      const auto& w = dirs[2];
      const double xu = x.dot(u), xv = x.dot(v), xw = x.dot(w);
      return -(u.dot(v) * xw + u.dot(w) * xv + v.dot(w) * xu) / (r * r * r) +
             3.0 * xu * xv * xw / std::pow(r, 5);
    }
    default: throw std::domain_error("derivative order above 3");
  }
}

}  // namespace

SdeProblem sinh_problem() {
  SdeProblem p;
  p.name = "sinh";
  p.dim = 1;
  p.noise_dim = 1;
  p.field = [](int l, const Vector& x) {
    Vector out(1);
    const double s = std::sqrt(x(0) * x(0) + 1.0);
    out(0) = l == 0 ? 0.5 * x(0) + s : s;
    return out;
  };
  p.derivative = [](int l, const Vector& x, std::span<const Vector> dirs) {
    const int k = static_cast<int>(dirs.size());
    double d = sqrt1p_derivative(x(0), k);
    if (l == 0 && k == 1) d += 0.5;
    Vector out(1);
    out(0) = d * product_of_component(dirs, 0);
    return out;
  };
  p.exact = [](double t, const Vector& x0, const Vector& w) {
    Vector out(1);
    out(0) = std::sinh(std::asinh(x0(0)) + t + w(0));
    return out;
  };
  p.initial_state = Vector::Zero(1);
  return p;
}

SdeProblem planar_problem() {
  SdeProblem p;
  p.name = "planar";
  p.dim = 2;
  p.noise_dim = 1;
  p.field = [](int l, const Vector& x) {
    Vector out(2);
    if (l == 0) {
      out(0) = 0.5 * x(0) + std::sqrt(x.squaredNorm() + 1.0);
      out(1) = 0.5 * x(0) + std::sqrt(x(1) * x(1) + 1.0);
    } else {
      out(0) = std::cos(x(0));
      out(1) = std::sin(x(1));
    }
    return out;
  };
  p.derivative = [](int l, const Vector& x, std::span<const Vector> dirs) {
    const int k = static_cast<int>(dirs.size());
    Vector out(2);
    if (l == 0) {
      out(0) = radius_derivative(x, dirs);
      out(1) = sqrt1p_derivative(x(1), k) * product_of_component(dirs, 1);
      if (k == 1) {
        out(0) += 0.5 * dirs[0](0);
        out(1) += 0.5 * dirs[0](0);
      }
    } else {
      out(0) = cos_derivative(x(0), k) * product_of_component(dirs, 0);
      out(1) = sin_derivative(x(1), k) * product_of_component(dirs, 1);
    }
    return out;
  };
  p.initial_state = Vector::Zero(2);
  return p;
}

SdeProblem linear_problem(double a, double b) {
  SdeProblem p;
  p.name = "linear";
  p.dim = 1;
  p.noise_dim = 1;
  p.field = [a, b](int l, const Vector& x) -> Vector { return (l == 0 ? a : b) * x; };
  p.derivative = [a, b](int l, const Vector& x, std::span<const Vector> dirs) -> Vector {
    if (dirs.size() == 1) return (l == 0 ? a : b) * dirs[0];
    return Vector::Zero(x.size());
  };
  p.exact = [a, b](double t, const Vector& x0, const Vector& w) -> Vector {
    return x0 * std::exp((a - 0.5 * b * b) * t + b * w(0));
  };
  p.initial_state = Vector::Ones(1);
  return p;
}

SdeProblem by_name(const std::string& name) {
  if (name == "sinh") return sinh_problem();
  if (name == "planar" || name == "2d") return planar_problem();
  throw std::invalid_argument("unknown problem '" + name + "' (expected sinh or planar)");
}

std::vector<std::string> names() { return {"sinh", "planar"}; }

}  // namespace sbs::problems
