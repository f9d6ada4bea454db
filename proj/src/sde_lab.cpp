#include "sbseries/sde_lab.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <sstream>
#include <thread>

namespace sbs::lab {

Increment increment_from_normals(double h, double xi1, double xi2) {
  const double sh = std::sqrt(h);
  return {sh * xi1, h * sh * (0.5 * xi1 + xi2 / (2.0 * std::sqrt(3.0)))};
}

Increment aggregate(const Increment& first, const Increment& second, double h) {
  return {first.dW + second.dW, first.dZ + second.dZ + h * first.dW};
}

Increment aggregate(std::span<const Increment> fine, double h) {
  Increment out;
  for (const auto& inc : fine) {
    out.dZ += inc.dZ + h * out.dW;
    out.dW += inc.dW;
  }
  return out;
}

StepIntegrals step_integrals(const Increment& inc, double h) {
  const double w = inc.dW;
  return {h, w, 0.5 * (w * w - h), inc.dZ, h * w - inc.dZ, (w * w * w - 3.0 * h * w) / 6.0};
}

WordSamples word_samples(const Increment& inc, double h) {
  const StepIntegrals I = step_integrals(inc, h);
  return {
      {Word{}, 1.0},
      {Word{0}, h},
      {Word{1}, I.I1},
      {Word{1, 1}, I.I11},
      {Word{1, 0}, I.I10},
      {Word{0, 1}, I.I01},
      {Word{1, 1, 1}, I.I111},
      {Word{0, 0}, 0.5 * h * h},
      {Word{0, 0, 0}, h * h * h / 6.0},
  };
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ stream);
}

PathPlan::PathPlan(std::uint64_t seed, std::uint64_t path_index, int finest_level, int subdivision,
                   double horizon)
    : seed_(seed), path_(path_index), finest_level_(finest_level), subdivision_(subdivision), horizon_(horizon) {
  if (finest_level < 0 || finest_level > 24) throw std::invalid_argument("finest level must be in [0, 24]");
  if (subdivision < 1) throw std::invalid_argument("subdivision must be >= 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");

  const std::size_t coarse_steps = std::size_t{1} << finest_level;
  const std::size_t n = coarse_steps * static_cast<std::size_t>(subdivision);
  sampled_step_ = horizon / static_cast<double>(n);

  std::mt19937_64 rng(stream_seed(seed, path_index));
  sampled_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    sampled_.push_back(sample_increments(sampled_step_, rng));
    w_end_ += sampled_.back().dW;
  }

  std::vector<Increment> level;
  if (subdivision == 1) {
    level = sampled_;
  } else {
    level.reserve(coarse_steps);
    for (std::size_t i = 0; i < coarse_steps; ++i) {
      level.push_back(aggregate(std::span(sampled_).subspan(i * subdivision, subdivision), sampled_step_));
    }
  }
  double h = step(finest_level);
  for (int L = finest_level;; --L) {
    levels_[L] = level;
    if (L == 0) break;
    std::vector<Increment> coarser;
    coarser.reserve(level.size() / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) coarser.push_back(aggregate(level[i], level[i + 1], h));
    level = std::move(coarser);
    h *= 2.0;
  }
}

double PathPlan::step(int level) const { return horizon_ / std::ldexp(1.0, level); }

const std::vector<Increment>& PathPlan::increments(int level) const {
  auto it = levels_.find(level);
  if (it == levels_.end()) {
    throw std::out_of_range("level " + std::to_string(level) + " not in [0, " + std::to_string(finest_level_) + "]");
  }
  return it->second;
}

ConvergenceError::ConvergenceError(int iterations, double residual)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "implicit solve did not converge after " << iterations << " iterations (residual " << residual << ")";
        return os.str();
      }()),
      iterations_(iterations),
      residual_(residual) {}

Vector euler_step(const SdeProblem& p, const Vector& y, const Increment& inc, double h) {
  return y + h * p.g(0, y) + inc.dW * p.g(1, y);
}

Vector milstein_step(const SdeProblem& p, const Vector& y, const Increment& inc, double h) {
  const Vector g1 = p.g(1, y);
  const Vector d11 = p.d(1, y, std::span<const Vector>(&g1, 1));
  return y + h * p.g(0, y) + inc.dW * g1 + 0.5 * (inc.dW * inc.dW - h) * d11;
}

namespace {

Vector D(const SdeProblem& p, int l, const Vector& x, std::initializer_list<Vector> dirs) {
  const std::vector<Vector> v(dirs);
  return p.d(l, x, v);
}

}  // namespace

Vector family_explicit_part(const FamilyParams& c, const SdeProblem& p, const Vector& y, const StepIntegrals& I) {
  const auto [c1, c2, c3, c4, c5, c6] = c;
  const double h = I.h, h2 = h * h;
  const Vector g0 = p.g(0, y);
  const Vector g1 = p.g(1, y);
  const Vector g1g1 = D(p, 1, y, {g1});           // g1'g1
  const Vector g1g0 = D(p, 1, y, {g0});           // g1'g0
  const Vector g0g1 = D(p, 0, y, {g1});           // g0'g1
  const Vector g0g0 = D(p, 0, y, {g0});           // g0'g0
  const Vector g1pp_11 = D(p, 1, y, {g1, g1});    // g1''(g1,g1)
  const Vector g1g1g1 = D(p, 1, y, {g1g1});       // g1'g1'g1
  const Vector g1pp_01 = D(p, 1, y, {g0, g1});    // g1''(g0,g1)
  const Vector g1g0g1 = D(p, 1, y, {g0g1});       // g1'g0'g1
  const Vector g1g1g0 = D(p, 1, y, {g1g0});       // g1'g1'g0
  const Vector g0pp_11 = D(p, 0, y, {g1, g1});    // g0''(g1,g1)
  const Vector g1g1g1g1 = D(p, 1, y, {g1g1g1});   // g1'g1'g1'g1
  const Vector g1g1pp = D(p, 1, y, {g1pp_11});    // g1'g1''(g1,g1)
  const Vector g1pp_g1g1 = D(p, 1, y, {g1g1, g1});  // g1''(g1'g1,g1)
  const Vector g1ppp = D(p, 1, y, {g1, g1, g1});  // g1'''(g1,g1,g1)

  Vector out = (1 - c1) * I.I1 * g1 + h * (1 - c2) * g0;
  out += ((-c1 - c4) * h + (1 - 2 * c1 - c3) * I.I11) * g1g1;
  out += ((1 - c1) * I.I01 - c1 * I.I10) * g1g0;
  out += (-c2 * I.I01 + (1 - c2) * I.I10) * g0g1;
  out += (0.5 * I.I01 - (1.5 * c1 + c3 + c4) * h * I.I1 + (1 - 3 * c1 - 3 * c3) * I.I111) * g1pp_11;
  out -= ((c1 + c3 + c4) * h * I.I1 + (3 * c1 + 3 * c3 - 1) * I.I111) * g1g1g1;
  out += (1 - 2 * c2 - c5) * 0.5 * h2 * g0g0;
  out -= (c1 + c4) * h2 * g1pp_01;
  out -= c1 * 0.5 * h2 * g1g0g1;
  out -= (0.5 * c1 + c4) * h2 * g1g1g0;
  out += 0.25 * (1 - 2 * c2 - c6) * h2 * g0pp_11;
  out -= c3 * 0.5 * h2 * g1g1g1g1;
  out -= 0.5 * (0.5 * c1 + c3 + c4) * h2 * g1g1pp;
  out -= (c1 + 1.5 * c3 + c4) * h2 * g1pp_g1g1;
  out -= 0.5 * (c1 + c3 + c4) * h2 * g1ppp;
  return out;
}

Vector family_implicit_part(const FamilyParams& c, const SdeProblem& p, const Vector& y, const StepIntegrals& I) {
  const auto [c1, c2, c3, c4, c5, c6] = c;
  const double h = I.h, h2 = h * h;
  const Vector g0 = p.g(0, y);
  const Vector g1 = p.g(1, y);
  Vector out = c1 * I.I1 * g1 + c2 * h * g0;
  if (c3 != 0.0 || c4 != 0.0) out += (c3 * I.I11 + c4 * h) * D(p, 1, y, {g1});
  if (c5 != 0.0) out += c5 * 0.5 * h2 * D(p, 0, y, {g0});
  if (c6 != 0.0) out += c6 * 0.25 * h2 * D(p, 0, y, {g1, g1});
  return out;
}

Vector family_step(const FamilyParams& c, const SdeProblem& p, const Vector& y, const Increment& inc, double h,
                   const StepperConfig& cfg, StepStats* stats) {
  const StepIntegrals I = step_integrals(inc, h);
  const Vector base = y + family_explicit_part(c, p, y, I);
  const bool implicit = std::any_of(c.begin(), c.end(), [](double v) { return v != 0.0; });
  if (!implicit) {
    if (stats) *stats = {0, 0.0};
    return base;
  }

  auto residual_of = [&](const Vector& Y) -> Vector { return Y - base - family_implicit_part(c, p, Y, I); };

  Vector Y = base;
  Vector r = residual_of(Y);
  double rnorm = r.lpNorm<Eigen::Infinity>();
  const Eigen::Index n = Y.size();
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    Vector step;
    if (cfg.solver == SolverKind::newton) {
      Eigen::MatrixXd J(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double e = std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(Y(j)));
        Vector Yp = Y;
        Yp(j) += e;
        J.col(j) = (residual_of(Yp) - r) / e;
      }
      step = -J.partialPivLu().solve(r);
      // Backtrack while the residual grows.
      double lambda = 1.0;
      Vector trial = Y + step;
      Vector rt = residual_of(trial);
      while (!(rt.lpNorm<Eigen::Infinity>() <= rnorm) && lambda > 1e-3) {
        lambda *= cfg.damping;
        trial = Y + lambda * step;
        rt = residual_of(trial);
      }
      step = trial - Y;
      Y = std::move(trial);
      r = std::move(rt);
    } else {
      const Vector next = base + family_implicit_part(c, p, Y, I);
      step = next - Y;
      Y = next;
      r = residual_of(Y);
    }
    rnorm = r.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(rnorm)) break;
    const double scale = 1.0 + Y.lpNorm<Eigen::Infinity>();
    if (step.lpNorm<Eigen::Infinity>() <= cfg.tolerance * scale || rnorm <= cfg.tolerance * scale) {
      if (stats) *stats = {it, rnorm};
      return Y;
    }
  }
  throw ConvergenceError(cfg.max_iterations, rnorm);
}

std::string Scheme::name() const {
  switch (kind) {
    case SchemeKind::euler: return "euler";
    case SchemeKind::milstein: return "milstein";
    case SchemeKind::exact: return "exact";
    case SchemeKind::family: break;
  }
  std::ostringstream os;
  os << "family(";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

Scheme scheme_by_name(const std::string& name, const FamilyParams& params) {
  if (name == "euler") return {SchemeKind::euler, {}};
  if (name == "milstein") return {SchemeKind::milstein, {}};
  if (name == "exact") return {SchemeKind::exact, {}};
  if (name == "explicit15") return {SchemeKind::family, {}};
  if (name == "family") return {SchemeKind::family, params};
  throw std::invalid_argument("unknown scheme '" + name + "' (expected euler, milstein, family, explicit15, exact)");
}

namespace {

Vector run_grid(const Scheme& scheme, const SdeProblem& p, const Vector& x0, const std::vector<Increment>& incs,
                double h, const StepperConfig& cfg) {
  if (scheme.kind == SchemeKind::milstein && p.noise_dim != 1) {
    throw std::invalid_argument("the Milstein step here supports scalar noise only");
  }
  if (scheme.kind == SchemeKind::family && p.noise_dim != 1) {
    throw std::invalid_argument("the order-1.5 family applies to scalar noise only");
  }
  Vector y = x0;
  for (const auto& inc : incs) {
    switch (scheme.kind) {
      case SchemeKind::euler: y = euler_step(p, y, inc, h); break;
      case SchemeKind::milstein: y = milstein_step(p, y, inc, h); break;
      case SchemeKind::family: y = family_step(scheme.c, p, y, inc, h, cfg); break;
      case SchemeKind::exact: break;
    }
  }
  return y;
}

Vector exact_endpoint(const SdeProblem& p, const Vector& x0, const PathPlan& plan) {
  if (!p.exact) throw std::invalid_argument("problem '" + p.name + "' has no exact solution");
  Vector w(1);
  w(0) = plan.wiener_endpoint();
  return p.exact(plan.horizon(), x0, w);
}

}  // namespace

Vector integrate_path(const Scheme& scheme, const SdeProblem& p, const Vector& x0, const PathPlan& plan, int level,
                      const StepperConfig& cfg) {
  if (scheme.kind == SchemeKind::exact) return exact_endpoint(p, x0, plan);
  return run_grid(scheme, p, x0, plan.increments(level), plan.step(level), cfg);
}

Vector integrate_sampled(const Scheme& scheme, const SdeProblem& p, const Vector& x0, const PathPlan& plan,
                         const StepperConfig& cfg) {
  if (scheme.kind == SchemeKind::exact) return exact_endpoint(p, x0, plan);
  return run_grid(scheme, p, x0, plan.sampled(), plan.sampled_step(), cfg);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return {};
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) return {};
  }
  const double mx = pairwise_sum(x) / n, my = pairwise_sum(y) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return {};
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

StudyResult strong_error_study(const StudyConfig& cfg, const SdeProblem& p, const Vector& x0) {
  if (cfg.level_min < 0 || cfg.level_max < cfg.level_min) throw std::invalid_argument("need 0 <= level_min <= level_max");
  if (cfg.paths == 0) throw std::invalid_argument("number of paths must be positive");
  if (x0.size() != p.dim) throw std::invalid_argument("initial state has the wrong dimension");

  ReferenceKind ref = cfg.reference;
  if (ref == ReferenceKind::automatic) ref = p.exact ? ReferenceKind::exact : ReferenceKind::fine_explicit;
  if (ref == ReferenceKind::exact && !p.exact) {
    throw std::invalid_argument("problem '" + p.name + "' has no exact solution; use a fine reference");
  }
  const int subdivision = ref == ReferenceKind::fine_explicit ? cfg.reference_subdivision : 1;
  const Scheme reference_scheme =
      ref == ReferenceKind::exact ? Scheme{SchemeKind::exact, {}} : Scheme{SchemeKind::family, {}};

  const int nlev = cfg.level_max - cfg.level_min + 1;
  const std::size_t M = cfg.paths;
  // errors[level][path]; NaN marks a failed path.
  std::vector<std::vector<double>> errors(nlev, std::vector<double>(M, NAN));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < M; i = next++) {
      const PathPlan plan(cfg.seed, i, cfg.level_max, subdivision, cfg.horizon);
      Vector reference;
      try {
        reference = integrate_sampled(reference_scheme, p, x0, plan, cfg.stepper);
      } catch (const ConvergenceError&) {
        continue;
      }
      if (!reference.allFinite()) continue;
      for (int k = 0; k < nlev; ++k) {
        try {
          const Vector y = integrate_path(cfg.scheme, p, x0, plan, cfg.level_min + k, cfg.stepper);
          if (y.allFinite()) errors[k][i] = (y - reference).norm();
        } catch (const ConvergenceError&) {
        }
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, M));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  StudyResult result;
  result.reference = ref == ReferenceKind::exact
                         ? "exact solution"
                         : "explicit order-1.5 scheme with step h/" + std::to_string(subdivision) + " at level " +
                               std::to_string(cfg.level_max);
  std::vector<double> xs, ys;
  bool any_zero = false;
  for (int k = 0; k < nlev; ++k) {
    std::vector<double> ok;
    ok.reserve(M);
    for (double e : errors[k]) {
      if (!std::isnan(e)) ok.push_back(e);
    }
    LevelResult lr;
    lr.level = cfg.level_min + k;
    lr.h = cfg.horizon / std::ldexp(1.0, lr.level);
    lr.failed_paths = M - ok.size();
    if (static_cast<double>(lr.failed_paths) > 0.01 * static_cast<double>(M)) {
      throw StudyAborted(std::to_string(lr.failed_paths) + " of " + std::to_string(M) + " paths failed at level " +
                         std::to_string(lr.level));
    }
    const double n = static_cast<double>(ok.size());
    lr.mean_error = pairwise_sum(ok) / n;
    if (ok.size() > 1) {
      std::vector<double> sq(ok.size());
      for (std::size_t j = 0; j < ok.size(); ++j) sq[j] = (ok[j] - lr.mean_error) * (ok[j] - lr.mean_error);
      lr.stderr_of_mean = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
    }
    if (lr.mean_error == 0.0) any_zero = true;
    xs.push_back(std::log2(lr.h));
    ys.push_back(std::log2(lr.mean_error));
    result.levels.push_back(lr);
  }
  if (!any_zero && nlev >= 2) {
    const LineFit fit = fit_line(xs, ys);
    result.slope = fit.slope;
    result.intercept = fit.intercept;
  }
  return result;
}

}  // namespace sbs::lab
