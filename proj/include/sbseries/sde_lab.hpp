#pragma once

#include "sbseries/bseries.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbs::lab {

/// Brownian functionals of one step of size h on a single Wiener channel:
/// dW = W(h) and dZ = int_0^h W(s) ds. Jointly Gaussian with
/// Var dW = h, Var dZ = h^3/3, Cov(dW, dZ) = h^2/2.
struct Increment {
  double dW = 0.0;
  double dZ = 0.0;
};

/// (sqrt(h) xi1, h^(3/2) (xi1/2 + xi2/(2 sqrt 3))) for standard normals xi1, xi2.
Increment increment_from_normals(double h, double xi1, double xi2);

template <class Rng>
Increment sample_increments(double h, Rng& rng) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double xi1 = normal(rng);
  const double xi2 = normal(rng);
  return increment_from_normals(h, xi1, xi2);
}

/// Two consecutive steps of size h merged into one of size 2h.
Increment aggregate(const Increment& first, const Increment& second, double h);
/// Consecutive steps of size h merged into one of size h * fine.size().
Increment aggregate(std::span<const Increment> fine, double h);

/// Iterated integrals needed by the order-1.5 schemes, as closed forms in
/// (dW, dZ, h): I(1,1) = (dW^2 - h)/2, I(1,0) = dZ, I(0,1) = h dW - dZ,
/// I(1,1,1) = (dW^3 - 3 h dW)/6, I(0^k) = h^k/k!.
struct StepIntegrals {
  double h, I1, I11, I10, I01, I111;
};
StepIntegrals step_integrals(const Increment& inc, double h);

/// Word samples for every word over {0,1} of order <= 3/2, plus (0,0) and
/// (0,0,0), for use with evaluate_numeric.
WordSamples word_samples(const Increment& inc, double h);

/// Splitmix64 hash of (seed, stream): per-path RNG seeds independent of scheduling.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Coupled increments of one path on nested dyadic grids over [0, horizon].
/// Level L has 2^L steps of size horizon / 2^L. The path is sampled on the
/// finest grid (level finest_level, optionally subdivided `subdivision`
/// more times) and every coarser level is an exact aggregate of it.
class PathPlan {
 public:
  PathPlan(std::uint64_t seed, std::uint64_t path_index, int finest_level, int subdivision = 1,
           double horizon = 1.0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t path_index() const noexcept { return path_; }
  int finest_level() const noexcept { return finest_level_; }
  double horizon() const noexcept { return horizon_; }

  double step(int level) const;
  const std::vector<Increment>& increments(int level) const;
  /// The subdivided finest grid (equal to level finest_level when subdivision = 1).
  const std::vector<Increment>& sampled() const noexcept { return sampled_; }
  double sampled_step() const noexcept { return sampled_step_; }
  int subdivision() const noexcept { return subdivision_; }
  /// W(horizon), summed on the sampled grid.
  double wiener_endpoint() const noexcept { return w_end_; }

 private:
  std::uint64_t seed_;
  std::uint64_t path_;
  int finest_level_;
  int subdivision_;
  double horizon_;
  double sampled_step_;
  double w_end_ = 0.0;
  std::vector<Increment> sampled_;
  std::map<int, std::vector<Increment>> levels_;
};

enum class SolverKind { newton, fixed_point };

struct StepperConfig {
  SolverKind solver = SolverKind::newton;
  double tolerance = 1e-12;
  int max_iterations = 50;
  double damping = 0.5;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(int iterations, double residual);
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

using FamilyParams = std::array<double, 6>;

Vector euler_step(const SdeProblem& p, const Vector& y, const Increment& inc, double h);
Vector milstein_step(const SdeProblem& p, const Vector& y, const Increment& inc, double h);

/// Explicit part of the order-1.5 family, evaluated at y (everything except
/// y and the six c-weighted terms at the new point).
Vector family_explicit_part(const FamilyParams& c, const SdeProblem& p, const Vector& y,
                            const StepIntegrals& I);
/// The six c-weighted terms evaluated at the new point.
Vector family_implicit_part(const FamilyParams& c, const SdeProblem& p, const Vector& y_next,
                            const StepIntegrals& I);

struct StepStats {
  int iterations = 0;
  double residual = 0.0;
};

/// One step of the order-1.5 family: solves
///   Y = y + explicit(y) + implicit(Y)
/// to cfg.tolerance in the max norm. Throws ConvergenceError.
Vector family_step(const FamilyParams& c, const SdeProblem& p, const Vector& y, const Increment& inc,
                   double h, const StepperConfig& cfg = {}, StepStats* stats = nullptr);

enum class SchemeKind { euler, milstein, family, exact };

struct Scheme {
  SchemeKind kind = SchemeKind::euler;
  FamilyParams c{};
  std::string name() const;
};

/// "euler", "milstein", "family" (with params), "explicit15" (family, c = 0), "exact".
Scheme scheme_by_name(const std::string& name, const FamilyParams& params = {});

/// Integrates over the plan's horizon on the given level. The exact scheme
/// returns the problem's exact solution at the plan's Wiener endpoint.
Vector integrate_path(const Scheme& scheme, const SdeProblem& p, const Vector& x0, const PathPlan& plan,
                      int level, const StepperConfig& cfg = {});

/// Integrates on the plan's subdivided sampled grid.
Vector integrate_sampled(const Scheme& scheme, const SdeProblem& p, const Vector& x0, const PathPlan& plan,
                         const StepperConfig& cfg = {});

enum class ReferenceKind { automatic, exact, fine_explicit };

struct StudyConfig {
  Scheme scheme;
  int level_min = 4;
  int level_max = 9;
  std::size_t paths = 500;
  std::uint64_t seed = 42;
  double horizon = 1.0;
  StepperConfig stepper;
  ReferenceKind reference = ReferenceKind::automatic;
  /// Subdivision of the finest level used by the fine_explicit reference.
  int reference_subdivision = 10;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct LevelResult {
  int level = 0;
  double h = 0.0;
  double mean_error = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t failed_paths = 0;
};

struct StudyResult {
  std::vector<LevelResult> levels;
  double slope = NAN;
  double intercept = NAN;
  std::string reference;
};

class StudyAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mean Euclidean endpoint error against the reference per level, with the
/// least-squares slope of log2(error) against log2(h). Deterministic for a
/// given seed regardless of thread count. Paths whose implicit solve fails
/// are excluded and counted; more than 1% failures at a level throws
/// StudyAborted. The slope is NaN when some level has zero error.
StudyResult strong_error_study(const StudyConfig& cfg, const SdeProblem& p, const Vector& x0);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

struct LineFit {
  double slope = NAN;
  double intercept = NAN;
};
/// Least squares y = slope x + intercept; NaN when fewer than two points or
/// any value is non-finite.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace sbs::lab
