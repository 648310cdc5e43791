#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace hyperthresh {

/// Stable per-component seed: splitmix64 over (seed, FNV-1a of name).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view component);

/// Points on the unit sphere S^d, stored row-major in R^{d+1}.
struct SphereSample {
  int d = 0;
  std::uint64_t seed = 0;
  std::vector<double> coords;

  int ambient() const { return d + 1; }
  std::size_t size() const { return coords.size() / static_cast<std::size_t>(ambient()); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(ambient()), static_cast<std::size_t>(ambient())};
  }
};

/// i.i.d. uniform points via normalized Gaussian vectors; deterministic per
/// (n, d, seed). Throws InputError for n = 0 or d = 0.
SphereSample sample_points(std::size_t n, int d, std::uint64_t seed);

/// Uniform point on S^d drawn from `rng`.
std::vector<double> random_unit_vector(int d, std::mt19937_64& rng);

double dist(std::span<const double> p, std::span<const double> q);

/// Slack applied to every strict inequality checked by the lemma verifiers.
inline constexpr double kBoundarySlack = 1e-9;

/// Hypothesis of the near-or-far lemma for one pair: rho < a or rho > 2 - a.
bool near_or_far_pair(double rho, double a);

/// Conclusion of the near-or-far lemma for (x, z):
/// rho(x,z) < 4 sqrt(a) or rho(x,z) > 2 - 4 sqrt(a), with kBoundarySlack.
/// Throws InputError unless 0 < a < 1/10.
bool verify_near_or_far(std::span<const double> x, std::span<const double> y, std::span<const double> z, double a);

struct NearOrFarTrial {
  std::vector<double> x, y, z;
  double rho_xy = 0, rho_yz = 0, rho_xz = 0;
  bool hypotheses = false;
  bool conclusion = false;
  /// Distance of rho_xz from the excluded band [4 sqrt(a), 2 - 4 sqrt(a)];
  /// positive when the conclusion holds.
  double margin = 0;
};

/// Builds a triple whose consecutive distances straddle the hypothesis
/// thresholds (both near and far regimes), then evaluates it.
NearOrFarTrial near_or_far_trial(int d, double a, std::mt19937_64& rng);

struct CapEstimate {
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of the normalized measure of
/// {q in S^d : |p - q| <= radius}. Same seed, same sample set.
CapEstimate cap_estimate(int d, double radius, std::size_t samples, std::uint64_t seed);
double cap_measure(int d, double radius, std::size_t samples, std::uint64_t seed);

/// Geometric grid 0.1, 0.05, 0.025, ... used for beta and theta.
double grid_value(int step);

/// Largest grid beta with (estimate - 3 SE) >= 1/2 - epsilon at chordal
/// radius sqrt(2) - beta. Throws InfeasibleParameters if no grid point passes.
double choose_beta(double epsilon, int d, std::size_t samples, std::uint64_t seed);

/// Diameter of the cap {q : |p - q| <= sqrt(2) - beta}, closed form.
double cap_diameter(double beta);

/// 4^f * theta^(2^-f), evaluated in log space.
double theta_budget(int f, double theta);

struct GeoParams {
  double epsilon = 0;
  double beta = 0;
  double theta = 0;
  int f = 0;
  double theta_budget = 0;  ///< 4^f theta^(2^-f)
  double cap_diameter = 0;

  bool budget_ok() const { return theta_budget < 0.1; }
  bool diameter_ok() const { return cap_diameter < 2.0 - theta_budget; }
};

/// Largest grid theta with 4^f theta^(2^-f) < 1/10 and
/// cap_diameter(beta) < 2 - 4^f theta^(2^-f).
GeoParams choose_theta(int f, double beta);

struct ThetaChainRow {
  int j = 0;
  double scale = 0;     ///< 4^j theta^(2^-j)
  double composed = 0;  ///< 4 sqrt(scale)
  double next = 0;      ///< 4^(j+1) theta^(2^-(j+1))
  bool holds = false;   ///< composed <= next
};

/// The scale-composition chain for j = 0..f.
std::vector<ThetaChainRow> theta_chain(int f, double theta);

}  // namespace hyperthresh
