#include "hyperthresh/spheregeo.hpp"

#include <cmath>
#include <string>

#include "hyperthresh/common.hpp"

namespace hyperthresh {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void normalize(std::vector<double>& v) {
  double norm = 0;
  for (double c : v) norm += c * c;
  norm = std::sqrt(norm);
  for (double& c : v) c /= norm;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view component) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : component) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

std::vector<double> random_unit_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(d + 1));
  double norm2 = 0;
  do {
    norm2 = 0;
    for (double& c : v) {
      c = normal(rng);
      norm2 += c * c;
    }
  } while (norm2 < 1e-300);
  normalize(v);
  return v;
}

SphereSample sample_points(std::size_t n, int d, std::uint64_t seed) {
  if (n == 0) throw InputError("sample_points needs n >= 1");
  if (d <= 0) throw InputError("sample_points needs sphere dimension d >= 1");
  SphereSample s;
  s.d = d;
  s.seed = seed;
  s.coords.reserve(n * static_cast<std::size_t>(d + 1));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = random_unit_vector(d, rng);
    s.coords.insert(s.coords.end(), v.begin(), v.end());
  }
  return s;
}

double dist(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw InputError("dimension mismatch: " + std::to_string(p.size()) + " vs " + std::to_string(q.size()));
  }
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(s);
}

bool near_or_far_pair(double rho, double a) { return rho < a || rho > 2.0 - a; }

namespace {

void check_scale(double a) {
  if (!(a > 0.0 && a < 0.1)) throw InputError("near-or-far scale must satisfy 0 < a < 1/10");
}

double conclusion_margin(double rho, double a) {
  const double band = 4.0 * std::sqrt(a);
  return std::max(band - rho, rho - (2.0 - band));
}

}  // namespace

bool verify_near_or_far(std::span<const double> x, std::span<const double>, std::span<const double> z, double a) {
  check_scale(a);
  return conclusion_margin(dist(x, z), a) > -kBoundarySlack;
}

NearOrFarTrial near_or_far_trial(int d, double a, std::mt19937_64& rng) {
  check_scale(a);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Point at chordal distance rho from `from`: rotate along a random
  // direction orthogonal to it.
  auto at_distance = [&](const std::vector<double>& from, double rho) {
    std::vector<double> u = random_unit_vector(d, rng);
    double dot = 0;
    for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * from[i];
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= dot * from[i];
    normalize(u);
    const double angle = 2.0 * std::asin(std::min(1.0, rho / 2.0));
    std::vector<double> out(from.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::cos(angle) * from[i] + std::sin(angle) * u[i];
    normalize(out);
    return out;
  };
  // Targets overshoot the thresholds by 20% so rejection sees both sides.
  auto target = [&] {
    const double offset = 1.2 * a * unit(rng);
    return unit(rng) < 0.5 ? offset : 2.0 - offset;
  };
  NearOrFarTrial t;
  t.x = random_unit_vector(d, rng);
  t.y = at_distance(t.x, target());
  t.z = at_distance(t.y, target());
  t.rho_xy = dist(t.x, t.y);
  t.rho_yz = dist(t.y, t.z);
  t.rho_xz = dist(t.x, t.z);
  t.hypotheses = near_or_far_pair(t.rho_xy, a) && near_or_far_pair(t.rho_yz, a);
  t.margin = conclusion_margin(t.rho_xz, a);
  t.conclusion = verify_near_or_far(t.x, t.y, t.z, a);
  return t;
}

CapEstimate cap_estimate(int d, double radius, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InputError("cap estimate needs at least one sample");
  if (d <= 0) throw InputError("sphere dimension must be positive");
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  std::vector<double> pole(static_cast<std::size_t>(d + 1), 0.0);
  pole[0] = 1.0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (dist(pole, random_unit_vector(d, rng)) <= radius) ++hits;
  }
  CapEstimate est;
  est.samples = samples;
  est.mean = static_cast<double>(hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(samples));
  return est;
}

double cap_measure(int d, double radius, std::size_t samples, std::uint64_t seed) {
  return cap_estimate(d, radius, samples, seed).mean;
}

double grid_value(int step) { return 0.1 * std::ldexp(1.0, -step); }

double choose_beta(double epsilon, int d, std::size_t samples, std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw InputError("epsilon must satisfy 0 < epsilon < 1/2");
  if (d <= 0) throw InputError("sphere dimension must be positive");
  if (samples == 0) throw InputError("choose_beta needs at least one sample");
  // One fixed sample set; the cap test is monotone in beta along it.
  std::mt19937_64 rng(seed);
  std::vector<double> pole(static_cast<std::size_t>(d + 1), 0.0);
  pole[0] = 1.0;
  std::vector<double> distances(samples);
  for (auto& x : distances) x = dist(pole, random_unit_vector(d, rng));
  for (int step = 0; step < 60; ++step) {
    const double beta = grid_value(step);
    const double radius = std::sqrt(2.0) - beta;
    std::size_t hits = 0;
    for (double x : distances) hits += x <= radius;
    const double mean = static_cast<double>(hits) / static_cast<double>(samples);
    const double se = std::sqrt(mean * (1.0 - mean) / static_cast<double>(samples));
    if (mean - 3.0 * se >= 0.5 - epsilon) return beta;
  }
  throw InfeasibleParameters("no grid beta certifies cap measure >= 1/2 - " + std::to_string(epsilon) +
                             " with " + std::to_string(samples) + " samples; use more samples");
}

double cap_diameter(double beta) {
  const double radius = std::sqrt(2.0) - beta;
  if (radius >= std::sqrt(2.0)) return 2.0;
  if (radius <= 0) return 0.0;
  return 2.0 * radius * std::sqrt(1.0 - radius * radius / 4.0);
}

double theta_budget(int f, double theta) {
  return std::exp(f * std::log(4.0) + std::ldexp(std::log(theta), -f));
}

GeoParams choose_theta(int f, double beta) {
  if (f < 1) throw InputError("edge count f must be at least 1");
  if (!(beta > 0.0 && beta < std::sqrt(2.0))) throw InputError("beta must satisfy 0 < beta < sqrt(2)");
  GeoParams p;
  p.beta = beta;
  p.f = f;
  p.cap_diameter = cap_diameter(beta);
  // Stop before theta leaves the normal double range.
  for (int step = 0; step <= 1000; ++step) {
    p.theta = grid_value(step);
    p.theta_budget = theta_budget(f, p.theta);
    if (p.budget_ok() && p.diameter_ok()) return p;
  }
  throw InfeasibleParameters("no representable theta satisfies 4^f theta^(2^-f) < min(1/10, 2 - cap diameter) for f = " +
                             std::to_string(f));
}

std::vector<ThetaChainRow> theta_chain(int f, double theta) {
  std::vector<ThetaChainRow> rows;
  for (int j = 0; j <= f; ++j) {
    ThetaChainRow row;
    row.j = j;
    row.scale = theta_budget(j, theta);
    row.composed = 4.0 * std::sqrt(row.scale);
    row.next = theta_budget(j + 1, theta);
    row.holds = row.composed <= row.next * (1.0 + 1e-12);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hyperthresh
