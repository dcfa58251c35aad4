#include "coverlab/covering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "coverlab/rng.hpp"

namespace coverlab {

namespace {
using nlohmann::json;

std::uint64_t pow2(int n) { return std::uint64_t{1} << n; }

// floor of a real radius; Hamming distance is integral
long long radius_floor(double r) {
  if (std::isnan(r)) throw std::invalid_argument("radius is NaN");
  return static_cast<long long>(std::floor(r));
}
}  // namespace

std::uint64_t DistanceProfile::total() const {
  std::uint64_t t = 0;
  for (std::uint64_t c : count) t += c;
  return t;
}

std::uint64_t DistanceProfile::uncovered_beyond(double r) const {
  long long rf = radius_floor(r);
  std::uint64_t u = 0;
  for (long long w = std::max(rf + 1, 0ll); w <= n; ++w)
    u += count[static_cast<std::size_t>(w)];
  if (rf < 0) u = total();
  return u;
}

int DistanceProfile::covering_radius() const {
  for (int w = n; w >= 0; --w)
    if (count[static_cast<std::size_t>(w)]) return w;
  return 0;
}

DistanceProfile distance_profile(const CubeSet& points, Exec exec) {
  if (points.empty()) throw std::invalid_argument("distance_profile: empty set");
  const int n = points.n();
  DistanceProfile profile;
  profile.n = n;
  profile.count.assign(static_cast<std::size_t>(n) + 1, 0);

  CubeSet covered = points;
  std::uint64_t seen = covered.count();
  profile.count[0] = seen;
  int w = 0;
  while (seen < points.universe()) {
    CubeSet next = covered.expanded(exec);
    std::uint64_t c = next.count();
    ++w;
    if (w > n) throw std::logic_error("distance_profile: expansion did not terminate");
    profile.count[static_cast<std::size_t>(w)] = c - seen;
    covered = std::move(next);
    seen = c;
  }
  return profile;
}

DistanceProfile distance_profile(std::span<const BitVector> points, Exec exec) {
  if (points.empty()) throw std::invalid_argument("distance_profile: empty set");
  const int n = points.front().length();
  CubeSet set(n);
  for (const auto& p : points) {
    if (p.length() != n) throw std::invalid_argument("distance_profile: mixed lengths");
    set.insert(p.index());
  }
  return distance_profile(set, exec);
}

DistanceProfile distance_profile(const LinearCode& code, Exec exec) {
  const int n = code.length(), k = code.dimension();
  CubeSet set(n);
  // Gray walk over the generator span, indices as integers
  std::uint64_t cw = 0;
  set.insert(0);
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] = code.generator().row(i).word(0);
  for (std::uint64_t j = 1; j < pow2(k); ++j) {
    cw ^= rows[static_cast<std::size_t>(std::countr_zero(j))];
    set.insert(cw);
  }
  return distance_profile(set, exec);
}

DistanceProfile coset_distance_profile(const LinearCode& code, Exec exec) {
  const int n = code.length(), k = code.dimension();
  auto leader = coset_leader_weight_counts(code, exec);
  DistanceProfile profile;
  profile.n = n;
  profile.count.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t w = 0; w < leader.size(); ++w)
    profile.count[w] = leader[w] << k;  // 2^k points per coset
  return profile;
}

std::string CoverReport::to_json() const {
  json j;
  j["schema"] = 1;
  j["n"] = n;
  j["radius"] = radius;
  j["eps"] = epsilon_target;
  j["method"] = method;
  std::ostringstream num, den;
  num << boost::multiprecision::numerator(uncovered);
  den << boost::multiprecision::denominator(uncovered);
  j["uncovered"] = {{"num", num.str()}, {"den", den.str()}, {"value", uncovered_value}};
  if (seed) j["seed"] = *seed;
  if (samples) j["samples"] = *samples;
  if (halfwidth) {
    j["halfwidth"] = *halfwidth;
    j["confidence"] = confidence;
  }
  return j.dump();
}

CoverReport eps_covering_radius_from_profile(const DistanceProfile& profile, double eps) {
  if (eps < 0 || eps > 1) throw std::invalid_argument("eps must lie in [0, 1]");
  const std::uint64_t universe = profile.total();
  const long double budget = static_cast<long double>(eps) * static_cast<long double>(universe);
  std::uint64_t uncovered = universe;
  int radius = profile.n;
  std::uint64_t covered = 0;
  for (int r = 0; r <= profile.n; ++r) {
    covered += profile.count[static_cast<std::size_t>(r)];
    std::uint64_t unc = universe - covered;
    if (static_cast<long double>(unc) <= budget) {
      radius = r;
      uncovered = unc;
      break;
    }
  }
  CoverReport report;
  report.n = profile.n;
  report.radius = radius;
  report.epsilon_target = eps;
  report.method = "exact";
  report.uncovered = BigRational(uncovered, pow2(profile.n));
  report.uncovered_value = static_cast<double>(report.uncovered);
  return report;
}

CoverReport eps_covering_radius_exact(const LinearCode& code, double eps, Exec exec) {
  return eps_covering_radius_from_profile(distance_profile(code, exec), eps);
}

CoverReport eps_covering_radius_exact(std::span<const BitVector> points, double eps, Exec exec) {
  return eps_covering_radius_from_profile(distance_profile(points, exec), eps);
}

BigRational uncovered_fraction(const DistanceProfile& profile, double radius) {
  return BigRational(profile.uncovered_beyond(radius), pow2(profile.n));
}

BigRational uncovered_fraction(const LinearCode& code, double radius, Exec exec) {
  return uncovered_fraction(distance_profile(code, exec), radius);
}

CoverReport eps_covering_radius_mc(const LinearCode& code, double eps, std::uint64_t samples,
                                   std::uint64_t seed, Exec exec) {
  if (eps < 0 || eps > 1) throw std::invalid_argument("eps must lie in [0, 1]");
  if (samples == 0) throw std::invalid_argument("eps_covering_radius_mc: samples >= 1");
  const int n = code.length(), k = code.dimension();
  if (k > 24) throw std::invalid_argument("eps_covering_radius_mc: k > 24 not enumerable");

  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
  const bool par = use_parallel(exec, samples * (std::uint64_t{1} << k), 1u << 18);

#pragma omp parallel if (par)
  {
    std::vector<std::uint64_t> local(hist.size(), 0);
#pragma omp for schedule(dynamic, 16) nowait
    for (long long i = 0; i < static_cast<long long>(samples); ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      BitVector u(n);
      for (int w = 0; w * 64 < n; ++w) {
        std::uint64_t word = rng.next();
        for (int b = 0; b < 64 && w * 64 + b < n; ++b)
          if ((word >> b) & 1) u.set_bit(w * 64 + b, true);
      }
      int d = coset_min_weight(code, u, Exec::Serial);
      ++local[static_cast<std::size_t>(d)];
    }
#pragma omp critical
    for (std::size_t w = 0; w < hist.size(); ++w) hist[w] += local[w];
  }

  return mc_report_from_distance_hist(n, hist, eps, samples, seed);
}

CoverReport mc_report_from_distance_hist(int n, const std::vector<std::uint64_t>& hist, double eps,
                                         std::uint64_t samples, std::uint64_t seed) {
  // empirical (1-eps)-quantile: smallest r with #{dist > r} <= eps * N
  const long double budget = static_cast<long double>(eps) * static_cast<long double>(samples);
  std::uint64_t seen = 0;
  int radius = n;
  std::uint64_t beyond = 0;
  for (int r = 0; r <= n; ++r) {
    seen += hist[static_cast<std::size_t>(r)];
    std::uint64_t unc = samples - seen;
    if (static_cast<long double>(unc) <= budget) {
      radius = r;
      beyond = unc;
      break;
    }
  }

  WilsonInterval wilson = wilson_interval_99(beyond, samples);
  CoverReport report;
  report.n = n;
  report.radius = radius;
  report.epsilon_target = eps;
  report.method = "monte-carlo";
  report.uncovered = BigRational(beyond, samples);
  report.uncovered_value = static_cast<double>(beyond) / static_cast<double>(samples);
  report.seed = seed;
  report.samples = samples;
  report.halfwidth = wilson.halfwidth;
  return report;
}

BallVolume ball_volume(int n, double radius) {
  if (n < 0) throw std::invalid_argument("ball_volume: n >= 0 required");
  long long r = radius_floor(radius);
  BallVolume out;
  if (r < 0) {
    out.exact = 0;
    out.value = 0.0;
    return out;
  }
  if (r > n) r = n;
  BigInt total = 0, binom = 1;
  for (long long w = 0; w <= r; ++w) {
    total += binom;
    binom = binom * (n - w) / (w + 1);
  }
  BigInt denom = BigInt(1) << n;
  out.exact = BigRational(total, denom);
  out.value = static_cast<double>(out.exact);
  return out;
}

double ball_volume_lower_bound(int n, double delta, double eps_prime) {
  if (n < 1 || delta <= 0 || eps_prime <= 0)
    throw std::invalid_argument("ball_volume_lower_bound: need n >= 1, delta > 0, eps' > 0");
  double t = delta + std::sqrt(2.0 * n) + 2.0;
  return std::exp(-(2.0 + eps_prime) * t * t / n);
}

WilsonInterval wilson_interval_99(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_interval_99: trials >= 1");
  const double z = 2.5758293035489004;  // 99% two-sided normal quantile
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  WilsonInterval w;
  w.center = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  w.halfwidth = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  w.lo = std::max(0.0, w.center - w.halfwidth);
  w.hi = std::min(1.0, w.center + w.halfwidth);
  return w;
}

}  // namespace coverlab
