#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coverlab/code.hpp"
#include "coverlab/cube.hpp"
#include "coverlab/parallel.hpp"

namespace coverlab {

using BigRational = boost::multiprecision::cpp_rational;

// Histogram over [0:n] of the number of cube points at Hamming distance
// exactly w from the reference set; entries sum to 2^n.
struct DistanceProfile {
  int n = 0;
  std::vector<std::uint64_t> count;

  std::uint64_t total() const;
  // Number of points at distance > r (r < 0 counts everything).
  std::uint64_t uncovered_beyond(double r) const;
  int covering_radius() const;  // max w with count[w] > 0
};

// Multi-source distance transform over the cube, level-by-level neighbor
// expansion on packed bitmasks.  Requires a nonempty set and n within the
// exact-cube guard.
DistanceProfile distance_profile(const CubeSet& points, Exec exec = Exec::Auto);
DistanceProfile distance_profile(std::span<const BitVector> points, Exec exec = Exec::Auto);
DistanceProfile distance_profile(const LinearCode& code, Exec exec = Exec::Auto);

// Exact profile of a linear code through coset-leader weights: every point of
// a coset lies at the coset's minimum weight.  Cost 2^n Gray steps, but the
// memory footprint is only the transversal, so it reaches past the cube
// guard (n <= 40).
DistanceProfile coset_distance_profile(const LinearCode& code, Exec exec = Exec::Auto);

struct CoverReport {
  int n = 0;
  int radius = 0;
  double epsilon_target = 0.0;
  std::string method;  // "exact" | "monte-carlo"
  BigRational uncovered;
  double uncovered_value = 0.0;
  // Monte-Carlo only:
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<double> halfwidth;  // Wilson 99% half-width on the fraction
  double confidence = 0.99;

  std::string to_json() const;
};

// Smallest r with at most eps * 2^n points outside B_n(C; r); eps = 0 is the
// covering radius.
CoverReport eps_covering_radius_exact(const LinearCode& code, double eps, Exec exec = Exec::Auto);
CoverReport eps_covering_radius_exact(std::span<const BitVector> points, double eps,
                                      Exec exec = Exec::Auto);
CoverReport eps_covering_radius_from_profile(const DistanceProfile& profile, double eps);

BigRational uncovered_fraction(const DistanceProfile& profile, double radius);
BigRational uncovered_fraction(const LinearCode& code, double radius, Exec exec = Exec::Auto);

// Samples uniform points, computes exact distances to the code (2^k sweep per
// sample, k <= 24), reports the empirical (1-eps)-quantile radius and a
// Wilson interval on the uncovered fraction at that radius.  Sample i draws
// from stream (seed, i), so results do not depend on thread count.
CoverReport eps_covering_radius_mc(const LinearCode& code, double eps, std::uint64_t samples,
                                   std::uint64_t seed, Exec exec = Exec::Auto);

// Quantile + Wilson-interval assembly shared by the Monte-Carlo paths;
// hist[w] = number of sampled points at distance w.
CoverReport mc_report_from_distance_hist(int n, const std::vector<std::uint64_t>& hist, double eps,
                                         std::uint64_t samples, std::uint64_t seed);

struct BallVolume {
  BigRational exact;
  double value = 0.0;
};

// v_n(R) = 2^-n sum_{w <= floor(R)} C(n, w), exact plus a real rendering.
BallVolume ball_volume(int n, double radius);

// exp(-(2+eps')(Delta + sqrt(2n) + 2)^2 / n).
double ball_volume_lower_bound(int n, double delta, double eps_prime);

struct WilsonInterval {
  double center = 0.0;
  double halfwidth = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval at 99% two-sided confidence.
WilsonInterval wilson_interval_99(std::uint64_t successes, std::uint64_t trials);

}  // namespace coverlab
