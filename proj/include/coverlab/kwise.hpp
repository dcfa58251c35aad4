#pragma once

#include <cstdint>
#include <optional>

#include "coverlab/covering.hpp"
#include "coverlab/spectral.hpp"

namespace coverlab {

struct IndependenceReport {
  bool independent = false;
  double max_violation = 0.0;
  std::optional<BitVector> witness;  // a z attaining the maximum |E chi_z|
};

// mu is k-wise independent iff E_mu chi_z = 0 for all 0 < |z| <= k.  Character
// sums go by direct summation over the support, z enumerated by weight
// shells.  With dyadic probabilities the sums are exact in integers;
// otherwise violations below 1e-12 count as zero.
IndependenceReport is_kwise_independent(const SupportDistribution& mu, int k);
// Adds the high shell |z| >= n - k (including z = all-ones).
IndependenceReport is_bilateral_kwise_independent(const SupportDistribution& mu, int k);

// Same tests for mu_C without materializing the support: E_{mu_C} chi_z is 1
// on the dual code and 0 elsewhere, so the scan reduces to a syndrome walk
// over low-weight z (dual distance > k check).  Requires dimension <= 64.
bool code_kwise_independent(const LinearCode& c, int k, Exec exec = Exec::Auto);
bool code_bilateral_kwise_independent(const LinearCode& c, int k, Exec exec = Exec::Auto);

// gamma = mu x U_d on n + d coordinates.
SupportDistribution product_with_uniform(const SupportDistribution& mu, int d);
// mu * mu_D.
SupportDistribution convolve_with_code(const SupportDistribution& mu, const LinearCode& d);

// eps-covering radius of the support of mu.
CoverReport support_cover_report(const SupportDistribution& mu, double eps, Exec exec = Exec::Auto);
CoverReport support_cover_report_mc(const SupportDistribution& mu, double eps,
                                    std::uint64_t samples, std::uint64_t seed,
                                    Exec exec = Exec::Auto);

// E_{u ~ U_n} || weightdist(sigma_u mu) - B_n || for L1 / Linf, exact sweep
// over all 2^n translates (n <= 22) or sampled.
double avg_translate_l1(const SupportDistribution& mu, Exec exec = Exec::Auto);
double avg_translate_linf(const SupportDistribution& mu, Exec exec = Exec::Auto);
SampledMean avg_translate_l1_sampled(const SupportDistribution& mu, std::uint64_t samples,
                                     std::uint64_t seed, Exec exec = Exec::Auto);
SampledMean avg_translate_linf_sampled(const SupportDistribution& mu, std::uint64_t samples,
                                       std::uint64_t seed, Exec exec = Exec::Auto);
// Mean-square-error average; alias of the spectral sweep.
double avg_translate_mse(const SupportDistribution& mu, double theta, Exec exec = Exec::Auto);

}  // namespace coverlab
