#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "coverlab/bitvec.hpp"
#include "coverlab/code.hpp"
#include "coverlab/parallel.hpp"

namespace coverlab {

// Probability vector on [0:n]; entries nonnegative, sum 1 (validated to 1e-9
// on input, renormalized, then exact to 1e-12).
class WeightDistribution {
 public:
  explicit WeightDistribution(std::vector<double> p);
  int n() const { return static_cast<int>(p_.size()) - 1; }
  double operator[](int w) const { return p_[static_cast<std::size_t>(w)]; }
  std::span<const double> values() const { return p_; }

 private:
  std::vector<double> p_;
};

// B_n(w) = C(n,w) / 2^n.
WeightDistribution binomial_dist(int n);

// Explicit distribution on {0,1}^n: distinct support points in canonical
// order with positive probabilities summing to 1.
class SupportDistribution {
 public:
  SupportDistribution(std::vector<BitVector> support, std::vector<double> prob);
  static SupportDistribution uniform_on(std::vector<BitVector> support);
  static SupportDistribution point_mass(BitVector x);
  static SupportDistribution uniform_cube(int n);  // guard n <= 20

  // File format: header "n s", then s lines "bitstring probability";
  // probabilities decimal or "p/q".
  static SupportDistribution parse(std::istream& in);
  void save(std::ostream& out) const;

  int n() const { return n_; }
  std::size_t size() const { return support_.size(); }
  const std::vector<BitVector>& support() const { return support_; }
  const std::vector<double>& prob() const { return prob_; }

 private:
  SupportDistribution() = default;
  int n_ = 0;
  std::vector<BitVector> support_;
  std::vector<double> prob_;
};

// Uniform distribution on the codewords; guard k <= 22.
SupportDistribution mu_of_code(const LinearCode& code);

// Pushforward by Hamming weight.
WeightDistribution weight_dist(const SupportDistribution& mu);

// (sigma_u mu)(x) = mu(x + u).
SupportDistribution translate(const SupportDistribution& mu, const BitVector& u);

// (mu1 * mu2)(x) = sum_y mu1(y) mu2(x + y).
SupportDistribution convolve(const SupportDistribution& mu1, const SupportDistribution& mu2);

// E e^{i theta |x|}.
std::complex<double> e_theta(const SupportDistribution& mu, double theta);
std::complex<double> e_theta(const WeightDistribution& wd, double theta);
// E_{U_n} e_theta = ((1 + e^{i theta}) / 2)^n.
std::complex<double> e_theta_uniform(int n, double theta);
// E (cos theta)^{|y|} under the distribution.
double cos_weight_expectation(const SupportDistribution& mu, double theta);
double cos_weight_expectation_uniform(int n, double theta);

// E_{u ~ U_n} | E_{sigma_u mu} e_theta - E_{U_n} e_theta |^2, exact sweep over
// all 2^n translates (n <= 22).  The batch form shares the per-translate
// weight histograms across all theta values.
double mse_translate_lhs(const SupportDistribution& mu, double theta, Exec exec = Exec::Auto);
std::vector<double> mse_translate_lhs_batch(const SupportDistribution& mu,
                                            std::span<const double> thetas,
                                            Exec exec = Exec::Auto);

struct SampledMean {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
};

SampledMean mse_translate_lhs_sampled(const SupportDistribution& mu, double theta,
                                      std::uint64_t samples, std::uint64_t seed,
                                      Exec exec = Exec::Auto);

// E_{y ~ mu * mu} (cos theta)^{|y|} - E_{y ~ U_n} (cos theta)^{|y|}.
double mse_translate_rhs(const SupportDistribution& mu, double theta);

double l1_to_binomial(const WeightDistribution& wd);
double linf_to_binomial(const WeightDistribution& wd);

// E_{u ~ U_n} || weightdist(Q + u) - B_n ||_1, exact over one representative
// per coset (the functional is constant on cosets); n - k <= 22 and the sweep
// costs 2^n Gray steps.
double avg_coset_l1(const LinearCode& q, Exec exec = Exec::Auto);
SampledMean avg_coset_l1_sampled(const LinearCode& q, std::uint64_t samples, std::uint64_t seed,
                                 Exec exec = Exec::Auto);

}  // namespace coverlab
