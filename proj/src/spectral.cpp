#include "coverlab/spectral.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coverlab/covering.hpp"
#include "coverlab/mathutil.hpp"
#include "coverlab/rng.hpp"

namespace coverlab {

namespace {
constexpr double kSumTolerance = 1e-9;

void normalize_probabilities(std::vector<double>& p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -1e-12)) throw std::invalid_argument(std::string(what) + ": negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument(std::string(what) + ": probabilities sum to " + std::to_string(sum));
  for (double& v : p) {
    v = std::max(v, 0.0) / sum;
  }
}
}  // namespace

WeightDistribution::WeightDistribution(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("WeightDistribution: empty vector");
  normalize_probabilities(p_, "WeightDistribution");
}

WeightDistribution binomial_dist(int n) {
  if (n < 1) throw std::invalid_argument("binomial_dist: n >= 1 required");
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  BigInt binom = 1;
  const BigInt denom = BigInt(1) << n;
  for (int w = 0; w <= n; ++w) {
    p[static_cast<std::size_t>(w)] = static_cast<double>(BigRational(binom, denom));
    binom = binom * (n - w) / (w + 1);
  }
  return WeightDistribution(std::move(p));
}

SupportDistribution::SupportDistribution(std::vector<BitVector> support, std::vector<double> prob) {
  if (support.empty()) throw std::invalid_argument("SupportDistribution: empty support");
  if (support.size() != prob.size())
    throw std::invalid_argument("SupportDistribution: support/probability size mismatch");
  n_ = support.front().length();
  for (const auto& x : support)
    if (x.length() != n_) throw std::invalid_argument("SupportDistribution: mixed lengths");
  for (double v : prob)
    if (!(v > 0)) throw std::invalid_argument("SupportDistribution: probabilities must be positive");

  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  support_.reserve(support.size());
  prob_.reserve(prob.size());
  for (std::size_t i : order) {
    if (!support_.empty() && support_.back() == support[i])
      throw std::invalid_argument("SupportDistribution: duplicate support point");
    support_.push_back(std::move(support[i]));
    prob_.push_back(prob[i]);
  }
  normalize_probabilities(prob_, "SupportDistribution");
}

SupportDistribution SupportDistribution::uniform_on(std::vector<BitVector> support) {
  std::vector<double> prob(support.size(), 1.0 / static_cast<double>(support.size()));
  return SupportDistribution(std::move(support), std::move(prob));
}

SupportDistribution SupportDistribution::point_mass(BitVector x) {
  std::vector<BitVector> s;
  s.push_back(std::move(x));
  return SupportDistribution(std::move(s), {1.0});
}

SupportDistribution SupportDistribution::uniform_cube(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("uniform_cube: n in [1, 20]");
  std::vector<BitVector> s;
  s.reserve(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
    s.push_back(BitVector::from_index(n, x));
  return uniform_on(std::move(s));
}

SupportDistribution SupportDistribution::parse(std::istream& in) {
  int n = -1;
  long long count = -1;
  std::string line;
  std::vector<BitVector> support;
  std::vector<double> prob;
  auto parse_prob = [](const std::string& tok) {
    if (auto pos = tok.find('/'); pos != std::string::npos) {
      double p = std::stod(tok.substr(0, pos));
      double q = std::stod(tok.substr(pos + 1));
      if (q == 0) throw std::invalid_argument("distribution file: zero denominator");
      return p / q;
    }
    return std::stod(tok);
  };
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    if (n < 0) {
      if (ls >> n >> count) continue;
      std::istringstream probe(line);
      std::string tok;
      if (probe >> tok) throw std::invalid_argument("distribution file: bad header");
      continue;
    }
    std::string bits, ptok;
    if (!(ls >> bits)) continue;
    if (!(ls >> ptok)) throw std::invalid_argument("distribution file: missing probability");
    BitVector x = BitVector::parse(bits);
    if (x.length() != n) throw std::invalid_argument("distribution file: bitstring length != n");
    support.push_back(std::move(x));
    prob.push_back(parse_prob(ptok));
  }
  if (n < 0) throw std::invalid_argument("distribution file: missing header");
  if (count != static_cast<long long>(support.size()))
    throw std::invalid_argument("distribution file: expected " + std::to_string(count) + " entries");
  return SupportDistribution(std::move(support), std::move(prob));
}

void SupportDistribution::save(std::ostream& out) const {
  out << n_ << ' ' << support_.size() << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < support_.size(); ++i)
    out << support_[i].str() << ' ' << prob_[i] << '\n';
}

SupportDistribution mu_of_code(const LinearCode& code) {
  const int k = code.dimension();
  if (k > 22) throw std::invalid_argument("mu_of_code: k > 22, support too large");
  std::vector<BitVector> support;
  support.reserve(std::size_t{1} << k);
  BitVector cw(code.length());
  support.push_back(cw);
  for (std::uint64_t j = 1; j < (std::uint64_t{1} << k); ++j) {
    cw ^= code.generator().row(std::countr_zero(j));
    support.push_back(cw);
  }
  return SupportDistribution::uniform_on(std::move(support));
}

WeightDistribution weight_dist(const SupportDistribution& mu) {
  std::vector<double> p(static_cast<std::size_t>(mu.n()) + 1, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i)
    p[static_cast<std::size_t>(mu.support()[i].weight())] += mu.prob()[i];
  return WeightDistribution(std::move(p));
}

SupportDistribution translate(const SupportDistribution& mu, const BitVector& u) {
  if (u.length() != mu.n()) throw std::invalid_argument("translate: length mismatch");
  std::vector<BitVector> support;
  support.reserve(mu.size());
  for (const auto& x : mu.support()) support.push_back(x ^ u);
  return SupportDistribution(std::move(support), mu.prob());
}

SupportDistribution convolve(const SupportDistribution& mu1, const SupportDistribution& mu2) {
  if (mu1.n() != mu2.n()) throw std::invalid_argument("convolve: length mismatch");
  if (mu1.size() * mu2.size() > (std::size_t{1} << 24))
    throw std::invalid_argument("convolve: support product too large");
  std::vector<std::pair<BitVector, double>> acc;
  acc.reserve(mu1.size() * mu2.size());
  for (std::size_t i = 0; i < mu1.size(); ++i)
    for (std::size_t j = 0; j < mu2.size(); ++j)
      acc.emplace_back(mu1.support()[i] ^ mu2.support()[j], mu1.prob()[i] * mu2.prob()[j]);
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<BitVector> support;
  std::vector<double> prob;
  for (auto& [x, p] : acc) {
    if (!support.empty() && support.back() == x)
      prob.back() += p;
    else {
      support.push_back(std::move(x));
      prob.push_back(p);
    }
  }
  return SupportDistribution(std::move(support), std::move(prob));
}

std::complex<double> e_theta(const SupportDistribution& mu, double theta) {
  return e_theta(weight_dist(mu), theta);
}

std::complex<double> e_theta(const WeightDistribution& wd, double theta) {
  std::complex<double> acc = 0.0;
  for (int w = 0; w <= wd.n(); ++w)
    acc += wd[w] * std::polar(1.0, theta * w);
  return acc;
}

std::complex<double> e_theta_uniform(int n, double theta) {
  return cipow((1.0 + std::polar(1.0, theta)) / 2.0, n);
}

double cos_weight_expectation(const SupportDistribution& mu, double theta) {
  const double c = std::cos(theta);
  WeightDistribution wd = weight_dist(mu);
  double acc = 0.0;
  for (int w = 0; w <= wd.n(); ++w) acc += wd[w] * ipow(c, w);
  return acc;
}

double cos_weight_expectation_uniform(int n, double theta) {
  return ipow((std::cos(theta) + 1.0) / 2.0, n);
}

namespace {

struct PackedSupport {
  int n;
  std::vector<std::uint64_t> word;  // single word, n <= 22 exact sweeps
  std::vector<double> prob;

  explicit PackedSupport(const SupportDistribution& mu) : n(mu.n()) {
    if (n > 63) throw std::invalid_argument("translate sweep: n > 63");
    word.reserve(mu.size());
    for (const auto& x : mu.support()) word.push_back(x.index());
    prob = mu.prob();
  }
};

// |E_{sigma_u mu} e_theta - mean|^2 for one u, all thetas, shared histogram.
template <class Fn>
void for_each_translate_hist(const PackedSupport& ps, std::uint64_t u, Fn&& fn) {
  std::array<double, 64> hist{};
  for (std::size_t j = 0; j < ps.word.size(); ++j)
    hist[static_cast<std::size_t>(std::popcount(ps.word[j] ^ u))] += ps.prob[j];
  fn(hist);
}

}  // namespace

std::vector<double> mse_translate_lhs_batch(const SupportDistribution& mu,
                                            std::span<const double> thetas, Exec exec) {
  const int n = mu.n();
  if (n > 22) throw std::invalid_argument("mse_translate_lhs: exact sweep guarded at n <= 22");
  PackedSupport ps(mu);
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::size_t nt = thetas.size();

  std::vector<std::array<std::complex<double>, 64>> tab(nt);
  std::vector<std::complex<double>> mean(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    for (int w = 0; w <= n; ++w) tab[t][static_cast<std::size_t>(w)] = std::polar(1.0, thetas[t] * w);
    mean[t] = e_theta_uniform(n, thetas[t]);
  }

  std::vector<BlockSum> sums(nt, BlockSum(total));
  const std::size_t blocks = sums.front().blocks();
  const bool par = use_parallel(exec, total * mu.size(), 1u << 21);

#pragma omp parallel for schedule(static) if (par)
  for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * BlockSum::kBlock;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + BlockSum::kBlock, total);
    std::vector<double> acc(nt, 0.0);
    for (std::uint64_t u = lo; u < hi; ++u) {
      for_each_translate_hist(ps, u, [&](const std::array<double, 64>& hist) {
        for (std::size_t t = 0; t < nt; ++t) {
          std::complex<double> s = 0.0;
          for (int w = 0; w <= n; ++w) s += hist[static_cast<std::size_t>(w)] * tab[t][static_cast<std::size_t>(w)];
          acc[t] += std::norm(s - mean[t]);
        }
      });
    }
    for (std::size_t t = 0; t < nt; ++t) sums[t].block(static_cast<std::size_t>(b)) = acc[t];
  }

  std::vector<double> out(nt);
  for (std::size_t t = 0; t < nt; ++t) out[t] = sums[t].total() / static_cast<double>(total);
  return out;
}

double mse_translate_lhs(const SupportDistribution& mu, double theta, Exec exec) {
  const double th[1] = {theta};
  return mse_translate_lhs_batch(mu, th, exec).front();
}

SampledMean mse_translate_lhs_sampled(const SupportDistribution& mu, double theta,
                                      std::uint64_t samples, std::uint64_t seed, Exec exec) {
  if (samples == 0) throw std::invalid_argument("mse_translate_lhs_sampled: samples >= 1");
  const int n = mu.n();
  if (n > 63) throw std::invalid_argument("mse_translate_lhs_sampled: n > 63");
  PackedSupport ps(mu);
  std::array<std::complex<double>, 64> tab;
  for (int w = 0; w <= n; ++w) tab[static_cast<std::size_t>(w)] = std::polar(1.0, theta * w);
  const std::complex<double> mean = e_theta_uniform(n, theta);
  const std::uint64_t mask = n == 64 ? ~0ull : (1ull << n) - 1;

  std::vector<double> vals(samples);
  const bool par = use_parallel(exec, samples * mu.size(), 1u << 18);
#pragma omp parallel for schedule(static) if (par)
  for (long long i = 0; i < static_cast<long long>(samples); ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    std::uint64_t u = rng.next() & mask;
    for_each_translate_hist(ps, u, [&](const std::array<double, 64>& hist) {
      std::complex<double> s = 0.0;
      for (int w = 0; w <= n; ++w) s += hist[static_cast<std::size_t>(w)] * tab[static_cast<std::size_t>(w)];
      vals[static_cast<std::size_t>(i)] = std::norm(s - mean);
    });
  }
  SampledMean out;
  out.samples = samples;
  double acc = 0.0;
  for (double v : vals) acc += v;
  out.mean = acc / static_cast<double>(samples);
  double var = 0.0;
  for (double v : vals) var += (v - out.mean) * (v - out.mean);
  if (samples > 1) var /= static_cast<double>(samples - 1);
  out.stderr_ = std::sqrt(var / static_cast<double>(samples));
  return out;
}

double mse_translate_rhs(const SupportDistribution& mu, double theta) {
  SupportDistribution nu = convolve(mu, mu);
  return cos_weight_expectation(nu, theta) - cos_weight_expectation_uniform(mu.n(), theta);
}

double l1_to_binomial(const WeightDistribution& wd) {
  WeightDistribution b = binomial_dist(wd.n());
  double acc = 0.0;
  for (int w = 0; w <= wd.n(); ++w) acc += std::abs(wd[w] - b[w]);
  return acc;
}

double linf_to_binomial(const WeightDistribution& wd) {
  WeightDistribution b = binomial_dist(wd.n());
  double best = 0.0;
  for (int w = 0; w <= wd.n(); ++w) best = std::max(best, std::abs(wd[w] - b[w]));
  return best;
}

namespace {

// || hist/2^k - B_n ||_1 from integer counts
double l1_counts_vs(const std::vector<std::uint64_t>& counts, std::span<const double> binom,
                    int k) {
  const double scale = std::ldexp(1.0, -k);
  double acc = 0.0;
  for (std::size_t w = 0; w < counts.size(); ++w)
    acc += std::abs(static_cast<double>(counts[w]) * scale - binom[w]);
  return acc;
}

}  // namespace

double avg_coset_l1(const LinearCode& q, Exec exec) {
  const int n = q.length(), k = q.dimension();
  if (n - k > 22) throw std::invalid_argument("avg_coset_l1: more than 2^22 cosets");
  if (n > max_exact_cube_n())
    throw std::invalid_argument("avg_coset_l1: 2^n sweep exceeds the exact-cube guard");
  CosetTransversal tr(q);
  WeightDistribution binom = binomial_dist(n);
  const std::uint64_t cosets = tr.count();

  BlockSum sums(cosets);
  const bool par = use_parallel(exec, cosets << k, 1u << 18);
#pragma omp parallel for schedule(dynamic) if (par)
  for (long long b = 0; b < static_cast<long long>(sums.blocks()); ++b) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * BlockSum::kBlock;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + BlockSum::kBlock, cosets);
    double acc = 0.0;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      auto counts = coset_weight_histogram(q, tr.rep(idx), Exec::Serial);
      acc += l1_counts_vs(counts, binom.values(), k);
    }
    sums.block(static_cast<std::size_t>(b)) = acc;
  }
  return sums.total() / static_cast<double>(cosets);
}

SampledMean avg_coset_l1_sampled(const LinearCode& q, std::uint64_t samples, std::uint64_t seed,
                                 Exec exec) {
  if (samples == 0) throw std::invalid_argument("avg_coset_l1_sampled: samples >= 1");
  const int n = q.length(), k = q.dimension();
  WeightDistribution binom = binomial_dist(n);
  std::vector<double> vals(samples);
  const bool par = use_parallel(exec, samples << std::min(k, 30), 1u << 18);
#pragma omp parallel for schedule(dynamic, 4) if (par)
  for (long long i = 0; i < static_cast<long long>(samples); ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    BitVector u(n);
    for (int w = 0; w * 64 < n; ++w) {
      std::uint64_t word = rng.next();
      for (int bb = 0; bb < 64 && w * 64 + bb < n; ++bb)
        if ((word >> bb) & 1) u.set_bit(w * 64 + bb, true);
    }
    auto counts = coset_weight_histogram(q, u, Exec::Serial);
    vals[static_cast<std::size_t>(i)] = l1_counts_vs(counts, binom.values(), k);
  }
  SampledMean out;
  out.samples = samples;
  double acc = 0.0;
  for (double v : vals) acc += v;
  out.mean = acc / static_cast<double>(samples);
  double var = 0.0;
  for (double v : vals) var += (v - out.mean) * (v - out.mean);
  if (samples > 1) var /= static_cast<double>(samples - 1);
  out.stderr_ = std::sqrt(var / static_cast<double>(samples));
  return out;
}

}  // namespace coverlab
