#include "coverlab/kwise.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "coverlab/mathutil.hpp"
#include "coverlab/rng.hpp"

namespace coverlab {

namespace {

constexpr double kCharTolerance = 1e-12;

// Decompose p = M * 2^E0 with M odd; returns (M, E0).
std::optional<std::pair<std::int64_t, int>> dyadic_parts(double p) {
  int ex = 0;
  double f = std::frexp(p, &ex);  // p = f * 2^ex, f in [0.5, 1)
  double scaled = std::ldexp(f, 53);
  if (scaled != std::floor(scaled)) return std::nullopt;
  std::int64_t m = static_cast<std::int64_t>(scaled);
  int shift = std::countr_zero(static_cast<std::uint64_t>(m));
  return std::make_pair(m >> shift, ex - 53 + shift);
}

// Integer weights w_j with p_j = w_j / 2^E; only when every probability is a
// dyadic rational with at most 62 fractional bits and the weights sum to 2^E.
std::optional<std::pair<std::vector<std::int64_t>, int>> dyadic_weights(
    const std::vector<double>& prob) {
  int need = 0;
  std::vector<std::pair<std::int64_t, int>> parts;
  parts.reserve(prob.size());
  for (double p : prob) {
    auto d = dyadic_parts(p);
    if (!d) return std::nullopt;
    parts.push_back(*d);
    need = std::max(need, -d->second);
  }
  if (need > 62) return std::nullopt;
  std::vector<std::int64_t> w;
  w.reserve(prob.size());
  std::int64_t sum = 0;
  for (auto [m, e0] : parts) {
    int shift = e0 + need;
    if (shift < 0 || shift > 62) return std::nullopt;
    std::int64_t v = m << shift;
    w.push_back(v);
    sum += v;
  }
  if (sum != (std::int64_t{1} << need)) return std::nullopt;
  return std::make_pair(std::move(w), need);
}

// DFS over all z with 1 <= |z| <= k (optionally seeded with the all-ones
// character for the bilateral high shell).  signed_w carries chi_z(x_j) w_j;
// adding coordinate c flips the sign of every support point with bit c set.
template <class W>
struct ShellScan {
  const std::vector<BitVector>& support;
  int n;
  int k;
  double scale;  // converts |sum| to |E chi_z|
  double max_violation = 0.0;
  std::optional<BitVector> witness;
  std::vector<std::vector<W>> stack;
  std::vector<int> chosen;

  ShellScan(const std::vector<BitVector>& s, int n_, int k_, double scale_)
      : support(s), n(n_), k(k_), scale(scale_),
        stack(static_cast<std::size_t>(k_) + 1) {}

  void note(W sum, bool include_ones) {
    double v = std::abs(static_cast<double>(sum)) * scale;
    if (v > max_violation) {
      max_violation = v;
      BitVector z(n);
      for (int c : chosen) z.set_bit(c, true);
      if (include_ones) z = z.complement();
      witness = z;
    }
  }

  void run(std::vector<W> base, bool include_ones) {
    stack[0] = std::move(base);
    if (include_ones) {
      W s = 0;
      for (W v : stack[0]) s += v;
      chosen.clear();
      note(s, true);
    }
    chosen.clear();
    if (k >= 1) descend(0, 0, include_ones);
  }

  void descend(int depth, int start, bool include_ones) {
    auto& cur = stack[static_cast<std::size_t>(depth)];
    auto& next = stack[static_cast<std::size_t>(depth) + 1];
    next.resize(cur.size());
    for (int c = start; c < n; ++c) {
      W sum = 0;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        next[j] = support[j].bit(c) ? static_cast<W>(-cur[j]) : cur[j];
        sum += next[j];
      }
      chosen.push_back(c);
      note(sum, include_ones);
      if (depth + 1 < k) descend(depth + 1, c + 1, include_ones);
      chosen.pop_back();
    }
  }
};

template <class W>
IndependenceReport scan_distribution(const SupportDistribution& mu, int k, bool bilateral,
                                     std::vector<W> weights, double scale) {
  ShellScan<W> scan(mu.support(), mu.n(), k, scale);
  scan.run(weights, false);
  IndependenceReport report;
  if (bilateral && mu.n() >= 1) {
    // high shell as complements of weight <= min(k, n-1) masks (z = 0 is the
    // complement of the full set and must stay excluded);
    // chi_{~z'}(x) = (-1)^{|x|} chi_{z'}(x): flip the sign of odd-weight points
    std::vector<W> flipped = weights;
    for (std::size_t j = 0; j < flipped.size(); ++j)
      if (mu.support()[j].weight() & 1) flipped[j] = static_cast<W>(-flipped[j]);
    ShellScan<W> high(mu.support(), mu.n(), std::min(k, mu.n() - 1), scale);
    high.run(std::move(flipped), true);
    if (high.max_violation > scan.max_violation) {
      scan.max_violation = high.max_violation;
      scan.witness = high.witness;
    }
  }
  report.max_violation = scan.max_violation;
  report.witness = scan.witness;
  report.independent = scan.max_violation <= kCharTolerance;
  return report;
}

IndependenceReport independence_scan(const SupportDistribution& mu, int k, bool bilateral) {
  if (k < 1 || k > mu.n()) throw std::invalid_argument("k-wise test: need 1 <= k <= n");
  if (auto dyadic = dyadic_weights(mu.prob())) {
    auto& [w, e] = *dyadic;
    return scan_distribution<std::int64_t>(mu, k, bilateral, std::move(w),
                                           std::ldexp(1.0, -e));
  }
  return scan_distribution<double>(mu, k, bilateral, mu.prob(), 1.0);
}

}  // namespace

IndependenceReport is_kwise_independent(const SupportDistribution& mu, int k) {
  return independence_scan(mu, k, false);
}

IndependenceReport is_bilateral_kwise_independent(const SupportDistribution& mu, int k) {
  return independence_scan(mu, k, true);
}

namespace {

// z is in the dual of C iff its syndrome against the generator rows is zero.
struct SyndromeScan {
  int n;
  int k;
  std::vector<std::uint64_t> col;  // col[j] = generator column j as a bitmask

  SyndromeScan(const LinearCode& c, int kk) : n(c.length()), k(kk) {
    if (c.dimension() > 64) throw std::invalid_argument("code kwise test: dimension > 64");
    col.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < c.dimension(); ++i)
      for (int j = 0; j < n; ++j)
        if (c.generator().row(i).bit(j)) col[static_cast<std::size_t>(j)] |= 1ull << i;
  }

  // true iff some z with 1 <= |z| <= k has zero syndrome relative to `base`
  // (base = 0 for the low shell, base = syndrome(all-ones) for the high one;
  // with base != 0 the empty z is also a candidate).
  bool hit(std::uint64_t base, bool include_root, Exec exec) const {
    if (include_root && base == 0) return true;
    std::atomic<bool> found{false};
    const bool par = use_parallel(exec, static_cast<unsigned long long>(n) << std::min(k, 30), 1u << 18);
#pragma omp parallel for schedule(dynamic) if (par)
    for (int c0 = 0; c0 < n; ++c0) {
      if (found.load(std::memory_order_relaxed)) continue;
      if (walk(base ^ col[static_cast<std::size_t>(c0)], c0 + 1, 1))
        found.store(true, std::memory_order_relaxed);
    }
    return found.load();
  }

  bool walk(std::uint64_t synd, int start, int depth) const {
    if (synd == 0) return true;
    if (depth == k) return false;
    for (int c = start; c < n; ++c)
      if (walk(synd ^ col[static_cast<std::size_t>(c)], c + 1, depth + 1)) return true;
    return false;
  }
};

}  // namespace

bool code_kwise_independent(const LinearCode& c, int k, Exec exec) {
  if (k < 1 || k > c.length()) throw std::invalid_argument("code kwise test: need 1 <= k <= n");
  if (c.dimension() == 0) return false;  // mu_{0} is a point mass
  SyndromeScan scan(c, k);
  return !scan.hit(0, false, exec);
}

bool code_bilateral_kwise_independent(const LinearCode& c, int k, Exec exec) {
  if (!code_kwise_independent(c, k, exec)) return false;
  std::uint64_t ones_synd = 0;
  for (int i = 0; i < c.dimension(); ++i)
    if (c.generator().row(i).weight() & 1) ones_synd |= 1ull << i;
  if (ones_synd == 0) return false;  // the all-ones vector lies in the dual
  // remaining high shell: complements of masks of weight 1..min(k, n-1)
  const int high_k = std::min(k, c.length() - 1);
  if (high_k < 1) return true;
  SyndromeScan scan(c, high_k);
  return !scan.hit(ones_synd, false, exec);
}

SupportDistribution product_with_uniform(const SupportDistribution& mu, int d) {
  if (d < 1) throw std::invalid_argument("product_with_uniform: d >= 1 required");
  if (mu.size() << d > (std::size_t{1} << 22))
    throw std::invalid_argument("product_with_uniform: support too large");
  std::vector<BitVector> support;
  std::vector<double> prob;
  support.reserve(mu.size() << d);
  const double scale = std::ldexp(1.0, -d);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v) {
    BitVector tail = BitVector::from_index(d, v);
    for (std::size_t j = 0; j < mu.size(); ++j) {
      support.push_back(BitVector::concat(mu.support()[j], tail));
      prob.push_back(mu.prob()[j] * scale);
    }
  }
  return SupportDistribution(std::move(support), std::move(prob));
}

SupportDistribution convolve_with_code(const SupportDistribution& mu, const LinearCode& d) {
  if (d.length() != mu.n()) throw std::invalid_argument("convolve_with_code: length mismatch");
  if (d.dimension() == 0) return mu;
  return convolve(mu, mu_of_code(d));
}

CoverReport support_cover_report(const SupportDistribution& mu, double eps, Exec exec) {
  return eps_covering_radius_exact(std::span<const BitVector>(mu.support()), eps, exec);
}

CoverReport support_cover_report_mc(const SupportDistribution& mu, double eps,
                                    std::uint64_t samples, std::uint64_t seed, Exec exec) {
  if (samples == 0) throw std::invalid_argument("support_cover_report_mc: samples >= 1");
  const int n = mu.n();
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<std::uint64_t> pts(mu.size() * words);
  for (std::size_t j = 0; j < mu.size(); ++j)
    for (std::size_t w = 0; w < words; ++w) pts[j * words + w] = mu.support()[j].word(w);

  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
  const bool par = use_parallel(exec, samples * mu.size(), 1u << 18);
#pragma omp parallel if (par)
  {
    std::vector<std::uint64_t> local(hist.size(), 0);
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < static_cast<long long>(samples); ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      std::vector<std::uint64_t> u(words);
      for (std::size_t w = 0; w < words; ++w) u[w] = rng.next();
      if (n % 64 != 0) u[words - 1] &= (1ull << (n % 64)) - 1;
      int best = n;
      for (std::size_t j = 0; j < mu.size(); ++j) {
        int dist = 0;
        for (std::size_t w = 0; w < words; ++w)
          dist += std::popcount(pts[j * words + w] ^ u[w]);
        best = std::min(best, dist);
      }
      ++local[static_cast<std::size_t>(best)];
    }
#pragma omp critical
    for (std::size_t w = 0; w < hist.size(); ++w) hist[w] += local[w];
  }
  return mc_report_from_distance_hist(n, hist, eps, samples, seed);
}

namespace {

enum class TranslateNorm { L1, Linf };

double norm_vs_binomial(const std::array<double, 64>& hist, std::span<const double> binom, int n,
                        TranslateNorm norm) {
  double acc = 0.0;
  for (int w = 0; w <= n; ++w) {
    double d = std::abs(hist[static_cast<std::size_t>(w)] - binom[static_cast<std::size_t>(w)]);
    if (norm == TranslateNorm::L1)
      acc += d;
    else
      acc = std::max(acc, d);
  }
  return acc;
}

double avg_translate_exact(const SupportDistribution& mu, TranslateNorm norm, Exec exec) {
  const int n = mu.n();
  if (n > 22) throw std::invalid_argument("avg_translate: exact sweep guarded at n <= 22");
  WeightDistribution binom = binomial_dist(n);
  std::vector<std::uint64_t> pts;
  pts.reserve(mu.size());
  for (const auto& x : mu.support()) pts.push_back(x.index());
  const std::uint64_t total = std::uint64_t{1} << n;

  BlockSum sums(total);
  const bool par = use_parallel(exec, total * mu.size(), 1u << 18);
#pragma omp parallel for schedule(static) if (par)
  for (long long b = 0; b < static_cast<long long>(sums.blocks()); ++b) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * BlockSum::kBlock;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + BlockSum::kBlock, total);
    double acc = 0.0;
    for (std::uint64_t u = lo; u < hi; ++u) {
      std::array<double, 64> hist{};
      for (std::size_t j = 0; j < pts.size(); ++j)
        hist[static_cast<std::size_t>(std::popcount(pts[j] ^ u))] += mu.prob()[j];
      acc += norm_vs_binomial(hist, binom.values(), n, norm);
    }
    sums.block(static_cast<std::size_t>(b)) = acc;
  }
  return sums.total() / static_cast<double>(total);
}

SampledMean avg_translate_sampled(const SupportDistribution& mu, TranslateNorm norm,
                                  std::uint64_t samples, std::uint64_t seed, Exec exec) {
  if (samples == 0) throw std::invalid_argument("avg_translate_sampled: samples >= 1");
  const int n = mu.n();
  if (n > 63) throw std::invalid_argument("avg_translate_sampled: n > 63");
  WeightDistribution binom = binomial_dist(n);
  std::vector<std::uint64_t> pts;
  pts.reserve(mu.size());
  for (const auto& x : mu.support()) pts.push_back(x.index());
  const std::uint64_t mask = n == 64 ? ~0ull : (1ull << n) - 1;

  std::vector<double> vals(samples);
  const bool par = use_parallel(exec, samples * mu.size(), 1u << 18);
#pragma omp parallel for schedule(static) if (par)
  for (long long i = 0; i < static_cast<long long>(samples); ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    std::uint64_t u = rng.next() & mask;
    std::array<double, 64> hist{};
    for (std::size_t j = 0; j < pts.size(); ++j)
      hist[static_cast<std::size_t>(std::popcount(pts[j] ^ u))] += mu.prob()[j];
    vals[static_cast<std::size_t>(i)] = norm_vs_binomial(hist, binom.values(), n, norm);
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

}  // namespace

double avg_translate_l1(const SupportDistribution& mu, Exec exec) {
  return avg_translate_exact(mu, TranslateNorm::L1, exec);
}

double avg_translate_linf(const SupportDistribution& mu, Exec exec) {
  return avg_translate_exact(mu, TranslateNorm::Linf, exec);
}

SampledMean avg_translate_l1_sampled(const SupportDistribution& mu, std::uint64_t samples,
                                     std::uint64_t seed, Exec exec) {
  return avg_translate_sampled(mu, TranslateNorm::L1, samples, seed, exec);
}

SampledMean avg_translate_linf_sampled(const SupportDistribution& mu, std::uint64_t samples,
                                       std::uint64_t seed, Exec exec) {
  return avg_translate_sampled(mu, TranslateNorm::Linf, samples, seed, exec);
}

double avg_translate_mse(const SupportDistribution& mu, double theta, Exec exec) {
  return mse_translate_lhs(mu, theta, exec);
}

}  // namespace coverlab
