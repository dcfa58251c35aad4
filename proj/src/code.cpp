#include "coverlab/code.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "coverlab/gf2m.hpp"
#include "coverlab/rng.hpp"

namespace coverlab {

namespace {

constexpr int kEnumGuardBits = 28;  // 2^28 codewords max per exhaustive sweep

std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

// Generator rows packed as k x W flat words for the Gray-code walkers.
struct PackedRows {
  int k = 0;
  int words = 0;
  std::vector<std::uint64_t> rows;

  PackedRows(const BitMatrix& gen, int n) : k(gen.rows()), words(static_cast<int>(words_for(n))) {
    if (words == 0) words = 1;
    rows.assign(static_cast<std::size_t>(k) * words, 0);
    for (int i = 0; i < k; ++i)
      for (int w = 0; w < words; ++w)
        rows[static_cast<std::size_t>(i) * words + w] = gen.row(i).word(w);
  }
};

template <int W, class Body>
void gray_walk_fixed(const PackedRows& pr, const std::uint64_t* base, std::uint64_t lo,
                     std::uint64_t hi, Body&& body) {
  std::array<std::uint64_t, W> cw{};
  for (int w = 0; w < W; ++w) cw[w] = base ? base[w] : 0;
  std::uint64_t g = lo ^ (lo >> 1);
  while (g) {
    int b = std::countr_zero(g);
    g &= g - 1;
    for (int w = 0; w < W; ++w) cw[w] ^= pr.rows[static_cast<std::size_t>(b) * W + w];
  }
  int wt = 0;
  for (int w = 0; w < W; ++w) wt += std::popcount(cw[w]);
  body(wt);
  for (std::uint64_t j = lo + 1; j < hi; ++j) {
    int b = std::countr_zero(j);
    const std::uint64_t* row = &pr.rows[static_cast<std::size_t>(b) * W];
    wt = 0;
    for (int w = 0; w < W; ++w) {
      cw[w] ^= row[w];
      wt += std::popcount(cw[w]);
    }
    body(wt);
  }
}

template <class Body>
void gray_walk_generic(const PackedRows& pr, const std::uint64_t* base, std::uint64_t lo,
                       std::uint64_t hi, Body&& body) {
  const int W = pr.words;
  std::vector<std::uint64_t> cw(static_cast<std::size_t>(W), 0);
  if (base)
    for (int w = 0; w < W; ++w) cw[static_cast<std::size_t>(w)] = base[w];
  std::uint64_t g = lo ^ (lo >> 1);
  while (g) {
    int b = std::countr_zero(g);
    g &= g - 1;
    for (int w = 0; w < W; ++w) cw[static_cast<std::size_t>(w)] ^= pr.rows[static_cast<std::size_t>(b) * W + w];
  }
  auto emit = [&] {
    int wt = 0;
    for (int w = 0; w < W; ++w) wt += std::popcount(cw[static_cast<std::size_t>(w)]);
    body(wt);
  };
  emit();
  for (std::uint64_t j = lo + 1; j < hi; ++j) {
    int b = std::countr_zero(j);
    for (int w = 0; w < W; ++w) cw[static_cast<std::size_t>(w)] ^= pr.rows[static_cast<std::size_t>(b) * W + w];
    emit();
  }
}

template <class Body>
void gray_walk(const PackedRows& pr, const std::uint64_t* base, std::uint64_t lo, std::uint64_t hi,
               Body&& body) {
  switch (pr.words) {
    case 1: gray_walk_fixed<1>(pr, base, lo, hi, body); break;
    case 2: gray_walk_fixed<2>(pr, base, lo, hi, body); break;
    case 3: gray_walk_fixed<3>(pr, base, lo, hi, body); break;
    case 4: gray_walk_fixed<4>(pr, base, lo, hi, body); break;
    default: gray_walk_generic(pr, base, lo, hi, body); break;
  }
}

std::vector<std::uint64_t> histogram_sweep(const LinearCode& c, const BitVector* offset, Exec exec) {
  const int n = c.length(), k = c.dimension();
  if (k > kEnumGuardBits)
    throw std::invalid_argument("weight_histogram: 2^" + std::to_string(k) +
                                " codewords exceed the enumeration guard");
  PackedRows pr(c.generator(), n);
  std::vector<std::uint64_t> base(static_cast<std::size_t>(pr.words), 0);
  if (offset) {
    if (offset->length() != n)
      throw std::invalid_argument("coset_weight_histogram: offset length mismatch");
    for (int w = 0; w < pr.words; ++w) base[static_cast<std::size_t>(w)] = offset->word(w);
  }
  const std::uint64_t total = std::uint64_t{1} << k;
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);

  if (!use_parallel(exec, total, 1u << 18)) {
    gray_walk(pr, base.data(), 0, total, [&](int wt) { ++hist[static_cast<std::size_t>(wt)]; });
    return hist;
  }

  const int chunks = hardware_threads() * 4;
  std::vector<std::vector<std::uint64_t>> part(static_cast<std::size_t>(chunks),
                                               std::vector<std::uint64_t>(hist.size(), 0));
#pragma omp parallel for schedule(static)
  for (int ci = 0; ci < chunks; ++ci) {
    std::uint64_t lo = total / chunks * ci + std::min<std::uint64_t>(ci, total % chunks);
    std::uint64_t len = total / chunks + (static_cast<std::uint64_t>(ci) < total % chunks ? 1 : 0);
    auto& h = part[static_cast<std::size_t>(ci)];
    gray_walk(pr, base.data(), lo, lo + len, [&](int wt) { ++h[static_cast<std::size_t>(wt)]; });
  }
  for (const auto& h : part)
    for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += h[i];
  return hist;
}

}  // namespace

struct LinearCode::Cache {
  std::mutex mu;
  std::optional<BitMatrix> dual_gen;
  std::optional<int> min_dist;
  std::optional<int> bilateral;
  std::optional<BitMatrix> rref;
  std::vector<int> pivots;
};

LinearCode::LinearCode() : n_(0), cache_(std::make_shared<Cache>()) {}

LinearCode LinearCode::from_generator(BitMatrix gen) {
  if (gf2_rank(gen) != gen.rows())
    throw std::invalid_argument("LinearCode: generator rows are dependent");
  LinearCode c;
  c.n_ = gen.cols();
  c.gen_ = std::move(gen);
  return c;
}

LinearCode LinearCode::from_span(const BitMatrix& rows) {
  std::vector<BitVector> indep = gf2_independent_rows(rows.row_vector());
  LinearCode c;
  c.n_ = rows.cols();
  c.gen_ = indep.empty() ? BitMatrix(0, rows.cols()) : BitMatrix::from_rows(std::move(indep));
  return c;
}

LinearCode LinearCode::zero_code(int n) {
  LinearCode c;
  c.n_ = n;
  c.gen_ = BitMatrix(0, n);
  return c;
}

BitVector LinearCode::codeword(std::uint64_t mask) const {
  if (dimension() > 63) throw std::invalid_argument("LinearCode::codeword: k > 63");
  if (mask >> dimension()) throw std::out_of_range("LinearCode::codeword: mask");
  BitVector v(n_);
  std::uint64_t m = mask;
  while (m) {
    int b = std::countr_zero(m);
    m &= m - 1;
    v ^= gen_.row(b);
  }
  return v;
}

const BitMatrix& LinearCode::rref() const {
  std::lock_guard lock(cache_->mu);
  if (!cache_->rref) cache_->rref = gf2_rref(gen_, &cache_->pivots);
  return *cache_->rref;
}

const std::vector<int>& LinearCode::rref_pivots() const {
  rref();
  return cache_->pivots;
}

bool LinearCode::contains(const BitVector& v) const {
  if (v.length() != n_) throw std::invalid_argument("LinearCode::contains: length mismatch");
  const BitMatrix& r = rref();
  const std::vector<int>& piv = rref_pivots();
  BitVector x = v;
  for (int i = 0; i < r.rows(); ++i)
    if (x.bit(piv[static_cast<std::size_t>(i)])) x ^= r.row(i);
  return x.is_zero();
}

LinearCode LinearCode::dual() const {
  {
    std::lock_guard lock(cache_->mu);
    if (cache_->dual_gen) return from_generator(*cache_->dual_gen);
  }
  BitMatrix d = gf2_null_space(gen_);
  {
    std::lock_guard lock(cache_->mu);
    if (!cache_->dual_gen) cache_->dual_gen = d;
  }
  return from_generator(std::move(d));
}

LinearCode LinearCode::load(std::istream& in) {
  int n = -1, k = -1;
  std::string line;
  std::vector<BitVector> rows;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    if (n < 0) {
      if (ls >> n >> k) {
        if (n < 0 || k < 0 || k > n) throw std::invalid_argument("code file: bad header");
        continue;
      }
      std::string tok;
      std::istringstream probe(line);
      if (probe >> tok) throw std::invalid_argument("code file: bad header");
      continue;  // blank line before header
    }
    std::string tok;
    if (!(ls >> tok)) continue;
    BitVector row = BitVector::parse(tok);
    if (row.length() != n) throw std::invalid_argument("code file: row length != n");
    rows.push_back(std::move(row));
  }
  if (n < 0) throw std::invalid_argument("code file: missing header");
  if (static_cast<int>(rows.size()) != k)
    throw std::invalid_argument("code file: expected " + std::to_string(k) + " rows");
  BitMatrix gen = rows.empty() ? BitMatrix(0, n) : BitMatrix::from_rows(std::move(rows));
  return from_generator(std::move(gen));
}

void LinearCode::save(std::ostream& out) const {
  out << n_ << ' ' << dimension() << '\n';
  for (int i = 0; i < dimension(); ++i) out << gen_.row(i).str() << '\n';
}

std::vector<std::uint64_t> weight_histogram(const LinearCode& c, Exec exec) {
  return histogram_sweep(c, nullptr, exec);
}

std::vector<std::uint64_t> coset_weight_histogram(const LinearCode& c, const BitVector& offset,
                                                  Exec exec) {
  return histogram_sweep(c, &offset, exec);
}

int coset_min_weight(const LinearCode& c, const BitVector& offset, Exec exec) {
  auto hist = histogram_sweep(c, &offset, exec);
  for (std::size_t w = 0; w < hist.size(); ++w)
    if (hist[w]) return static_cast<int>(w);
  return -1;  // unreachable: histogram always has 2^k entries
}

std::vector<std::uint64_t> coset_leader_counts_syndrome(const LinearCode& c) {
  const int n = c.length(), k = c.dimension();
  const int redundancy = n - k;
  if (redundancy > 26)
    throw std::invalid_argument("coset_leader_counts_syndrome: syndrome table guard (n-k <= 26)");
  // syndrome of e_j against a parity-check matrix (rows spanning the dual)
  BitMatrix parity = gf2_null_space(c.generator());
  std::vector<std::uint32_t> col(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < parity.rows(); ++i)
    for (int j = 0; j < n; ++j)
      if (parity.row(i).bit(j)) col[static_cast<std::size_t>(j)] |= 1u << i;

  // dist[s] = fewest columns summing to s = leader weight of the coset
  const std::size_t syndromes = std::size_t{1} << redundancy;
  std::vector<std::uint8_t> dist(syndromes, 0xff);
  std::vector<std::uint32_t> frontier{0}, next;
  dist[0] = 0;
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
  hist[0] = 1;
  for (int level = 0; !frontier.empty(); ++level) {
    next.clear();
    for (std::uint32_t s : frontier)
      for (int j = 0; j < n; ++j) {
        std::uint32_t t = s ^ col[static_cast<std::size_t>(j)];
        if (dist[t] == 0xff) {
          dist[t] = static_cast<std::uint8_t>(level + 1);
          next.push_back(t);
        }
      }
    if (!next.empty()) hist[static_cast<std::size_t>(level) + 1] = next.size();
    frontier.swap(next);
  }
  return hist;
}

std::vector<std::uint64_t> coset_leader_weight_counts(const LinearCode& c, Exec exec) {
  if (c.length() - c.dimension() <= 26) return coset_leader_counts_syndrome(c);
  return coset_leader_counts_gray(c, exec);
}

std::vector<std::uint64_t> coset_leader_counts_gray(const LinearCode& c, Exec exec) {
  const int n = c.length(), k = c.dimension();
  if (k > kEnumGuardBits)
    throw std::invalid_argument("coset_leader_weight_counts: code too large to enumerate");
  if (n > 40)
    throw std::invalid_argument("coset_leader_weight_counts: 2^n work guard (n <= 40)");
  CosetTransversal transversal(c);
  PackedRows pr(c.generator(), n);
  const std::uint64_t cosets = transversal.count();
  const std::uint64_t code_size = std::uint64_t{1} << k;

  std::vector<int> free_cols;
  for (std::uint64_t bit = 0; bit < static_cast<std::uint64_t>(transversal.bits()); ++bit) {
    BitVector probe = transversal.rep(std::uint64_t{1} << bit);
    for (int i = 0; i < n; ++i)
      if (probe.bit(i)) free_cols.push_back(i);
  }

  const bool par = use_parallel(exec, cosets * code_size, 1u << 18);
  const int chunks = par ? hardware_threads() * 8 : 1;
  std::vector<std::vector<std::uint64_t>> part(
      static_cast<std::size_t>(chunks), std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));

#pragma omp parallel for schedule(dynamic) if (par)
  for (int ci = 0; ci < chunks; ++ci) {
    auto& hist = part[static_cast<std::size_t>(ci)];
    std::uint64_t lo = cosets / chunks * ci + std::min<std::uint64_t>(ci, cosets % chunks);
    std::uint64_t len = cosets / chunks + (static_cast<std::uint64_t>(ci) < cosets % chunks ? 1 : 0);
    std::vector<std::uint64_t> base(static_cast<std::size_t>(pr.words), 0);
    for (std::uint64_t idx = lo; idx < lo + len; ++idx) {
      for (auto& w : base) w = 0;
      for (std::size_t t = 0; t < free_cols.size(); ++t)
        if ((idx >> t) & 1) base[static_cast<std::size_t>(free_cols[t] >> 6)] ^= 1ull << (free_cols[t] & 63);
      int best = n;
      gray_walk(pr, base.data(), 0, code_size, [&](int wt) {
        if (wt < best) best = wt;
      });
      ++hist[static_cast<std::size_t>(best)];
    }
  }
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& h : part)
    for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += h[i];
  return hist;
}

std::vector<BigInt> macwilliams_transform(const std::vector<BigInt>& counts, int n) {
  if (static_cast<int>(counts.size()) != n + 1)
    throw std::invalid_argument("macwilliams_transform: counts size != n+1");
  // Krawtchouk K_j(i) = sum_l (-1)^l C(i,l) C(n-i, j-l)
  std::vector<std::vector<BigInt>> choose(static_cast<std::size_t>(n) + 1,
                                          std::vector<BigInt>(static_cast<std::size_t>(n) + 1, 0));
  for (int a = 0; a <= n; ++a) {
    choose[static_cast<std::size_t>(a)][0] = 1;
    for (int b = 1; b <= a; ++b)
      choose[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          choose[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] +
          choose[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b)];
  }
  BigInt size = 0;
  for (const auto& a : counts) size += a;
  std::vector<BigInt> out(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 0; j <= n; ++j) {
    BigInt acc = 0;
    for (int i = 0; i <= n; ++i) {
      if (counts[static_cast<std::size_t>(i)] == 0) continue;
      BigInt kraw = 0;
      for (int l = std::max(0, j - (n - i)); l <= std::min(i, j); ++l) {
        BigInt term = choose[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                      choose[static_cast<std::size_t>(n - i)][static_cast<std::size_t>(j - l)];
        if (l & 1)
          kraw -= term;
        else
          kraw += term;
      }
      acc += counts[static_cast<std::size_t>(i)] * kraw;
    }
    out[static_cast<std::size_t>(j)] = acc / size;
  }
  return out;
}

std::vector<BigInt> weight_distribution_exact(const LinearCode& c, Exec exec) {
  const int n = c.length(), k = c.dimension();
  const int co_k = n - k;
  if (k <= co_k || co_k > kEnumGuardBits) {
    auto hist = weight_histogram(c, exec);
    std::vector<BigInt> out(hist.size());
    for (std::size_t i = 0; i < hist.size(); ++i) out[i] = hist[i];
    return out;
  }
  auto dual_hist = weight_histogram(c.dual(), exec);
  std::vector<BigInt> dual_counts(dual_hist.size());
  for (std::size_t i = 0; i < dual_hist.size(); ++i) dual_counts[i] = dual_hist[i];
  return macwilliams_transform(dual_counts, n);
}

int min_distance(const LinearCode& c) {
  if (c.dimension() < 1) throw std::invalid_argument("min_distance: k >= 1 required");
  {
    std::lock_guard lock(c.cache_->mu);
    if (c.cache_->min_dist) return *c.cache_->min_dist;
  }
  auto dist = weight_distribution_exact(c);
  int d = -1;
  for (std::size_t w = 1; w < dist.size(); ++w)
    if (dist[w] != 0) {
      d = static_cast<int>(w);
      break;
    }
  std::lock_guard lock(c.cache_->mu);
  c.cache_->min_dist = d;
  return d;
}

int bilateral_min_distance(const LinearCode& c) {
  if (c.dimension() < 1) throw std::invalid_argument("bilateral_min_distance: k >= 1 required");
  {
    std::lock_guard lock(c.cache_->mu);
    if (c.cache_->bilateral) return *c.cache_->bilateral;
  }
  auto dist = weight_distribution_exact(c);
  const int n = c.length();
  int w_min = n + 1, w_max = -1;
  for (int w = 1; w <= n; ++w)
    if (dist[static_cast<std::size_t>(w)] != 0) {
      w_min = std::min(w_min, w);
      w_max = std::max(w_max, w);
    }
  int b = std::min(w_min, n - w_max);
  if (b < 0) b = 0;
  std::lock_guard lock(c.cache_->mu);
  c.cache_->bilateral = b;
  return b;
}

LinearCode dual(const LinearCode& c) { return c.dual(); }

LinearCode dual_bch(int s, int m) {
  if (m < 2) throw std::invalid_argument("dual_bch: m >= 2 required");
  if (s < 1) throw std::invalid_argument("dual_bch: s >= 1 required");
  // 2s-2 < 2^(m/2), compared in integers as (2s-2)^2 < 2^m
  const std::int64_t lhs = 2ll * s - 2;
  if (lhs * lhs >= (1ll << m))
    throw std::invalid_argument("dual_bch: precondition 2s-2 < 2^(m/2) violated");
  FieldGF2m field(m);
  const int n = (1 << m) - 1;
  std::vector<BitVector> rows;
  rows.reserve(static_cast<std::size_t>(s) * m);
  for (int i = 1; i <= 2 * s - 1; i += 2) {
    for (int t = 0; t < m; ++t) {
      BitVector row(n);
      for (int j = 0; j < n; ++j) {
        FieldElement e = field.alpha_pow(static_cast<std::int64_t>(i) * j);
        row.set_bit(j, (e >> t) & 1);
      }
      rows.push_back(std::move(row));
    }
  }
  BitMatrix gen = BitMatrix::from_rows(std::move(rows));
  if (gf2_rank(gen) != s * m)
    throw std::invalid_argument("dual_bch: cyclotomic coset collision, dimension < s*m");
  return LinearCode::from_generator(std::move(gen));
}

LinearCode extend_code(const LinearCode& c, int d) {
  if (d < 1) throw std::invalid_argument("extend_code: d >= 1 required");
  const int n = c.length();
  std::vector<BitVector> rows;
  rows.reserve(static_cast<std::size_t>(c.dimension() + d));
  BitVector zero_tail(d);
  for (int i = 0; i < c.dimension(); ++i)
    rows.push_back(BitVector::concat(c.generator().row(i), zero_tail));
  for (int t = 0; t < d; ++t) {
    BitVector tail(d);
    tail.set_bit(t, true);
    rows.push_back(BitVector::concat(BitVector(n), tail));
  }
  return LinearCode::from_generator(BitMatrix::from_rows(std::move(rows)));
}

LinearCode sum_code(const LinearCode& a, const LinearCode& b) {
  if (a.length() != b.length()) throw std::invalid_argument("sum_code: length mismatch");
  std::vector<BitVector> rows;
  for (int i = 0; i < a.dimension(); ++i) rows.push_back(a.generator().row(i));
  for (int i = 0; i < b.dimension(); ++i) rows.push_back(b.generator().row(i));
  BitMatrix stacked = rows.empty() ? BitMatrix(0, a.length()) : BitMatrix::from_rows(std::move(rows));
  return LinearCode::from_span(stacked);
}

LinearCode random_linear_code(int n, int k, std::uint64_t seed) {
  if (k < 0 || k > n) throw std::invalid_argument("random_linear_code: need 0 <= k <= n");
  Rng rng(seed, 0x10de);
  std::vector<BitVector> rows;
  std::vector<BitVector> by_pivot(static_cast<std::size_t>(n));  // echelon sketch
  auto lowest_bit = [](const BitVector& v) {
    for (int i = 0; i < v.length(); ++i)
      if (v.bit(i)) return i;
    return -1;
  };
  auto try_insert = [&](const BitVector& r) {
    BitVector x = r;
    for (int p = lowest_bit(x); p >= 0; p = lowest_bit(x)) {
      if (by_pivot[static_cast<std::size_t>(p)].length() == 0) {
        by_pivot[static_cast<std::size_t>(p)] = x;
        return true;
      }
      x ^= by_pivot[static_cast<std::size_t>(p)];
    }
    return false;
  };
  while (static_cast<int>(rows.size()) < k) {
    BitVector cand(n);
    for (int w = 0; w * 64 < n; ++w) {
      std::uint64_t word = rng.next();
      for (int b = 0; b < 64 && w * 64 + b < n; ++b)
        if ((word >> b) & 1) cand.set_bit(w * 64 + b, true);
    }
    if (try_insert(cand)) rows.push_back(std::move(cand));  // else resample
  }
  BitMatrix gen = rows.empty() ? BitMatrix(0, n) : BitMatrix::from_rows(std::move(rows));
  return LinearCode::from_generator(std::move(gen));
}

LinearCode hamming_code(int r) {
  if (r < 2) throw std::invalid_argument("hamming_code: r >= 2 required");
  const int n = (1 << r) - 1;
  BitMatrix parity(r, n);
  for (int j = 0; j < n; ++j)
    for (int t = 0; t < r; ++t)
      if (((j + 1) >> t) & 1) parity.row(t).set_bit(j, true);
  return LinearCode::from_generator(gf2_null_space(parity));
}

CosetTransversal::CosetTransversal(const LinearCode& c) : n_(c.length()) {
  std::vector<int> pivots;
  gf2_rref(c.generator(), &pivots);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n_), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  for (int j = 0; j < n_; ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) free_cols_.push_back(j);
  if (free_cols_.size() > 62)
    throw std::invalid_argument("CosetTransversal: more than 2^62 cosets");
}

BitVector CosetTransversal::rep(std::uint64_t index) const {
  if (index >> free_cols_.size()) throw std::out_of_range("CosetTransversal::rep");
  BitVector v(n_);
  for (std::size_t t = 0; t < free_cols_.size(); ++t)
    if ((index >> t) & 1) v.set_bit(free_cols_[t], true);
  return v;
}

}  // namespace coverlab
