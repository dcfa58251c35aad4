#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coverlab/bitvec.hpp"
#include "coverlab/parallel.hpp"

namespace coverlab {

using BigInt = boost::multiprecision::cpp_int;

// F2-linear code given by a generator matrix with independent rows.
// Immutable after construction; distance caches are shared across copies and
// filled once under a lock.
class LinearCode {
 public:
  LinearCode();

  static LinearCode from_generator(BitMatrix gen);     // throws on dependent rows
  static LinearCode from_span(const BitMatrix& rows);  // keeps a maximal independent subset
  static LinearCode zero_code(int n);                  // k = 0, the {0} code

  int length() const { return n_; }
  int dimension() const { return gen_.rows(); }
  const BitMatrix& generator() const { return gen_; }

  // Codeword for a combination mask (bit i selects generator row i); k <= 63.
  BitVector codeword(std::uint64_t mask) const;
  bool contains(const BitVector& v) const;

  LinearCode dual() const;

  // File format: header "n k", then k generator rows as 0/1 strings.
  static LinearCode load(std::istream& in);
  void save(std::ostream& out) const;

 private:
  struct Cache;
  int n_ = 0;
  BitMatrix gen_;
  std::shared_ptr<Cache> cache_;

  friend int min_distance(const LinearCode&);
  friend int bilateral_min_distance(const LinearCode&);
  const BitMatrix& rref() const;
  const std::vector<int>& rref_pivots() const;
};

// Histogram of |c ^ offset| over all 2^k codewords c; counts index 0..n.
// Enumeration walks the Gray-code order; the parallel path splits the range
// into chunks and merges integer histograms, bit-identical to serial.
std::vector<std::uint64_t> weight_histogram(const LinearCode& c, Exec exec = Exec::Auto);
std::vector<std::uint64_t> coset_weight_histogram(const LinearCode& c, const BitVector& offset,
                                                  Exec exec = Exec::Auto);
// Minimum of |c ^ offset| over codewords (the coset leader weight).
int coset_min_weight(const LinearCode& c, const BitVector& offset, Exec exec = Exec::Auto);

// Histogram over [0:n] of coset-leader weights across all 2^(n-k) cosets.
// Two independent exact routes: a Gray-code sweep of every coset (2^n steps,
// parallel over coset blocks) and a breadth-first search over syndrome space
// (n * 2^(n-k) steps).  The default picks the BFS when its table fits.
std::vector<std::uint64_t> coset_leader_weight_counts(const LinearCode& c, Exec exec = Exec::Auto);
std::vector<std::uint64_t> coset_leader_counts_gray(const LinearCode& c, Exec exec = Exec::Auto);
std::vector<std::uint64_t> coset_leader_counts_syndrome(const LinearCode& c);

// Exact weight distribution (counts, index 0..n).  Enumerates the smaller of
// the code and its dual; the dual route goes through the MacWilliams
// transform in exact integers.
std::vector<BigInt> weight_distribution_exact(const LinearCode& c, Exec exec = Exec::Auto);
// MacWilliams transform: weight distribution of the dual of a code with the
// given distribution (|C| = sum of counts).
std::vector<BigInt> macwilliams_transform(const std::vector<BigInt>& counts, int n);

int min_distance(const LinearCode& c);
// Max b with b <= |x| <= n-b for every nonzero codeword x; 0 when degenerate.
int bilateral_min_distance(const LinearCode& c);

LinearCode dual(const LinearCode& c);

// Dual BCH code BCH(s,m)^dual: block length 2^m-1, dimension s*m, generator
// rows are the GF(2) expansions of (alpha^{ij})_j for odd i = 1, 3, ..., 2s-1.
// Requires 2s-2 < 2^(m/2); a cyclotomic-coset collision (rank < s*m) throws.
LinearCode dual_bch(int s, int m);

// Q = C x {0,1}^d.
LinearCode extend_code(const LinearCode& c, int d);
LinearCode sum_code(const LinearCode& a, const LinearCode& b);
// Uniform generator rows, dependent rows resampled; deterministic per seed.
LinearCode random_linear_code(int n, int k, std::uint64_t seed);
// [2^r-1, 2^r-1-r] Hamming code.
LinearCode hamming_code(int r);

// One representative per coset of the code: index bits embedded into the
// non-pivot columns of the generator's RREF.
class CosetTransversal {
 public:
  explicit CosetTransversal(const LinearCode& c);
  std::uint64_t count() const { return std::uint64_t{1} << free_cols_.size(); }
  int bits() const { return static_cast<int>(free_cols_.size()); }
  BitVector rep(std::uint64_t index) const;

 private:
  int n_;
  std::vector<int> free_cols_;
};

}  // namespace coverlab
