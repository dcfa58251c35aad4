#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coverlab {

// Packed vector over GF(2).  Coordinates are 0-based internally; the text
// form writes coordinate 1 leftmost.  Bit i of the integer encoding is
// coordinate i (little-endian), which is also the cube-array index order.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(int n);

  static BitVector zeros(int n) { return BitVector(n); }
  static BitVector ones(int n);
  // n <= 64; bit i of `bits` becomes coordinate i.
  static BitVector from_index(int n, std::uint64_t bits);
  // String of '0'/'1', coordinate 1 leftmost.
  static BitVector parse(std::string_view text);
  static BitVector concat(const BitVector& a, const BitVector& b);

  int length() const { return n_; }
  int weight() const;
  bool is_zero() const;
  bool bit(int i) const;
  void set_bit(int i, bool value);

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  // <x,y> over GF(2).
  bool dot(const BitVector& o) const;
  BitVector complement() const;
  // Restriction to coordinates [lo, hi).
  BitVector slice(int lo, int hi) const;

  // Integer encoding; requires n <= 63.
  std::uint64_t index() const;
  std::string str() const;

  std::span<const std::uint64_t> words() const { return w_; }
  std::uint64_t word(std::size_t i) const { return i < w_.size() ? w_[i] : 0; }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  std::strong_ordering operator<=>(const BitVector& o) const;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const;
};

std::ostream& operator<<(std::ostream& os, const BitVector& v);

// Rows of common length over GF(2).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);
  static BitMatrix identity(int n);
  static BitMatrix from_rows(std::vector<BitVector> rows);
  // One row per line; '#' starts a comment, blank lines are skipped.
  static BitMatrix parse(std::istream& in);

  int rows() const { return static_cast<int>(r_.size()); }
  int cols() const { return cols_; }
  const BitVector& row(int i) const { return r_[i]; }
  BitVector& row(int i) { return r_[i]; }
  const std::vector<BitVector>& row_vector() const { return r_; }
  void append_row(BitVector row);

  // M x, length = rows().
  BitVector mul_vector(const BitVector& x) const;
  std::string str() const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.cols_ == b.cols_ && a.r_ == b.r_;
  }

 private:
  int cols_ = 0;
  std::vector<BitVector> r_;
};

std::ostream& operator<<(std::ostream& os, const BitMatrix& m);

int gf2_rank(BitMatrix m);
// Reduced row echelon form with zero rows dropped; pivot columns appended to
// *pivots when given (increasing order).
BitMatrix gf2_rref(BitMatrix m, std::vector<int>* pivots = nullptr);
// Basis of {x : M x = 0}; rows() = cols(M) - rank(M).
BitMatrix gf2_null_space(const BitMatrix& m);
// Maximal independent subset of the rows, originals kept in first-seen order.
std::vector<BitVector> gf2_independent_rows(const std::vector<BitVector>& rows);

}  // namespace coverlab
