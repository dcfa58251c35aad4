#include "coverlab/bitvec.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coverlab {

namespace {
std::size_t words_for(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }
}  // namespace

BitVector::BitVector(int n) : n_(n), w_(words_for(n), 0) {
  if (n < 0) throw std::invalid_argument("BitVector: negative length");
}

BitVector BitVector::ones(int n) {
  BitVector v(n);
  for (auto& w : v.w_) w = ~0ull;
  if (n % 64 != 0 && !v.w_.empty()) v.w_.back() &= (1ull << (n % 64)) - 1;
  return v;
}

BitVector BitVector::from_index(int n, std::uint64_t bits) {
  if (n > 64) throw std::invalid_argument("BitVector::from_index: n > 64");
  BitVector v(n);
  if (n == 0) return v;
  std::uint64_t mask = n == 64 ? ~0ull : (1ull << n) - 1;
  if ((bits & ~mask) != 0)
    throw std::invalid_argument("BitVector::from_index: bits beyond length");
  if (!v.w_.empty()) v.w_[0] = bits;
  return v;
}

BitVector BitVector::parse(std::string_view text) {
  BitVector v(static_cast<int>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      v.set_bit(static_cast<int>(i), true);
    else if (text[i] != '0')
      throw std::invalid_argument("BitVector::parse: expected '0'/'1'");
  }
  return v;
}

BitVector BitVector::concat(const BitVector& a, const BitVector& b) {
  BitVector v(a.length() + b.length());
  for (int i = 0; i < a.length(); ++i) v.set_bit(i, a.bit(i));
  for (int i = 0; i < b.length(); ++i) v.set_bit(a.length() + i, b.bit(i));
  return v;
}

int BitVector::weight() const {
  int w = 0;
  for (std::uint64_t x : w_) w += std::popcount(x);
  return w;
}

bool BitVector::is_zero() const {
  for (std::uint64_t x : w_)
    if (x) return false;
  return true;
}

bool BitVector::bit(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("BitVector::bit");
  return (w_[i >> 6] >> (i & 63)) & 1;
}

void BitVector::set_bit(int i, bool value) {
  if (i < 0 || i >= n_) throw std::out_of_range("BitVector::set_bit");
  std::uint64_t m = 1ull << (i & 63);
  if (value)
    w_[i >> 6] |= m;
  else
    w_[i >> 6] &= ~m;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (n_ != o.n_) throw std::invalid_argument("BitVector: length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

bool BitVector::dot(const BitVector& o) const {
  if (n_ != o.n_) throw std::invalid_argument("BitVector::dot: length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1;
}

BitVector BitVector::complement() const {
  BitVector v = ones(n_);
  v ^= *this;
  return v;
}

BitVector BitVector::slice(int lo, int hi) const {
  if (lo < 0 || hi < lo || hi > n_) throw std::out_of_range("BitVector::slice");
  BitVector v(hi - lo);
  for (int i = lo; i < hi; ++i) v.set_bit(i - lo, bit(i));
  return v;
}

std::uint64_t BitVector::index() const {
  if (n_ > 63) throw std::invalid_argument("BitVector::index: n > 63");
  return w_.empty() ? 0 : w_[0];
}

std::string BitVector::str() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i)
    if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

std::strong_ordering BitVector::operator<=>(const BitVector& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  // Compare as little-endian integers, most significant word first.
  for (std::size_t i = w_.size(); i-- > 0;)
    if (auto c = w_[i] <=> o.w_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(v.length());
  for (std::uint64_t w : v.words()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::ostream& operator<<(std::ostream& os, const BitVector& v) { return os << v.str(); }

BitMatrix::BitMatrix(int rows, int cols) : cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("BitMatrix: negative shape");
  r_.assign(static_cast<std::size_t>(rows), BitVector(cols));
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.r_[i].set_bit(i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows) {
  BitMatrix m;
  if (rows.empty()) return m;
  m.cols_ = rows.front().length();
  for (const auto& r : rows)
    if (r.length() != m.cols_)
      throw std::invalid_argument("BitMatrix: rows of unequal length");
  m.r_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::parse(std::istream& in) {
  std::vector<BitVector> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    rows.push_back(BitVector::parse(std::string_view(line).substr(start)));
  }
  return from_rows(std::move(rows));
}

void BitMatrix::append_row(BitVector row) {
  if (rows() == 0 && cols_ == 0)
    cols_ = row.length();
  else if (row.length() != cols_)
    throw std::invalid_argument("BitMatrix::append_row: length mismatch");
  r_.push_back(std::move(row));
}

BitVector BitMatrix::mul_vector(const BitVector& x) const {
  if (x.length() != cols_)
    throw std::invalid_argument("BitMatrix::mul_vector: length mismatch");
  BitVector y(rows());
  for (int i = 0; i < rows(); ++i) y.set_bit(i, r_[i].dot(x));
  return y;
}

std::string BitMatrix::str() const {
  std::ostringstream os;
  for (const auto& r : r_) os << r.str() << '\n';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const BitMatrix& m) { return os << m.str(); }

int gf2_rank(BitMatrix m) {
  std::vector<int> pivots;
  gf2_rref(std::move(m), &pivots);
  return static_cast<int>(pivots.size());
}

BitMatrix gf2_rref(BitMatrix m, std::vector<int>* pivots) {
  int rank = 0;
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> piv;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int sel = -1;
    for (int r = rank; r < rows; ++r)
      if (m.row(r).bit(c)) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(m.row(rank), m.row(sel));
    for (int r = 0; r < rows; ++r)
      if (r != rank && m.row(r).bit(c)) m.row(r) ^= m.row(rank);
    piv.push_back(c);
    ++rank;
  }
  std::vector<BitVector> kept(m.row_vector().begin(), m.row_vector().begin() + rank);
  if (pivots) *pivots = std::move(piv);
  return BitMatrix::from_rows(std::move(kept));
}

BitMatrix gf2_null_space(const BitMatrix& m) {
  const int n = m.cols();
  std::vector<int> pivots;
  BitMatrix r = gf2_rref(m, &pivots);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<BitVector> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    BitVector x(n);
    x.set_bit(f, true);
    for (int i = 0; i < r.rows(); ++i)
      if (r.row(i).bit(f)) x.set_bit(pivots[static_cast<std::size_t>(i)], true);
    basis.push_back(std::move(x));
  }
  BitMatrix out = basis.empty() ? BitMatrix(0, n) : BitMatrix::from_rows(std::move(basis));
  return out;
}

std::vector<BitVector> gf2_independent_rows(const std::vector<BitVector>& rows) {
  std::vector<BitVector> kept;
  if (rows.empty()) return kept;
  const int n = rows.front().length();
  // echelon sketch indexed by pivot (= lowest set coordinate)
  std::vector<BitVector> by_pivot(static_cast<std::size_t>(n));
  auto lowest_bit = [](const BitVector& v) {
    for (int i = 0; i < v.length(); ++i)
      if (v.bit(i)) return i;
    return -1;
  };
  for (const auto& r : rows) {
    BitVector x = r;
    for (int p = lowest_bit(x); p >= 0; p = lowest_bit(x)) {
      if (by_pivot[static_cast<std::size_t>(p)].length() == 0) {
        by_pivot[static_cast<std::size_t>(p)] = x;
        kept.push_back(r);
        break;
      }
      x ^= by_pivot[static_cast<std::size_t>(p)];
    }
  }
  return kept;
}

}  // namespace coverlab
