#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "coverlab/parallel.hpp"

namespace coverlab {

// Exact-cube guard: operations materializing 2^n-sized arrays refuse larger n.
// Default 26 (~0.5 GiB per real array); COVERLAB_MAX_N overrides.
int max_exact_cube_n();

// lg2 of a power-of-two size; throws otherwise.
int cube_log2_size(std::size_t size);

// In-place unnormalized Walsh-Hadamard transform:
//   out[z] = sum_x in[x] * (-1)^<x,z>.
// Self-inverse up to the factor 2^n.  The parallel path splits each butterfly
// stage over disjoint index pairs, so it is bit-identical to the serial one.
template <class T>
void wht_inplace(std::span<T> data, Exec exec = Exec::Auto);

extern template void wht_inplace<double>(std::span<double>, Exec);
extern template void wht_inplace<std::complex<double>>(std::span<std::complex<double>>, Exec);
extern template void wht_inplace<std::int64_t>(std::span<std::int64_t>, Exec);

// Function on {0,1}^n stored as a flat 2^n array; index = integer encoding of
// the point, bit i of the index = coordinate i.
template <class T>
class CubeFunction {
 public:
  CubeFunction() = default;
  explicit CubeFunction(int n, T init = T{});
  static CubeFunction from_values(std::vector<T> values);

  int n() const { return n_; }
  std::size_t size() const { return v_.size(); }
  T& operator[](std::uint64_t x) { return v_[x]; }
  const T& operator[](std::uint64_t x) const { return v_[x]; }
  std::span<T> values() { return v_; }
  std::span<const T> values() const { return v_; }

 private:
  int n_ = 0;
  std::vector<T> v_;
};

using RealCubeFunction = CubeFunction<double>;
using ComplexCubeFunction = CubeFunction<std::complex<double>>;

// Normalized transform per the expectation inner product:
//   fhat(z) = 2^-n sum_x f(x) (-1)^<x,z>.
template <class T>
CubeFunction<T> walsh_hadamard(CubeFunction<T> f, Exec exec = Exec::Auto);

// Inverse of walsh_hadamard: f(x) = sum_z fhat(z) (-1)^<x,z>.
template <class T>
CubeFunction<T> walsh_hadamard_inverse(CubeFunction<T> fhat, Exec exec = Exec::Auto);

// XOR convolution (f * g)(x) = sum_y f(y) g(x + y), computed through the
// transform; agrees with the direct double sum to ~1e-10 on doubles.
template <class T>
CubeFunction<T> xor_convolve(const CubeFunction<T>& f, const CubeFunction<T>& g,
                             Exec exec = Exec::Auto);

extern template class CubeFunction<double>;
extern template class CubeFunction<std::complex<double>>;
extern template class CubeFunction<std::int64_t>;

// Subset of {0,1}^n as a packed 2^n-bit mask.
class CubeSet {
 public:
  CubeSet() = default;
  explicit CubeSet(int n);

  int n() const { return n_; }
  std::uint64_t universe() const { return 1ull << n_; }
  void insert(std::uint64_t x);
  bool contains(std::uint64_t x) const;
  std::uint64_t count() const;
  bool full() const { return count() == universe(); }
  bool empty() const;

  // Union of the set with all its Hamming-distance-1 neighbors.
  CubeSet expanded(Exec exec = Exec::Auto) const;
  // Image under XOR with t: result.contains(i) == contains(i ^ t).
  CubeSet xor_translate(std::uint64_t t) const;
  void intersect_with(const CubeSet& o);
  void union_with(const CubeSet& o);
  CubeSet complemented() const;

  template <class Fn>
  void for_each_member(Fn&& fn) const;

  std::span<const std::uint64_t> words() const { return w_; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

template <class Fn>
void CubeSet::for_each_member(Fn&& fn) const {
  for (std::size_t k = 0; k < w_.size(); ++k) {
    std::uint64_t w = w_[k];
    while (w) {
      int b = std::countr_zero(w);
      fn((static_cast<std::uint64_t>(k) << 6) | static_cast<unsigned>(b));
      w &= w - 1;
    }
  }
}

}  // namespace coverlab
