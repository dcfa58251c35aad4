#include "coverlab/cube.hpp"

#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace coverlab {

int max_exact_cube_n() {
  static const int value = [] {
    if (const char* env = std::getenv("COVERLAB_MAX_N")) {
      int v = std::atoi(env);
      if (v >= 1 && v <= 34) return v;
    }
    return 26;
  }();
  return value;
}

int cube_log2_size(std::size_t size) {
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("cube: length is not a power of two");
  return std::countr_zero(size);
}

namespace {

void check_cube_n(int n) {
  if (n < 0) throw std::invalid_argument("cube: negative n");
  if (n > max_exact_cube_n())
    throw std::invalid_argument("cube: n = " + std::to_string(n) + " exceeds the exact-cube guard (" +
                                std::to_string(max_exact_cube_n()) +
                                "); use a sampling path or raise COVERLAB_MAX_N");
}

template <class T>
void wht_stage(T* data, std::size_t half, int k) {
  const std::size_t mask = (std::size_t{1} << k) - 1;
  for (std::size_t t = 0; t < half; ++t) {
    std::size_t lo = ((t & ~mask) << 1) | (t & mask);
    std::size_t hi = lo | (mask + 1);
    T a = data[lo], b = data[hi];
    data[lo] = a + b;
    data[hi] = a - b;
  }
}

template <class T>
void wht_stage_parallel(T* data, std::size_t half, int k) {
  const std::size_t mask = (std::size_t{1} << k) - 1;
#pragma omp parallel for schedule(static)
  for (long long t = 0; t < static_cast<long long>(half); ++t) {
    std::size_t u = static_cast<std::size_t>(t);
    std::size_t lo = ((u & ~mask) << 1) | (u & mask);
    std::size_t hi = lo | (mask + 1);
    T a = data[lo], b = data[hi];
    data[lo] = a + b;
    data[hi] = a - b;
  }
}

}  // namespace

template <class T>
void wht_inplace(std::span<T> data, Exec exec) {
  const int lg = cube_log2_size(data.size());
  const std::size_t half = data.size() / 2;
  const bool par = use_parallel(exec, data.size() * static_cast<unsigned long long>(lg), 1u << 21);
  for (int k = 0; k < lg; ++k) {
    if (par)
      wht_stage_parallel(data.data(), half, k);
    else
      wht_stage(data.data(), half, k);
  }
}

template void wht_inplace<double>(std::span<double>, Exec);
template void wht_inplace<std::complex<double>>(std::span<std::complex<double>>, Exec);
template void wht_inplace<std::int64_t>(std::span<std::int64_t>, Exec);

template <class T>
CubeFunction<T>::CubeFunction(int n, T init) : n_(n) {
  check_cube_n(n);
  v_.assign(std::size_t{1} << n, init);
}

template <class T>
CubeFunction<T> CubeFunction<T>::from_values(std::vector<T> values) {
  CubeFunction f;
  f.n_ = cube_log2_size(values.size());
  check_cube_n(f.n_);
  f.v_ = std::move(values);
  return f;
}

template <class T>
CubeFunction<T> walsh_hadamard(CubeFunction<T> f, Exec exec) {
  wht_inplace<T>(f.values(), exec);
  const T scale = T(1) / static_cast<T>(static_cast<double>(f.size()));
  for (auto& v : f.values()) v *= scale;
  return f;
}

template <class T>
CubeFunction<T> walsh_hadamard_inverse(CubeFunction<T> fhat, Exec exec) {
  wht_inplace<T>(fhat.values(), exec);
  return fhat;
}

template <class T>
CubeFunction<T> xor_convolve(const CubeFunction<T>& f, const CubeFunction<T>& g, Exec exec) {
  if (f.size() != g.size()) throw std::invalid_argument("xor_convolve: length mismatch");
  CubeFunction<T> a = f, b = g;
  wht_inplace<T>(a.values(), exec);
  wht_inplace<T>(b.values(), exec);
  const T scale = T(1) / static_cast<T>(static_cast<double>(f.size()));
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i] * scale;
  wht_inplace<T>(a.values(), exec);
  return a;
}

template class CubeFunction<double>;
template class CubeFunction<std::complex<double>>;
template class CubeFunction<std::int64_t>;

template CubeFunction<double> walsh_hadamard(CubeFunction<double>, Exec);
template CubeFunction<std::complex<double>> walsh_hadamard(CubeFunction<std::complex<double>>, Exec);
template CubeFunction<double> walsh_hadamard_inverse(CubeFunction<double>, Exec);
template CubeFunction<std::complex<double>> walsh_hadamard_inverse(CubeFunction<std::complex<double>>, Exec);
template CubeFunction<double> xor_convolve(const CubeFunction<double>&, const CubeFunction<double>&, Exec);
template CubeFunction<std::complex<double>> xor_convolve(const CubeFunction<std::complex<double>>&,
                                                         const CubeFunction<std::complex<double>>&, Exec);

namespace {

// Swap masks for in-word neighbor moves along axis i (block size 2^i).
constexpr std::uint64_t kAxisMask[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

inline std::uint64_t axis_swap(std::uint64_t w, int i) {
  const int s = 1 << i;
  const std::uint64_t m = kAxisMask[i];
  return ((w & m) << s) | ((w >> s) & m);
}

}  // namespace

CubeSet::CubeSet(int n) : n_(n) {
  check_cube_n(n);
  w_.assign(n >= 6 ? (std::size_t{1} << (n - 6)) : 1, 0);
}

void CubeSet::insert(std::uint64_t x) {
  if (x >= universe()) throw std::out_of_range("CubeSet::insert");
  w_[x >> 6] |= 1ull << (x & 63);
}

bool CubeSet::contains(std::uint64_t x) const {
  if (x >= universe()) throw std::out_of_range("CubeSet::contains");
  return (w_[x >> 6] >> (x & 63)) & 1;
}

std::uint64_t CubeSet::count() const {
  std::uint64_t c = 0;
  for (std::uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool CubeSet::empty() const {
  for (std::uint64_t w : w_)
    if (w) return false;
  return true;
}

CubeSet CubeSet::expanded(Exec exec) const {
  CubeSet out(n_);
  const int in_word_axes = n_ < 6 ? n_ : 6;
  const std::size_t words = w_.size();
  const bool par = use_parallel(exec, words * static_cast<unsigned long long>(n_), 1u << 14);

#pragma omp parallel for schedule(static) if (par)
  for (long long kk = 0; kk < static_cast<long long>(words); ++kk) {
    const std::size_t k = static_cast<std::size_t>(kk);
    std::uint64_t acc = w_[k];
    const std::uint64_t self = w_[k];
    for (int i = 0; i < in_word_axes; ++i) acc |= axis_swap(self, i);
    for (int i = 6; i < n_; ++i) acc |= w_[k ^ (std::size_t{1} << (i - 6))];
    out.w_[k] = acc;
  }
  if (n_ < 6) out.w_[0] &= (1ull << (1 << n_)) - 1;
  return out;
}

CubeSet CubeSet::xor_translate(std::uint64_t t) const {
  if (t >= universe()) throw std::out_of_range("CubeSet::xor_translate");
  CubeSet out(n_);
  const std::size_t hi = static_cast<std::size_t>(t >> 6);
  const int lo = static_cast<int>(t & 63);
  for (std::size_t k = 0; k < w_.size(); ++k) {
    std::uint64_t w = w_[k ^ hi];
    for (int i = 0; i < 6 && i < n_; ++i)
      if ((lo >> i) & 1) w = axis_swap(w, i);
    out.w_[k] = w;
  }
  return out;
}

void CubeSet::intersect_with(const CubeSet& o) {
  if (n_ != o.n_) throw std::invalid_argument("CubeSet: dimension mismatch");
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
}

void CubeSet::union_with(const CubeSet& o) {
  if (n_ != o.n_) throw std::invalid_argument("CubeSet: dimension mismatch");
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
}

CubeSet CubeSet::complemented() const {
  CubeSet out(n_);
  for (std::size_t k = 0; k < w_.size(); ++k) out.w_[k] = ~w_[k];
  if (n_ < 6) out.w_[0] &= (1ull << (1 << n_)) - 1;
  return out;
}

}  // namespace coverlab
