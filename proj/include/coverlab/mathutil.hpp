#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace coverlab {

// x^e for integer e >= 0 (0^0 = 1); std::pow is avoided for negative bases.
inline double ipow(double x, long long e) {
  double acc = 1.0, base = x;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline std::complex<double> cipow(std::complex<double> x, long long e) {
  std::complex<double> acc = 1.0, base = x;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// Deterministic reduction: fixed 4096-element blocks summed serially, block
// sums combined in order.  Result is independent of thread count.
class BlockSum {
 public:
  static constexpr std::size_t kBlock = 4096;
  explicit BlockSum(std::size_t total)
      : sums_((total + kBlock - 1) / kBlock + (total == 0 ? 1 : 0), 0.0) {}
  double& block(std::size_t index) { return sums_[index]; }
  static std::size_t block_of(std::size_t i) { return i / kBlock; }
  std::size_t blocks() const { return sums_.size(); }
  double total() const {
    double acc = 0.0, comp = 0.0;
    for (double s : sums_) {  // Kahan over block sums
      double y = s - comp;
      double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    return acc;
  }

 private:
  std::vector<double> sums_;
};

}  // namespace coverlab
