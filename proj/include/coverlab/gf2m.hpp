#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coverlab {

using FieldElement = std::uint32_t;  // m coefficient bits, value < 2^m

// GF(2^m) with log/antilog tables, 2 <= m <= 20.  The modulus is a fixed
// primitive polynomial per m (shipped table) so that constructions derived
// from the field are reproducible byte-for-byte.
class FieldGF2m {
 public:
  explicit FieldGF2m(int m);

  int degree() const { return m_; }
  // Polynomial bitmask including the x^m term.
  std::uint32_t modulus() const { return poly_; }
  // Multiplicative group order 2^m - 1.
  std::uint32_t order() const { return size_ - 1; }

  FieldElement add(FieldElement a, FieldElement b) const { return a ^ b; }
  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % order()];
  }
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  FieldElement inverse(FieldElement a) const;
  // alpha^j for any j (reduced mod 2^m - 1).
  FieldElement alpha_pow(std::int64_t j) const;
  std::uint32_t log(FieldElement a) const;

  // "GF(2^m) / 0x<poly>"
  std::string describe() const;

  // Carry-less polynomial multiply with reduction; the table-free route, used
  // for table construction and kept public as a cross-check.
  static FieldElement polynomial_mul(FieldElement a, FieldElement b, std::uint32_t poly, int m);

  static std::uint32_t primitive_polynomial(int m);

 private:
  int m_;
  std::uint32_t poly_;
  std::uint32_t size_;
  std::vector<FieldElement> exp_;   // exp_[i] = alpha^i, i in [0, 2^m-2]
  std::vector<std::uint32_t> log_;  // inverse of exp_, log_[0] unused
};

}  // namespace coverlab
