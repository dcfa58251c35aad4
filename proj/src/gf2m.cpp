#include "coverlab/gf2m.hpp"

#include <sstream>
#include <stdexcept>

namespace coverlab {

// Primitive polynomials over GF(2), lowest-weight representatives from the
// classic tables (bitmask includes the x^m term).
std::uint32_t FieldGF2m::primitive_polynomial(int m) {
  static constexpr std::uint32_t table[21] = {
      0, 0,
      0x7,       // x^2+x+1
      0xb,       // x^3+x+1
      0x13,      // x^4+x+1
      0x25,      // x^5+x^2+1
      0x43,      // x^6+x+1
      0x83,      // x^7+x+1
      0x11d,     // x^8+x^4+x^3+x^2+1
      0x211,     // x^9+x^4+1
      0x409,     // x^10+x^3+1
      0x805,     // x^11+x^2+1
      0x1053,    // x^12+x^6+x^4+x+1
      0x201b,    // x^13+x^4+x^3+x+1
      0x4443,    // x^14+x^10+x^6+x+1
      0x8003,    // x^15+x+1
      0x1100b,   // x^16+x^12+x^3+x+1
      0x20009,   // x^17+x^3+1
      0x40081,   // x^18+x^7+1
      0x80027,   // x^19+x^5+x^2+x+1
      0x100009,  // x^20+x^3+1
  };
  if (m < 2 || m > 20) throw std::invalid_argument("FieldGF2m: m out of range [2, 20]");
  return table[m];
}

FieldElement FieldGF2m::polynomial_mul(FieldElement a, FieldElement b, std::uint32_t poly, int m) {
  std::uint64_t acc = 0;
  std::uint64_t aa = a;
  while (b) {
    if (b & 1) acc ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  for (int d = 2 * m - 2; d >= m; --d)
    if ((acc >> d) & 1) acc ^= static_cast<std::uint64_t>(poly) << (d - m);
  return static_cast<FieldElement>(acc);
}

FieldGF2m::FieldGF2m(int m)
    : m_(m), poly_(primitive_polynomial(m)), size_(1u << m) {
  exp_.assign(size_ - 1, 0);
  log_.assign(size_, 0);
  FieldElement x = 1;
  for (std::uint32_t i = 0; i + 1 < size_; ++i) {
    exp_[i] = x;
    if (x == 1 && i > 0)
      throw std::logic_error("FieldGF2m: generator is not primitive");
    log_[x] = i;
    x = polynomial_mul(x, 2, poly_, m_);  // multiply by alpha = x
  }
  if (x != 1) throw std::logic_error("FieldGF2m: alpha^(2^m-1) != 1");
}

FieldElement FieldGF2m::pow(FieldElement a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  std::uint64_t le = (static_cast<std::uint64_t>(log_[a]) * (e % order())) % order();
  return exp_[le];
}

FieldElement FieldGF2m::inverse(FieldElement a) const {
  if (a == 0) throw std::domain_error("FieldGF2m::inverse of zero");
  return exp_[(order() - log_[a]) % order()];
}

FieldElement FieldGF2m::alpha_pow(std::int64_t j) const {
  std::int64_t r = j % static_cast<std::int64_t>(order());
  if (r < 0) r += order();
  return exp_[static_cast<std::size_t>(r)];
}

std::uint32_t FieldGF2m::log(FieldElement a) const {
  if (a == 0 || a >= size_) throw std::domain_error("FieldGF2m::log: invalid element");
  return log_[a];
}

std::string FieldGF2m::describe() const {
  std::ostringstream os;
  os << "GF(2^" << m_ << ") / 0x" << std::hex << poly_;
  return os.str();
}

}  // namespace coverlab
