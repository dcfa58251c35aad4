#include "coverlab/augment.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace coverlab {

namespace {

constexpr int kAugmentMaxN = 22;

CubeSet covered_set(const LinearCode& code, long long radius, Exec exec) {
  CubeSet set(code.length());
  std::uint64_t cw = 0;
  set.insert(0);
  for (std::uint64_t j = 1; j < (std::uint64_t{1} << code.dimension()); ++j) {
    cw ^= code.generator().row(std::countr_zero(j)).word(0);
    set.insert(cw);
  }
  for (long long r = 0; r < radius; ++r) set = set.expanded(exec);
  return set;
}

}  // namespace

ShiftChoice best_shift(const CubeSet& uncovered, Exec exec) {
  const int n = uncovered.n();
  if (n > kAugmentMaxN)
    throw std::invalid_argument("best_shift: autocorrelation guarded at n <= 22");
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::int64_t> f(size, 0);
  uncovered.for_each_member([&](std::uint64_t x) { f[x] = 1; });
  wht_inplace<std::int64_t>(f, exec);
  for (auto& v : f) v *= v;
  wht_inplace<std::int64_t>(f, exec);

  ShiftChoice best;
  best.shift = 0;
  best.overlap = static_cast<std::uint64_t>(f[0] >> n);
  for (std::size_t x = 1; x < size; ++x) {
    std::uint64_t c = static_cast<std::uint64_t>(f[x] >> n);
    if (c < best.overlap) {
      best.overlap = c;
      best.shift = x;
    }
  }
  return best;
}

AugmentResult cohen_augment(const LinearCode& code, double radius, Exec exec) {
  const int n = code.length();
  if (n > kAugmentMaxN) throw std::invalid_argument("cohen_augment: guarded at n <= 22");
  if (!(radius >= 0)) throw std::invalid_argument("cohen_augment: radius >= 0 required");

  const BigInt universe = BigInt(1) << n;
  CubeSet uncovered = covered_set(code, static_cast<long long>(std::floor(radius)), exec).complemented();

  AugmentResult result;
  result.initial = BigRational(BigInt(uncovered.count()), universe);
  if (uncovered.empty()) {
    result.added = LinearCode::zero_code(n);
    return result;
  }
  if (result.initial >= BigRational(1, 2))
    throw std::invalid_argument("cohen_augment: initial uncovered fraction >= 1/2");

  const int max_steps = n <= 1 ? 1 : std::bit_width(static_cast<unsigned>(n - 1));  // ceil(log2 n)
  std::vector<BitVector> shifts;
  BigRational prev = result.initial;
  for (int step = 0; step < max_steps && !uncovered.empty(); ++step) {
    ShiftChoice choice = best_shift(uncovered, exec);
    CubeSet translated = uncovered.xor_translate(choice.shift);
    uncovered.intersect_with(translated);
    BigRational measure(BigInt(uncovered.count()), universe);
    if (measure > prev * prev)
      throw std::logic_error("cohen_augment: squaring step violated");
    result.trace.push_back(measure);
    shifts.push_back(BitVector::from_index(n, choice.shift));
    prev = measure;
  }
  if (!uncovered.empty())
    throw std::runtime_error("cohen_augment: not covered within ceil(log2 n) steps");
  result.added = shifts.empty() ? LinearCode::zero_code(n)
                                : LinearCode::from_generator(BitMatrix::from_rows(std::move(shifts)));
  return result;
}

}  // namespace coverlab
