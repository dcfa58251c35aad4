#pragma once

#include <cstdint>
#include <vector>

#include "coverlab/covering.hpp"

namespace coverlab {

struct ShiftChoice {
  std::uint64_t shift = 0;
  std::uint64_t overlap = 0;  // |A intersect (A + shift)|
};

// The shift x minimizing |A intersect (A+x)|, all shifts at once through the
// exact integer XOR autocorrelation of the indicator (intermediates stay
// below 2^(2n) <= 2^44, so int64 butterflies are exact).  Ties break to the
// smallest integer encoding; the minimum is at most |A|^2 / 2^n.
ShiftChoice best_shift(const CubeSet& uncovered, Exec exec = Exec::Auto);

struct AugmentResult {
  LinearCode added;                // D, generator rows = chosen shifts
  BigRational initial;             // uncovered fraction before any step
  std::vector<BigRational> trace;  // uncovered fraction after each step
};

// Greedy doubling: repeatedly add the best shift of the uncovered set until
// B_n(C + D; R) covers the cube.  Requires the initial uncovered fraction to
// be below 1/2; the squaring step then finishes within ceil(log2 n) rounds.
// Every step asserts trace[i+1] <= trace[i]^2 in exact rationals.
AugmentResult cohen_augment(const LinearCode& code, double radius, Exec exec = Exec::Auto);

}  // namespace coverlab
