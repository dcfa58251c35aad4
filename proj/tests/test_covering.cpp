#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "coverlab/covering.hpp"
#include "coverlab/rng.hpp"
#include "oracles.hpp"

using namespace coverlab;

TEST_SUITE_BEGIN("covering");

TEST_CASE("profile of the full cube, a point, and the [7,4] Hamming code") {
  LinearCode full = LinearCode::from_generator(BitMatrix::identity(4));
  DistanceProfile p_full = distance_profile(full);
  CHECK(p_full.count[0] == 16);
  CHECK(p_full.covering_radius() == 0);

  DistanceProfile p_point = distance_profile(LinearCode::zero_code(4));
  CHECK(p_point.count == std::vector<std::uint64_t>{1, 4, 6, 4, 1});

  DistanceProfile p_ham = distance_profile(hamming_code(3));
  CHECK(p_ham.count[0] == 16);
  CHECK(p_ham.count[1] == 112);
  CHECK(p_ham.covering_radius() == 1);
  std::uint64_t total = 0;
  for (auto c : p_ham.count) total += c;
  CHECK(total == 128);
  // eps = 0 recovers the deepest occupied shell
  CHECK(eps_covering_radius_from_profile(p_ham, 0.0).radius == p_ham.covering_radius());
  CHECK(eps_covering_radius_from_profile(p_point, 0.0).radius == p_point.covering_radius());
}

TEST_CASE("profile matches the per-point scan oracle on random sets") {
  Rng rng(2024, 1);
  for (int n : {4, 7, 10}) {
    std::vector<std::uint64_t> pts;
    std::vector<BitVector> vecs;
    int count = 1 + static_cast<int>(rng.below(10));
    for (int i = 0; i < count; ++i) {
      std::uint64_t x = rng.below(std::uint64_t{1} << n);
      pts.push_back(x);
      vecs.push_back(BitVector::from_index(n, x));
    }
    DistanceProfile profile = distance_profile(std::span<const BitVector>(vecs));
    CHECK(profile.count == oracles::profile_by_scan(n, pts));
  }
}

TEST_CASE("empty set is rejected") {
  std::vector<BitVector> none;
  CHECK_THROWS_AS(distance_profile(std::span<const BitVector>(none)), std::invalid_argument);
}

TEST_CASE("eps radius: extremes and the [15,11] Hamming code") {
  CHECK(eps_covering_radius_exact(LinearCode::zero_code(6), 0.0).radius == 6);
  CHECK(eps_covering_radius_exact(LinearCode::zero_code(6), 1.0).radius == 0);
  CoverReport ham = eps_covering_radius_exact(hamming_code(4), 0.0);
  CHECK(ham.radius == 1);
  CHECK(ham.method == "exact");
  CHECK(ham.uncovered == 0);
  CHECK_THROWS_AS(eps_covering_radius_exact(hamming_code(4), 1.5), std::invalid_argument);
}

TEST_CASE("uncovered fraction: extremes and monotonicity") {
  LinearCode point = LinearCode::zero_code(8);
  DistanceProfile p = distance_profile(point);
  CHECK(uncovered_fraction(p, 8) == 0);
  CHECK(uncovered_fraction(p, 0) == BigRational(255, 256));
  Rng rng(3, 3);
  for (int t = 0; t < 5; ++t) {
    LinearCode c = random_linear_code(10, 1 + static_cast<int>(rng.below(5)), rng.next());
    DistanceProfile cp = distance_profile(c);
    for (int r = 0; r < 10; ++r) CHECK(uncovered_fraction(cp, r) >= uncovered_fraction(cp, r + 1));
  }
}

TEST_CASE("distance to a linear code is constant on cosets") {
  LinearCode c = random_linear_code(18, 7, 51);
  Rng rng(4, 4);
  for (int t = 0; t < 10; ++t) {
    BitVector u(18);
    for (int i = 0; i < 18; ++i)
      if (rng.next() & 1) u.set_bit(i, true);
    int base = coset_min_weight(c, u);
    BitVector cw = c.codeword(rng.below(1u << 7));
    CHECK(coset_min_weight(c, u ^ cw) == base);
  }
}

TEST_CASE("coset-leader profile equals the BFS profile, both exact routes") {
  Rng rng(6, 6);
  for (int t = 0; t < 6; ++t) {
    int n = 8 + static_cast<int>(rng.below(7));
    int k = 1 + static_cast<int>(rng.below(std::min(n, 10)));
    LinearCode c = random_linear_code(n, k, rng.next());
    auto bfs = distance_profile(c).count;
    CHECK(coset_distance_profile(c).count == bfs);
    auto gray = coset_leader_counts_gray(c);
    auto synd = coset_leader_counts_syndrome(c);
    CHECK(gray == synd);
    for (std::size_t w = 0; w < gray.size(); ++w) CHECK((gray[w] << k) == bfs[w]);
  }
  CHECK(coset_distance_profile(hamming_code(3)).count == distance_profile(hamming_code(3)).count);
}

TEST_CASE("monte-carlo: full cube and the [15,11] Hamming code") {
  LinearCode full = LinearCode::from_generator(BitMatrix::identity(10));
  CoverReport r = eps_covering_radius_mc(full, 0.0, 500, 1);
  CHECK(r.radius == 0);
  CHECK(r.uncovered == 0);
  CoverReport ham = eps_covering_radius_mc(hamming_code(4), 0.0, 2000, 7);
  CHECK(ham.radius == 1);  // exact radius, the sample surely sees distance 1
  CHECK(ham.method == "monte-carlo");
  CHECK(*ham.samples == 2000);
}

TEST_CASE("monte-carlo is reproducible and thread-count independent") {
  LinearCode c = random_linear_code(24, 10, 12);
  CoverReport a = eps_covering_radius_mc(c, 0.2, 600, 99, Exec::Serial);
  CoverReport b = eps_covering_radius_mc(c, 0.2, 600, 99, Exec::Parallel);
  CHECK(a.radius == b.radius);
  CHECK(a.uncovered == b.uncovered);
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("monte-carlo interval covers the exact fraction in >= 99% of 200 trials") {
  LinearCode c = random_linear_code(14, 6, 31415);
  DistanceProfile exact = distance_profile(c);
  int covered = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    CoverReport r = eps_covering_radius_mc(c, 0.3, 400, 1000 + t);
    double truth = static_cast<double>(uncovered_fraction(exact, r.radius));
    auto beyond = static_cast<std::uint64_t>(std::llround(r.uncovered_value * 400));
    WilsonInterval w = wilson_interval_99(beyond, *r.samples);
    if (truth >= w.lo - 1e-12 && truth <= w.hi + 1e-12) ++covered;
  }
  CHECK(covered >= 198);
}

TEST_CASE("restriction: extending a code never raises the covered fraction") {
  Rng rng(8, 8);
  for (int t = 0; t < 6; ++t) {
    int n = 6 + static_cast<int>(rng.below(9));  // up to 14
    int k = 1 + static_cast<int>(rng.below(5));
    int d = 1 + static_cast<int>(rng.below(5));  // up to 5
    LinearCode c = random_linear_code(n, k, rng.next());
    LinearCode q = extend_code(c, d);
    DistanceProfile pc = distance_profile(c), pq = distance_profile(q);
    for (int radius = 0; radius <= n; ++radius) {
      BigRational lhs = BigRational(1) - uncovered_fraction(pc, radius);
      BigRational rhs = BigRational(1) - uncovered_fraction(pq, radius);
      CHECK(lhs >= rhs);
    }
  }
}

TEST_CASE("ball volumes, exact and real") {
  CHECK(ball_volume(4, 1).exact == BigRational(5, 16));
  CHECK(ball_volume(9, 9).exact == 1);
  CHECK(ball_volume(9, 12.7).exact == 1);
  CHECK(ball_volume(1, 0).exact == BigRational(1, 2));
  CHECK(ball_volume(6, -1).exact == 0);
  CHECK(ball_volume(4, 1.9).exact == BigRational(5, 16));  // floors the radius
  CHECK(ball_volume(4, 1).value == doctest::Approx(5.0 / 16).epsilon(1e-15));
}

TEST_CASE("ball volume lower bound: value, monotonicity, comparison log") {
  CHECK(ball_volume_lower_bound(10000, 100, 0.1) ==
        doctest::Approx(3.9439377642402345e-06).epsilon(1e-12));
  // eps' decreasing => bound nondecreasing
  CHECK(ball_volume_lower_bound(500, 10, 0.05) >= ball_volume_lower_bound(500, 10, 0.1));
  CHECK(ball_volume_lower_bound(500, 10, 0.1) >= ball_volume_lower_bound(500, 10, 1.0));
  CHECK_THROWS_AS(ball_volume_lower_bound(10, 0, 0.1), std::invalid_argument);

  // finite-n comparison against the exact volume; the estimate only kicks in
  // asymptotically, so violations are reported rather than asserted
  for (int n : {1024, 4096, 16384}) {
    for (double frac : {0.002, 0.01}) {
      double delta = frac * n;
      double bound = ball_volume_lower_bound(n, delta, 0.1);
      double exact = ball_volume(n, n / 2.0 - delta).value;
      if (bound > exact)
        MESSAGE("lower-bound estimate above exact volume at n=", n, " delta=", delta,
                " (expected for n below the asymptotic regime)");
    }
  }
}

TEST_CASE("wilson interval at 99%") {
  WilsonInterval w = wilson_interval_99(3, 100);
  CHECK(w.center == doctest::Approx(0.05924372322643679).epsilon(1e-12));
  CHECK(w.halfwidth == doctest::Approx(0.051631553924658194).epsilon(1e-12));
  WilsonInterval zero = wilson_interval_99(0, 50);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi > 0.0);
  CHECK_THROWS_AS(wilson_interval_99(1, 0), std::invalid_argument);
}

TEST_CASE("cover report json shape") {
  CoverReport r = eps_covering_radius_exact(hamming_code(3), 0.0);
  std::string j = r.to_json();
  CHECK(j.find("\"schema\":1") != std::string::npos);
  CHECK(j.find("\"method\":\"exact\"") != std::string::npos);
  CHECK(j.find("\"radius\":1") != std::string::npos);
}

TEST_SUITE_END();
