#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "coverlab/bounds.hpp"
#include "coverlab/mathutil.hpp"
#include "coverlab/spectral.hpp"
#include "oracles.hpp"

using namespace coverlab;
using std::numbers::pi;

TEST_SUITE_BEGIN("spectral");

TEST_CASE("binomial reference distribution") {
  WeightDistribution b1 = binomial_dist(1);
  CHECK(b1[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b1[1] == doctest::Approx(0.5).epsilon(1e-15));
  WeightDistribution b2 = binomial_dist(2);
  CHECK(b2[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(b2[1] == doctest::Approx(0.5).epsilon(1e-15));
  // exact rational mass for n up to 64
  for (int n : {10, 33, 64}) {
    BigRational total = 0;
    BigInt binom = 1;
    for (int w = 0; w <= n; ++w) {
      total += BigRational(binom, BigInt(1) << n);
      binom = binom * (n - w) / (w + 1);
    }
    CHECK(total == 1);
  }
}

TEST_CASE("weight distribution pushforward") {
  CHECK(l1_to_binomial(weight_dist(SupportDistribution::uniform_cube(4))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  SupportDistribution point = SupportDistribution::point_mass(BitVector::parse("0110100"));
  WeightDistribution wd = weight_dist(point);
  for (int w = 0; w <= 7; ++w) CHECK(wd[w] == doctest::Approx(w == 3 ? 1.0 : 0.0));

  WeightDistribution simplex = weight_dist(mu_of_code(dual_bch(1, 4)));
  CHECK(simplex[0] == doctest::Approx(1.0 / 16).epsilon(1e-12));
  CHECK(simplex[8] == doctest::Approx(15.0 / 16).epsilon(1e-12));
}

TEST_CASE("translate: identity, involution, coset weights") {
  SupportDistribution mu = oracles::random_distribution(8, 5);
  BitVector zero(8), u = BitVector::parse("10110010");
  CHECK(translate(mu, zero).support() == mu.support());
  SupportDistribution back = translate(translate(mu, u), u);
  CHECK(back.support() == mu.support());
  for (std::size_t i = 0; i < mu.size(); ++i)
    CHECK(back.prob()[i] == doctest::Approx(mu.prob()[i]).epsilon(1e-12));

  LinearCode c = random_linear_code(10, 4, 1);
  WeightDistribution coset_wd = weight_dist(translate(mu_of_code(c), BitVector::parse("1110001000")));
  auto hist = coset_weight_histogram(c, BitVector::parse("1110001000"));
  for (int w = 0; w <= 10; ++w)
    CHECK(coset_wd[w] == doctest::Approx(std::ldexp(static_cast<double>(hist[w]), -4)).epsilon(1e-12));
}

TEST_CASE("convolution: identity element, idempotent linear code, direct oracle") {
  SupportDistribution mu = oracles::random_distribution(6, 9);
  SupportDistribution delta0 = SupportDistribution::point_mass(BitVector(6));
  SupportDistribution conv = convolve(delta0, mu);
  CHECK(conv.support() == mu.support());
  for (std::size_t i = 0; i < mu.size(); ++i)
    CHECK(conv.prob()[i] == doctest::Approx(mu.prob()[i]).epsilon(1e-12));

  SupportDistribution a = SupportDistribution::point_mass(BitVector::parse("110000"));
  SupportDistribution b = SupportDistribution::point_mass(BitVector::parse("011000"));
  SupportDistribution ab = convolve(a, b);
  CHECK(ab.size() == 1);
  CHECK(ab.support()[0].str() == "101000");

  LinearCode c = random_linear_code(9, 3, 12);
  SupportDistribution mc = mu_of_code(c);
  SupportDistribution mcc = convolve(mc, mc);
  CHECK(mcc.support() == mc.support());
  for (std::size_t i = 0; i < mc.size(); ++i)
    CHECK(mcc.prob()[i] == doctest::Approx(mc.prob()[i]).epsilon(1e-12));

  // direct double-sum oracle over the full cube at n = 6
  SupportDistribution g = oracles::random_distribution(6, 10);
  SupportDistribution fg = convolve(mu, g);
  std::vector<double> pf(64, 0.0), pg(64, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) pf[mu.support()[i].index()] = mu.prob()[i];
  for (std::size_t i = 0; i < g.size(); ++i) pg[g.support()[i].index()] = g.prob()[i];
  std::vector<double> direct = oracles::convolve_by_definition(pf, pg);
  std::vector<double> got(64, 0.0);
  for (std::size_t i = 0; i < fg.size(); ++i) got[fg.support()[i].index()] = fg.prob()[i];
  for (int x = 0; x < 64; ++x) CHECK(got[x] == doctest::Approx(direct[x]).epsilon(1e-10));
}

TEST_CASE("e_theta: endpoints and the uniform squared-modulus identity") {
  SupportDistribution mu = oracles::random_distribution(7, 21);
  CHECK(std::abs(e_theta(mu, 0.0) - std::complex<double>(1.0, 0.0)) < 1e-12);
  BitVector u = BitVector::parse("1101100");
  SupportDistribution du = SupportDistribution::point_mass(u);
  for (double theta : {0.3, pi / 3, 2.9})
    CHECK(std::abs(e_theta(du, theta) - std::polar(1.0, theta * u.weight())) < 1e-12);

  for (int n : {3, 6, 9}) {
    for (double theta : {pi / 7, 1.0, 2.5}) {
      double lhs = std::norm(e_theta_uniform(n, theta));
      CHECK(lhs == doctest::Approx(cos_weight_expectation_uniform(n, theta)).epsilon(1e-10));
      // uniform distribution materialized explicitly
      if (n <= 6) {
        std::complex<double> direct = e_theta(SupportDistribution::uniform_cube(n), theta);
        CHECK(std::abs(direct - e_theta_uniform(n, theta)) < 1e-12);
      }
    }
  }
}

TEST_CASE("translate-MSE left side: uniform gives zero, point mass has a closed form") {
  SupportDistribution u4 = SupportDistribution::uniform_cube(4);
  CHECK(mse_translate_lhs(u4, 1.3) == doctest::Approx(0.0).epsilon(1e-12));

  const int n = 6;
  const double theta = pi / 3;
  SupportDistribution d0 = SupportDistribution::point_mass(BitVector(n));
  double expected = 1.0 - ipow((1 + std::cos(theta)) / 2, n);
  CHECK(mse_translate_lhs(d0, theta) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("translate-MSE identity: both sides agree to 1e-9") {
  int checked = 0;
  for (int n = 4; n <= 10; n += 3) {
    for (int trial = 0; trial < 6; ++trial) {
      SupportDistribution mu = oracles::random_distribution(n, 100 * n + trial);
      for (double theta : {pi / 7, 1.0, 2.5, 5.9}) {
        double lhs = mse_translate_lhs(mu, theta);
        double rhs = mse_translate_rhs(mu, theta);
        CHECK(std::abs(lhs - rhs) < 1e-9);
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("translate-MSE right side closed forms") {
  SupportDistribution u4 = SupportDistribution::uniform_cube(4);
  CHECK(mse_translate_rhs(u4, 0.77) == doctest::Approx(0.0).epsilon(1e-12));
  BitVector u = BitVector::parse("01100011");
  SupportDistribution du = SupportDistribution::point_mass(u);
  for (double theta : {0.4, 2.2})
    CHECK(mse_translate_rhs(du, theta) ==
          doctest::Approx(1.0 - ipow((1 + std::cos(theta)) / 2, 8)).epsilon(1e-12));

  // linear code: mu * mu = mu, so the right side is E_mu cos^|y| - uniform
  LinearCode q = random_linear_code(10, 5, 77);
  SupportDistribution mq = mu_of_code(q);
  for (double theta : {pi / 3, 1.9}) {
    double direct = cos_weight_expectation(mq, theta) - cos_weight_expectation_uniform(10, theta);
    CHECK(mse_translate_rhs(mq, theta) == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("sampled left side agrees with the exact sweep") {
  SupportDistribution mu = oracles::random_distribution(10, 404);
  double exact = mse_translate_lhs(mu, 1.1);
  SampledMean sm = mse_translate_lhs_sampled(mu, 1.1, 4000, 17);
  CHECK(std::abs(sm.mean - exact) <= 5 * sm.stderr_ + 1e-12);
}

TEST_CASE("L1 and Linf distances to the binomial") {
  CHECK(l1_to_binomial(binomial_dist(9)) == doctest::Approx(0.0));
  // point mass at 0 against B_2: |1 - 1/4| + |0 - 1/2| + |0 - 1/4| = 3/2
  WeightDistribution d0({1.0, 0.0, 0.0});
  CHECK(l1_to_binomial(d0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(linf_to_binomial(d0) == doctest::Approx(0.75).epsilon(1e-15));
  Rng rng(66, 1);
  for (int t = 0; t < 10; ++t) {
    SupportDistribution mu = oracles::random_distribution(7, 600 + t);
    WeightDistribution wd = weight_dist(mu);
    CHECK(linf_to_binomial(wd) <= l1_to_binomial(wd) + 1e-15);
  }
}

TEST_CASE("average coset L1: full cube, serial-parallel agreement, permutations") {
  LinearCode full = LinearCode::from_generator(BitMatrix::identity(8));
  CHECK(avg_coset_l1(full) == doctest::Approx(0.0).epsilon(1e-12));

  LinearCode q = random_linear_code(14, 6, 2020);
  double serial = avg_coset_l1(q, Exec::Serial);
  double parallel = avg_coset_l1(q, Exec::Parallel);
  CHECK(serial == doctest::Approx(parallel).epsilon(1e-12));

  // permuting coordinates leaves the average invariant
  BitMatrix permuted(q.dimension(), 14);
  for (int i = 0; i < q.dimension(); ++i)
    for (int j = 0; j < 14; ++j)
      if (q.generator().row(i).bit(j)) permuted.row(i).set_bit((j * 5 + 3) % 14, true);
  LinearCode qp = LinearCode::from_generator(permuted);
  CHECK(avg_coset_l1(qp) == doctest::Approx(serial).epsilon(1e-12));
}

TEST_CASE("average coset L1: exact equals the sampled estimate within CI") {
  LinearCode simplex_ext = extend_code(dual_bch(1, 4), 3);  // [18, 7]
  double exact = avg_coset_l1(simplex_ext);
  SampledMean sm = avg_coset_l1_sampled(simplex_ext, 3000, 5);
  CHECK(std::abs(sm.mean - exact) <= 4 * sm.stderr_ + 1e-12);
}

TEST_CASE("Markov chain: uncovered fraction <= avg coset L1 / ball volume") {
  Rng rng(11, 11);
  for (int t = 0; t < 8; ++t) {
    int n = 8 + static_cast<int>(rng.below(5));  // 8..12
    int k = std::max(1, n - 8 + static_cast<int>(rng.below(4)));
    LinearCode q = random_linear_code(n, std::min(k, n), rng.next());
    DistanceProfile profile = distance_profile(q);
    double avg = avg_coset_l1(q);
    for (int radius = n / 4; radius <= n / 2; ++radius) {
      double lhs = static_cast<double>(uncovered_fraction(profile, radius));
      double rhs = avg / ball_volume(n, radius).value;
      CHECK(lhs <= rhs + 1e-12);
    }
  }
}

TEST_CASE("L1 bound of the coset theorem is vacuous at desk scale, data still below cap") {
  LinearCode q = extend_code(dual_bch(3, 5), 7);  // [38, 22], bilateral dual distance >= 7
  CHECK(bilateral_min_distance(q.dual()) >= 7);
  double bound = bilateral_l1_bound(38, 7);
  CHECK(bound > 2.0);  // vacuous against the trivial L1 cap
  SampledMean sm = avg_coset_l1_sampled(q, 40, 3);
  CHECK(sm.mean <= 2.0 + 1e-12);
}

TEST_CASE("distribution file round trip and rational probabilities") {
  std::istringstream in("# dist\n4 3\n1100 1/4\n0011 0.25\n0000 2/4\n");
  SupportDistribution mu = SupportDistribution::parse(in);
  CHECK(mu.n() == 4);
  CHECK(mu.size() == 3);
  std::ostringstream out;
  mu.save(out);
  std::istringstream in2(out.str());
  SupportDistribution back = SupportDistribution::parse(in2);
  CHECK(back.support() == mu.support());

  std::istringstream dup("2 2\n11 0.5\n11 0.5\n");
  CHECK_THROWS_AS(SupportDistribution::parse(dup), std::invalid_argument);
  std::istringstream bad_sum("2 2\n11 0.5\n00 0.2\n");
  CHECK_THROWS_AS(SupportDistribution::parse(bad_sum), std::invalid_argument);
}

TEST_SUITE_END();
