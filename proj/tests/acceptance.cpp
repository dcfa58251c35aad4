// Acceptance suite: one self-contained check per shipped criterion, one
// pass/fail line each.  Exit code = number of failed criteria.
//
//   acceptance [--write-golden]   (--write-golden refreshes the bound grid)

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coverlab/augment.hpp"
#include "coverlab/bounds.hpp"
#include "coverlab/covering.hpp"
#include "coverlab/gf2m.hpp"
#include "coverlab/kwise.hpp"
#include "coverlab/mathutil.hpp"
#include "coverlab/rng.hpp"
#include "coverlab/spectral.hpp"

using namespace coverlab;
using nlohmann::json;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string golden_path() {
  return std::string(COVERLAB_SOURCE_DIR) + "/tests/golden/boundset_grid.json";
}

SupportDistribution random_distribution(int n, std::uint64_t seed, int max_support = 24) {
  Rng rng(seed, 0xacce);
  const std::uint64_t cube = std::uint64_t{1} << n;
  std::uint64_t cap = std::min<std::uint64_t>(cube, static_cast<std::uint64_t>(max_support));
  std::size_t size = 1 + static_cast<std::size_t>(rng.below(cap));
  std::set<std::uint64_t> picked;
  while (picked.size() < size) picked.insert(rng.below(cube));
  std::vector<BitVector> support;
  std::vector<double> prob;
  double total = 0.0;
  for (std::uint64_t x : picked) {
    support.push_back(BitVector::from_index(n, x));
    prob.push_back(rng.uniform() + 1e-3);
    total += prob.back();
  }
  for (double& p : prob) p /= total;
  return SupportDistribution(std::move(support), std::move(prob));
}

// ---- C1: translate-MSE identity, both sides -------------------------------

Outcome c1_identity() {
  std::vector<double> thetas = {pi / 7, pi / 3, 1.0, 2.5};
  Rng theta_rng(20260810, 1);
  for (int i = 0; i < 20; ++i) thetas.push_back(theta_rng.uniform() * 2 * pi);

  double max_diff = 0.0;
  long checks = 0;
  for (int n = 4; n <= 10; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      SupportDistribution mu = random_distribution(n, 1000u * n + trial);
      std::vector<double> lhs = mse_translate_lhs_batch(mu, thetas);
      SupportDistribution nu = convolve(mu, mu);
      WeightDistribution nu_weights = weight_dist(nu);
      for (std::size_t t = 0; t < thetas.size(); ++t) {
        double c = std::cos(thetas[t]);
        double rhs = 0.0;
        for (int w = 0; w <= nu_weights.n(); ++w) rhs += nu_weights[w] * ipow(c, w);
        rhs -= cos_weight_expectation_uniform(n, thetas[t]);
        max_diff = std::max(max_diff, std::abs(lhs[t] - rhs));
        ++checks;
      }
    }
  }
  Outcome out;
  out.pass = max_diff < 1e-9;
  std::ostringstream os;
  os << "max|lhs-rhs| = " << max_diff << " over " << checks << " checks (tol 1e-9)";
  out.detail = os.str();
  return out;
}

// ---- C2: closed-form transform of r^|x| ------------------------------------

Outcome c2_exponential_transform() {
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    for (double r : {-0.9, 0.0, 0.37, 1.0}) {
      RealCubeFunction f(n);
      for (std::uint64_t x = 0; x < f.size(); ++x) f[x] = ipow(r, std::popcount(x));
      RealCubeFunction fhat = walsh_hadamard(f);
      for (std::uint64_t z = 0; z < fhat.size(); ++z) {
        double expect = ipow((1 + r) / 2, n) * ipow((1 - r) / (1 + r), std::popcount(z));
        worst = std::max(worst, std::abs(fhat[z] - expect));
      }
    }
    for (double theta : {pi / 7, pi / 3, 1.0, 2.5}) {
      ComplexCubeFunction g(n);
      for (std::uint64_t x = 0; x < g.size(); ++x)
        g[x] = std::polar(1.0, theta * std::popcount(x));
      ComplexCubeFunction ghat = walsh_hadamard(g);
      std::complex<double> lead =
          std::polar(1.0, n * theta / 2.0) * ipow(std::cos(theta / 2), n);
      std::complex<double> ratio =
          std::complex<double>(0, -1) * std::tan(theta / 2);
      for (std::uint64_t z = 0; z < ghat.size(); ++z) {
        std::complex<double> expect = lead * cipow(ratio, std::popcount(z));
        worst = std::max(worst, std::abs(ghat[z] - expect));
      }
    }
  }
  Outcome out;
  out.pass = worst < 1e-10;
  std::ostringstream os;
  os << "max pointwise gap = " << worst << " (tol 1e-10), real r in {-0.9, 0, 0.37, 1} and "
        "r = e^(i theta), n <= 10";
  out.detail = os.str();
  return out;
}

// ---- C3: Markov chain for coset averages -----------------------------------

Outcome c3_markov_chain() {
  std::vector<LinearCode> corpus;
  corpus.push_back(hamming_code(3));
  corpus.push_back(dual_bch(1, 3));
  corpus.push_back(extend_code(dual_bch(1, 3), 3));
  Rng rng(33, 0);
  for (int n : {8, 10, 12, 14}) {
    for (int k : {n - 10, n - 7, n - 4, n - 2}) {
      if (k < 1) continue;
      for (int rep = 0; rep < 2; ++rep)
        corpus.push_back(random_linear_code(n, k, rng.next()));
    }
  }
  long violations = 0, checks = 0;
  for (const auto& q : corpus) {
    const int n = q.length();
    DistanceProfile profile = distance_profile(q);
    double avg = avg_coset_l1(q);
    for (int radius = n / 4; radius <= n / 2; ++radius) {
      double lhs = static_cast<double>(uncovered_fraction(profile, radius));
      double rhs = avg / ball_volume(n, radius).value;
      if (lhs > rhs + 1e-12) ++violations;
      ++checks;
    }
  }
  Outcome out;
  out.pass = violations == 0;
  std::ostringstream os;
  os << violations << " violations over " << checks << " (code, R) pairs, " << corpus.size()
     << " codes with n <= 14, dim >= n-10";
  out.detail = os.str();
  return out;
}

// ---- C4: the extension construction at dual_bch(2,5), d = 5 ----------------

Outcome c4_extension() {
  LinearCode c = dual_bch(2, 5);       // [31, 10]
  LinearCode q = extend_code(c, 5);    // [36, 15]
  int bilateral = bilateral_min_distance(q.dual());
  DistanceProfile pc = coset_distance_profile(c);
  DistanceProfile pq = coset_distance_profile(q);
  long violations = bilateral >= 5 ? 0 : 1;
  for (int radius = 8; radius <= 15; ++radius) {
    BigRational covered_c = BigRational(1) - uncovered_fraction(pc, radius);
    BigRational covered_q = BigRational(1) - uncovered_fraction(pq, radius);
    if (covered_c < covered_q) ++violations;
  }
  Outcome out;
  out.pass = violations == 0;
  std::ostringstream os;
  os << "bilateral dual distance of Q = " << bilateral
     << " (need >= 5); covered-measure inequality exact for R in {8..15}, " << violations
     << " violations";
  out.detail = os.str();
  return out;
}

// ---- C5: dual BCH properties, m <= 6 ----------------------------------------

Outcome c5_dual_bch() {
  std::ostringstream os;
  bool pass = true;
  int families = 0;
  for (int m = 2; m <= 6; ++m) {
    for (int s = 1;; ++s) {
      std::int64_t lhs = 2ll * s - 2;
      if (lhs * lhs >= (1ll << m)) break;
      LinearCode c = dual_bch(s, m);
      ++families;
      const int n = c.length();
      bool dim_ok = c.dimension() == s * m && c.length() == (1 << m) - 1;

      auto hist = weight_histogram(c);
      const double center = std::ldexp(1.0, m - 1);
      const double slack = (s - 1) * std::sqrt(std::ldexp(1.0, m));
      bool wcu_ok = true;
      for (int w = 1; w <= n; ++w)
        if (hist[static_cast<std::size_t>(w)] > 0 && std::abs(w - center) > slack + 1e-9)
          wcu_ok = false;

      bool indep_ok = code_kwise_independent(c, 2 * s);
      int exact_dd = min_distance(c.dual());  // MacWilliams cross-check
      bool dd_ok = exact_dd >= 2 * s + 1;

      if (!(dim_ok && wcu_ok && indep_ok && dd_ok)) {
        pass = false;
        os << " FAIL(s=" << s << ",m=" << m << ": dim " << dim_ok << " wcu " << wcu_ok
           << " kwise " << indep_ok << " dd " << exact_dd << ")";
      }
    }
  }
  Outcome out;
  out.pass = pass;
  out.detail = "dim = s*m, WCU on every codeword, dual distance >= 2s+1 (2s-wise test + "
               "MacWilliams cross-check) for " +
               std::to_string(families) + " (s,m) families" + os.str();
  return out;
}

// ---- C6: perfect-code oracles ----------------------------------------------

Outcome c6_perfect_codes() {
  int r74 = eps_covering_radius_exact(hamming_code(3), 0.0).radius;
  int r1511 = eps_covering_radius_exact(hamming_code(4), 0.0).radius;
  int simplex_radius = eps_covering_radius_exact(dual_bch(1, 4), 0.0).radius;
  double wcu = wcu_lower(15, 1);
  Outcome out;
  out.pass = r74 == 1 && r1511 == 1 && simplex_radius >= wcu;
  std::ostringstream os;
  os << "[7,4] radius " << r74 << ", [15,11] radius " << r1511 << ", dual_bch(1,4) radius "
     << simplex_radius << " >= wcu_lower(15,1) = " << wcu;
  out.detail = os.str();
  return out;
}

// ---- C7: Cohen augmentation, 20 seeded instances ----------------------------

Outcome c7_augment() {
  Rng rng(777, 0);
  int done = 0, squaring_bad = 0, cover_bad = 0, dim_bad = 0;
  int attempts = 0;
  while (done < 20 && attempts < 400) {
    ++attempts;
    int n = 10 + static_cast<int>(rng.below(7));  // 10..16
    int k = 1 + static_cast<int>(rng.below(5));
    LinearCode c = random_linear_code(n, k, rng.next());
    DistanceProfile profile = distance_profile(c);
    int radius = 0;
    while (radius <= n && uncovered_fraction(profile, radius) >= BigRational(1, 2)) ++radius;
    if (uncovered_fraction(profile, radius) == 0) continue;  // need (0, 1/2)
    AugmentResult result = cohen_augment(c, radius);
    BigRational prev = result.initial;
    for (const auto& t : result.trace) {
      if (t > prev * prev) ++squaring_bad;
      prev = t;
    }
    if (uncovered_fraction(distance_profile(sum_code(c, result.added)), radius) != 0) ++cover_bad;
    int cap = static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
    if (result.added.dimension() > cap) ++dim_bad;
    ++done;
  }
  Outcome out;
  out.pass = done == 20 && squaring_bad == 0 && cover_bad == 0 && dim_bad == 0;
  std::ostringstream os;
  os << done << " instances: " << squaring_bad << " squaring violations, " << cover_bad
     << " unverified covers, " << dim_bad << " dimension-cap violations";
  out.detail = os.str();
  return out;
}

// ---- C8: sphere-covering adaptation, exhaustive n <= 10, |C| <= 16 ----------

// tiny-cube covered-set kernel: packed 2^n bits, n <= 10
struct TinyCube {
  int n;
  int words;
  std::array<std::uint64_t, 16> w{};

  explicit TinyCube(int n_) : n(n_), words(n_ >= 6 ? 1 << (n_ - 6) : 1) {}
  void insert(std::uint32_t x) { w[x >> 6] |= 1ull << (x & 63); }
  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (int i = 0; i < words; ++i) c += std::popcount(w[i]);
    return c;
  }
  void expand() {
    static constexpr std::uint64_t kMask[6] = {
        0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
        0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};
    std::array<std::uint64_t, 16> next = w;
    const int in_word = n < 6 ? n : 6;
    for (int i = 0; i < words; ++i) {
      std::uint64_t acc = next[i];
      for (int a = 0; a < in_word; ++a) {
        int sdist = 1 << a;
        acc |= ((w[i] & kMask[a]) << sdist) | ((w[i] >> sdist) & kMask[a]);
      }
      for (int a = 6; a < n; ++a) acc |= w[i ^ (1 << (a - 6))];
      next[i] = acc;
    }
    w = next;
    if (n < 6) w[0] &= (1ull << (1 << n)) - 1;
  }
};

Outcome c8_sphere_cover_exhaustive() {
  long long violations = 0;
  long long codes_checked = 0;
  long long crosschecks = 0, crosscheck_bad = 0;

  for (int n = 1; n <= 10; ++n) {
    const std::uint64_t universe = std::uint64_t{1} << n;
    for (int k = 0; k <= std::min(4, n); ++k) {
      // per-epsilon requirement: radius >= bound  <=>  uncovered(ceil-1) > eps*2^n
      struct Req {
        int level;          // radius to inspect = ceil(bound) - 1
        long double budget;  // eps * 2^n
      };
      std::vector<Req> reqs;
      int max_level = 0;
      for (double eps : {0.0, 0.1, 0.5}) {
        double bound = sphere_cover_eps(n, std::ldexp(1.0, k), eps);
        if (bound <= 0) continue;
        int ceil_int = static_cast<int>(std::ceil(bound - 1e-12));
        if (ceil_int < 1) continue;
        reqs.push_back({ceil_int - 1, static_cast<long double>(eps) * universe});
        max_level = std::max(max_level, ceil_int - 1);
      }

      long long local_codes = 0;
      auto handle_code = [&](const std::array<std::uint32_t, 4>& rows) {
        // span of the first k rows
        TinyCube cube(n);
        std::uint32_t cw = 0;
        cube.insert(0);
        for (std::uint32_t j = 1; j < (1u << k); ++j) {
          cw ^= rows[std::countr_zero(j)];
          cube.insert(cw);
        }
        std::array<std::uint64_t, 11> covered_at{};
        covered_at[0] = cube.count();
        for (int level = 1; level <= max_level; ++level) {
          cube.expand();
          covered_at[static_cast<std::size_t>(level)] = cube.count();
        }
        for (const Req& req : reqs) {
          std::uint64_t uncovered = universe - covered_at[static_cast<std::size_t>(req.level)];
          if (!(static_cast<long double>(uncovered) > req.budget)) ++violations;
        }
        ++local_codes;
        // periodic cross-check of the quick kernel against the library path
        if ((local_codes & ((1 << 20) - 1)) == 1 && k >= 1) {
          std::vector<BitVector> gens;
          for (int i = 0; i < k; ++i) gens.push_back(BitVector::from_index(n, rows[static_cast<std::size_t>(i)]));
          LinearCode code = LinearCode::from_generator(BitMatrix::from_rows(gens));
          DistanceProfile profile = distance_profile(code);
          for (int level = 0; level <= max_level; ++level) {
            std::uint64_t unc = profile.uncovered_beyond(level);
            std::uint64_t quick = universe - covered_at[static_cast<std::size_t>(level)];
            ++crosschecks;
            if (unc != quick) ++crosscheck_bad;
          }
        }
      };

      if (k == 0) {
        handle_code({0, 0, 0, 0});
        codes_checked += 1;
        continue;
      }

      // every RREF generator: pivot combination + free-cell fill
      std::vector<int> pivots(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) pivots[static_cast<std::size_t>(i)] = i;
      auto next_combination = [&]() {
        int i = k - 1;
        while (i >= 0 && pivots[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return false;
        ++pivots[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
          pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
        return true;
      };
      do {
        std::uint32_t pivot_mask = 0;
        for (int p : pivots) pivot_mask |= 1u << p;
        std::vector<std::pair<int, int>> cells;  // (row, column)
        for (int i = 0; i < k; ++i)
          for (int col = pivots[static_cast<std::size_t>(i)] + 1; col < n; ++col)
            if (!(pivot_mask & (1u << col))) cells.emplace_back(i, col);
        const std::uint64_t fills = std::uint64_t{1} << cells.size();
        for (std::uint64_t fill = 0; fill < fills; ++fill) {
          std::array<std::uint32_t, 4> rows{};
          for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] = 1u << pivots[static_cast<std::size_t>(i)];
          for (std::size_t t = 0; t < cells.size(); ++t)
            if ((fill >> t) & 1)
              rows[static_cast<std::size_t>(cells[t].first)] |= 1u << cells[t].second;
          handle_code(rows);
        }
        codes_checked += static_cast<long long>(fills);
      } while (next_combination());
    }
  }

  Outcome out;
  out.pass = violations == 0 && crosscheck_bad == 0 && codes_checked > 60000000;
  std::ostringstream os;
  os << violations << " violations over " << codes_checked
     << " codes (all linear codes, n <= 10, |C| <= 16) x eps in {0, 0.1, 0.5}; "
     << crosschecks << " kernel cross-checks, " << crosscheck_bad << " mismatches";
  out.detail = os.str();
  return out;
}

// ---- C9: random-dual distance tail ------------------------------------------

Outcome c9_gv_tail() {
  const int n = 20, dual_dim = 15;
  const double K = 32.0;  // |C| = 2^n / 2^dual_dim
  const int trials = 10000;
  std::array<int, 7> below{};  // below[d] = #codes with dual distance < d
  for (int t = 0; t < trials; ++t) {
    LinearCode dual_code = random_linear_code(n, dual_dim, 50000u + t);
    auto hist = weight_histogram(dual_code);
    int d = 0;
    for (int w = 1; w <= n; ++w)
      if (hist[static_cast<std::size_t>(w)]) {
        d = w;
        break;
      }
    for (int dbar = 2; dbar <= 6; ++dbar)
      if (d < dbar) ++below[static_cast<std::size_t>(dbar)];
  }
  bool pass = true;
  std::ostringstream os;
  for (int dbar = 2; dbar <= 6; ++dbar) {
    double frac = static_cast<double>(below[static_cast<std::size_t>(dbar)]) / trials;
    double se = std::sqrt(std::max(frac * (1 - frac), 1e-9) / trials);
    double bound = gv_tail(n, K, dbar);
    if (frac > bound + 3 * se) pass = false;
    if (dbar == 2 || dbar == 4)
      os << " d<" << dbar << ": " << frac << " vs bound " << bound << ";";
  }
  Outcome out;
  out.pass = pass;
  out.detail = "10^4 random [20,15] duals, empirical tail <= gv_tail + 3se for dbar in {2..6};" +
               os.str();
  return out;
}

// ---- C10: golden regression of the bound grid -------------------------------

json bound_grid_json() {
  json grid = json::array();
  for (int n : {63, 255, 1023, 16384})
    for (int d : {7, 9, 15}) {
      BoundSetInputs in;
      in.n = n;
      in.d = d;
      grid.push_back(json::parse(evaluate_bounds(in).to_json()));
    }
  return grid;
}

Outcome c10_golden(bool write) {
  json grid = bound_grid_json();
  if (write) {
    std::ofstream out(golden_path(), std::ios::binary);
    out << grid.dump(1) << '\n';
    return {true, "golden file rewritten"};
  }
  std::ifstream in(golden_path());
  if (!in) return {false, "missing golden file " + golden_path()};
  json golden = json::parse(in);
  long mismatches = 0, compared = 0;
  std::ostringstream os;
  if (golden.size() != grid.size()) {
    return {false, "golden grid size mismatch"};
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (auto& [name, value] : grid[i]["outputs"].items()) {
      const json& gold = golden[i]["outputs"][name];
      ++compared;
      bool ok = true;
      if (value["vacuous"] != gold["vacuous"]) ok = false;
      if (value["value"].is_null() != gold["value"].is_null()) ok = false;
      if (ok && !value["value"].is_null()) {
        double a = value["value"].get<double>(), b = gold["value"].get<double>();
        double scale = std::max({std::abs(a), std::abs(b), 1.0});
        if (std::abs(a - b) > 1e-9 * scale) ok = false;
      }
      if (!ok) {
        ++mismatches;
        if (mismatches <= 3)
          os << " [" << golden[i]["inputs"]["n"] << "," << golden[i]["inputs"]["d"] << "]." << name;
      }
    }
  }
  Outcome out;
  out.pass = mismatches == 0;
  out.detail = std::to_string(compared) + " cells vs golden grid (n in {63,255,1023,2^14}, d in "
               "{7,9,15}), " + std::to_string(mismatches) + " mismatches" + os.str();
  return out;
}

// ---- C11: desk-scale trend on dual BCH, logged ------------------------------

Outcome c11_trend() {
  const int s = 3;
  std::ostringstream os;
  double prev_rel_gap = -1;
  bool between_all = true, rel_gap_shrinks = true, finite = true;
  for (int m : {5, 6, 7}) {
    LinearCode c = dual_bch(s, m);
    const int n = c.length();
    double eps = std::pow(2.0 * s / n, (2.0 * s - 5) / 13.0);
    std::uint64_t samples = m == 5 ? 3000 : (m == 6 ? 1500 : 600);
    CoverReport rep = eps_covering_radius_mc(c, eps, samples, 424242);
    double wcu = wcu_lower(n, s);
    double tiet = tietavainen_upper(n, 2 * s + 1);
    double mc1 = n / 2.0 - std::sqrt((2.0 * s - 4) / 13.0 * n * std::log(n / (2.0 * s)));
    double rel_gap = std::abs(rep.radius - mc1) / n;  // both sides scale with n
    if (!(std::isfinite(rel_gap) && std::isfinite(tiet))) finite = false;
    if (!(rep.radius >= wcu && rep.radius <= tiet)) between_all = false;
    if (prev_rel_gap >= 0 && rel_gap > prev_rel_gap) rel_gap_shrinks = false;
    prev_rel_gap = rel_gap;
    os << " m=" << m << ": radius " << rep.radius << " vs [" << wcu << ", " << tiet
       << "], radius<=maincor1_R:" << (rep.radius <= mc1 ? "yes" : "no")
       << ", |radius - maincor1_R|/n = " << rel_gap << ";";
  }
  Outcome out;
  out.pass = finite;  // trend observations are logged, not asserted
  out.detail = std::string("trend log (not asserted): between-bounds=") +
               (between_all ? "yes" : "no") +
               " relative-gap-shrinks=" + (rel_gap_shrinks ? "yes" : "no") + ";" + os.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  bool write_golden = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--write-golden") write_golden = true;

  struct Entry {
    int id;
    const char* name;
    Outcome (*fn)();
    double budget_s;  // 0 = no stated budget
  };
  std::vector<Entry> entries = {
      {1, "translate-MSE identity (exact, both sides)", c1_identity, 30.0},
      {2, "closed-form transform of r^|x|", c2_exponential_transform, 0.0},
      {3, "Markov chain: uncovered <= avg coset L1 / ball volume", c3_markov_chain, 0.0},
      {4, "extension construction at dual_bch(2,5), d=5", c4_extension, 0.0},
      {5, "dual BCH: dimension, WCU, dual distance", c5_dual_bch, 120.0},
      {6, "perfect-code radii and the WCU lower bound", c6_perfect_codes, 0.0},
      {7, "greedy augmentation on 20 seeded instances", c7_augment, 0.0},
      {8, "sphere-covering bound, exhaustive n <= 10", c8_sphere_cover_exhaustive, 0.0},
      {9, "random-dual distance tail bound", c9_gv_tail, 0.0},
      {11, "dual BCH gap trend at desk scale", c11_trend, 0.0},
  };

  int failures = 0;
  for (const auto& entry : entries) {
    double t0 = now_s();
    Outcome out = entry.fn();
    double dt = now_s() - t0;
    if (entry.budget_s > 0 && dt > entry.budget_s) {
      out.pass = false;
      out.detail += " [exceeded " + std::to_string(entry.budget_s) + "s budget]";
    }
    std::printf("[%s] C%-2d %s: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", entry.id, entry.name,
                out.detail.c_str(), dt);
    std::fflush(stdout);
    if (!out.pass) ++failures;

    if (entry.id == 9) {  // keep the printed order 1..11
      double g0 = now_s();
      Outcome golden = c10_golden(write_golden);
      double gdt = now_s() - g0;
      std::printf("[%s] C10 bound-evaluator golden grid: %s (%.1fs)\n",
                  golden.pass ? "PASS" : "FAIL", golden.detail.c_str(), gdt);
      std::fflush(stdout);
      if (!golden.pass) ++failures;
    }
  }
  return failures;
}
