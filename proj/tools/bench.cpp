// Serial-versus-OpenMP comparison for the hot kernels.  Each row times the
// reference serial path and the parallel path on the same input and checks
// that the results agree (bit-identical for the integer kernels, 1e-10 for
// the floating-point ones).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "coverlab/covering.hpp"
#include "coverlab/kwise.hpp"
#include "coverlab/rng.hpp"
#include "coverlab/spectral.hpp"

using namespace coverlab;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class Fn>
double time_ms(Fn&& fn) {
  double t0 = now_ms();
  fn();
  return now_ms() - t0;
}

int failures = 0;

void row(const std::string& kernel, const std::string& size, double serial_ms, double parallel_ms,
         double max_diff, double tol) {
  bool ok = max_diff <= tol;
  if (!ok) ++failures;
  std::printf("%-28s %-14s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   check %s\n",
              kernel.c_str(), size.c_str(), serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, ok ? "ok" : "MISMATCH");
}

void bench_wht(int n) {
  RealCubeFunction f(n);
  Rng rng(7, 1);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.uniform() - 0.5;
  RealCubeFunction a = f, b = f;
  double ts = time_ms([&] { wht_inplace<double>(a.values(), Exec::Serial); });
  double tp = time_ms([&] { wht_inplace<double>(b.values(), Exec::Parallel); });
  double diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
  row("wht", "n=" + std::to_string(n), ts, tp, diff, 0.0);  // disjoint writes: bit-identical
}

void bench_weight_histogram(int n, int k) {
  LinearCode c = random_linear_code(n, k, 11);
  std::vector<std::uint64_t> hs, hp;
  double ts = time_ms([&] { hs = weight_histogram(c, Exec::Serial); });
  double tp = time_ms([&] { hp = weight_histogram(c, Exec::Parallel); });
  double diff = hs == hp ? 0.0 : 1.0;
  row("weight_histogram", "[" + std::to_string(n) + "," + std::to_string(k) + "]", ts, tp, diff,
      0.0);
}

void bench_distance_profile(int n, int k) {
  LinearCode c = random_linear_code(n, k, 13);
  DistanceProfile ps, pp;
  double ts = time_ms([&] { ps = distance_profile(c, Exec::Serial); });
  double tp = time_ms([&] { pp = distance_profile(c, Exec::Parallel); });
  double diff = ps.count == pp.count ? 0.0 : 1.0;
  row("distance_profile(bfs)", "n=" + std::to_string(n), ts, tp, diff, 0.0);
}

void bench_coset_profile(int n, int k) {
  LinearCode c = random_linear_code(n, k, 17);
  std::vector<std::uint64_t> gs, gp, synd;
  double ts = time_ms([&] { gs = coset_leader_counts_gray(c, Exec::Serial); });
  double tp = time_ms([&] { gp = coset_leader_counts_gray(c, Exec::Parallel); });
  double diff = gs == gp ? 0.0 : 1.0;
  row("coset_leaders(gray)", "[" + std::to_string(n) + "," + std::to_string(k) + "]", ts, tp,
      diff, 0.0);
  double tsynd = time_ms([&] { synd = coset_leader_counts_syndrome(c); });
  row("coset_leaders(syndrome)", "[" + std::to_string(n) + "," + std::to_string(k) + "]", tsynd,
      tsynd, synd == gs ? 0.0 : 1.0, 0.0);
}

void bench_mc_radius(int n, int k, std::uint64_t samples) {
  LinearCode c = random_linear_code(n, k, 19);
  CoverReport rs, rp;
  double ts = time_ms([&] { rs = eps_covering_radius_mc(c, 0.1, samples, 23, Exec::Serial); });
  double tp = time_ms([&] { rp = eps_covering_radius_mc(c, 0.1, samples, 23, Exec::Parallel); });
  double diff = (rs.radius == rp.radius && rs.uncovered == rp.uncovered) ? 0.0 : 1.0;
  row("eps_radius_mc", "[" + std::to_string(n) + "," + std::to_string(k) + "]x" +
                           std::to_string(samples),
      ts, tp, diff, 0.0);
}

void bench_mse_sweep(int n) {
  Rng rng(29, 0);
  std::vector<BitVector> support;
  std::vector<double> prob;
  for (int i = 0; i < 24; ++i) {
    BitVector v = BitVector::from_index(n, rng.below(std::uint64_t{1} << n));
    bool dup = false;
    for (const auto& s : support) dup = dup || s == v;
    if (dup) continue;
    support.push_back(v);
    prob.push_back(1.0);
  }
  for (auto& p : prob) p /= static_cast<double>(prob.size());
  SupportDistribution mu(support, prob);
  double vs = 0, vp = 0;
  double ts = time_ms([&] { vs = mse_translate_lhs(mu, 1.1, Exec::Serial); });
  double tp = time_ms([&] { vp = mse_translate_lhs(mu, 1.1, Exec::Parallel); });
  row("mse_translate_sweep", "n=" + std::to_string(n), ts, tp, std::abs(vs - vp), 1e-12);
}

void bench_kwise_scan(int s, int m, int k) {
  LinearCode c = dual_bch(s, m);
  bool bs = false, bp = false;
  double ts = time_ms([&] { bs = code_kwise_independent(c, k, Exec::Serial); });
  double tp = time_ms([&] { bp = code_kwise_independent(c, k, Exec::Parallel); });
  row("kwise_syndrome_scan", "dual_bch(" + std::to_string(s) + "," + std::to_string(m) + ") k=" +
                                 std::to_string(k),
      ts, tp, bs == bp ? 0.0 : 1.0, 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--quick") quick = true;

  std::printf("coverlab kernel benchmark (%d thread(s) available)\n", hardware_threads());
  if (quick) {
    bench_wht(16);
    bench_weight_histogram(40, 16);
    bench_distance_profile(16, 6);
    bench_coset_profile(20, 8);
    bench_mc_radius(40, 14, 200);
    bench_mse_sweep(12);
    bench_kwise_scan(2, 5, 4);
  } else {
    bench_wht(22);
    bench_weight_histogram(60, 22);
    bench_distance_profile(22, 10);
    bench_coset_profile(28, 10);
    bench_mc_radius(63, 18, 500);
    bench_mse_sweep(16);
    bench_kwise_scan(3, 6, 6);
  }
  if (failures) {
    std::printf("%d kernel check(s) failed\n", failures);
    return 1;
  }
  return 0;
}
