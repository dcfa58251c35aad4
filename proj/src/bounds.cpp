#include "coverlab/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "coverlab/mathutil.hpp"

namespace coverlab {

namespace {

using nlohmann::json;

double binom_double(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  BigInt b = 1;
  for (int i = 0; i < r; ++i) b = b * (n - i) / (i + 1);
  return static_cast<double>(b);
}

// log2 of a positive rational through the top mantissa bits, safe far beyond
// double range.
double log2_rational(const BigRational& q) {
  using boost::multiprecision::msb;
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (num <= 0) throw std::domain_error("log2_rational: nonpositive");
  auto part = [](const BigInt& v) {
    long bits = static_cast<long>(msb(v));  // floor(log2 v)
    long shift = bits - 52;
    double mant = shift > 0 ? static_cast<double>(v >> shift) : static_cast<double>(v);
    if (shift < 0) shift = 0;
    return static_cast<double>(shift) + std::log2(mant);
  };
  return part(num) - part(den);
}

}  // namespace

double tietavainen_upper(int n, int d) {
  if (d < 2) throw std::invalid_argument("tietavainen_upper: d >= 2 required");
  if (n < 1) throw std::invalid_argument("tietavainen_upper: n >= 1 required");
  if (d % 2 == 0) {
    double s = d / 2.0;
    return n / 2.0 - std::sqrt(s * (n - s)) + std::pow(s, 1.0 / 6.0) * std::sqrt(n - s);
  }
  double s = (d - 1) / 2.0;
  return n / 2.0 - std::sqrt(s * (n - 1 - s)) + std::pow(s, 1.0 / 6.0) * std::sqrt(n - 1 - s) - 0.5;
}

double tietavainen_lower_smallcodes(int n, double K, int d, double eps) {
  (void)K;  // K enters the lemma's hypotheses, not the formula
  if (eps < 0 || eps >= 1) throw std::invalid_argument("tietavainen_lower: 0 <= eps < 1 required");
  if (d < 1 || d > n) throw std::invalid_argument("tietavainen_lower: 1 <= d <= n required");
  double inner = d * static_cast<double>(n) / 2.0 * std::log(std::exp(1.0) * n / d) +
                 n * std::log((n + 1.0) / (1.0 - eps));
  return n / 2.0 - std::sqrt(inner);
}

int cohen_dimension(int n, double R) {
  if (n < 1) throw std::invalid_argument("cohen_dimension: n >= 1 required");
  if (!(R > 0) || R > n) throw std::invalid_argument("cohen_dimension: 0 < R <= n required");
  BallVolume v = ball_volume(n, R);
  // log2(n ln2 / v) via exact v
  double value = std::log2(n * std::log(2.0)) - log2_rational(v.exact);
  return static_cast<int>(std::ceil(value));
}

double cohen_explicit(int n, double s, double eps_prime) {
  if (!(s > 1)) throw std::invalid_argument("cohen_explicit: s > 1 required");
  if (!(eps_prime > 0)) throw std::invalid_argument("cohen_explicit: eps' > 0 required");
  return n / 2.0 - std::sqrt((s - 1) * n * std::log(static_cast<double>(n)) / (2.0 + eps_prime)) +
         std::sqrt(2.0 * n) + 2.0;
}

double brute_eps(int n, int d, double R) {
  if (d < 7 || d % 2 == 0) throw std::invalid_argument("brute_eps: d odd >= 7 required");
  if (!(R > 0)) throw std::invalid_argument("brute_eps: R > 0 required");
  const int m = n + d;
  BallVolume v = ball_volume(m, R);
  if (v.exact == 0) throw std::domain_error("brute_eps: empty ball");
  double log_eps = std::log(static_cast<double>(d)) - log2_rational(v.exact) * std::log(2.0) +
                   (d - 1) / 2.0 * std::log(std::exp(1.0) * std::log(static_cast<double>(m) / (d - 1))) +
                   (d - 5) / 4.0 * std::log((d - 1.0) / m);
  return std::exp(log_eps);
}

RadiusEps maincor1_radius(int n, int d) {
  if (d < 7 || d % 2 == 0) throw std::invalid_argument("maincor1_radius: d odd >= 7 required");
  if (n <= d - 1) throw std::invalid_argument("maincor1_radius: n > d - 1 required");
  RadiusEps out;
  double delta = std::sqrt((d - 5) / 13.0 * n * std::log(static_cast<double>(n) / (d - 1)));
  out.radius = n / 2.0 - delta;
  out.eps = std::pow((d - 1.0) / n, (d - 5.0) / 13.0);
  return out;
}

double wcu_lower(int n, int s) {
  if (s < 1) throw std::invalid_argument("wcu_lower: s >= 1 required");
  return n / 2.0 - (s - 1.0) * std::sqrt(n + 1.0) - 0.5;
}

double sphere_cover_eps(int n, double K, double eps) {
  if (K < 1) throw std::invalid_argument("sphere_cover_eps: K >= 1 required");
  if (eps < 0 || eps >= 1) throw std::invalid_argument("sphere_cover_eps: 0 <= eps < 1 required");
  return n / 2.0 - std::sqrt(0.5 * n * std::log(K / (1.0 - eps)));
}

double gv_tail(int n, double K, int dbar) {
  if (dbar < 1 || dbar > n / 2 + 1)
    throw std::invalid_argument("gv_tail: 1 <= dbar <= n/2 + 1 required");
  if (K < 1) throw std::invalid_argument("gv_tail: K >= 1 required");
  return dbar / K * binom_double(n, dbar - 1);
}

double gv_f(int n, double x) {
  if (!(x >= 1)) throw std::invalid_argument("gv_f: x >= 1 required");
  return n * x * std::pow(std::exp(1.0) * n / (x - 1.0), x - 1.0);
}

double binary_entropy(double x) {
  if (!(x > 0) || !(x < 1)) throw std::invalid_argument("binary_entropy: 0 < x < 1 required");
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

double binom_lower(int n, double lambda) {
  if (!(lambda > 0) || !(lambda < 1)) throw std::invalid_argument("binom_lower: 0 < lambda < 1");
  double ln = lambda * n;
  if (std::abs(ln - std::round(ln)) > 1e-9)
    throw std::invalid_argument("binom_lower: lambda * n must be an integer");
  return std::exp2(n * binary_entropy(lambda)) / std::sqrt(8.0 * n * lambda * (1 - lambda));
}

double bilateral_l1_bound(int n, int b) {
  if (b < 7 || b % 2 == 0) throw std::invalid_argument("bilateral_l1_bound: b odd >= 7 required");
  return b * std::pow(std::exp(1.0) * std::log(static_cast<double>(n) / (b - 1)), (b - 1) / 2.0) *
         std::pow((b - 1.0) / n, (b - 5) / 4.0);
}

KwiseBounds kwise_bounds(int n, int k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("kwise_bounds: k even >= 2 required");
  if (n <= k) throw std::invalid_argument("kwise_bounds: n > k required");
  KwiseBounds out;
  const double eln = std::exp(1.0) * std::log(static_cast<double>(n) / k);
  const double ratio = static_cast<double>(k) / n;
  out.maino_a = std::pow(eln, k) * std::pow(ratio, k / 2.0);
  out.maino_b = 2.0 * std::exp(-k / 10.0);
  out.sumth_a = std::pow(eln, k / 2.0) * std::pow(ratio, k / 4.0);
  out.sumth_b = std::sqrt(2.0) * std::exp(-k / 20.0);
  if (k >= 6) {
    out.wdle1_a = (k + 1) * std::pow(eln, k / 2.0) * std::pow(ratio, k / 4.0 - 1.0);
    out.wdle1_b = std::sqrt(2.0) * (n + 1.0) * std::exp(-k / 20.0);
    out.wdle1_applicable = true;
  }
  return out;
}

const std::vector<std::string>& BoundSet::output_names() {
  static const std::vector<std::string> names = {
      "tietavainen_upper", "tietavainen_lower", "cohen_dim",   "cohen_explicit_R",
      "brute_eps",         "maincor1_R",        "maincor1_eps", "wcu_lower_R",
      "sphere_cover_R",    "l1_bilateral_bound", "maino_a",     "maino_b",
      "sumth_a",           "sumth_b",           "wdle1_a",      "wdle1_b"};
  return names;
}

BoundSet evaluate_bounds(const BoundSetInputs& in) {
  BoundSet bs;
  bs.inputs = in;
  const int n = in.n, d = in.d;
  if (n < 2) throw std::invalid_argument("evaluate_bounds: n >= 2 required");
  if (d < 1) throw std::invalid_argument("evaluate_bounds: d >= 1 required");
  bs.s = d % 2 == 1 ? (d - 1) / 2 : d / 2;
  bs.k = d - 1;
  if (in.K) {
    bs.K = *in.K;
  } else {
    double k2 = 1.0;
    while (k2 < n) k2 *= 2.0;
    bs.K = k2;
  }

  auto put = [&](const std::string& name, auto&& fn) {
    BoundValue v;
    try {
      v.value = fn();
    } catch (const std::exception& e) {
      v.note = e.what();
    }
    if (v.value && !std::isfinite(*v.value)) {
      v.note = "non-finite value";
      v.vacuous = true;
      v.value.reset();
    }
    bs.outputs[name] = std::move(v);
  };
  auto flag_vacuous = [&](const std::string& name, auto&& pred, const std::string& why) {
    auto& v = bs.outputs[name];
    if (v.value && pred(*v.value)) {
      v.vacuous = true;
      if (v.note.empty()) v.note = why;
    }
  };

  // maincor1 first, its radius is the default R for the radius-parametrized
  // formulas
  put("maincor1_R", [&] { return maincor1_radius(n, d).radius; });
  put("maincor1_eps", [&] { return maincor1_radius(n, d).eps; });
  const BoundValue& mc_r = bs.outputs["maincor1_R"];
  bs.R = in.R ? *in.R : (mc_r.value ? *mc_r.value : n / 2.0);

  put("tietavainen_upper", [&] { return tietavainen_upper(n, d); });
  put("tietavainen_lower", [&] { return tietavainen_lower_smallcodes(n, bs.K, d, in.eps); });
  put("cohen_dim", [&] { return static_cast<double>(cohen_dimension(n, bs.R)); });
  put("cohen_explicit_R", [&] { return cohen_explicit(n, bs.s, in.eps_prime); });
  put("brute_eps", [&] { return brute_eps(n, d, bs.R); });
  put("wcu_lower_R", [&] { return wcu_lower(n, bs.s); });
  put("sphere_cover_R", [&] { return sphere_cover_eps(n, bs.K, in.eps); });
  put("l1_bilateral_bound", [&] { return bilateral_l1_bound(n, d); });
  put("maino_a", [&] { return kwise_bounds(n, bs.k).maino_a; });
  put("maino_b", [&] { return kwise_bounds(n, bs.k).maino_b; });
  put("sumth_a", [&] { return kwise_bounds(n, bs.k).sumth_a; });
  put("sumth_b", [&] { return kwise_bounds(n, bs.k).sumth_b; });
  put("wdle1_a", [&] {
    KwiseBounds kb = kwise_bounds(n, bs.k);
    if (!kb.wdle1_applicable) throw std::invalid_argument("wdle1: k even >= 6 required");
    return kb.wdle1_a;
  });
  put("wdle1_b", [&] {
    KwiseBounds kb = kwise_bounds(n, bs.k);
    if (!kb.wdle1_applicable) throw std::invalid_argument("wdle1: k even >= 6 required");
    return kb.wdle1_b;
  });

  // vacuity: theorem asserts nothing (eps > 1), negative radii, bounds above
  // the trivial caps
  auto gt = [](double cap) { return [cap](double x) { return x > cap; }; };
  auto negative = [](double x) { return x < 0; };
  flag_vacuous("brute_eps", gt(1.0), "eps > 1");
  flag_vacuous("maincor1_eps", gt(1.0), "eps > 1");
  if (bs.outputs["maincor1_eps"].value && *bs.outputs["maincor1_eps"].value > 1.0)
    flag_vacuous("maincor1_R", [](double) { return true; }, "eps > 1");
  flag_vacuous("maincor1_R", negative, "negative radius");
  flag_vacuous("tietavainen_lower", negative, "negative radius");
  flag_vacuous("sphere_cover_R", negative, "negative radius");
  flag_vacuous("cohen_explicit_R", negative, "negative radius");
  flag_vacuous("wcu_lower_R", negative, "negative radius");
  flag_vacuous("l1_bilateral_bound", gt(2.0), "exceeds trivial L1 cap 2");
  flag_vacuous("maino_a", gt(4.0), "exceeds trivial MSE cap 4");
  flag_vacuous("maino_b", gt(4.0), "exceeds trivial MSE cap 4");
  flag_vacuous("sumth_a", gt(1.0), "exceeds trivial Linf cap 1");
  flag_vacuous("sumth_b", gt(1.0), "exceeds trivial Linf cap 1");
  flag_vacuous("wdle1_a", gt(2.0), "exceeds trivial L1 cap 2");
  flag_vacuous("wdle1_b", gt(2.0), "exceeds trivial L1 cap 2");
  return bs;
}

std::string BoundSet::to_json() const {
  json j;
  j["schema"] = 1;
  j["inputs"] = {{"n", inputs.n}, {"d", inputs.d},       {"K", K},
                 {"eps", inputs.eps}, {"eps_prime", inputs.eps_prime}, {"R", R},
                 {"s", s},        {"k", k}};
  json out = json::object();
  for (const auto& name : output_names()) {
    const BoundValue& v = outputs.at(name);
    json jv;
    jv["value"] = v.value ? json(*v.value) : json(nullptr);
    jv["vacuous"] = v.vacuous;
    jv["note"] = v.note;
    out[name] = jv;
  }
  j["outputs"] = out;
  return j.dump();
}

std::string BoundSet::csv_header() {
  std::string h = "n,d,K,eps,eps_prime,R";
  for (const auto& name : output_names()) h += "," + name;
  return h;
}

std::string BoundSet::csv_row() const {
  std::ostringstream os;
  os.precision(10);
  os << inputs.n << ',' << inputs.d << ',' << K << ',' << inputs.eps << ',' << inputs.eps_prime
     << ',' << R;
  for (const auto& name : output_names()) {
    const BoundValue& v = outputs.at(name);
    os << ',';
    if (!v.value)
      os << "n/a";
    else if (v.vacuous)
      os << "vacuous";
    else
      os << *v.value;
  }
  return os.str();
}

}  // namespace coverlab
