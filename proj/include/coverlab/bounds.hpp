#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coverlab/covering.hpp"

namespace coverlab {

// ---- closed-form evaluators; hypothesis violations throw ----

// Upper bound on the covering radius from the dual distance d >= 2; the
// undefined t of the printed formula is read as s (see README).
double tietavainen_upper(int n, int d);
// n/2 - sqrt(dn/2 log(en/d) + n log((n+1)/(1-eps))); may be negative
// (vacuous, flagged by the BoundSet assembly).
double tietavainen_lower_smallcodes(int n, double K, int d, double eps);
// ceil(log2(n ln2 / v_n(R))), exact ball volume.
int cohen_dimension(int n, double R);
// n/2 - sqrt((s-1) n log n / (2+eps')) + sqrt(2n) + 2, s > 1.
double cohen_explicit(int n, double s, double eps_prime);
// eps = d / v_{n+d}(R) * (e log((n+d)/(d-1)))^((d-1)/2) * ((d-1)/(n+d))^((d-5)/4),
// d odd >= 7, R > 0.
double brute_eps(int n, int d, double R);

struct RadiusEps {
  double radius = 0.0;
  double eps = 0.0;
};
// R = n/2 - sqrt((1/13)(d-5) n log(n/(d-1))), eps = ((d-1)/n)^((d-5)/13).
RadiusEps maincor1_radius(int n, int d);
// n/2 - (s-1) sqrt(n+1) - 1/2.
double wcu_lower(int n, int s);
// n/2 - sqrt(n/2 log(K/(1-eps))).
double sphere_cover_eps(int n, double K, double eps);
// (dbar/K) C(n, dbar-1): probability bound that a random dual has distance
// < dbar; requires 1 <= dbar <= n/2 + 1.
double gv_tail(int n, double K, int dbar);
// f(x) = n x (en/(x-1))^(x-1).
double gv_f(int n, double x);
// Binary entropy, 0 < x < 1.
double binary_entropy(double x);
// 2^(n H(lambda)) / sqrt(8 n lambda (1-lambda)); lambda * n must be integral.
double binom_lower(int n, double lambda);
// b (e log(n/(b-1)))^((b-1)/2) ((b-1)/n)^((b-5)/4), b odd >= 7.
double bilateral_l1_bound(int n, int b);

struct KwiseBounds {
  double maino_a = 0.0;   // (e ln(n/k))^k (k/n)^(k/2)
  double maino_b = 0.0;   // 2 e^(-k/10)
  double sumth_a = 0.0;   // (e ln(n/k))^(k/2) (k/n)^(k/4)
  double sumth_b = 0.0;   // sqrt(2) e^(-k/20)
  double wdle1_a = 0.0;   // (k+1)(e log(n/k))^(k/2) (k/n)^(k/4-1), k >= 6
  double wdle1_b = 0.0;   // sqrt(2)(n+1) e^(-k/20), k >= 6
  bool wdle1_applicable = false;
};
// k even >= 2 required; the wdle1 pair additionally needs k >= 6.
KwiseBounds kwise_bounds(int n, int k);

// ---- BoundSet assembly ----

struct BoundValue {
  std::optional<double> value;
  bool vacuous = false;
  std::string note;
};

struct BoundSetInputs {
  int n = 0;
  int d = 0;
  std::optional<double> K;          // default 2^ceil(log2 n)
  double eps = 0.0;
  double eps_prime = 0.1;
  std::optional<double> R;          // default: maincor1 radius, else n/2
};

struct BoundSet {
  BoundSetInputs inputs;
  int s = 0;  // (d-1)/2 for odd d, d/2 for even
  int k = 0;  // d - 1
  double K = 0.0;
  double R = 0.0;
  std::map<std::string, BoundValue> outputs;

  static const std::vector<std::string>& output_names();
  std::string to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

// Evaluates every formula, recording hypothesis failures and vacuity flags
// instead of silently returning numbers.
BoundSet evaluate_bounds(const BoundSetInputs& in);

}  // namespace coverlab
