#include "coverlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "coverlab/augment.hpp"
#include "coverlab/bounds.hpp"
#include "coverlab/covering.hpp"
#include "coverlab/kwise.hpp"
#include "coverlab/rng.hpp"
#include "coverlab/spectral.hpp"

namespace coverlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

LinearCode load_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code file: " + path);
  return LinearCode::load(in);
}

SupportDistribution load_dist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open distribution file: " + path);
  return SupportDistribution::parse(in);
}

std::vector<int> parse_int_list(const std::string& text) {
  // "5..7" | "5,6,7" | "5"
  std::vector<int> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

std::string git_describe() {
  FILE* pipe = ::popen("git describe --always --dirty 2>/dev/null", "r");
  if (!pipe) return "unknown";
  char buf[128] = {0};
  std::string out;
  while (fgets(buf, sizeof buf, pipe)) out += buf;
  ::pclose(pipe);
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out.empty() ? "unknown" : out;
}

// --- subcommand payloads -------------------------------------------------

int cmd_bch(int s, int m, bool dual_side, std::ostream& out) {
  LinearCode c = dual_bch(s, m);
  if (!dual_side) c = c.dual();  // the BCH code itself
  c.save(out);
  return 0;
}

int cmd_radius(const std::string& code_path, double eps, bool exact, bool mc,
               std::uint64_t samples, std::uint64_t seed, std::ostream& out) {
  LinearCode c = load_code_file(code_path);
  bool use_exact = exact || (!mc && c.length() <= max_exact_cube_n());
  CoverReport report = use_exact ? eps_covering_radius_exact(c, eps)
                                 : eps_covering_radius_mc(c, eps, samples, seed);
  out << report.to_json() << '\n';
  return 0;
}

int cmd_bounds(const std::string& ns, const std::string& ds, std::optional<double> K, double eps,
               double eps_prime, std::optional<double> R, bool grid, std::ostream& out) {
  std::vector<int> n_list = parse_int_list(ns), d_list = parse_int_list(ds);
  if (n_list.empty() || d_list.empty()) throw std::runtime_error("bounds: empty n/d list");
  bool all_vacuous = true;
  if (grid || n_list.size() * d_list.size() > 1) {
    out << BoundSet::csv_header() << '\n';
    for (int n : n_list)
      for (int d : d_list) {
        BoundSetInputs in;
        in.n = n;
        in.d = d;
        in.K = K;
        in.eps = eps;
        in.eps_prime = eps_prime;
        in.R = R;
        BoundSet bs = evaluate_bounds(in);
        out << bs.csv_row() << '\n';
        for (const auto& [name, v] : bs.outputs)
          if (v.value && !v.vacuous) all_vacuous = false;
      }
  } else {
    BoundSetInputs in;
    in.n = n_list.front();
    in.d = d_list.front();
    in.K = K;
    in.eps = eps;
    in.eps_prime = eps_prime;
    in.R = R;
    BoundSet bs = evaluate_bounds(in);
    out << bs.to_json() << '\n';
    for (const auto& [name, v] : bs.outputs)
      if (v.value && !v.vacuous) all_vacuous = false;
  }
  return all_vacuous ? 2 : 0;
}

int cmd_coset_l1(const std::string& code_path, bool exact, std::uint64_t samples,
                 std::uint64_t seed, std::ostream& out) {
  LinearCode q = load_code_file(code_path);
  json j;
  j["schema"] = 1;
  j["n"] = q.length();
  j["k"] = q.dimension();
  if (exact) {
    j["method"] = "exact";
    j["avg_coset_l1"] = avg_coset_l1(q);
  } else {
    SampledMean m = avg_coset_l1_sampled(q, samples, seed);
    j["method"] = "sampled";
    j["avg_coset_l1"] = m.mean;
    j["stderr"] = m.stderr_;
    j["samples"] = samples;
    j["seed"] = seed;
  }
  out << j.dump() << '\n';
  return 0;
}

SupportDistribution random_distribution(int n, Rng& rng, int max_support = 32) {
  const std::uint64_t cube = n >= 63 ? ~0ull : (std::uint64_t{1} << n);
  std::uint64_t cap = std::min<std::uint64_t>(cube, static_cast<std::uint64_t>(max_support));
  std::size_t size = 1 + static_cast<std::size_t>(rng.below(cap));
  std::set<std::uint64_t> picked;
  while (picked.size() < size) picked.insert(rng.below(cube));
  std::vector<BitVector> support;
  std::vector<double> prob;
  double total = 0.0;
  for (std::uint64_t x : picked) {
    support.push_back(BitVector::from_index(n, x));
    double p = rng.uniform() + 1e-3;
    prob.push_back(p);
    total += p;
  }
  for (double& p : prob) p /= total;
  return SupportDistribution(std::move(support), std::move(prob));
}

std::vector<double> identity_thetas(std::uint64_t seed) {
  std::vector<double> thetas = {std::numbers::pi / 7, std::numbers::pi / 3, 1.0, 2.5};
  Rng rng(seed, 999);
  for (int i = 0; i < 20; ++i) thetas.push_back(rng.uniform() * 2 * std::numbers::pi);
  return thetas;
}

int cmd_identity(int n, int trials, std::uint64_t seed, std::ostream& out) {
  if (n < 1 || n > 16) throw std::runtime_error("identity: n in [1, 16]");
  std::vector<double> thetas = identity_thetas(seed);
  double max_diff = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    SupportDistribution mu = random_distribution(n, rng);
    std::vector<double> lhs = mse_translate_lhs_batch(mu, thetas);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      double rhs = mse_translate_rhs(mu, thetas[i]);
      max_diff = std::max(max_diff, std::abs(lhs[i] - rhs));
    }
  }
  json j;
  j["schema"] = 1;
  j["n"] = n;
  j["trials"] = trials;
  j["seed"] = seed;
  j["thetas"] = thetas.size();
  j["max_abs_diff"] = max_diff;
  out << j.dump() << '\n';
  return 0;
}

int cmd_kwise(const std::string& dist_path, const std::string& code_path, int k, bool bilateral,
              std::ostream& out) {
  json j;
  j["schema"] = 1;
  j["k"] = k;
  j["bilateral"] = bilateral;
  if (!code_path.empty()) {
    LinearCode c = load_code_file(code_path);
    bool ok = bilateral ? code_bilateral_kwise_independent(c, k) : code_kwise_independent(c, k);
    j["independent"] = ok;
  } else {
    SupportDistribution mu = load_dist_file(dist_path);
    IndependenceReport r =
        bilateral ? is_bilateral_kwise_independent(mu, k) : is_kwise_independent(mu, k);
    j["independent"] = r.independent;
    j["max_violation"] = r.max_violation;
    if (r.witness) j["witness"] = r.witness->str();
  }
  out << j.dump() << '\n';
  return 0;
}

int cmd_augment(const std::string& code_path, double radius, std::ostream& out) {
  LinearCode c = load_code_file(code_path);
  AugmentResult r = cohen_augment(c, radius);
  json j;
  j["schema"] = 1;
  j["n"] = c.length();
  j["radius"] = radius;
  j["dim"] = r.added.dimension();
  j["initial"] = static_cast<double>(r.initial);
  std::vector<std::string> rows;
  for (int i = 0; i < r.added.dimension(); ++i) rows.push_back(r.added.generator().row(i).str());
  j["rows"] = rows;
  std::vector<double> trace;
  for (const auto& t : r.trace) trace.push_back(static_cast<double>(t));
  j["trace"] = trace;
  out << j.dump() << '\n';
  return 0;
}

// --- experiments ----------------------------------------------------------

std::string gap_experiment_csv(int s, const std::vector<int>& ms, std::uint64_t samples,
                               std::uint64_t seed) {
  std::ostringstream os;
  os.precision(10);
  os << "n,m,s,d,eps,wcu_lower,tietavainen_upper,maincor1_R,radius,method,samples,seed\n";
  for (int m : ms) {
    LinearCode c = dual_bch(s, m);
    const int n = c.length();
    const int d = 2 * s + 1;
    double eps = std::pow(2.0 * s / n, (2.0 * s - 5) / 13.0);
    double wcu = wcu_lower(n, s);
    double tu = tietavainen_upper(n, d);
    double mc1 = n / 2.0 - std::sqrt((2.0 * s - 4) / 13.0 * n * std::log(n / (2.0 * s)));
    std::string method;
    int radius;
    std::uint64_t used_samples = 0;
    if (n <= max_exact_cube_n()) {
      CoverReport rep = eps_covering_radius_exact(c, eps);
      radius = rep.radius;
      method = "exact";
    } else {
      CoverReport rep = eps_covering_radius_mc(c, eps, samples, seed);
      radius = rep.radius;
      method = "mc";
      used_samples = samples;
    }
    os << n << ',' << m << ',' << s << ',' << d << ',' << eps << ',' << wcu << ',' << tu << ','
       << mc1 << ',' << radius << ',' << method << ',' << used_samples << ',' << seed << '\n';
  }
  return os.str();
}

std::string bounds_grid_csv(const std::vector<int>& ns, const std::vector<int>& ds, double eps,
                            double eps_prime) {
  std::ostringstream os;
  os << BoundSet::csv_header() << '\n';
  for (int n : ns)
    for (int d : ds) {
      BoundSetInputs in;
      in.n = n;
      in.d = d;
      in.eps = eps;
      in.eps_prime = eps_prime;
      os << evaluate_bounds(in).csv_row() << '\n';
    }
  return os.str();
}

struct ExperimentSpec {
  std::string name;
  std::map<std::string, std::string> kv;
};

// TOML-like: "key = value" lines, "[section]" headers, '#' comments.
std::vector<ExperimentSpec> parse_config(std::istream& in,
                                         std::map<std::string, std::string>& globals) {
  std::vector<ExperimentSpec> specs;
  std::string line;
  ExperimentSpec* cur = nullptr;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    auto trim = [](std::string t) {
      std::size_t a = t.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      std::size_t b = t.find_last_not_of(" \t\r");
      return t.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::runtime_error("config: malformed section header");
      specs.push_back({trim(line.substr(1, line.size() - 2)), {}});
      cur = &specs.back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("config: expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (cur)
      cur->kv[key] = value;
    else
      globals[key] = value;
  }
  return specs;
}

std::string run_experiment(const ExperimentSpec& spec, std::uint64_t seed) {
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = spec.kv.find(key);
    return it == spec.kv.end() ? fallback : it->second;
  };
  std::string kind = spec.name.substr(0, spec.name.find('.'));
  if (kind == "gap") {
    std::string family = get("family", "dual-bch");
    if (family != "dual-bch") throw std::runtime_error("experiment gap: unknown family " + family);
    int s = std::stoi(get("s", "3"));
    std::vector<int> ms = parse_int_list(get("m", "5..6"));
    std::uint64_t samples = std::stoull(get("samples", "2000"));
    std::uint64_t sd = std::stoull(get("seed", std::to_string(seed)));
    return gap_experiment_csv(s, ms, samples, sd);
  }
  if (kind == "bounds") {
    std::vector<int> ns = parse_int_list(get("n", "63,255,1023"));
    std::vector<int> ds = parse_int_list(get("d", "7,9,15"));
    return bounds_grid_csv(ns, ds, std::stod(get("eps", "0")), std::stod(get("eps_prime", "0.1")));
  }
  throw std::runtime_error("experiment: unknown kind " + kind);
}

int cmd_experiment_suite(const std::string& config_path, const std::string& out_dir_flag, int jobs,
                         std::ostream& out) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config: " + config_path);
  std::map<std::string, std::string> globals;
  std::vector<ExperimentSpec> specs = parse_config(in, globals);

  std::string out_dir = out_dir_flag.empty()
                            ? (globals.count("out") ? globals["out"] : std::string("results"))
                            : out_dir_flag;
  std::uint64_t seed = globals.count("seed") ? std::stoull(globals["seed"]) : 0;
  if (jobs <= 0) jobs = globals.count("jobs") ? std::stoi(globals["jobs"]) : 1;

  std::sort(specs.begin(), specs.end(),
            [](const ExperimentSpec& a, const ExperimentSpec& b) { return a.name < b.name; });
  fs::create_directories(out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> results(specs.size());
  std::vector<double> wall(specs.size(), 0.0);
  auto run_one = [&](std::size_t i) {
    const auto s0 = std::chrono::steady_clock::now();
    results[i] = run_experiment(specs[i], seed);
    wall[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
  };
  if (jobs > 1) {
    std::vector<std::future<void>> futures;
    for (std::size_t i = 0; i < specs.size(); ++i)
      futures.push_back(std::async(std::launch::async, run_one, i));
    for (auto& f : futures) f.get();
  } else {
    for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
  }

  json manifest;
  manifest["schema"] = 1;
  manifest["git"] = git_describe();
  manifest["seed"] = seed;
  manifest["config"] = config_path;
  json experiments = json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::string file = specs[i].name + ".csv";
    std::ofstream csv(fs::path(out_dir) / file, std::ios::binary);
    csv << results[i];
    experiments.push_back({{"name", specs[i].name}, {"csv", file}, {"wall_s", wall[i]}});
  }
  manifest["experiments"] = experiments;
  manifest["total_wall_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
  mf << manifest.dump(2) << '\n';
  out << "wrote " << specs.size() << " experiment(s) to " << out_dir << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"coverlab: covering radius versus dual distance, desk scale"};
  app.require_subcommand(1);

  // bch
  auto* bch_cmd = app.add_subcommand("bch", "emit a BCH / dual BCH generator matrix");
  int bch_s = 1, bch_m = 4;
  bool bch_dual = false;
  bch_cmd->add_option("--s", bch_s, "designed-distance parameter s")->required();
  bch_cmd->add_option("--m", bch_m, "field degree m, block length 2^m-1")->required();
  bch_cmd->add_flag("--dual", bch_dual, "emit the dual BCH code (dimension s*m)");

  // radius
  auto* radius_cmd = app.add_subcommand("radius", "(eps-)covering radius of a code");
  std::string radius_code;
  double radius_eps = 0.0;
  bool radius_exact = false, radius_mc = false;
  std::uint64_t radius_samples = 10000, radius_seed = 0;
  radius_cmd->add_option("--code", radius_code, "code file")->required();
  radius_cmd->add_option("--eps", radius_eps, "fraction of points allowed uncovered");
  radius_cmd->add_flag("--exact", radius_exact, "force the exact cube sweep");
  radius_cmd->add_flag("--mc", radius_mc, "force Monte-Carlo sampling");
  radius_cmd->add_option("--samples", radius_samples, "Monte-Carlo sample count");
  radius_cmd->add_option("--seed", radius_seed, "Monte-Carlo seed");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form bound evaluators");
  std::string bounds_n, bounds_d;
  double bounds_eps = 0.0, bounds_eps_prime = 0.1;
  std::optional<double> bounds_K, bounds_R;
  bool bounds_grid = false;
  double bounds_K_val = 0, bounds_R_val = 0;
  bounds_cmd->add_option("--n", bounds_n, "block length (list or a..b range)")->required();
  bounds_cmd->add_option("--d", bounds_d, "dual distance (list or a..b range)")->required();
  auto* kopt = bounds_cmd->add_option("--K", bounds_K_val, "code size for the lower bounds");
  bounds_cmd->add_option("--eps", bounds_eps, "uncovered fraction");
  bounds_cmd->add_option("--eps-prime", bounds_eps_prime, "slack in the Cohen bound");
  auto* ropt = bounds_cmd->add_option("--radius", bounds_R_val, "radius for brute_eps/cohen_dim");
  bounds_cmd->add_flag("--grid,--csv", bounds_grid, "emit CSV rows over the ranges");

  // coset-l1
  auto* coset_cmd = app.add_subcommand("coset-l1", "average coset weight-distribution L1 gap");
  std::string coset_code;
  bool coset_exact = false;
  std::uint64_t coset_samples = 0, coset_seed = 0;
  coset_cmd->add_option("--code", coset_code, "code file")->required();
  coset_cmd->add_flag("--exact", coset_exact, "sweep every coset");
  coset_cmd->add_option("--samples", coset_samples, "number of sampled translates");
  coset_cmd->add_option("--seed", coset_seed, "sampling seed");

  // identity
  auto* id_cmd = app.add_subcommand("identity", "translate-MSE identity check, both sides");
  int id_n = 8, id_trials = 20;
  std::uint64_t id_seed = 1;
  id_cmd->add_option("--n", id_n, "cube dimension")->required();
  id_cmd->add_option("--trials", id_trials, "random distributions")->required();
  id_cmd->add_option("--seed", id_seed, "seed");

  // kwise
  auto* kwise_cmd = app.add_subcommand("kwise", "k-wise independence test");
  std::string kwise_dist, kwise_code;
  int kwise_k = 1;
  bool kwise_bilateral = false;
  kwise_cmd->add_option("--dist", kwise_dist, "distribution file");
  kwise_cmd->add_option("--code", kwise_code, "code file (uniform distribution on it)");
  kwise_cmd->add_option("--k", kwise_k, "independence order")->required();
  kwise_cmd->add_flag("--bilateral", kwise_bilateral, "also test the high weight shell");

  // augment
  auto* augment_cmd = app.add_subcommand("augment", "greedy augmentation to a total cover");
  std::string augment_code;
  double augment_radius = 0;
  augment_cmd->add_option("--code", augment_code, "code file")->required();
  augment_cmd->add_option("--radius", augment_radius, "covering radius target")->required();

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "experiment harness");
  auto* gap_cmd = exp_cmd->add_subcommand("gap", "dual-BCH bound-vs-radius gap table");
  int gap_s = 3;
  std::string gap_m = "5..6";
  std::uint64_t gap_samples = 2000, gap_seed = 0;
  std::string gap_family = "dual-bch";
  gap_cmd->add_option("--family", gap_family, "code family");
  gap_cmd->add_option("--s", gap_s, "BCH parameter s");
  gap_cmd->add_option("--m", gap_m, "m range, e.g. 5..7");
  gap_cmd->add_option("--samples", gap_samples, "Monte-Carlo samples per code");
  gap_cmd->add_option("--seed", gap_seed, "seed");
  auto* suite_cmd = exp_cmd->add_subcommand("suite", "run experiments from a config file");
  std::string suite_config, suite_out;
  int suite_jobs = 0;
  suite_cmd->add_option("--config", suite_config, "TOML-like config file")->required();
  suite_cmd->add_option("--out", suite_out, "output directory");
  suite_cmd->add_option("--jobs", suite_jobs, "parallel experiment workers");
  exp_cmd->require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("coverlab");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 1;
  }

  try {
    if (*bch_cmd) return cmd_bch(bch_s, bch_m, bch_dual, out);
    if (*radius_cmd)
      return cmd_radius(radius_code, radius_eps, radius_exact, radius_mc, radius_samples,
                        radius_seed, out);
    if (*bounds_cmd) {
      if (kopt->count()) bounds_K = bounds_K_val;
      if (ropt->count()) bounds_R = bounds_R_val;
      return cmd_bounds(bounds_n, bounds_d, bounds_K, bounds_eps, bounds_eps_prime, bounds_R,
                        bounds_grid, out);
    }
    if (*coset_cmd) {
      if (!coset_exact && coset_samples == 0)
        throw std::runtime_error("coset-l1: pass --exact or --samples N");
      return cmd_coset_l1(coset_code, coset_exact, coset_samples, coset_seed, out);
    }
    if (*id_cmd) return cmd_identity(id_n, id_trials, id_seed, out);
    if (*kwise_cmd) {
      if (kwise_dist.empty() == kwise_code.empty())
        throw std::runtime_error("kwise: pass exactly one of --dist / --code");
      return cmd_kwise(kwise_dist, kwise_code, kwise_k, kwise_bilateral, out);
    }
    if (*augment_cmd) return cmd_augment(augment_code, augment_radius, out);
    if (*exp_cmd) {
      if (*gap_cmd) {
        if (gap_family != "dual-bch")
          throw std::runtime_error("experiment gap: unknown family " + gap_family);
        out << gap_experiment_csv(gap_s, parse_int_list(gap_m), gap_samples, gap_seed);
        return 0;
      }
      if (*suite_cmd) return cmd_experiment_suite(suite_config, suite_out, suite_jobs, out);
    }
    err << "no subcommand executed\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace coverlab
