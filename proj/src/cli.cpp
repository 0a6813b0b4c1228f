#include "nearsq/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "nearsq/arith.hpp"
#include "nearsq/constants.hpp"
#include "nearsq/experiments.hpp"
#include "nearsq/expsum.hpp"
#include "nearsq/psi_approx.hpp"
#include "nearsq/report.hpp"
#include "nearsq/sieve_functions.hpp"

namespace nearsq::cli {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return kInvalidArgument;
    case ErrorKind::Range: return kRange;
    case ErrorKind::Regime: return kRegime;
    case ErrorKind::Budget: return kBudget;
    case ErrorKind::Accuracy: return kAccuracy;
    case ErrorKind::Coverage: return kCoverage;
  }
  return kFailure;
}

namespace {

constexpr const char* kOutputDirEnv = "NEARSQ_OUTPUT_DIR";

struct Options {
  // global
  int threads = 0;
  std::string format;
  std::string output;
  std::string config;
  std::uint64_t seed = 0;

  // sieve-fn / constant
  std::vector<double> u_values;
  bool dump = false;
  double u_max = 12.0;
  double step = 1e-3;
  double tol = 1e-9;

  // mertens
  std::vector<double> z_values;
  std::uint64_t limit = 0;

  // constant / threshold
  std::string kind = "weighted";
  int k = 0;
  std::string eta = "1";
  std::string beta = "1";
  std::string delta = "0";
  std::string eps = "0";
  std::string alpha_eps = "0";

  // psi-approx
  std::vector<int> H_values{2, 10, 100};
  int grid = 10000;
  int random_points = 0;

  // expsum-check
  std::string lemma;
  std::uint64_t M = 8;
  std::uint64_t N = 1000;
  double theta = 0.01;
  double alpha = 0.5;
  double beta_exp = 0.5;
  double X = 1.0;
  std::uint64_t H0 = 4;
  std::uint64_t d = 1;
  bool adversarial = false;
  double density = 1.0;

  // experiment
  std::string provenance;
  double delta_value = 0.0;
  double delta_exp = 0.0;
  std::uint64_t d_max = 100;
  bool timing = false;
  double budget = static_cast<double>(kWindowWorkBudget);

  // sweep
  std::string what;
  double start = 0.0;
  double stop = 0.0;
  std::vector<std::uint64_t> N_list;
  int seeds = 1;
  std::uint64_t d_limit = 50;
  std::string checkpoint;
};

Rational rational_arg(const std::string& text, const char* name) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidArgument, std::string("cannot parse --") + name + " '" + text + "'");
  }
}

Json rational_json(const Rational& r) {
  Json j;
  j["exact"] = r.str();
  j["value"] = num(r.to_double());
  return j;
}

std::vector<double> float_u_default() { return {2.5, 3.0, 4.0, 5.0, 6.0, 10.0}; }

// ---------------------------------------------------------------- sieve-fn

Json cmd_sieve_fn(const Options& o, std::ostream* raw_csv) {
  const auto table = SieveFunctionTable::build(o.u_max, o.step, o.tol);
  if (o.dump) {
    if (raw_csv == nullptr) fail(ErrorKind::InvalidArgument, "--dump writes the grid as CSV; use --format csv");
    table.write_csv(*raw_csv);
    return nullptr;
  }
  Json rows = Json::array();
  for (double u : o.u_values.empty() ? float_u_default() : o.u_values) {
    Json r;
    r["u"] = num(u);
    r["F"] = num(table.F(u));
    r["f"] = num(table.f(u));
    r["F_closed"] = u <= 5.0 && u > 0.0 ? num(F_closed(u)) : Json(nullptr);
    r["f_closed"] = u <= 6.0 && u > 0.0 ? num(f_closed(u)) : Json(nullptr);
    r["error_estimate"] = num(table.error_estimate());
    rows.push_back(r);
  }
  return rows;
}

// ----------------------------------------------------------------- mertens

Json cmd_mertens(const Options& o) {
  const std::vector<double> zs = o.z_values.empty() ? std::vector<double>{10.0, 1e3, 1e4, 1e5} : o.z_values;
  double zmax = 2.0;
  for (double z : zs) {
    if (!(z >= 2.0)) fail(ErrorKind::InvalidArgument, "z must be >= 2");
    zmax = std::max(zmax, z);
  }
  const std::uint64_t limit = o.limit ? o.limit : static_cast<std::uint64_t>(std::ceil(zmax));
  const PrimeTable table(std::max<std::uint64_t>(limit, 2));
  Json rows = Json::array();
  for (double z : zs) {
    const auto v = mertens_V(z, table);
    Json r;
    r["z"] = num(z);
    r["V"] = num(v.value);
    r["asymptotic"] = num(v.asymptotic);
    r["ratio"] = num(v.value / v.asymptotic);
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------- constant

Json weighted_json(const WeightedConstant& c) {
  Json j;
  j["delta"] = num(c.delta);
  j["k"] = c.k;
  j["value"] = num(c.value);
  j["value_unsimplified"] = num(c.value_unsimplified);
  j["discrepancy"] = num(c.discrepancy);
  j["quad_error"] = num(c.quad_error);
  j["flagged"] = c.flagged;
  j["authoritative"] = num(c.authoritative());
  j["lower_coeff"] = num(c.lower_coeff);
  j["upper_coeff"] = num(c.upper_coeff);
  j["upper_coeff_simplified"] = num(c.upper_coeff_simplified);
  return j;
}

Json cmd_constant(const Options& o) {
  if (o.kind == "weighted") {
    if (o.k == 0) fail(ErrorKind::InvalidArgument, "--k is required (4 or 5)");
    return weighted_json(C_delta_k(rational_arg(o.delta, "delta").to_double(), o.k, o.tol));
  }
  if (o.kind == "budget") {
    if (o.k == 0) fail(ErrorKind::InvalidArgument, "--k is required (4..15)");
    const double delta = rational_arg(o.delta, "delta").to_double();
    const auto table = SieveFunctionTable::build(o.u_max, o.step, o.tol);
    const auto b = weighted_sieve_budget(delta, o.k, table, o.tol);
    Json j;
    j["delta"] = num(delta);
    j["k"] = o.k;
    j["lower_coeff"] = num(b.lower_coeff);
    j["upper_coeff"] = num(b.upper_coeff);
    j["combined"] = num(b.combined());
    j["error_estimate"] = num(b.error_estimate);
    return j;
  }
  if (o.kind == "lower-bound") {
    RegimeParams p{rational_arg(o.eta, "eta"), rational_arg(o.beta, "beta"), rational_arg(o.delta, "delta"),
                   rational_arg(o.eps, "eps")};
    const auto table = SieveFunctionTable::build(o.u_max, o.step, o.tol);
    const auto c = theorem2_constant(p, table, rational_arg(o.alpha_eps, "alpha-eps"));
    Json j;
    j["eta"] = p.eta.str();
    j["beta"] = p.beta.str();
    j["delta"] = p.delta.str();
    j["k"] = c.k;
    j["alpha"] = num(c.alpha);
    j["sieve_argument"] = rational_json(c.sieve_argument_exact);
    j["f_at_argument"] = num(c.f_at_argument);
    j["f_closed_at_argument"] = num(c.f_closed_at_argument);
    j["constant_value"] = num(c.constant_value);
    j["quad_error"] = num(c.quadrature_error);
    j["reconstructed"] = c.reconstructed;
    return j;
  }
  fail(ErrorKind::InvalidArgument, "--kind must be weighted, budget or lower-bound");
}

// --------------------------------------------------------------- threshold

Json cmd_threshold(const Options& o) {
  RegimeParams p{rational_arg(o.eta, "eta"), rational_arg(o.beta, "beta"), rational_arg(o.delta, "delta"),
                 rational_arg(o.eps, "eps")};
  Json j;
  j["eta"] = p.eta.str();
  j["beta"] = p.beta.str();
  j["delta"] = p.delta.str();
  j["eps"] = p.eps.str();
  j["hypothesis"] = satisfies_hypothesis(p);
  j["level_numerator"] = rational_json(level_numerator(p));
  const int k = k_min(p);
  j["k"] = k;
  j["alpha"] = rational_json(alpha_level_exact(p));
  const auto range = delta_range(k, p.eta, p.beta);
  Json r;
  r["lo"] = range.lo.str();
  r["hi"] = range.hi.str();
  r["lo_inclusive"] = range.lo_inclusive;
  r["empty"] = range.empty;
  r["contains_delta"] = range.contains(p.delta);
  j["delta_range"] = r;
  return j;
}

// -------------------------------------------------------------- psi-approx

Json cmd_psi(const Options& o) {
  if (o.grid < 1) fail(ErrorKind::InvalidArgument, "--grid must be >= 1");
  std::vector<double> ts = equispaced_grid(o.grid);
  if (o.random_points > 0) {
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < o.random_points; ++i) ts.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
  }
  Json rows = Json::array();
  for (int H : o.H_values) {
    const auto approx = build_psi_approximation(H);
    const auto st = psi_grid_stats(approx, ts);
    Json r;
    r["H"] = H;
    r["c1"] = num(approx.c1);
    r["c2"] = num(approx.c2);
    r["sup_kernel"] = num(st.sup_kernel);
    r["sup_kernel_times_H"] = num(st.sup_kernel * H);
    r["min_kernel"] = num(st.min_kernel);
    r["max_error"] = num(st.max_error);
    r["mean_error"] = num(st.mean_error);
    r["max_violation"] = num(st.max_violation);
    rows.push_back(r);
  }
  return rows;
}

// ------------------------------------------------------------ expsum-check

IntervalSubset subset_from(const Options& o, std::uint64_t seed) {
  if (o.density >= 1.0) return generate_subset(o.N, Provenance::full());
  return generate_subset(o.N, Provenance::bernoulli(o.density, seed));
}

Json cmd_expsum(const Options& o) {
  const std::string& l = o.lemma;
  if (l == "quadruple" || l == "L22") return to_json(quadruple_count(o.M, o.N, o.theta, o.alpha, o.beta_exp));
  if (l == "pair" || l == "L23") return to_json(pair_count(subset_from(o, o.seed), o.X));
  if (l == "bilinear" || l == "L21") {
    const auto A = subset_from(o, 2 * o.seed);
    const auto B = subset_from(o, 2 * o.seed + 1);
    return to_json(bilinear_check(o.H0, A, B, o.d, o.adversarial));
  }
  fail(ErrorKind::InvalidArgument, "--lemma must be quadruple, pair or bilinear");
}

// -------------------------------------------------------------- experiment

Provenance provenance_from(const Options& o, std::uint64_t seed) {
  std::string kind = o.provenance;
  if (kind.empty()) kind = o.density >= 1.0 ? "full" : "bernoulli";
  if (kind == "full") return Provenance::full();
  if (kind == "bernoulli") return Provenance::bernoulli(o.density, seed);
  if (kind == "adversarial-spread") return Provenance::adversarial_spread();
  fail(ErrorKind::InvalidArgument, "--provenance must be full, bernoulli or adversarial-spread");
}

ExactDelta delta_from(const Options& o, std::uint64_t N, double* requested) {
  if (o.delta_value > 0.0 && o.delta_exp > 0.0)
    fail(ErrorKind::InvalidArgument, "give either --delta or --delta-exp, not both");
  if (o.delta_exp > 0.0) {
    *requested = std::pow(static_cast<double>(N), -o.delta_exp);
    return delta_from_exponent(N, o.delta_exp);
  }
  if (!(o.delta_value > 0.0)) fail(ErrorKind::InvalidArgument, "--delta or --delta-exp is required");
  *requested = o.delta_value;
  return ExactDelta::from_double(o.delta_value);
}

Json cmd_experiment(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  if (o.N < 2) fail(ErrorKind::InvalidArgument, "--N must be >= 2");
  // A and B draw from independent streams 2 seed and 2 seed + 1.
  const auto A = generate_subset(o.N, provenance_from(o, 2 * o.seed));
  const auto B = generate_subset(o.N, provenance_from(o, 2 * o.seed + 1));
  double requested = 0.0;
  const ExactDelta delta = delta_from(o, o.N, &requested);
  const auto hc = count_H(A, B, delta, static_cast<std::uint64_t>(o.budget));
  const auto res = theorem1_residual(hc);
  const auto decomposition = sieve_decomposition(hc, A.size(), B.size(), std::max<std::uint64_t>(o.d_max, 1));
  const PrimeTable table(2 * o.N + 2);
  const int k = o.k ? o.k : 6;
  const auto ap = almost_prime_count(hc, k, table);
  const auto sifted = sifting_function_root(hc, 3 * o.N, k + 1, table);

  Json j;
  Json config;
  config["N"] = o.N;
  config["provenance"] = A.provenance.kind == ProvenanceKind::Bernoulli ? "bernoulli" : to_string(A.provenance.kind);
  config["density"] = num(o.density);
  config["delta_requested"] = num(requested);
  config["delta"] = num(delta.value());
  config["delta_exact"] = delta.rational().str();
  config["snap_rel_error"] = num(delta.snap_rel_error);
  config["k"] = k;
  config["d_max"] = decomposition.d_max;
  j["config"] = config;
  j["seed"] = o.seed;
  j["size_A"] = A.size();
  j["size_B"] = B.size();
  j["H"] = hc.H_count;
  j["multiset_size"] = hc.multiset_size;
  j["distinct"] = hc.distinct_count;
  j["X"] = num(decomposition.X.to_double());
  j["residual"] = num(res.residual);
  j["dense_regime"] = res.dense_regime;
  j["almost_prime"] = {{"multiset", ap.multiset}, {"distinct", ap.distinct}};
  j["sifted"] = sifted;
  if (k >= 4 && k <= 14) {
    const auto w = weighted_sum(hc, k, table);
    j["weighted"] = {{"value", num(w.value())}, {"squarefree", num(w.value_squarefree())}};
  }
  j["max_scaled_remainder_50"] = num(decomposition.max_scaled_remainder(50));
  Json by_d = Json::array();
  for (std::uint64_t dd = 1; dd <= std::min<std::uint64_t>(decomposition.d_max, 12); ++dd)
    by_d.push_back({{"d", dd}, {"count", decomposition.counts[dd]}, {"remainder", num(decomposition.remainders[dd].to_double())}});
  j["sieve_counts_by_d"] = by_d;
  if (o.timing) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    j["timing"] = {{"seconds", num(secs)}, {"work", hc.work}};
  }
  return j;
}

// ------------------------------------------------------------------- sweep

struct SweepPlan {
  Json signature;
  std::vector<std::string> header;
  std::size_t rows = 0;
  std::size_t chunk = 1;
  std::function<std::vector<Json>(std::size_t, std::size_t)> compute;
};

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0)) fail(ErrorKind::InvalidArgument, "--step must be positive");
  std::vector<double> out;
  if (start > stop) return out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) out.push_back(round12(start + static_cast<double>(i) * step));
  return out;
}

SweepPlan plan_sweep(const Options& o) {
  SweepPlan plan;
  plan.signature["what"] = o.what;
  if (o.what == "c-delta") {
    const auto grid = linear_grid(o.start, o.stop, o.step);
    plan.signature.update({{"k", o.k}, {"start", num(o.start)}, {"stop", num(o.stop)}, {"step", num(o.step)},
                           {"tol", num(o.tol)}});
    plan.header = {"delta", "k", "value", "value_unsimplified", "discrepancy", "quad_error", "flagged", "authoritative"};
    plan.rows = grid.size();
    plan.chunk = 16;
    const int k = o.k;
    const double tol = o.tol;
    plan.compute = [grid, k, tol](std::size_t b, std::size_t e) {
      const std::vector<double> part(grid.begin() + b, grid.begin() + e);
      std::vector<Json> rows;
      for (const auto& c : scan_C_delta_k(k, part, tol)) {
        Json r;
        r["delta"] = num(c.delta);
        r["k"] = c.k;
        r["value"] = num(c.value);
        r["value_unsimplified"] = num(c.value_unsimplified);
        r["discrepancy"] = num(c.discrepancy);
        r["quad_error"] = num(c.quad_error);
        r["flagged"] = c.flagged;
        r["authoritative"] = num(c.authoritative());
        rows.push_back(r);
      }
      return rows;
    };
    return plan;
  }
  if (o.N_list.empty() && (o.what == "residual" || o.what == "remainder"))
    fail(ErrorKind::InvalidArgument, "--N-list is required");
  if (o.what == "residual") {
    if (!(o.delta_value > 0.0)) fail(ErrorKind::InvalidArgument, "--delta is required");
    plan.signature.update({{"N_list", o.N_list}, {"density", num(o.density)}, {"seeds", o.seeds},
                           {"delta", num(o.delta_value)}, {"budget", num(o.budget)}});
    plan.header = {"N", "seed", "size_A", "size_B", "H", "main_term", "residual", "dense_regime"};
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cases;
    const int seeds = o.density >= 1.0 ? 1 : std::max(o.seeds, 0);
    for (auto N : o.N_list)
      for (int s = 0; s < seeds; ++s) cases.emplace_back(N, static_cast<std::uint64_t>(s));
    plan.rows = cases.size();
    const Options opt = o;
    plan.compute = [cases, opt](std::size_t b, std::size_t e) {
      std::vector<Json> rows;
      for (std::size_t i = b; i < e; ++i) {
        const auto [N, seed] = cases[i];
        const Provenance prov_a = opt.density >= 1.0 ? Provenance::full() : Provenance::bernoulli(opt.density, 2 * seed);
        const Provenance prov_b = opt.density >= 1.0 ? Provenance::full() : Provenance::bernoulli(opt.density, 2 * seed + 1);
        const auto A = generate_subset(N, prov_a);
        const auto B = generate_subset(N, prov_b);
        const auto res = theorem1_residual(A, B, ExactDelta::from_double(opt.delta_value),
                                           static_cast<std::uint64_t>(opt.budget));
        Json r;
        r["N"] = N;
        r["seed"] = seed;
        r["size_A"] = A.size();
        r["size_B"] = B.size();
        r["H"] = res.H;
        r["main_term"] = num(res.main_term);
        r["residual"] = num(res.residual);
        r["dense_regime"] = res.dense_regime;
        rows.push_back(r);
      }
      return rows;
    };
    return plan;
  }
  if (o.what == "remainder") {
    if (!(o.delta_exp > 0.0)) fail(ErrorKind::InvalidArgument, "--delta-exp is required");
    plan.signature.update({{"N_list", o.N_list}, {"delta_exp", num(o.delta_exp)}, {"d_limit", o.d_limit},
                           {"budget", num(o.budget)}});
    plan.header = {"N", "delta", "X", "statistic"};
    plan.rows = o.N_list.size();
    const Options opt = o;
    plan.compute = [opt](std::size_t b, std::size_t e) {
      std::vector<Json> rows;
      for (std::size_t i = b; i < e; ++i) {
        const std::uint64_t N = opt.N_list[i];
        const auto A = generate_subset(N, Provenance::full());
        const auto delta = delta_from_exponent(N, opt.delta_exp);
        const auto hc = count_H(A, A, delta, static_cast<std::uint64_t>(opt.budget));
        const auto dec = sieve_decomposition(hc, A.size(), A.size(), opt.d_limit);
        Json r;
        r["N"] = N;
        r["delta"] = num(delta.value());
        r["X"] = num(dec.X.to_double());
        r["statistic"] = num(dec.max_scaled_remainder(opt.d_limit));
        rows.push_back(r);
      }
      return rows;
    };
    return plan;
  }
  fail(ErrorKind::InvalidArgument, "--what must be c-delta, residual or remainder");
}

// Checkpoint layout: first line is the sweep signature, then one JSON row
// per line. A checkpoint from a different sweep is rejected.
std::vector<Json> load_checkpoint(const std::string& path, const Json& signature) {
  std::vector<Json> rows;
  std::ifstream in(path);
  if (!in) return rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (line != signature.dump())
    fail(ErrorKind::InvalidArgument, "checkpoint " + path + " belongs to a different sweep");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const std::exception&) {
      break;  // torn final line from an interrupted run
    }
  }
  return rows;
}

Json cmd_sweep(const Options& o, std::vector<std::string>* header) {
  const SweepPlan plan = plan_sweep(o);
  *header = plan.header;
  std::vector<Json> rows;
  std::ofstream ck;
  if (!o.checkpoint.empty()) {
    rows = load_checkpoint(o.checkpoint, plan.signature);
    if (rows.size() > plan.rows) rows.resize(plan.rows);
    ck.open(o.checkpoint, std::ios::binary | std::ios::trunc);
    if (!ck) fail(ErrorKind::InvalidArgument, "cannot write checkpoint " + o.checkpoint);
    ck << plan.signature.dump() << '\n';
    for (const auto& r : rows) ck << r.dump() << '\n';
    ck.flush();
  }
  while (rows.size() < plan.rows) {
    const std::size_t b = rows.size();
    const std::size_t e = std::min(plan.rows, b + plan.chunk);
    for (auto& r : plan.compute(b, e)) {
      if (ck.is_open()) ck << r.dump() << '\n';
      rows.push_back(std::move(r));
    }
    if (ck.is_open()) ck.flush();
  }
  Json doc = Json::array();
  for (auto& r : rows) doc.push_back(std::move(r));
  return doc;
}

// --------------------------------------------------------------- plumbing

// Values from the config file replace command-line values for the selected
// subcommand (or the global options), with a warning on conflict.
void apply_config(CLI::App& app, CLI::App* sub, const std::string& path, std::ostream& err) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read config file " + path);
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const std::exception& e) {
    fail(ErrorKind::InvalidArgument, "config file " + path + " is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) fail(ErrorKind::InvalidArgument, "config file must hold a JSON object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string name = "--" + it.key();
    if (name == "--config") continue;
    CLI::Option* opt = sub ? sub->get_option_no_throw(name) : nullptr;
    if (opt == nullptr) opt = app.get_option_no_throw(name);
    if (opt == nullptr) fail(ErrorKind::InvalidArgument, "config key '" + it.key() + "' is not an option here");
    std::vector<std::string> values;
    auto as_text = [](const Json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
      return v.dump();
    };
    if (it.value().is_array()) {
      for (const auto& v : it.value()) values.push_back(as_text(v));
    } else {
      values.push_back(as_text(it.value()));
    }
    if (opt->count() > 0) err << "warning: config file overrides " << name << '\n';
    opt->clear();
    opt->add_result(values);
    opt->run_callback();
  }
}

std::string output_path(const std::string& output) {
  std::filesystem::path p(output);
  const char* dir = std::getenv(kOutputDirEnv);
  if (p.is_relative() && dir != nullptr && *dir != '\0') p = std::filesystem::path(dir) / p;
  return p.string();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Near-square products, almost-primes and linear-sieve constants"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", o.format, "json, csv or table (sweep defaults to csv, others to json)");
  app.add_option("--output", o.output, "Write the report here; relative paths resolve against $NEARSQ_OUTPUT_DIR");
  app.add_option("--config", o.config, "JSON object of option values; it wins over flags");
  app.add_option("--seed", o.seed, "Random seed (default 0)");

  auto* sieve = app.add_subcommand(
      "sieve-fn", "Linear sieve functions from (uF(u))' = f(u-1), (uf(u))' = F(u-1), F(u) = 2e^gamma/u and f(u) = 0 "
                  "on (0,2]; closed forms F = 2e^gamma/u (u<=3), F = (2e^gamma/u)(1 + int_2^{u-1} log(t-1)/t dt) "
                  "(3<=u<=5), f = 2e^gamma log(u-1)/u (2<=u<=4)");
  sieve->add_option("--u", o.u_values, "Query points");
  sieve->add_flag("--dump", o.dump, "Write the whole grid as CSV (u,F,f)");
  sieve->add_option("--u-max", o.u_max, "Continuation horizon");
  sieve->add_option("--step", o.step, "Grid step (1/step must be an integer)");
  sieve->add_option("--tol", o.tol, "Marching tolerance");

  auto* mertens = app.add_subcommand("mertens", "Mertens product V(z) = prod_{p<z} (1 - 1/p) against e^-gamma / log z");
  mertens->add_option("--z", o.z_values, "Product cutoffs");
  mertens->add_option("--limit", o.limit, "Prime table limit (default: max z)");

  auto* constant = app.add_subcommand(
      "constant",
      "weighted: C(delta,k) = 6/(1-2delta)(log(4-10delta) + int_2^{3-10delta} log(s-1)/s log((4-10delta)/(s+1)) ds) "
      "- (1/2) 30 (int_{5-10delta-15/k}^{4-10delta} dt/(t(5-10delta-t)) + nested term), simplified and unsimplified forms; "
      "budget: 15e^-gamma f(5-10delta) and 15e^-gamma int_k^15 F(5-10delta-15/u) du/u; "
      "lower-bound: 2(k+1) e^-gamma f(alpha (k+1)(eta+beta-delta)) (reconstructed)");
  constant->add_option("--kind", o.kind, "weighted, budget or lower-bound")->capture_default_str();
  constant->add_option("--k", o.k, "k (4 or 5 for weighted)");
  constant->add_option("--delta", o.delta, "delta (decimal or p/q)");
  constant->add_option("--tol", o.tol, "Quadrature tolerance");
  constant->add_option("--eta", o.eta, "eta (lower-bound)");
  constant->add_option("--beta", o.beta, "beta (lower-bound)");
  constant->add_option("--eps", o.eps, "Hypothesis slack (lower-bound)");
  constant->add_option("--alpha-eps", o.alpha_eps, "Slack subtracted inside alpha (lower-bound)");

  auto* threshold = app.add_subcommand(
      "threshold", "k = floor(2/((eta+beta)/2 - 2/3 - 2delta/3)), alpha = ((eta+beta)/2 - 2/3 - 2delta/3)/(eta+beta-delta) "
                   "- eps, admissible 3(eta+beta)/4 - 1 - 3/k <= delta < 3(eta+beta)/4 - 1 - 3/(k+1); exact rationals");
  threshold->add_option("--eta", o.eta, "eta in (0,1]");
  threshold->add_option("--beta", o.beta, "beta in (0,1]");
  threshold->add_option("--delta", o.delta, "delta in [0,1/2)");
  threshold->add_option("--eps", o.eps, "Slack eps");

  auto* psi = app.add_subcommand(
      "psi-approx", "psi(t) = sum_{0<|h|<=H} u(h) e(ht) + O(sum_{|h|<=H} v(h) e(ht)) with u(h) << 1/|h|, v(h) << 1/H "
                    "(Vaaler polynomial, Fejer kernel envelope)");
  psi->add_option("--H", o.H_values, "Cutoffs H >= 2");
  psi->add_option("--grid", o.grid, "Equispaced grid points");
  psi->add_option("--random", o.random_points, "Extra uniformly random points (uses --seed)");

  auto* expsum = app.add_subcommand(
      "expsum-check", "quadruple: #{|(m~/m)^alpha - (n~/n)^beta| < theta} vs MN log 2MN + theta M^2 N^2; "
                      "pair: #{|sqrt b - sqrt b1| < 1/(2X)} vs (1 + 2 sqrt(2N)/X)|B|; "
                      "bilinear: |sum_{h~H0} sum_a sum_b e(h sqrt(ab)/d)| vs N H1 (|A||B|)^(1/4)(1 + sqrt(d/H1)) "
                      "log^(1/2)(2 N H1)");
  expsum->add_option("--lemma", o.lemma, "quadruple, pair or bilinear")->required();
  expsum->add_option("--M", o.M, "M (quadruple)");
  expsum->add_option("--N", o.N, "N");
  expsum->add_option("--theta", o.theta, "Theta (quadruple)");
  expsum->add_option("--alpha", o.alpha, "Exponent on m~/m (quadruple)");
  expsum->add_option("--beta", o.beta_exp, "Exponent on n~/n (quadruple)");
  expsum->add_option("--X", o.X, "X >= 1 (pair)");
  expsum->add_option("--H0", o.H0, "Dyadic frequency block (bilinear)");
  expsum->add_option("--d", o.d, "Modulus d (bilinear)");
  expsum->add_flag("--adversarial", o.adversarial, "Weights c(h) aligned with each inner sum (bilinear)");
  expsum->add_option("--density", o.density, "Bernoulli density; 1 means the full interval");

  auto* experiment = app.add_subcommand(
      "experiment", "H(A,B;Delta) = #{(a,b) : ||sqrt(ab)|| < Delta} against 2 Delta |A||B|; |A_d| = X/d + r(A,d) with "
                    "X = 2 Delta |A||B|; S(A,(3N)^(1/(k+1))); H(A;k) = #{l : Omega(l) <= k}; "
                    "W(A,k,N^(1/15)) = sum (1 - (1/2) #{p | l : N^(1/15) <= p < N^(1/k)})");
  experiment->add_option("--N", o.N, "Base N (sets live in (N, 2N])");
  experiment->add_option("--density", o.density, "Bernoulli density; 1 means the full interval");
  experiment->add_option("--provenance", o.provenance, "full, bernoulli or adversarial-spread");
  experiment->add_option("--delta", o.delta_value, "Window half-width Delta");
  experiment->add_option("--delta-exp", o.delta_exp, "Use Delta = N^-delta_exp");
  experiment->add_option("--k", o.k, "Almost-prime order (default 6)");
  experiment->add_option("--d-max", o.d_max, "Largest modulus in the sieve decomposition");
  experiment->add_option("--budget", o.budget, "Work budget in row-pruned iterations");
  experiment->add_flag("--timing", o.timing, "Include wall-clock timing (output no longer reproducible)");

  auto* sweep = app.add_subcommand(
      "sweep", "Grid sweeps, one CSV row per point: c-delta (C(delta,k) over a delta grid), residual "
               "((H - 2 Delta |A||B|)/(N (|A||B|)^(1/4) log^(3/2) N) over N), remainder "
               "(max_{d<=d-limit} d |r(A,d)|/X with Delta = N^-delta_exp)");
  sweep->add_option("--what", o.what, "c-delta, residual or remainder")->required();
  sweep->add_option("--k", o.k, "k for c-delta");
  sweep->add_option("--start", o.start, "First delta");
  sweep->add_option("--stop", o.stop, "Last delta (inclusive)");
  sweep->add_option("--step", o.step, "Delta step");
  sweep->add_option("--tol", o.tol, "Quadrature tolerance");
  sweep->add_option("--N-list", o.N_list, "Sizes N");
  sweep->add_option("--density", o.density, "Bernoulli density; 1 means the full interval");
  sweep->add_option("--seeds", o.seeds, "Seeds 0..seeds-1 for Bernoulli sets");
  sweep->add_option("--delta", o.delta_value, "Delta for residual");
  sweep->add_option("--delta-exp", o.delta_exp, "Delta = N^-delta_exp for remainder");
  sweep->add_option("--d-limit", o.d_limit, "Largest d in the remainder statistic");
  sweep->add_option("--budget", o.budget, "Work budget in row-pruned iterations");
  sweep->add_option("--checkpoint", o.checkpoint, "Resume from and append to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (auto* s : app.get_subcommands()) target = s;
    out << target->help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!o.config.empty()) apply_config(app, sub, o.config, err);
    if (o.threads > 0) omp_set_num_threads(o.threads);
    const std::string name = sub->get_name();
    const OutputFormat format = parse_format(o.format.empty() ? (name == "sweep" ? "csv" : "json") : o.format);

    std::ostringstream buffer;
    std::vector<std::string> sweep_header;
    Json doc;
    if (name == "sieve-fn") doc = cmd_sieve_fn(o, &buffer);
    else if (name == "mertens") doc = cmd_mertens(o);
    else if (name == "constant") doc = cmd_constant(o);
    else if (name == "threshold") doc = cmd_threshold(o);
    else if (name == "psi-approx") doc = cmd_psi(o);
    else if (name == "expsum-check") doc = cmd_expsum(o);
    else if (name == "experiment") doc = cmd_experiment(o);
    else doc = cmd_sweep(o, &sweep_header);

    if (!doc.is_null()) {
      if (name == "expsum-check" && format == OutputFormat::Json) buffer << doc.dump() << '\n';  // JSON lines
      else if (name == "sweep" && format == OutputFormat::Csv && doc.empty()) buffer << csv_row(sweep_header) << '\n';
      else write_report(buffer, doc, format);
    }

    if (o.output.empty()) {
      out << buffer.str();
    } else {
      const std::string path = output_path(o.output);
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot write " << path << '\n';
        return kFailure;
      }
      file << buffer.str();
    }
    return kOk;
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace nearsq::cli
