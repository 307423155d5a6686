#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "splp/error.hpp"
#include "splp/evaluation.hpp"
#include "splp/harness.hpp"
#include "splp/io.hpp"
#include "splp/lp.hpp"
#include "splp/mmsb.hpp"
#include "splp/theory.hpp"

namespace splp::cli {

namespace {

const std::map<std::string, lp::RecoveryMode> kModes{
    {"exact", lp::RecoveryMode::exact},
    {"spectral", lp::RecoveryMode::spectral},
};

const std::map<std::string, mmsb::InteractionKind> kBKinds{
    {"delta_blend", mmsb::InteractionKind::delta_blend},
    {"diag_random", mmsb::InteractionKind::diag_random},
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path);
  return f;
}

struct GenerateArgs {
  std::size_t n = 5000;
  std::size_t k = 3;
  double alpha = 0.5;
  std::string b_kind = "diag_random";
  double delta = 0.0;
  std::optional<std::size_t> s;
  std::uint64_t seed = 0;
  bool exact = false;
  std::string out;
  std::string theta_out;
  std::string b_out;
};

struct RecoverArgs {
  std::string in;
  std::size_t k = 3;
  std::string mode = "spectral";
  std::uint64_t seed = 0;
  std::string out;
  std::string truth;
};

struct SweepArgs {
  std::string variable = "n";
  std::vector<double> grid;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::string trials_out;
  std::string mode = "spectral";
  std::optional<std::string> b_kind;
  std::size_t n = 5000;
  std::size_t k = 3;
  double alpha = 0.5;
  double delta = 0.0;
  std::optional<std::size_t> s;
  std::size_t threads = 1;
  bool no_timing = false;
};

struct BoundsArgs {
  std::size_t k = 3;
  double alpha = 0.5;
  std::optional<double> kappa;
  std::string b;
  double p = 0.1;
  std::optional<double> epsilon;
};

struct ConcArgs {
  std::size_t n = 5000;
  std::size_t k = 3;
  double alpha = 0.5;
  std::string b_kind = "diag_random";
  double delta = 0.0;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
};

struct PpiArgs {
  std::string in;
  std::size_t k = 0;
  double threshold = 0.5;
  double merge_threshold = 0.8;
  std::uint64_t seed = 0;
  std::string out;
  std::string theta_out;
};

int run_generate(const GenerateArgs& a, std::ostream& out) {
  Rng rng(a.seed);
  mmsb::MmsbParams params;
  params.n = a.n;
  params.k = a.k;
  params.alpha = a.alpha;
  params.b = mmsb::make_interaction_matrix(kBKinds.at(a.b_kind), a.k, a.delta, rng);
  params.validate();
  const auto theta = mmsb::sample_theta(params, rng);
  const auto p = mmsb::build_probability_matrix(theta, params.b);
  const auto graph =
      a.exact ? p : mmsb::sample_adjacency_average(p, a.s.value_or(mmsb::default_samples(a.n)), rng);

  io::write_matrix_csv(a.out, graph.adj);
  if (!a.theta_out.empty()) io::write_matrix_csv(a.theta_out, theta.theta);
  if (!a.b_out.empty()) io::write_matrix_csv(a.b_out, params.b);
  out << "wrote " << a.n << "x" << a.n << (a.exact ? " probability" : " averaged adjacency")
      << " matrix to " << a.out << '\n';
  return kSuccess;
}

int run_recover(const RecoverArgs& a, std::ostream& out, std::ostream& err) {
  mmsb::WeightedGraph graph;
  graph.adj = io::read_matrix_csv(a.in);
  const auto mode = kModes.at(a.mode);
  graph.kind = mode == lp::RecoveryMode::exact ? mmsb::GraphKind::exact_p : mmsb::GraphKind::sampled_average;
  Rng rng(a.seed);
  const auto result = lp::recover_all(graph, a.k, mode, rng);
  io::write_matrix_csv(a.out, result.theta_hat);

  for (std::size_t j = 0; j < a.k; ++j) {
    if (result.per_column_status[j] != lp::LpStatus::optimal)
      err << "warning: column " << j << " LP " << lp::to_string(result.per_column_status[j]) << '\n';
    else if (result.suspect[j])
      err << "warning: column " << j << " optimum has max entry below 1\n";
  }
  if (!a.truth.empty()) {
    const auto truth = io::read_matrix_csv(a.truth);
    const auto e = eval::entrywise_error(result.theta_hat, truth);
    out << "error = " << io::format_double(e.error) << '\n';
  }
  return kSuccess;
}

int run_sweep(const SweepArgs& a, std::ostream& out) {
  harness::SweepConfig cfg;
  cfg.variable = harness::parse_sweep_variable(a.variable);
  cfg.grid = a.grid;
  cfg.n = a.n;
  cfg.k = a.k;
  cfg.alpha = a.alpha;
  cfg.delta = a.delta;
  cfg.s = a.s;
  cfg.repeats = a.repeats;
  cfg.base_seed = a.seed;
  cfg.mode = kModes.at(a.mode);
  if (a.b_kind) cfg.b_kind = kBKinds.at(*a.b_kind);
  cfg.record_timing = !a.no_timing;
  cfg.threads = a.threads;
  try {
    cfg.validate();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }

  const auto result = harness::run_sweep(cfg);
  {
    auto f = open_out(a.out);
    harness::write_sweep_csv(f, result.records);
  }
  if (!a.trials_out.empty()) {
    auto f = open_out(a.trials_out);
    harness::write_trial_csv(f, result.trials);
  }
  std::size_t failed = 0;
  for (const auto& t : result.trials)
    if (t.status != "ok") ++failed;
  out << "wrote " << result.records.size() << " rows to " << a.out;
  if (failed) out << " (" << failed << " trials not ok)";
  out << '\n';
  return kSuccess;
}

int run_check_bounds(const BoundsArgs& a, std::ostream& out) {
  if (a.kappa.has_value() == !a.b.empty()) throw UsageError("give exactly one of --kappa or --b");
  theory::TheoremBounds tb;
  if (a.kappa) {
    tb = theory::compute_bounds(a.alpha, a.k, *a.kappa, a.p, a.epsilon);
  } else {
    mmsb::MmsbParams params;
    params.k = a.k;
    params.n = a.k;
    params.alpha = a.alpha;
    params.b = io::read_matrix_csv(a.b);
    tb = theory::compute_bounds(params, a.p, a.epsilon);
  }
  out << "kappa = " << io::format_double(tb.kappa) << '\n'
      << "w = " << io::format_double(tb.w) << '\n'
      << "epsilon1 = " << io::format_double(tb.epsilon1) << '\n'
      << "epsilon2 = " << io::format_double(tb.epsilon2) << '\n'
      << "epsilon = " << io::format_double(tb.epsilon) << '\n'
      << "epsilon_in_range = " << (tb.epsilon_in_range ? "yes" : "no") << '\n'
      << "near_pure_probability = " << io::format_double(tb.near_pure_probability) << '\n';
  if (tb.min_n) out << "min_n = " << *tb.min_n << '\n';
  else out << "min_n = unsatisfiable\n";
  out << "error_bound = " << io::format_double(tb.error_bound) << '\n';
  return kSuccess;
}

int run_conc_check(const ConcArgs& a, std::ostream& out) {
  Rng rng(a.seed);
  mmsb::MmsbParams params;
  params.n = a.n;
  params.k = a.k;
  params.alpha = a.alpha;
  params.b = mmsb::make_interaction_matrix(kBKinds.at(a.b_kind), a.k, a.delta, rng);
  const auto rep = theory::run_concentration_check(params, a.trials, derive_seed(a.seed, 1));
  auto line = [&](const char* name, std::size_t v, double bound) {
    out << name << " = " << v << " / " << rep.trials << "  bound " << io::format_double(bound) << "  "
        << (theory::within_probability_bound(v, rep.trials, bound) ? "within" : "EXCEEDED") << '\n';
  };
  line("c_range_violations", rep.c_vector_violations, rep.p1);
  line("c_ratio_violations", rep.c_ratio_violations, rep.p1);
  line("theta_norm_violations", rep.theta_norm_violations, rep.p2);
  line("sigma_k_violations", rep.sigma_k_violations, rep.p3);
  out << "min_c_ratio = " << io::format_double(rep.min_c_ratio) << '\n'
      << "max_theta_norm = " << io::format_double(rep.max_theta_norm) << '\n'
      << "min_sigma_k = " << io::format_double(rep.min_sigma_k) << '\n';
  return kSuccess;
}

int run_ppi(const PpiArgs& a, std::ostream& out, std::ostream& err) {
  const auto edges = io::ingest_weighted_edgelist(a.in);
  if (edges.clamped_weights)
    err << "warning: " << edges.clamped_weights << " weights above 1 clamped to 1\n";
  const std::size_t n = edges.names.size();
  if (a.k > n) throw Error("k = " + std::to_string(a.k) + " exceeds node count " + std::to_string(n));

  Rng rng(a.seed);
  const auto result = lp::recover_all(edges.graph, a.k, lp::RecoveryMode::spectral, rng);
  if (!a.theta_out.empty()) io::write_matrix_csv(a.theta_out, result.theta_hat);

  const auto merged = eval::merge_complexes(eval::binarize(result.theta_hat, a.threshold), a.merge_threshold);
  {
    auto f = open_out(a.out);
    eval::write_complexes(f, merged, edges.names);
  }
  out << "wrote " << merged.complexes.size() << " complexes over " << n << " nodes to " << a.out << '\n';
  return kSuccess;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed-membership community recovery by successive projection and linear programming", "splp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "splp 0.1.0");

  const auto modes = CLI::IsMember({"exact", "spectral"});
  const auto b_kinds = CLI::IsMember({"delta_blend", "diag_random"});
  const auto unit = CLI::Range(0.0, 1.0);

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Sample an MMSB graph");
  gen->add_option("--n", ga.n, "Number of nodes")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  gen->add_option("--k", ga.k, "Number of communities")->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
  gen->add_option("--alpha", ga.alpha, "Dirichlet parameter")->check(CLI::PositiveNumber);
  gen->add_option("--b-kind", ga.b_kind, "Interaction matrix family")->check(b_kinds);
  gen->add_option("--delta", ga.delta, "Off-diagonal weight for delta_blend")->check(unit);
  gen->add_option("--s", ga.s, "Averaged samples (default ceil(sqrt(n)))")->check(CLI::PositiveNumber);
  gen->add_option("--seed", ga.seed, "Random seed");
  gen->add_flag("--exact", ga.exact, "Write P itself instead of an averaged sample");
  gen->add_option("--out", ga.out, "Matrix CSV")->required();
  gen->add_option("--theta-out", ga.theta_out, "Ground-truth theta CSV");
  gen->add_option("--b-out", ga.b_out, "Interaction matrix CSV");

  RecoverArgs ra;
  auto* rec = app.add_subcommand("recover", "Recover theta from a matrix CSV");
  rec->add_option("--in", ra.in, "Matrix CSV")->required()->check(CLI::ExistingFile);
  rec->add_option("--k", ra.k, "Number of communities")->required()->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  rec->add_option("--mode", ra.mode, "exact or spectral")->check(modes);
  rec->add_option("--seed", ra.seed, "Random seed");
  rec->add_option("--out", ra.out, "Theta CSV")->required();
  rec->add_option("--truth", ra.truth, "Ground-truth theta CSV; prints the error")->check(CLI::ExistingFile);

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "Synthetic recovery sweep");
  sw->add_option("--variable", sa.variable, "n, k, alpha or delta")->check(CLI::IsMember({"n", "k", "alpha", "delta"}));
  sw->add_option("--grid", sa.grid, "Comma separated values")->required()->delimiter(',');
  sw->add_option("--repeats", sa.repeats, "Trials per grid value")->check(CLI::PositiveNumber);
  sw->add_option("--seed", sa.seed, "Base seed");
  sw->add_option("--out", sa.out, "Summary CSV")->required();
  sw->add_option("--trials-out", sa.trials_out, "Per-trial CSV");
  sw->add_option("--mode", sa.mode, "exact or spectral")->check(modes);
  sw->add_option("--b-kind", sa.b_kind, "Interaction matrix family")->check(b_kinds);
  sw->add_option("--n", sa.n, "Fixed n")->check(CLI::PositiveNumber);
  sw->add_option("--k", sa.k, "Fixed k")->check(CLI::PositiveNumber);
  sw->add_option("--alpha", sa.alpha, "Fixed alpha")->check(CLI::PositiveNumber);
  sw->add_option("--delta", sa.delta, "Fixed delta")->check(unit);
  sw->add_option("--s", sa.s, "Averaged samples (default ceil(sqrt(n)))")->check(CLI::PositiveNumber);
  sw->add_option("--threads", sa.threads, "Worker threads")->check(CLI::PositiveNumber);
  sw->add_flag("--no-timing", sa.no_timing, "Record zero seconds for byte-stable output");

  BoundsArgs ba;
  auto* cb = app.add_subcommand("check-bounds", "Evaluate the sample-size bound");
  cb->add_option("--k", ba.k, "Number of communities")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  cb->add_option("--alpha", ba.alpha, "Dirichlet parameter")->check(CLI::PositiveNumber);
  cb->add_option("--kappa", ba.kappa, "Condition number of B")->check(CLI::Range(1.0, 1e300));
  cb->add_option("--b", ba.b, "Interaction matrix CSV")->check(CLI::ExistingFile);
  cb->add_option("--p", ba.p, "Failure probability")->check(CLI::Range(0.0, 1.0));
  cb->add_option("--epsilon", ba.epsilon, "Near-purity radius (default half the admissible maximum)")
      ->check(CLI::Range(0.0, 1.0));

  ConcArgs ca;
  auto* cc = app.add_subcommand("conc-check", "Empirical concentration check on sampled theta");
  cc->add_option("--n", ca.n, "Number of nodes")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  cc->add_option("--k", ca.k, "Number of communities")->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
  cc->add_option("--alpha", ca.alpha, "Dirichlet parameter")->check(CLI::PositiveNumber);
  cc->add_option("--b-kind", ca.b_kind, "Interaction matrix family")->check(b_kinds);
  cc->add_option("--delta", ca.delta, "Off-diagonal weight for delta_blend")->check(unit);
  cc->add_option("--trials", ca.trials, "Number of trials")->check(CLI::PositiveNumber);
  cc->add_option("--seed", ca.seed, "Random seed");

  PpiArgs pa;
  auto* ppi = app.add_subcommand("ppi", "Detect complexes in a weighted edge list");
  ppi->add_option("--in", pa.in, "Edge list (nameA nameB weight)")->required()->check(CLI::ExistingFile);
  ppi->add_option("--k", pa.k, "Number of communities")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  ppi->add_option("--threshold", pa.threshold, "Membership threshold")->check(unit);
  ppi->add_option("--merge-threshold", pa.merge_threshold, "Overlap score for merging")->check(CLI::Range(1e-12, 1.0));
  ppi->add_option("--seed", pa.seed, "Random seed");
  ppi->add_option("--out", pa.out, "Complexes file")->required();
  ppi->add_option("--theta-out", pa.theta_out, "Recovered theta CSV");

  std::vector<const char*> argv{"splp"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (gen->parsed()) return run_generate(ga, out);
    if (rec->parsed()) return run_recover(ra, out, err);
    if (sw->parsed()) return run_sweep(sa, out);
    if (cb->parsed()) return run_check_bounds(ba, out);
    if (cc->parsed()) return run_conc_check(ca, out);
    if (ppi->parsed()) return run_ppi(pa, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n' << "Run with --help for more information.\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace splp::cli
