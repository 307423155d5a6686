#include "splp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include "splp/error.hpp"
#include "splp/evaluation.hpp"
#include "splp/io.hpp"

namespace splp::harness {

namespace {

bool is_count(double v) { return v >= 1.0 && v <= 1e9 && std::floor(v) == v; }

struct TrialSetup {
  std::size_t n;
  std::size_t k;
  double alpha;
  double delta;
};

TrialSetup setup_for(const SweepConfig& cfg, double value) {
  TrialSetup t{cfg.n, cfg.k, cfg.alpha, cfg.delta};
  switch (cfg.variable) {
    case SweepVariable::n: t.n = static_cast<std::size_t>(value); break;
    case SweepVariable::k: t.k = static_cast<std::size_t>(value); break;
    case SweepVariable::alpha: t.alpha = value; break;
    case SweepVariable::delta: t.delta = value; break;
  }
  return t;
}

mmsb::InteractionKind kind_for(const SweepConfig& cfg) {
  if (cfg.b_kind) return *cfg.b_kind;
  return cfg.variable == SweepVariable::delta ? mmsb::InteractionKind::delta_blend
                                              : mmsb::InteractionKind::diag_random;
}

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

void run_trial(const SweepConfig& cfg, TrialRecord& rec) {
  try {
    const TrialSetup t = setup_for(cfg, rec.value);
    Rng rng(rec.seed);
    mmsb::MmsbParams params;
    params.n = t.n;
    params.k = t.k;
    params.alpha = t.alpha;
    params.b = mmsb::make_interaction_matrix(kind_for(cfg), t.k, t.delta, rng);
    params.validate();

    const auto theta = mmsb::sample_theta(params, rng);
    const auto p = mmsb::build_probability_matrix(theta, params.b);
    const mmsb::WeightedGraph graph =
        cfg.mode == lp::RecoveryMode::exact
            ? p
            : mmsb::sample_adjacency_average(p, cfg.s.value_or(mmsb::default_samples(t.n)), rng);

    const auto start = std::chrono::steady_clock::now();
    const auto result = lp::recover_all(graph, t.k, cfg.mode, rng);
    const auto stop = std::chrono::steady_clock::now();

    rec.seconds = cfg.record_timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
    rec.error = eval::entrywise_error(result.theta_hat, theta.theta).error;
    const bool all_optimal = std::all_of(result.per_column_status.begin(), result.per_column_status.end(),
                                         [](lp::LpStatus s) { return s == lp::LpStatus::optimal; });
    rec.status = all_optimal ? "ok" : "lp_failure";
  } catch (const std::exception& e) {
    rec.status = sanitize(std::string("error: ") + e.what());
    rec.error = 0.0;
    rec.seconds = 0.0;
  }
}

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::n: return "n";
    case SweepVariable::k: return "k";
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::delta: return "delta";
  }
  return "?";
}

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "n") return SweepVariable::n;
  if (name == "k") return SweepVariable::k;
  if (name == "alpha") return SweepVariable::alpha;
  if (name == "delta") return SweepVariable::delta;
  throw InvalidInput("unknown sweep variable '" + name + "'");
}

void SweepConfig::validate() const {
  if (grid.empty()) throw InvalidInput("sweep: grid is empty");
  if (repeats < 1) throw InvalidInput("sweep: repeats must be at least 1");
  if (s && *s < 1) throw InvalidInput("sweep: s must be at least 1");
  for (double v : grid) {
    const TrialSetup t = setup_for(*this, v);
    switch (variable) {
      case SweepVariable::n:
      case SweepVariable::k:
        if (!is_count(v)) throw InvalidInput("sweep: grid value must be a positive integer");
        break;
      case SweepVariable::alpha:
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("sweep: alpha must be positive");
        break;
      case SweepVariable::delta:
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("sweep: delta must lie in [0, 1]");
        break;
    }
    if (t.k < 2 || t.n < t.k) throw InvalidInput("sweep: need 2 <= k <= n");
  }
  if (!(alpha > 0.0)) throw InvalidInput("sweep: alpha must be positive");
  if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidInput("sweep: delta must lie in [0, 1]");
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult out;
  out.trials.resize(cfg.grid.size() * cfg.repeats);
  for (std::size_t g = 0; g < cfg.grid.size(); ++g)
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      TrialRecord& rec = out.trials[g * cfg.repeats + r];
      rec.grid_index = g;
      rec.value = cfg.grid[g];
      rec.repeat = r;
      rec.seed = derive_seed(cfg.base_seed, g, r);
    }

  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, out.trials.size()));
  if (workers == 1) {
    for (auto& rec : out.trials) run_trial(cfg, rec);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < out.trials.size(); i = next++) run_trial(cfg, out.trials[i]);
      });
    for (auto& t : pool) t.join();
  }

  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    std::vector<double> errors;
    std::vector<double> seconds;
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      const TrialRecord& rec = out.trials[g * cfg.repeats + r];
      if (rec.status.rfind("error", 0) == 0) continue;
      errors.push_back(rec.error);
      seconds.push_back(rec.seconds);
    }
    SweepRecord sr;
    sr.variable = to_string(cfg.variable);
    sr.value = cfg.grid[g];
    sr.repeat_count = errors.size();
    mean_std(errors, sr.mean_error, sr.std_error);
    mean_std(seconds, sr.mean_seconds, sr.std_seconds);
    out.records.push_back(sr);
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << "variable,value,repeat_count,mean_error,std_error,mean_seconds,std_seconds\n";
  for (const auto& r : records) {
    out << r.variable << ',' << io::format_double(r.value) << ',' << r.repeat_count << ','
        << io::format_double(r.mean_error) << ',' << io::format_double(r.std_error) << ','
        << io::format_double(r.mean_seconds) << ',' << io::format_double(r.std_seconds) << '\n';
  }
}

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& trials) {
  out << "grid_index,value,repeat,seed,status,error,seconds\n";
  for (const auto& t : trials) {
    out << t.grid_index << ',' << io::format_double(t.value) << ',' << t.repeat << ',' << t.seed << ','
        << t.status << ',' << io::format_double(t.error) << ',' << io::format_double(t.seconds) << '\n';
  }
}

}  // namespace splp::harness
