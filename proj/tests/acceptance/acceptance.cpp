// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: splp_acceptance <path-to-splp-binary> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "beta_quadrature.hpp"
#include "planted.hpp"
#include "random_lp.hpp"
#include "splp/evaluation.hpp"
#include "splp/harness.hpp"
#include "splp/lp.hpp"
#include "splp/simplex.hpp"
#include "splp/spa.hpp"
#include "splp/theory.hpp"
#include "vertex_enumeration.hpp"

namespace fs = std::filesystem;
using namespace splp;
using linalg::DenseMatrix;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome noiseless_exact_recovery() {
  const std::size_t n = 30;
  const std::size_t k = 3;
  double worst_err = 0.0;
  double worst_time = 0.0;
  const int instances = 20;
  for (int s = 0; s < instances; ++s) {
    Rng rng(derive_seed(1001, s));
    const auto anchors = fixture::random_anchors(n, k, rng);
    const auto theta = fixture::planted_theta(n, k, 0.5, 0.1, anchors, 0.0, rng);
    const auto b = fixture::generic_b(k, rng);
    const auto p = mmsb::build_probability_matrix({theta}, b);
    const auto t0 = Clock::now();
    const auto r = lp::recover_all(p, k, lp::RecoveryMode::exact, rng);
    worst_time = std::max(worst_time, seconds_since(t0));
    worst_err = std::max(worst_err, eval::entrywise_error(r.theta_hat, theta).error);
  }
  return {worst_err <= 1e-6 && worst_time < 1.0,
          std::to_string(instances) + " instances, max error " + fmt("%.3g", worst_err) + " (<= 1e-6), max runtime " +
              fmt("%.4f", worst_time) + " s (< 1 s)"};
}

Outcome near_pure_lp_bound() {
  const auto t0 = Clock::now();
  const std::size_t n = 200;
  std::string detail;
  bool pass = true;
  for (std::size_t k : {2u, 3u}) {
    for (double eta : {0.005, 0.01, 0.02}) {
      const double bound = 4.0 * eta * (2.0 * std::sqrt(2.0) * static_cast<double>(k) + 1.0);
      int ok = 0;
      int redraws = 0;
      double worst = 0.0;
      for (int trial = 0; trial < 100; ++trial) {
        Rng rng(derive_seed(2002, k * 1000 + static_cast<std::size_t>(eta * 1e4), trial));
        DenseMatrix theta;
        std::vector<std::size_t> anchors;
        // Requires c_min/c_max > 1/2 and η < (c_min/c_max − 1/2)/(4k).
        for (;;) {
          anchors = fixture::random_anchors(n, k, rng);
          theta = fixture::planted_theta(n, k, 0.5, 0.0, anchors, eta, rng);
          const double ratio = fixture::column_sum_ratio(theta);
          if (ratio > 0.5 && eta < (ratio - 0.5) / (4.0 * static_cast<double>(k))) break;
          ++redraws;
        }
        const auto b = fixture::generic_b(k, rng);
        const auto p = mmsb::build_probability_matrix({theta}, b);
        const auto rb = lp::recovery_basis(p.adj, k, lp::RecoveryMode::exact, rng);
        bool all = true;
        for (std::size_t j = 0; j < k; ++j) {
          const auto sol = lp::solve_anchor_lp(rb.basis, anchors[j]);
          if (sol.status != lp::LpStatus::optimal) {
            all = false;
            continue;
          }
          const double err = fixture::column_error(sol.x_star, theta, j);
          worst = std::max(worst, err / bound);
          if (err > bound) all = false;
        }
        ok += all;
      }
      pass = pass && ok == 100;
      detail += "k=" + std::to_string(k) + " eta=" + fmt("%g", eta) + ": " + std::to_string(ok) + "/100 (max err/bound " +
                fmt("%.3f", worst) + (redraws ? ", " + std::to_string(redraws) + " redraws" : "") + "); ";
    }
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 30.0;
  return {pass, detail + "runtime " + fmt("%.2f", secs) + " s (< 30 s)"};
}

double cond_theta_b(const DenseMatrix& theta, const DenseMatrix& b) {
  const auto sv = linalg::singular_values(linalg::multiply(theta, b));
  return sv.front() / sv.back();
}

Outcome spa_guarantee() {
  const std::size_t n = 200;
  const std::size_t k = 3;
  const double kd = static_cast<double>(k);
  const double front = std::min(1.0 / std::sqrt(kd - 1.0), 0.5);
  int ok = 0;
  const int trials = 100;
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(3003, trial));
    const auto anchors = fixture::random_anchors(n, k, rng);
    const auto b = fixture::generic_b(k, rng);
    Rng theta_rng(derive_seed(3004, trial));
    Rng probe_rng = theta_rng;
    const auto probe = fixture::planted_theta(n, k, 0.5, 0.0, anchors, 0.0, probe_rng);
    const double kappa_probe = cond_theta_b(probe, b);
    const double eta = 0.5 * front / (2.0 * std::sqrt(2.0) * kappa_probe * (1.0 + 80.0 * kappa_probe * kappa_probe));
    const auto theta = fixture::planted_theta(n, k, 0.5, 0.0, anchors, eta, theta_rng);

    const double kappa0 = cond_theta_b(theta, b);
    double eps_hat = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      double best = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        for (std::size_t t = 0; t < k; ++t) d = std::max(d, std::abs(theta(i, t) - (t == j ? 1.0 : 0.0)));
        best = std::min(best, d);
      }
      eps_hat = std::max(eps_hat, best);
    }
    const double threshold = front / (2.0 * std::sqrt(2.0) * kappa0 * (1.0 + 80.0 * kappa0 * kappa0));
    if (!(eps_hat < threshold)) continue;

    const auto p = mmsb::build_probability_matrix({theta}, b).adj;
    const auto sel = spa::successive_projection(p, k);
    if (sel.indices.size() != k) continue;
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = 1e300;
    do {
      double m = 0.0;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
          m = std::max(m, std::abs(theta(sel.indices[perm[r]], c) - (r == c ? 1.0 : 0.0)));
      best = std::min(best, m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double bound = 40.0 * std::sqrt(2.0) * kappa0 * kappa0 * eps_hat;
    worst = std::max(worst, best / bound);
    ok += best <= bound;
  }
  return {ok == trials, std::to_string(ok) + "/" + std::to_string(trials) +
                            " trials within 40*sqrt(2)*kappa0^2*eps (max ratio " + fmt("%.3g", worst) + ")"};
}

Outcome simplex_oracle() {
  Rng rng(4004);
  int agree = 0;
  int counts[3] = {0, 0, 0};
  double worst = 0.0;
  const int total = 200;
  for (int trial = 0; trial < total; ++trial) {
    const auto p = fixture::random_lp(rng, trial % 2 == 0);
    const auto ref = oracle::enumerate_vertices(p.a, p.b, p.c);
    lp::SimplexOutcome out;
    try {
      out = lp::simplex_core(p.a, p.b, p.c);
    } catch (const std::exception&) {
      continue;
    }
    const auto expected = static_cast<lp::LpStatus>(static_cast<int>(ref.verdict));
    if (out.status != expected) continue;
    if (out.status == lp::LpStatus::optimal) {
      const double d = std::abs(out.objective - ref.objective);
      worst = std::max(worst, d);
      if (d > 1e-7) continue;
    }
    ++counts[static_cast<int>(out.status)];
    ++agree;
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree (optimal " +
                              std::to_string(counts[0]) + ", infeasible " + std::to_string(counts[1]) +
                              ", unbounded " + std::to_string(counts[2]) + "; max objective gap " +
                              fmt("%.2g", worst) + ")"};
}

Outcome concentration() {
  const auto t0 = Clock::now();
  mmsb::MmsbParams params;
  params.n = 5000;
  params.k = 3;
  params.alpha = 0.5;
  Rng rng(5005);
  params.b = mmsb::make_interaction_matrix(mmsb::InteractionKind::diag_random, 3, 0.0, rng);
  const auto rep = theory::run_concentration_check(params, 100, 5006);
  const double secs = seconds_since(t0);
  const bool zero = rep.c_vector_violations == 0 && rep.c_ratio_violations == 0 && rep.theta_norm_violations == 0;
  const bool within = theory::within_probability_bound(rep.c_vector_violations, rep.trials, rep.p1) &&
                      theory::within_probability_bound(rep.c_ratio_violations, rep.trials, rep.p1) &&
                      theory::within_probability_bound(rep.theta_norm_violations, rep.trials, rep.p2);
  return {zero && within && secs < 60.0,
          "violations c-range " + std::to_string(rep.c_vector_violations) + ", c-ratio " +
              std::to_string(rep.c_ratio_violations) + ", norm " + std::to_string(rep.theta_norm_violations) +
              " of 100 (p1 " + fmt("%.2g", rep.p1) + ", p2 " + fmt("%.2g", rep.p2) + "); sigma_k " +
              std::to_string(rep.sigma_k_violations) + " (p3 " + fmt("%.2g", rep.p3) + "); runtime " +
              fmt("%.2f", secs) + " s (< 60 s)"};
}

Outcome bound_calculator() {
  const auto tb = theory::compute_bounds(1.0, 2, 1.0, 0.1, 0.01);
  const bool min_n_ok = tb.min_n && *tb.min_n == 299;
  const double as[] = {0.3, 0.5, 1.0, 2.0, 5.0};
  const double bs[] = {0.5, 1.0, 3.0, 1.5, 0.8};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = (i + 1) / 51.0;
    const double a = as[i % 5];
    const double b = bs[(i / 5) % 5];
    worst = std::max(worst, std::abs(theory::reg_incomplete_beta(x, a, b) - oracle::incomplete_beta_quadrature(x, a, b)));
  }
  return {min_n_ok && worst <= 1e-10,
          "min_n = " + (tb.min_n ? std::to_string(*tb.min_n) : std::string("unsatisfiable")) +
              " (want 299); 50-point quadrature max deviation " + fmt("%.2g", worst) + " (<= 1e-10)"};
}

Outcome trend() {
  const auto t0 = Clock::now();
  harness::SweepConfig cfg;
  cfg.variable = harness::SweepVariable::n;
  cfg.grid = {500, 1000, 2000};
  cfg.repeats = 10;
  cfg.base_seed = 6006;
  const auto r = harness::run_sweep(cfg);
  const double secs = seconds_since(t0);
  bool decreasing = true;
  bool complete = true;
  std::string detail = "mean error";
  for (std::size_t g = 0; g < r.records.size(); ++g) {
    detail += " n=" + fmt("%g", r.records[g].value) + ": " + fmt("%.4f", r.records[g].mean_error) + " (sd " +
              fmt("%.4f", r.records[g].std_error) + ")";
    complete = complete && r.records[g].repeat_count == cfg.repeats;
    if (g > 0 && !(r.records[g].mean_error < r.records[g - 1].mean_error)) decreasing = false;
  }
  return {decreasing && complete && secs < 300.0, detail + "; runtime " + fmt("%.1f", secs) + " s (< 300 s)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& cli, const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "graph.tsv");
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) f << "q" << 6 * c + i << '\t' << "q" << 6 * c + j << "\t0.8\n";
    f << "q0\tq6\t0.2\nq7\tq13\t0.3\n";
  }
  const std::string d = dir.string() + "/";
  // Each command is run twice; {R} expands to the run index.
  const std::vector<std::pair<std::string, std::vector<std::string>>> cmds{
      {"sweep --grid 150,250 --repeats 3 --seed 11 --no-timing --out " + d + "sweep{R}.csv --trials-out " + d +
           "trials{R}.csv",
       {"sweep{R}.csv", "trials{R}.csv"}},
      {"sweep --variable delta --grid 0,0.3 --n 120 --repeats 2 --seed 5 --mode exact --no-timing --out " + d +
           "delta{R}.csv",
       {"delta{R}.csv"}},
      {"generate --n 80 --seed 9 --out " + d + "adj{R}.csv --theta-out " + d + "theta{R}.csv",
       {"adj{R}.csv", "theta{R}.csv"}},
      {"recover --in " + d + "adj0.csv --k 3 --seed 4 --out " + d + "hat{R}.csv", {"hat{R}.csv"}},
      {"ppi --in " + d + "graph.tsv --k 3 --seed 2 --out " + d + "cx{R}.txt --theta-out " + d + "ppi_theta{R}.csv",
       {"cx{R}.txt", "ppi_theta{R}.csv"}},
  };
  auto expand = [](std::string s, int r) {
    for (std::size_t pos; (pos = s.find("{R}")) != std::string::npos;) s.replace(pos, 3, std::to_string(r));
    return s;
  };
  int identical = 0;
  int compared = 0;
  for (const auto& [cmd, outputs] : cmds) {
    for (int r = 0; r < 2; ++r) {
      const std::string line = "\"" + cli + "\" " + expand(cmd, r) + " > /dev/null 2>&1";
      if (std::system(line.c_str()) != 0) return {false, "command failed: " + expand(cmd, r)};
    }
    for (const auto& o : outputs) {
      ++compared;
      const auto a = slurp(dir / expand(o, 0));
      const auto b = slurp(dir / expand(o, 1));
      identical += !a.empty() && a == b;
    }
  }
  return {identical == compared,
          std::to_string(identical) + "/" + std::to_string(compared) + " output files byte-identical across reruns"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <splp-binary> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path scratch = argv[2];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"noiseless exact recovery", noiseless_exact_recovery},
      {"LP near-pure error bound", near_pure_lp_bound},
      {"successive projection guarantee", spa_guarantee},
      {"simplex vs vertex enumeration", simplex_oracle},
      {"concentration of theta", concentration},
      {"bound calculator", bound_calculator},
      {"error decreases with n", trend},
      {"CLI determinism", [&] { return determinism(cli, scratch); }},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
