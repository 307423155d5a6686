#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "splp/lp.hpp"
#include "splp/mmsb.hpp"

namespace splp::harness {

enum class SweepVariable { n, k, alpha, delta };

std::string to_string(SweepVariable v);
/// Throws InvalidInput on an unknown name.
SweepVariable parse_sweep_variable(const std::string& name);

struct SweepConfig {
  SweepVariable variable = SweepVariable::n;
  std::vector<double> grid;
  std::size_t n = 5000;
  std::size_t k = 3;
  double alpha = 0.5;
  /// Off-diagonal weight for delta_blend.
  double delta = 0.0;
  /// Samples per averaged adjacency; empty means ⌈√n⌉ for each trial's n.
  std::optional<std::size_t> s;
  std::size_t repeats = 10;
  std::uint64_t base_seed = 0;
  lp::RecoveryMode mode = lp::RecoveryMode::spectral;
  /// Empty picks delta_blend when sweeping delta, diag_random otherwise.
  std::optional<mmsb::InteractionKind> b_kind;
  /// When false every recorded duration is zero, so output is a pure function
  /// of the config.
  bool record_timing = true;
  std::size_t threads = 1;

  /// Throws InvalidInput on an empty grid, repeats == 0, or a grid value
  /// outside the variable's domain.
  void validate() const;
};

struct TrialRecord {
  std::size_t grid_index = 0;
  double value = 0.0;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  /// "ok", "lp_failure" (some column not optimal; error still scored) or
  /// "error: <message>" (not scored).
  std::string status;
  double error = 0.0;
  double seconds = 0.0;
};

struct SweepRecord {
  std::string variable;
  double value = 0.0;
  /// Trials that produced an error score.
  std::size_t repeat_count = 0;
  double mean_error = 0.0;
  double std_error = 0.0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<TrialRecord> trials;
};

/// Trial r of grid point g uses seed derive_seed(base_seed, g, r). Trials are
/// independent, so the result does not depend on `threads`. Timing covers
/// recover_all only. Trial failures are recorded, never thrown.
SweepResult run_sweep(const SweepConfig& cfg);

/// Header variable,value,repeat_count,mean_error,std_error,mean_seconds,std_seconds.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);
/// Header grid_index,value,repeat,seed,status,error,seconds.
void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& trials);

}  // namespace splp::harness
