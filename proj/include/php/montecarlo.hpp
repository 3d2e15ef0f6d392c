#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "php/model.hpp"
#include "php/stats.hpp"

namespace php {

// Which reference point the contact distance is measured from: an
// independent uniform location (R1) or the center of a hole added at the
// origin (R2, Palm conditioning on the hole process).
enum class RefCase { kR1, kR2 };

struct WindowPolicy {
  enum class Kind { kAdaptive, kFixed };

  Kind kind = Kind::kAdaptive;
  // Adaptive: initial radius sized so the expected survivor count makes an
  // empty window about this unlikely (first-moment heuristic; growth covers
  // the remainder).
  double tail_prob = 1e-6;
  // Fixed: initial window radius [m].
  double fixed_radius = 0.0;

  void validate() const;
};

struct SimConfig {
  long trials = 10000;
  std::uint64_t master_seed = 1;
  double r_max = 0.0;  // largest radius of interest [m]
  RefCase ref_case = RefCase::kR1;
  WindowPolicy window{};
  double confidence = 0.99;  // CI level used by estimate_cdf consumers
  double growth_cap = 10.0;  // saturation once the window exceeds cap * initial

  void validate() const;
};

// A trial's window grew past the cap without finding a survivor.
class SaturationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Initial simulation window radius for the given policy/case [m].
double initial_window_radius(const ModelParams& params, const WindowPolicy& policy,
                             RefCase ref_case);

// One trial: exact contact distance from the reference point to the nearest
// surviving baseline point. Window doubles (PPP annulus increments, full
// re-carve) until a survivor exists; the nearest survivor is then exact
// because any point beyond the window is farther than any point inside it.
// Deterministic in (params, cfg.master_seed, trial_index) only.
double simulate_r1(const ModelParams& params, const SimConfig& cfg, long trial_index);
double simulate_r2(const ModelParams& params, const SimConfig& cfg, long trial_index);

struct TrialRunResult {
  std::vector<double> samples;  // one per non-saturated trial, in trial order
  long saturated = 0;
};

// Runs cfg.trials trials, statically strided over threads into per-trial
// slots, so results are identical for any thread count. threads <= 0 picks
// hardware concurrency. Saturated trials are counted, not fatal.
TrialRunResult run_trials(const ModelParams& params, const SimConfig& cfg,
                          int threads = 1);

struct EmpiricalCdf {
  std::vector<double> r;
  std::vector<double> estimate;  // P(sample < r), strict inequality
  std::vector<double> ci_low;    // Wilson two-sided bounds
  std::vector<double> ci_high;
  long trials = 0;
  double confidence = 0.0;
};

EmpiricalCdf estimate_cdf(const std::vector<double>& samples,
                          const std::vector<double>& grid, double confidence);

}  // namespace php
