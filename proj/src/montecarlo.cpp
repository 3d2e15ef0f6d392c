#include "php/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "php/bounds.hpp"

namespace php {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// Nearest surviving baseline point, squared; +inf when none survive.
// Checks every baseline point against every hole (closed-ball exclusion):
// after a window growth new holes can reach old points near the rim, so a
// full re-carve is the simple correct choice.
double nearest_survivor_sq(const std::vector<Point>& base,
                           const std::vector<Point>& holes, double d_hole) {
  const double d2 = d_hole * d_hole;
  const Point origin{0.0, 0.0};
  double best = std::numeric_limits<double>::infinity();
  for (const Point& x : base) {
    const double dist2 = squared_distance(x, origin);
    if (dist2 >= best) continue;
    bool survives = true;
    for (const Point& y : holes) {
      if (squared_distance(x, y) <= d2) {
        survives = false;
        break;
      }
    }
    if (survives) best = dist2;
  }
  return best;
}

double run_single(const ModelParams& p, const SimConfig& cfg, SplitMix64& rng,
                  bool origin_hole) {
  const double r0 = initial_window_radius(p, cfg.window, cfg.ref_case);
  double rw = r0;
  std::vector<Point> base = sample_disk(p.lambda2, rw, rng);
  std::vector<Point> holes = sample_disk(p.lambda1, rw + p.d_hole, rng);
  if (origin_hole) holes.push_back({0.0, 0.0});
  for (;;) {
    const double best = nearest_survivor_sq(base, holes, p.d_hole);
    if (std::isfinite(best)) return std::sqrt(best);
    const double next = 2.0 * rw;
    if (next > cfg.growth_cap * r0) {
      std::ostringstream msg;
      msg << "window saturated at radius " << rw << " m (cap " << cfg.growth_cap
          << " x " << r0 << " m) without a surviving point";
      throw SaturationError(msg.str());
    }
    // PPP restriction property: the enlarged window equals the old one plus
    // an independent PPP on the annulus, so growth preserves the law.
    auto more_base = sample_annulus(p.lambda2, rw, next, rng);
    base.insert(base.end(), more_base.begin(), more_base.end());
    auto more_holes = sample_annulus(p.lambda1, rw + p.d_hole, next + p.d_hole, rng);
    holes.insert(holes.end(), more_holes.begin(), more_holes.end());
    rw = next;
  }
}

}  // namespace

void WindowPolicy::validate() const {
  if (kind == Kind::kAdaptive) {
    require(tail_prob > 0.0 && tail_prob < 1.0,
            "WindowPolicy.tail_prob must be in (0, 1)");
  } else {
    require(std::isfinite(fixed_radius) && fixed_radius > 0.0,
            "WindowPolicy.fixed_radius must be finite and > 0");
  }
}

void SimConfig::validate() const {
  require(trials >= 1, "SimConfig.trials must be >= 1");
  require(std::isfinite(r_max) && r_max > 0.0, "SimConfig.r_max must be > 0");
  require(confidence > 0.0 && confidence < 1.0,
          "SimConfig.confidence must be in (0, 1)");
  require(std::isfinite(growth_cap) && growth_cap >= 1.0,
          "SimConfig.growth_cap must be >= 1");
  window.validate();
}

double initial_window_radius(const ModelParams& params, const WindowPolicy& policy,
                             RefCase ref_case) {
  params.validate();
  policy.validate();
  if (policy.kind == WindowPolicy::Kind::kFixed) return policy.fixed_radius;
  const double lam_eq = equivalent_density(params);
  require(lam_eq > 0.0,
          "adaptive window policy requires a positive thinned density "
          "(lambda2 > 0 and lambda1*pi*D^2 not astronomically large)");
  const double area_term = std::log(1.0 / policy.tail_prob) / (kPi * lam_eq);
  // R2 measures from a hole center: no survivor can sit closer than D, so
  // budget the expected count on the annulus beyond D instead.
  const double d2 = ref_case == RefCase::kR2 ? params.d_hole * params.d_hole : 0.0;
  return std::sqrt(d2 + area_term);
}

double simulate_r1(const ModelParams& params, const SimConfig& cfg, long trial_index) {
  params.validate();
  SplitMix64 rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(trial_index)));
  return run_single(params, cfg, rng, /*origin_hole=*/false);
}

double simulate_r2(const ModelParams& params, const SimConfig& cfg, long trial_index) {
  params.validate();
  SplitMix64 rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(trial_index)));
  return run_single(params, cfg, rng, /*origin_hole=*/true);
}

TrialRunResult run_trials(const ModelParams& params, const SimConfig& cfg,
                          int threads) {
  params.validate();
  cfg.validate();
  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cfg.trials));

  const double kUnset = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> slots(static_cast<std::size_t>(cfg.trials), kUnset);
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&](unsigned stride_start) {
    for (long i = static_cast<long>(stride_start); i < cfg.trials;
         i += static_cast<long>(n_threads)) {
      try {
        slots[static_cast<std::size_t>(i)] =
            cfg.ref_case == RefCase::kR1 ? simulate_r1(params, cfg, i)
                                         : simulate_r2(params, cfg, i);
      } catch (const SaturationError&) {
        // leave the slot unset; counted below
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  TrialRunResult result;
  result.samples.reserve(slots.size());
  for (double v : slots) {
    if (std::isnan(v)) {
      ++result.saturated;
    } else {
      result.samples.push_back(v);
    }
  }
  return result;
}

EmpiricalCdf estimate_cdf(const std::vector<double>& samples,
                          const std::vector<double>& grid, double confidence) {
  require(!samples.empty(), "estimate_cdf: samples must be nonempty");
  require(!grid.empty(), "estimate_cdf: grid must be nonempty");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  EmpiricalCdf cdf;
  cdf.r = grid;
  cdf.trials = static_cast<long>(samples.size());
  cdf.confidence = confidence;
  cdf.estimate.reserve(grid.size());
  cdf.ci_low.reserve(grid.size());
  cdf.ci_high.reserve(grid.size());
  for (double r : grid) {
    const long successes = static_cast<long>(
        std::lower_bound(sorted.begin(), sorted.end(), r) - sorted.begin());
    const Interval ci = wilson_interval(successes, cdf.trials, confidence);
    cdf.estimate.push_back(static_cast<double>(successes) /
                           static_cast<double>(cdf.trials));
    cdf.ci_low.push_back(ci.low);
    cdf.ci_high.push_back(ci.high);
  }
  return cdf;
}

}  // namespace php
