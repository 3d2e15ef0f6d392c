#pragma once

namespace php {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Standard normal quantile, accurate to a few ulp across (0, 1).
// Hastings rational initial guess refined by Halley iterations on erfc.
double normal_quantile(double p);

// Two-sided Wilson score interval for a binomial proportion at the given
// confidence level (e.g. 0.99). Always a subset of [0, 1].
Interval wilson_interval(long successes, long trials, double confidence);

// Dvoretzky-Kiefer-Wolfowitz band half-width for an n-sample empirical CDF:
// sup_x |F_n(x) - F(x)| <= eps with probability >= confidence.
double dkw_epsilon(long n, double confidence);

}  // namespace php
