#pragma once

#include <functional>
#include <vector>

namespace photometrix::numerics {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi].
Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                           double tol = 1e-10, int max_iter = 500);

// Coarse scan of n_scan points on [lo, hi] (endpoints included), then a
// golden-section refinement on the bracket around the best sample.
Maximum scan_then_golden_max(const std::function<double(double)>& f, double lo, double hi,
                             int n_scan = 64, double tol = 1e-10);

// Bisection for a sign change of f on [lo, hi]. f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
              int max_iter = 200);

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> logspace(double lo, double hi, int n);

// log of the binomial coefficient C(n, k); -inf outside 0 <= k <= n.
double log_binomial(int n, int k);

}  // namespace photometrix::numerics
