#include "photometrix/numerics.hpp"

#include "photometrix/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace photometrix::numerics {

namespace {
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt 5 - 1) / 2
}

Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                           double tol, int max_iter) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol * std::max(1.0, std::abs(a) + std::abs(b));
       ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Maximum{c, fc} : Maximum{d, fd};
}

Maximum scan_then_golden_max(const std::function<double(double)>& f, double lo, double hi,
                             int n_scan, double tol) {
  n_scan = std::max(n_scan, 3);
  std::vector<double> xs = linspace(lo, hi, n_scan);
  std::vector<double> ys(xs.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ys[i] = f(xs[i]);
    if (ys[i] > ys[best]) best = i;
  }
  const double a = xs[best == 0 ? 0 : best - 1];
  const double b = xs[std::min(best + 1, xs.size() - 1)];
  Maximum refined = golden_section_max(f, a, b, tol);
  if (ys[best] > refined.value) return {xs[best], ys[best]};
  return refined;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
              int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw InvalidArgument("bisect: no sign change on the interval");
  for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out = linspace(std::log10(lo), std::log10(hi), n);
  for (double& v : out) v = std::pow(10.0, v);
  if (!out.empty()) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace photometrix::numerics
