#include "photometrix/core.hpp"
#include "photometrix/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace photometrix {

namespace {

constexpr int kFactorialTable = 8192;

double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(kFactorialTable);
    for (int i = 0; i < kFactorialTable; ++i) t[i] = std::lgamma(i + 1.0);
    return t;
  }();
  return n < kFactorialTable ? table[n] : std::lgamma(n + 1.0);
}

double log_choose(int n, int k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

struct SignedLog {
  double log_mag;
  int sign;
};

// Terms below the largest by more than this many e-folds cannot move a
// double-precision sum.
constexpr double kNegligible = 80.0;

// Largest tolerated ratio of sum |terms| to |sum| in the direct expansion.
constexpr double kMaxCondition = 1e3;

struct DirectSum {
  double value = 0.0;
  double condition = 0.0;
};

DirectSum sum_descending(std::vector<SignedLog>& terms) {
  if (terms.empty()) return {0.0, 1.0};
  std::sort(terms.begin(), terms.end(),
            [](const SignedLog& x, const SignedLog& y) { return x.log_mag > y.log_mag; });
  const double top = terms.front().log_mag;
  long double acc = 0.0L;
  long double mag = 0.0L;
  for (const auto& t : terms) {
    if (t.log_mag < top - kNegligible) break;
    const long double v = std::exp(static_cast<long double>(t.log_mag - top));
    acc += t.sign * v;
    mag += v;
  }
  const double value = static_cast<double>(acc * std::exp(static_cast<long double>(top)));
  const double condition = acc == 0.0L ? std::numeric_limits<double>::infinity()
                                       : static_cast<double>(mag / std::abs(acc));
  return {value, condition};
}

// Adds sign * coeff * c^pa * s^pb in log form; skips exact zeros.
void push_power_term(std::vector<SignedLog>& out, double log_coeff, int sign, int pa, int pb,
                     double log_c, int sign_c, double log_s, int sign_s) {
  if (pa < 0 || pb < 0) return;
  double lm = log_coeff;
  if (pa > 0) {
    if (sign_c == 0) return;
    lm += pa * log_c;
    if (sign_c < 0 && (pa & 1)) sign = -sign;
  }
  if (pb > 0) {
    if (sign_s == 0) return;
    lm += pb * log_s;
    if (sign_s < 0 && (pb & 1)) sign = -sign;
  }
  out.push_back({lm, sign});
}

// <k-q, m+q| U |k, m> = i^q sqrt((k-q)!(m+q)!/(k! m!)) *
//   sum_j C(m,j) C(k,j+q) (-1)^j cos^{k+m-2j-q} sin^{2j+q}.
// Cheap when few terms matter (small angles), but the alternating sum
// cancels badly at large photon numbers, so the caller checks the condition.
std::optional<BeamsplitterAmplitude> direct_amplitude(int k, int m, int q, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const int sign_c = (c > 0) - (c < 0);
  const int sign_s = (s > 0) - (s < 0);
  const double log_c = sign_c ? std::log(std::abs(c)) : 0.0;
  const double log_s = sign_s ? std::log(std::abs(s)) : 0.0;
  const double log_norm = 0.5 * (log_factorial(m + q) + log_factorial(k - q) - log_factorial(m) -
                                 log_factorial(k));

  std::vector<SignedLog> value_terms;
  std::vector<SignedLog> deriv_terms;
  const int j_lo = std::max(0, -q);
  const int j_hi = std::min(m, k - q);
  // |term_j| is log-concave in j, so once the terms fall well below the
  // running maximum on the far side of the peak the rest can be skipped. The
  // window leaves room for the derivative's extra factors of p / tan and p tan.
  const bool interior = sign_c != 0 && sign_s != 0;
  const double window = kNegligible + std::log(k + m + 1.0) + std::abs(log_s - log_c);
  double peak = -std::numeric_limits<double>::infinity();
  for (int j = j_lo; j <= j_hi; ++j) {
    const double log_coeff = log_norm + log_choose(m, j) + log_choose(k, j + q);
    const int sign = (j & 1) ? -1 : 1;
    const int pa = k + m - 2 * j - q;
    const int pb = 2 * j + q;
    if (interior) {
      const double lm = log_coeff + pa * log_c + pb * log_s;
      if (lm > peak) {
        peak = lm;
      } else if (lm < peak - window) {
        break;
      }
    }
    push_power_term(value_terms, log_coeff, sign, pa, pb, log_c, sign_c, log_s, sign_s);
    // d/dtheta c^pa s^pb = -pa c^{pa-1} s^{pb+1} + pb c^{pa+1} s^{pb-1}
    if (pa > 0)
      push_power_term(deriv_terms, log_coeff + std::log(static_cast<double>(pa)), -sign, pa - 1,
                      pb + 1, log_c, sign_c, log_s, sign_s);
    if (pb > 0)
      push_power_term(deriv_terms, log_coeff + std::log(static_cast<double>(pb)), sign, pa + 1,
                      pb - 1, log_c, sign_c, log_s, sign_s);
  }
  const DirectSum v = sum_descending(value_terms);
  const DirectSum d = sum_descending(deriv_terms);
  if (v.condition > kMaxCondition || d.condition > kMaxCondition) return std::nullopt;
  return BeamsplitterAmplitude{v.value, d.value};
}

// Value carried as mantissa * exp(log_scale) so that large polynomial
// values neither overflow nor lose their sign.
struct Scaled {
  double mantissa = 0.0;
  double log_scale = 0.0;
};

// P_n^{(a,b)}(x) by the forward three-term recurrence, rescaled on the fly.
Scaled jacobi(int n, int a, int b, double x) {
  constexpr double kBig = 1e200;
  double p_prev = 1.0;
  if (n == 0) return {1.0, 0.0};
  double p = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
  double log_scale = 0.0;
  for (int i = 2; i <= n; ++i) {
    const double s = 2.0 * i + a + b;
    const double c0 = 2.0 * i * (i + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * x + static_cast<double>(a) * a - static_cast<double>(b) * b);
    const double c2 = 2.0 * (i + a - 1.0) * (i + b - 1.0) * s;
    const double next = (c1 * p - c2 * p_prev) / c0;
    p_prev = p;
    p = next;
    if (std::abs(p) > kBig) {
      p /= kBig;
      p_prev /= kBig;
      log_scale += std::log(kBig);
    }
  }
  return {p, log_scale};
}

// sign * exp(log_coeff) * s^pa * c^pb * poly, with exact zeros for vanishing
// powers of s or c.
double assemble(double log_coeff, int pa, int pb, double s, double c, const Scaled& poly) {
  if (poly.mantissa == 0.0) return 0.0;
  if ((pa > 0 && s == 0.0) || (pb > 0 && c == 0.0)) return 0.0;
  double lm = log_coeff + poly.log_scale + std::log(std::abs(poly.mantissa));
  int sign = poly.mantissa < 0 ? -1 : 1;
  if (pa > 0) {
    lm += pa * std::log(std::abs(s));
    if (s < 0 && (pa & 1)) sign = -sign;
  }
  if (pb > 0) {
    lm += pb * std::log(std::abs(c));
    if (c < 0 && (pb & 1)) sign = -sign;
  }
  return sign * std::exp(lm);
}

}  // namespace

// The amplitude is the rotation matrix element d^j_{m'm}(2 theta) with
// j = (k+m)/2, m = (k-m)/2 and m' = m - q (up to the phase i^q), written
// through a Jacobi polynomial:
//   d = (-1)^lambda sqrt(C(2j-n, n+a) / C(n+b, b)) sin^a cos^b P_n^{(a,b)}(cos 2 theta).
BeamsplitterAmplitude beamsplitter_amplitude(int k, int m, int q, double theta) {
  if (k < 0 || m < 0) throw IndexOutOfRange("photon numbers must be >= 0");
  if (q < -m || q > k)
    throw IndexOutOfRange("transfer q=" + std::to_string(q) + " outside [-" + std::to_string(m) +
                          ", " + std::to_string(k) + "]");
  if (auto direct = direct_amplitude(k, m, q, theta)) return *direct;

  // Occupations j+m, j-m, j+m', j-m'.
  const int in_a = k;
  const int in_b = m;
  const int out_a = k - q;
  const int out_b = m + q;
  int n = in_a;
  int a = out_a - in_a;
  int lambda = a;
  if (in_b < n) {
    n = in_b;
    a = in_a - out_a;
    lambda = 0;
  }
  if (out_a < n) {
    n = out_a;
    a = in_a - out_a;
    lambda = 0;
  }
  if (out_b < n) {
    n = out_b;
    a = out_a - in_a;
    lambda = a;
  }
  const int two_j = k + m;
  const int b = two_j - 2 * n - a;
  const double sign = (lambda & 1) ? -1.0 : 1.0;
  const double log_norm = 0.5 * (log_choose(two_j - n, n + a) - log_choose(n + b, b));

  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double x = std::cos(2.0 * theta);
  const Scaled p = jacobi(n, a, b, x);

  BeamsplitterAmplitude out;
  out.value = sign * assemble(log_norm, a, b, s, c, p);
  // d/dtheta [s^a c^b P_n(cos 2 theta)], using P_n' = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}.
  double d = 0.0;
  if (a > 0) d += assemble(log_norm + std::log(static_cast<double>(a)), a - 1, b + 1, s, c, p);
  if (b > 0) d -= assemble(log_norm + std::log(static_cast<double>(b)), a + 1, b - 1, s, c, p);
  if (n > 0) {
    const Scaled dp = jacobi(n - 1, a + 1, b + 1, x);
    d -= assemble(log_norm + std::log(2.0 * (n + a + b + 1.0)), a + 1, b + 1, s, c, dp);
  }
  out.dtheta = sign * d;
  return out;
}

double beamsplitter_prob(int k, int m, int q, double theta) {
  const double a = beamsplitter_amplitude(k, m, q, theta).value;
  return a * a;
}

}  // namespace photometrix
