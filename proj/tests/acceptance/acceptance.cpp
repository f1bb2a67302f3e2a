// Acceptance suite: one PASS/FAIL line per primary criterion.

#include "photometrix/core.hpp"
#include "photometrix/dicke.hpp"
#include "photometrix/fisher.hpp"
#include "photometrix/fock_space.hpp"
#include "photometrix/numerics.hpp"
#include "photometrix/protocol.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace photometrix;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Crossing of the N = 2 twin-Fock precision with the classical bound
// (T = 10, gamma = 1, ideal devices), from a dense scan of N_abs refined
// by bisection before the main build.
constexpr double kCrossingN2 = 0.7327828637771155;

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int id, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s %2d  %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

void criterion1() {
  Timer clock;
  const PrecisionResult r = optimize_nu(probe::Coherent{1e4}, Budget{10.0, 1.0, 0.0, 1.0}, 1.0);
  const double s = clock.seconds();
  report(1, rel(r.accumulated, 10.0) <= 0.01 && s < 1.0,
         fmt("coherent N=1e4: dg^-2 = %.6f (target 10 +- 1%%), %.3f s", r.accumulated, s));
}

void criterion2() {
  Timer clock;
  double worst = 0.0;
  for (double mu : {0.0, 0.1, 0.3})
    for (int m = 0; m <= 8; ++m)
      for (int l = 0; m + l <= 8; ++l) {
        if (m + l == 0) continue;
        const TwoModeBasis basis(m + l);
        const double oracle = spectral_qfi_oracle(
            apply_symmetric_loss(basis, projector(fock_ket(basis, m, l)), mu), basis, 1.0);
        const double scale = std::max(oracle, 1e-300);
        worst = std::max(worst, std::abs(qfi_fock_pair(m, l, mu, 1.0) - oracle) / scale);
        if (m == l) worst = std::max(worst, std::abs(qfi_tfs_exact(m, mu, 1.0) - oracle) / scale);
      }
  const double s = clock.seconds();
  report(2, worst <= 1e-8 && s < 10.0,
         fmt("spectral oracle, m+l <= 8: worst relative error %.2e, %.3f s", worst, s));
}

void criterion3() {
  double worst = 0.0;
  for (int i = 0; i <= 9; ++i) {
    const double mu = 0.1 * i;
    const double keep = 1.0 - mu;
    for (int n = 1; n <= 15; ++n) {
      const double tfs = 2.0 * std::pow(keep, n + 1) * (n + 1) * n;
      worst = std::max(worst, rel(cfi_nrm(n, n, mu, 1.0, 0.0), tfs));
    }
    for (int m = 0; m <= 15; ++m)
      for (int l = 0; l <= 15; ++l) {
        const double gen = std::pow(keep, m + 1) * (m + 1) * l + std::pow(keep, l + 1) * (l + 1) * m;
        if (gen == 0.0) {
          worst = std::max(worst, std::abs(cfi_nrm(m, l, mu, 1.0, 0.0)));
          continue;
        }
        worst = std::max(worst, rel(cfi_nrm(m, l, mu, 1.0, 0.0), gen));
      }
  }
  report(3, worst <= 1e-8, fmt("g -> 0 closed forms, n <= 15: worst relative error %.2e", worst));
}

void criterion4() {
  double worst = 0.0;
  for (double n_abs : {0.5, 1.0, 2.0, 4.0}) {
    const int n = 10000;
    const double t = n_abs / (2.0 * n);
    worst = std::max(worst, rel(qfi_tfs_exact(n, -std::expm1(-t), t), qfi_tfs_poisson(n_abs)));
  }
  const double large = qfi_tfs_poisson(50.0) * 2.0 / 50.0;
  const double small = qfi_tfs_poisson(0.1) * 2.0 / 0.01;
  const bool ok = worst <= 0.01 && large >= 0.9 && large <= 1.1 && small >= 0.9 && small <= 1.1;
  report(4, ok,
         fmt("finite n=1e4 vs G: worst %.2e; G(50)*2/50 = %.4f; G(0.1)*2/0.01 = %.4f", worst, large,
             small));
}

void criterion5() {
  const double at_one = qfi_noon_poisson(1.0);
  const double ratio = qfi_noon_poisson(1e-3) / qfi_tfs_poisson(1e-3);
  report(5, std::abs(at_one - std::exp(-1.0)) <= 1e-12 && rel(ratio, 2.0) <= 0.02,
         fmt("NOON(1) - 1/e = %.1e; NOON/TFS at 1e-3 = %.5f", at_one - std::exp(-1.0), ratio));
}

void criterion6() {
  const SqueezedOptimum big = optimize_squeezed(100.0);
  const SqueezedOptimum tiny = optimize_squeezed(0.01);
  const bool ok = rel(big.value, 100.0) <= 0.05 && rel(tiny.value, 1e-4) <= 0.10;
  report(6, ok,
         fmt("squeezed optimum: F(100)/100 = %.4f (need 0.95..1.05); F(0.01)/1e-4 = %.4f (need 0.9..1.1)",
             big.value / 100.0, tiny.value / 1e-4));
}

void criterion7() {
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (double mu : {0.0, 0.1, 0.3})
      worst = std::max(worst, rel(cfi_of_L(n, mu, 1.0, 0.0), qfi_tfs_exact(n, mu, 1.0)));
  report(7, worst <= 1e-6, fmt("optimal observable vs QFI, n <= 4: worst relative error %.2e", worst));
}

void criterion8() {
  const double ratio = advantage_ratio(BoundaryFamily::TfsQfi, 8, 1.0, 0.95, 0.05);
  auto excess = [](double n_abs_value) {
    const Budget b{10.0, n_abs_value, 0.0, 1.0};
    return optimize_nu(probe::TwinFock{1}, b, 1.0).accumulated / classical_bound(10.0, 1.0, n_abs_value) - 1.0;
  };
  const double crossing = numerics::bisect(excess, 0.3, 1.5, 1e-10);
  report(8, ratio > 1.0 && std::abs(crossing - kCrossingN2) <= 1e-4,
         fmt("N=8 ratio at (0.95, 0.05) = %.4f; N=2 crossing N_abs* = %.10f (golden %.10f)", ratio,
             crossing, kCrossingN2));
}

void criterion9() {
  Timer clock;
  dicke::DickeConfig c;
  c.n_atoms = 40;
  c.coupling = 2.0 * kPi * 170e6;
  c.n_target = 8.0;
  const double kappa = 2.0 * kPi * 52e6;
  const double tp = dicke::t_prep(c);
  const double tm = dicke::t_meas(c);
  const double eta = std::exp(-(tp + tm) * kappa);
  const double p1 = dicke::p_error(c, 8, 1);
  const double p2 = dicke::p_error(c, 8, 2);
  const double s = clock.seconds();
  const bool ok = std::abs(tp * 1e9 - 0.26) <= 0.005 && std::abs(tm / tp - 0.89) <= 0.01 &&
                  std::abs(eta - 0.85) <= 0.01 && std::abs(p1 - 0.04) <= 0.01 && p2 < 0.01 && s < 5.0;
  report(9, ok,
         fmt("t_prep = %.4f ns, t_meas/t_prep = %.4f, eta = %.4f, p_error = %.4f", tp * 1e9, tm / tp, eta,
             p1) +
             fmt(" / %.1e (2 rounds), %.3f s", p2, s));
}

void criterion10() {
  dicke::DickeConfig c;
  c.n_atoms = 50;
  const double t = dicke::peak_photon_time(c);
  const double peak = dicke::mean_photons(c, t) / 50.0;
  report(10, std::abs(peak - 0.8) <= 0.05, fmt("N_at=50: max mean photons / N_at = %.4f at t = %.4f", peak, t));
}

void criterion11() {
  double errs[3];
  int i = 0;
  for (double n : {1e2, 1e3, 1e4}) {
    const double st = dicke::switch_time(n);
    errs[i++] = std::abs(st - dicke::switch_time_formula(n)) / st;
  }
  report(11, errs[1] <= 0.10 && errs[0] > errs[1] && errs[1] > errs[2],
         fmt("mean-field vs formula: %.4f (N=1e2), %.4f (N=1e3), %.4f (N=1e4)", errs[0], errs[1], errs[2]));
}

void criterion12() {
  double worst_sum = 0.0;
  for (auto [k, m] : {std::pair{1, 0}, {3, 3}, {8, 5}, {40, 40}, {250, 240}, {1000, 1000}})
    for (double theta : {0.0, 1e-3, 0.2, 0.785, 1.3, kPi / 2, 2.5}) {
      double total = 0.0;
      for (int q = -m; q <= k; ++q) total += beamsplitter_prob(k, m, q, theta);
      worst_sum = std::max(worst_sum, std::abs(total - 1.0));
    }

  double worst_grad = 0.0;
  for (auto [m, l] : {std::pair{1, 1}, {2, 3}, {4, 4}, {6, 2}})
    for (double mu : {0.0, 0.2, 0.5})
      for (double g : {0.25, 1.0, 2.0}) {
        const double t = 0.8;
        const double h = 1e-6 * std::max(1.0, 1.0 / t);
        const auto mid = nrm_outcomes(m, l, mu, t, g);
        const auto up = nrm_outcomes(m, l, mu, t, g + h);
        const auto down = nrm_outcomes(m, l, mu, t, g - h);
        double scale = 0.0;
        for (const auto& o : mid) scale = std::max(scale, std::abs(o.dprob_dg));
        for (std::size_t i = 0; i < mid.size(); ++i) {
          const double fd = (up[i].prob - down[i].prob) / (2.0 * h);
          worst_grad = std::max(worst_grad, std::abs(mid[i].dprob_dg - fd) / scale);
        }
      }

  double worst_gap = -1.0;
  for (int m = 0; m <= 6; ++m)
    for (int l = 0; l <= 6; ++l) {
      if (m + l == 0) continue;
      for (double mu : {0.0, 0.1, 0.4, 0.8})
        for (double g : {0.0, 0.05, 0.5, 1.5, 3.0}) {
          const double q = qfi_fock_pair(m, l, mu, 1.0);
          worst_gap = std::max(worst_gap, (cfi_nrm(m, l, mu, 1.0, g) - q) / std::max(q, 1e-300));
        }
    }
  report(12, worst_sum <= 1e-10 && worst_grad <= 1e-6 && worst_gap <= 1e-12,
         fmt("unitarity %.1e; analytic vs FD gradient %.1e; max (F_C - F_Q)/F_Q = %.1e", worst_sum,
             worst_grad, worst_gap));
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {criterion1, criterion2, criterion3,  criterion4,
                                            criterion5, criterion6, criterion7,  criterion8,
                                            criterion9, criterion10, criterion11, criterion12};
  for (const auto& c : criteria) c();
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
