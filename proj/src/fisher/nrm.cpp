#include "photometrix/errors.hpp"
#include "photometrix/fisher.hpp"
#include "photometrix/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace photometrix {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One loss branch feeding an observed outcome: weight w, surviving photons
// (k, m) before the interaction and net transfer q.
struct Branch {
  double w;
  int k;
  int m;
  int q;
};

// Accumulates P and dP/dg of an outcome over its branches at theta = g t / 2.
std::pair<double, double> outcome_prob(const std::vector<Branch>& branches, double theta, double t) {
  double p = 0.0;
  double dp = 0.0;
  for (const auto& b : branches) {
    const BeamsplitterAmplitude a = beamsplitter_amplitude(b.k, b.m, b.q, theta);
    p += b.w * a.value * a.value;
    dp += b.w * a.value * a.dtheta * t;  // d/dg = (t/2) d/dtheta, times 2 A A'
  }
  return {p, dp};
}

// g -> 0 limit of (dP/dg)^2 / P. An outcome reachable without transfer
// keeps a finite probability and zero slope; otherwise the |q| = 1 branches
// give P ~ theta^2 sum w A'^2 and the ratio tends to t^2 sum w A'(0)^2.
double outcome_zero_limit(const std::vector<Branch>& branches, double t) {
  double s = 0.0;
  for (const auto& b : branches) {
    if (b.w <= 0.0) continue;
    if (b.q == 0) return 0.0;
    if (std::abs(b.q) == 1) {
      const double d = beamsplitter_amplitude(b.k, b.m, b.q, 0.0).dtheta;
      s += b.w * d * d;
    }
  }
  return t * t * s;
}

double fisher_term(double p, double dp) {
  if (p <= 0.0) return 0.0;
  return dp * dp / p;
}

// Branches of every observed outcome (a, b) for the lossy |m, l>.
std::map<std::pair<int, int>, std::vector<Branch>> outcome_branches(int m, int l, double mu) {
  if (m < 0 || l < 0) throw InvalidArgument("photon numbers must be >= 0");
  const PhotonPMF pa = binomial_loss_pmf(m, mu);
  const PhotonPMF pb = binomial_loss_pmf(l, mu);
  std::map<std::pair<int, int>, std::vector<Branch>> out;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= l; ++j) {
      const double w = pa[i] * pb[j];
      if (w == 0.0) continue;
      const int k = m - i;
      const int r = l - j;
      for (int q = -r; q <= k; ++q) out[{k - q, r + q}].push_back({w, k, r, q});
    }
  }
  return out;
}

}  // namespace

std::vector<NrmOutcome> nrm_outcomes(int m, int l, double mu, double t, double g) {
  const double theta = 0.5 * g * t;
  std::vector<NrmOutcome> out;
  for (const auto& [ab, branches] : outcome_branches(m, l, mu)) {
    const auto [p, dp] = outcome_prob(branches, theta, t);
    out.push_back({ab.first, ab.second, p, dp});
  }
  return out;
}

double cfi_nrm(int m, int l, double mu, double t, double g) {
  if (t == 0.0) return 0.0;
  const auto outcomes = outcome_branches(m, l, mu);
  double f = 0.0;
  if (g == 0.0) {
    for (const auto& [ab, branches] : outcomes) f += outcome_zero_limit(branches, t);
    return f;
  }
  const double theta = 0.5 * g * t;
  for (const auto& [ab, branches] : outcomes) {
    const auto [p, dp] = outcome_prob(branches, theta, t);
    f += fisher_term(p, dp);
  }
  return f;
}

FisherResult cfi_nrm(int m, int l, const LossChannel& channel, double g) {
  FisherResult r;
  r.value = cfi_nrm(m, l, channel.mu(), channel.t(), g);
  r.kind = FisherKind::CFI;
  r.probe = probe::FockPair{m, l};
  r.channel = channel;
  r.g = g;
  return r;
}

double cfi_nrm_zero_closed_form(int m, int l, double mu, double t) {
  const double s = 1.0 - mu;
  return t * t * (std::pow(s, m + 1) * (m + 1) * l + std::pow(s, l + 1) * (l + 1) * m);
}

CouplingOptimum optimize_cfi_nrm(int m, int l, double mu, double t, double tol) {
  if (!(t > 0.0)) throw InvalidArgument("interrogation time must be > 0");
  const double eps = 1e-9;
  auto f = [&](double phase) { return cfi_nrm(m, l, mu, t, phase / t); };
  const numerics::Maximum best = numerics::scan_then_golden_max(f, eps, kPi - eps, 64, tol);
  return {best.x / t, best.value};
}

namespace {

double cfi_nrm_finite_n(double n_abs, double scaled_phase, const NrmPoissonOptions& opts, int n) {
  const double t = n_abs / (2.0 * opts.gamma * n);
  const double mu = -std::expm1(-opts.gamma * t);
  int n_loss_max = opts.n_loss_max >= 0
                       ? opts.n_loss_max
                       : std::max(4, static_cast<int>(std::ceil(4.0 * n_abs)));
  n_loss_max = std::min(n_loss_max, 2 * n);
  const PhotonPMF p = binomial_loss_pmf(n, mu);
  const double theta = 0.5 * scaled_phase / n;

  double f = 0.0;
  for (int n_loss = 0; n_loss <= n_loss_max; ++n_loss) {
    for (int q = -opts.q_max; q <= opts.q_max; ++q) {
      std::vector<Branch> branches;
      for (int l = std::max(0, n_loss - n); l <= std::min(n_loss, n); ++l) {
        const int k = n - l;
        const int m = n + l - n_loss;
        const int transfer = q - l;
        if (transfer < -m || transfer > k) continue;
        branches.push_back({p[l] * p[n_loss - l], k, m, transfer});
      }
      if (branches.empty()) continue;
      if (scaled_phase == 0.0) {
        f += outcome_zero_limit(branches, t);
      } else {
        const auto [pr, dp] = outcome_prob(branches, theta, t);
        f += fisher_term(pr, dp);
      }
    }
  }
  return f;
}

}  // namespace

double cfi_nrm_poisson(double n_abs, double scaled_phase, const NrmPoissonOptions& opts) {
  if (!(n_abs >= 0.0)) throw InvalidArgument("absorbed photon number must be >= 0");
  if (opts.n_per_mode < 1 || opts.q_max < 0) throw InvalidArgument("invalid truncation options");
  if (n_abs == 0.0) return 0.0;
  const int n = opts.n_per_mode;
  const double coarse = cfi_nrm_finite_n(n_abs, scaled_phase, opts, n);
  if (!opts.extrapolate) return coarse;
  // Leading finite-n error is O(1/n).
  return 2.0 * cfi_nrm_finite_n(n_abs, scaled_phase, opts, 2 * n) - coarse;
}

CouplingOptimum optimize_cfi_nrm_poisson(double n_abs, const NrmPoissonOptions& opts,
                                         double scaled_phase_max) {
  // Locate the maximum at fixed n; the extrapolation moves the value, not
  // the location, at this resolution.
  NrmPoissonOptions fixed = opts;
  fixed.extrapolate = false;
  auto f = [&](double x) { return cfi_nrm_poisson(n_abs, x, fixed); };
  const numerics::Maximum best =
      numerics::scan_then_golden_max(f, 1e-9, scaled_phase_max, 32, 1e-6);
  // Report the coupling itself: x = g t n with t = N_abs / (2 gamma n).
  const double t = n_abs / (2.0 * opts.gamma * opts.n_per_mode);
  return {t > 0.0 ? best.x / (t * opts.n_per_mode) : 0.0,
          opts.extrapolate ? cfi_nrm_poisson(n_abs, best.x, opts) : best.value};
}

}  // namespace photometrix
