#include "photometrix/dicke.hpp"
#include "photometrix/errors.hpp"
#include "photometrix/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace photometrix::dicke {

namespace {

double pair_fisher(AcFisher kind, int m, int l, double mu, double t) {
  return kind == AcFisher::QFI ? qfi_fock_pair(m, l, mu, t) : cfi_nrm_zero_closed_form(m, l, mu, t);
}

// Interrogation time for the pair (m, l). Pairs that can absorb the budget
// stop once N_abs photons are absorbed on average; smaller pairs cannot reach
// it and run for the time that maximizes their information rate instead.
double pair_time(AcFisher kind, int m, int l, const Budget& b, double gamma, bool& unsaturable) {
  const int total = m + l;
  if (b.n_abs_max < total) return saturation_time(total, b.n_abs_max, gamma);
  unsaturable = true;
  auto rate = [&](double log_t) {
    const double t = std::exp(log_t);
    const double mu = 1.0 - b.eta * std::exp(-gamma * t);
    return pair_fisher(kind, m, l, mu, t) / (t + b.t_ext);
  };
  const double hi = std::log(max_interrogation_time(gamma));
  const numerics::Maximum best = numerics::scan_then_golden_max(rate, hi - 30.0, hi, 128, 1e-12);
  return std::exp(best.x);
}

}  // namespace

AcResult ac_precision(const PhotonPMF& q_in, const Budget& budget, double gamma,
                      const AcOptions& options) {
  budget.validate();
  if (!(gamma > 0.0)) throw InvalidArgument("loss rate must be > 0");
  PhotonPMF q = q_in;
  if (options.cutoff) {
    if (*options.cutoff < 0) throw InvalidArgument("cutoff must be >= 0");
    q = q.truncated(static_cast<std::size_t>(*options.cutoff));
  }
  const double kept = q.total();
  if (!(kept > 0.0)) throw InvalidArgument("photon distribution carries no mass");
  q = q.renormalized();
  const double dead_time = options.dead_time.value_or(budget.t_ext);
  if (!(dead_time >= 0.0)) throw InvalidArgument("dead time must be >= 0");

  AcResult out;
  out.captured_mass = kept * kept;
  const int k_max = static_cast<int>(q.k_max());
  long double fisher = 0.0L;
  long double time = 0.0L;
  for (int m = 0; m <= k_max; ++m) {
    if (q[m] == 0.0) continue;
    for (int l = 0; l <= k_max; ++l) {
      const double w = q[m] * q[l];
      if (w == 0.0) continue;
      if (m + l == 0) {
        time += w * dead_time;
        continue;
      }
      bool unsaturable = false;
      const double t = pair_time(options.kind, m, l, budget, gamma, unsaturable);
      out.capped = out.capped || unsaturable;
      const double mu = 1.0 - budget.eta * std::exp(-gamma * t);
      fisher += w * pair_fisher(options.kind, m, l, mu, t);
      time += w * (t + budget.t_ext);
    }
  }
  if (!(time > 0.0L)) throw Infeasible("runs take no time; precision is unbounded");
  out.mean_time_per_run = static_cast<double>(time);
  out.precision = budget.total_time * static_cast<double>(fisher / time);
  return out;
}

AcResult ac_precision(const DickeConfig& config, const Budget& budget, double gamma,
                      const AcOptions& options) {
  config.validate();
  PhotonPMF q;
  if (options.linear_statistics) {
    q = q_linear_pmf(config.n_target);
  } else {
    const double t = options.peak_time ? peak_photon_time(config) : t_prep(config);
    q = photon_pmf(config, t);
  }
  return ac_precision(q, budget, gamma, options);
}

}  // namespace photometrix::dicke
