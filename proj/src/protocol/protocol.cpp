#include "photometrix/protocol.hpp"

#include "photometrix/errors.hpp"
#include "photometrix/fisher.hpp"
#include "photometrix/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace photometrix {

void Budget::validate() const {
  if (!(total_time > 0.0)) throw InvalidArgument("total time T must be > 0");
  if (!(n_abs_max > 0.0)) throw InvalidArgument("absorbed-photon budget must be > 0");
  if (!(t_ext >= 0.0)) throw InvalidArgument("overhead time must be >= 0");
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("detector efficiency must be in (0, 1]");
}

FisherEngine default_engine(const ProbeSpec& probe) {
  return std::visit(
      [](const auto& p) -> FisherEngine {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, probe::Coherent>)
          return [n = p.n_mean](const LossChannel& c) { return qfi_coherent(n, c).value; };
        else if constexpr (std::is_same_v<T, probe::TwinFock>)
          return [n = p.n](const LossChannel& c) { return qfi_tfs_exact(n, c.mu(), c.t()); };
        else if constexpr (std::is_same_v<T, probe::Noon>)
          return [n = p.n](const LossChannel& c) { return qfi_noon(n, c.mu(), c.t()); };
        else if constexpr (std::is_same_v<T, probe::FockPair>)
          return [m = p.m, l = p.l](const LossChannel& c) {
            return qfi_fock_pair(m, l, c.mu(), c.t());
          };
        else
          return [q = p.params](const LossChannel& c) { return cfi_squeezed(q, c).value; };
      },
      probe);
}

FisherEngine nrm_zero_engine(const ProbeSpec& probe) {
  if (const auto* p = std::get_if<probe::TwinFock>(&probe))
    return [n = p->n](const LossChannel& c) {
      return cfi_nrm_zero_closed_form(n, n, c.mu(), c.t());
    };
  if (const auto* p = std::get_if<probe::FockPair>(&probe))
    return [m = p->m, l = p->l](const LossChannel& c) {
      return cfi_nrm_zero_closed_form(m, l, c.mu(), c.t());
    };
  throw InvalidArgument("number-resolved engine needs a Fock-type probe, got " + describe(probe));
}

double n_abs(double n_total, double gamma, double t) { return -n_total * std::expm1(-gamma * t); }

double saturation_time(double n_total, double absorbed, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("loss rate must be > 0");
  if (absorbed >= n_total) return std::numeric_limits<double>::infinity();
  return -std::log1p(-absorbed / n_total) / gamma;
}

double classical_bound(double total_time, double gamma, double n_abs) {
  return total_time / gamma * n_abs;
}

namespace {

struct RateOptimum {
  double t = 0.0;
  double fisher = 0.0;
  bool capped = false;
};

// Maximizes F(t) / (t + t_ext) over interrogation times whose absorption
// stays within budget, parametrized by the absorbed level s in (0, s_hi].
RateOptimum best_rate(double n_total, double n_abs_max, double t_ext, double eta, double gamma,
                      double t_limit, const FisherEngine& engine) {
  if (!(n_total > 0.0)) throw InvalidArgument("probe carries no photons");
  double t_hi = saturation_time(n_total, n_abs_max, gamma);
  bool capped = false;
  if (t_hi > max_interrogation_time(gamma)) {
    t_hi = max_interrogation_time(gamma);
    capped = true;
  }
  if (t_hi > t_limit) {
    t_hi = t_limit;
    capped = false;
  }
  const double s_hi = n_abs(n_total, gamma, t_hi);
  auto time_of = [&](double s) { return std::min(saturation_time(n_total, s, gamma), t_hi); };
  auto rate = [&](double s) {
    const double t = time_of(s);
    return engine(LossChannel(gamma, t, eta)) / (t + t_ext);
  };
  const numerics::Maximum best = numerics::scan_then_golden_max(rate, s_hi * 1e-6, s_hi, 64, 1e-12);
  // The endpoint is where a saturating budget usually sits; prefer it on ties.
  const double at_top = rate(s_hi);
  RateOptimum out;
  if (at_top >= best.value) {
    out.t = t_hi;
  } else {
    out.t = time_of(best.x);
  }
  out.fisher = engine(LossChannel(gamma, out.t, eta));
  out.capped = capped && out.t == t_hi;
  return out;
}

IntegerProtocol integer_protocol(double nu, const Budget& b, double gamma, double n_total,
                                 const FisherEngine& engine) {
  IntegerProtocol p;
  p.nu = static_cast<long long>(nu);
  if (p.nu < 1) return p;
  p.t = b.total_time / static_cast<double>(p.nu) - b.t_ext;
  if (!(p.t > 0.0)) return p;
  if (p.t > max_interrogation_time(gamma)) return p;
  if (n_abs(n_total, gamma, p.t) > b.n_abs_max * (1.0 + 1e-9)) return p;
  p.accumulated = static_cast<double>(p.nu) * engine(LossChannel(gamma, p.t, b.eta));
  p.feasible = true;
  return p;
}

PrecisionResult assemble(const RateOptimum& r, const Budget& b, double gamma, double n_total,
                         const FisherEngine& engine) {
  PrecisionResult out;
  out.t = r.t;
  out.nu = b.total_time / (r.t + b.t_ext);
  out.per_test_fisher = r.fisher;
  out.accumulated = out.nu * r.fisher;
  out.n_abs = n_abs(n_total, gamma, r.t);
  out.capped = r.capped;
  out.nu_floor = integer_protocol(std::floor(out.nu), b, gamma, n_total, engine);
  out.nu_ceil = integer_protocol(std::ceil(out.nu), b, gamma, n_total, engine);
  return out;
}

void check_budget(const Budget& budget, double gamma) {
  budget.validate();
  if (!(gamma > 0.0)) throw InvalidArgument("loss rate must be > 0");
  if (budget.t_ext >= budget.total_time)
    throw Infeasible("overhead time per test leaves no time for interrogation");
}

}  // namespace

PrecisionResult optimize_nu(const ProbeSpec& probe, const Budget& budget, double gamma,
                            const FisherEngine& engine) {
  check_budget(budget, gamma);
  const double n_total = total_photons(probe);
  // At least one full test must fit in T.
  const RateOptimum r = best_rate(n_total, budget.n_abs_max, budget.t_ext, budget.eta, gamma,
                                  budget.total_time - budget.t_ext, engine);
  return assemble(r, budget, gamma, n_total, engine);
}

PrecisionResult optimize_nu(const ProbeSpec& probe, const Budget& budget, double gamma) {
  return optimize_nu(probe, budget, gamma, default_engine(probe));
}

PrecisionResult precision_at_saturation(const ProbeSpec& probe, const Budget& budget,
                                        double gamma, const FisherEngine& engine) {
  check_budget(budget, gamma);
  const double n_total = total_photons(probe);
  RateOptimum r;
  r.t = saturation_time(n_total, budget.n_abs_max, gamma);
  if (r.t > max_interrogation_time(gamma)) {
    r.t = max_interrogation_time(gamma);
    r.capped = true;
  }
  r.t = std::min(r.t, budget.total_time - budget.t_ext);
  r.fisher = engine(LossChannel(gamma, r.t, budget.eta));
  return assemble(r, budget, gamma, n_total, engine);
}

double bound_finite_n(double n_total, double total_time, double gamma) {
  return total_time * n_total / gamma;
}

double bound_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("efficiency must be in (0, 1)");
  return eta / (1.0 - eta);
}

double bound_text(double gamma, double t_ext) {
  if (!(t_ext > 0.0)) throw InvalidArgument("overhead time must be > 0");
  return 1.0 / (gamma * t_ext);
}

double j_of_t(double t, double gamma, double eta, double t_ext) {
  if (!(t > 0.0)) throw InvalidArgument("interrogation time must be > 0");
  const double e = std::exp(-gamma * t);
  return gamma * t * t * eta * e / ((t + t_ext) * (-std::expm1(-gamma * t)) * (1.0 - eta * e));
}

double max_j(double gamma, double eta, double t_ext) {
  if (eta == 1.0 && t_ext == 0.0) return std::numeric_limits<double>::infinity();
  // Search in log t; J vanishes at both ends once t_ext > 0, and tends to
  // eta / (1 - eta) as t -> 0 when t_ext = 0.
  auto f = [&](double log_t) { return j_of_t(std::exp(log_t), gamma, eta, t_ext); };
  const double lo = std::log(1e-9 / gamma);
  const double hi = std::log(max_interrogation_time(gamma));
  const numerics::Maximum best = numerics::scan_then_golden_max(f, lo, hi, 256, 1e-12);
  if (t_ext == 0.0) return std::max(best.value, eta / (1.0 - eta));
  return best.value;
}

// Best rate over budget-compatible interrogation times with an unbounded
// total time, divided by the classical rate N_abs / gamma.
double protocol_advantage(const ProbeSpec& probe, double n_abs_max, double eta, double t_ext,
                          double gamma, const FisherEngine& engine) {
  const RateOptimum r = best_rate(total_photons(probe), n_abs_max, t_ext, eta, gamma,
                                  std::numeric_limits<double>::infinity(), engine);
  return gamma * r.fisher / ((r.t + t_ext) * n_abs_max);
}

}  // namespace photometrix
