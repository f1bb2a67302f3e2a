#pragma once

// Resource accounting: nu tests of duration t + t_ext within a total time T,
// each sample absorbing at most N_abs photons on average.

#include "photometrix/core.hpp"
#include "photometrix/probe.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace photometrix {

struct Budget {
  double total_time = 10.0;
  double n_abs_max = 1.0;
  double t_ext = 0.0;
  double eta = 1.0;

  void validate() const;
};

/// Integer test count next to the continuous optimum. t follows from
/// T = nu (t + t_ext); `feasible` is false when that t breaks the
/// absorption budget or is not positive.
struct IntegerProtocol {
  long long nu = 0;
  double t = 0.0;
  double accumulated = 0.0;
  bool feasible = false;
};

struct PrecisionResult {
  double nu = 0.0;
  double t = 0.0;
  double per_test_fisher = 0.0;
  double accumulated = 0.0;  // nu * F, i.e. (Delta g)^-2
  double n_abs = 0.0;        // absorbed photons per sample at this t
  bool capped = false;       // interrogation time hit the 50/gamma cap
  IntegerProtocol nu_floor;
  IntegerProtocol nu_ceil;
};

/// Per-test Fisher information as a function of the channel.
using FisherEngine = std::function<double(const LossChannel&)>;

/// QFI engine matching the probe family (CFI for squeezed probes).
FisherEngine default_engine(const ProbeSpec& probe);

/// NRM CFI at g -> 0 for Fock-type probes.
FisherEngine nrm_zero_engine(const ProbeSpec& probe);

double n_abs(double n_total, double gamma, double t);

/// Interrogation time that absorbs `absorbed` of `n_total` photons on average.
double saturation_time(double n_total, double absorbed, double gamma);

/// Maximum interrogation time; budgets that would need more are capped here.
inline double max_interrogation_time(double gamma) { return 50.0 / gamma; }

double classical_bound(double total_time, double gamma, double n_abs);

/// Maximize nu F subject to nu (t + t_ext) = T and N_abs(t) <= N_abs_max.
/// Throws Infeasible when t_ext >= T.
PrecisionResult optimize_nu(const ProbeSpec& probe, const Budget& budget, double gamma,
                            const FisherEngine& engine);
PrecisionResult optimize_nu(const ProbeSpec& probe, const Budget& budget, double gamma);

/// Same accounting with t pinned to the saturation time of the full budget.
PrecisionResult precision_at_saturation(const ProbeSpec& probe, const Budget& budget,
                                        double gamma, const FisherEngine& engine);

/// Best accumulated precision over the classical bound for an unbounded
/// total time, where T cancels: max_t gamma F(t) / ((t + t_ext) N_abs).
double protocol_advantage(const ProbeSpec& probe, double n_abs_max, double eta, double t_ext,
                          double gamma, const FisherEngine& engine);

double bound_finite_n(double n_total, double total_time, double gamma);
double bound_eta(double eta);
double bound_text(double gamma, double t_ext);
double j_of_t(double t, double gamma, double eta, double t_ext);

/// max over t > 0 of J(t).
double max_j(double gamma, double eta, double t_ext);

// --- advantage boundaries --------------------------------------------------

enum class BoundaryFamily {
  TfsQfi,         // TFS with the optimal measurement
  TfsNrm,         // TFS with number-resolved detection at g -> 0
  GeneralFixedN,  // J(t) with t fixed by N_abs = N (1 - e^{-gamma t})
  GeneralAnyT,    // max_t J(t); N unconstrained
};

struct BoundaryPoint {
  double gamma_t_ext = 0.0;
  double eta = 1.0;  // efficiency at which the advantage ratio equals 1
  bool crossing = false;
};

/// Advantage ratio (quantum precision over the classical bound) at one point.
double advantage_ratio(BoundaryFamily family, int n_total, double n_abs, double eta,
                       double gamma_t_ext, double gamma = 1.0);

/// Efficiency where the advantage ratio crosses 1 at this overhead. Throws
/// NoCrossing if the ratio stays below 1 for all eta in (0, 1].
double boundary_eta(BoundaryFamily family, int n_total, double n_abs, double gamma_t_ext,
                    double gamma = 1.0, double tol = 1e-6);

/// 200 log-spaced gamma t_ext points in [1e-3, 1] by default.
std::vector<double> default_overhead_grid(int points = 200);

std::vector<BoundaryPoint> advantage_boundary(BoundaryFamily family, int n_total, double n_abs,
                                              const std::vector<double>& gamma_t_ext_grid,
                                              double gamma = 1.0, double tol = 1e-6);

}  // namespace photometrix
