#pragma once

// Fisher-information engines for each probe family. Values are per test and
// carry units of time^2 (the estimated parameter is a rate).

#include "photometrix/core.hpp"
#include "photometrix/fock_space.hpp"
#include "photometrix/probe.hpp"

#include <Eigen/SparseCore>

#include <optional>
#include <string>
#include <vector>

namespace photometrix {

enum class FisherKind { QFI, CFI };

struct FisherResult {
  double value = 0.0;
  FisherKind kind = FisherKind::QFI;
  ProbeSpec probe = probe::Coherent{0.0};
  LossChannel channel{0.0, 0.0};
  double g = 0.0;
  std::string note;  // validity caveats, empty when none apply
};

// --- quantum Fisher information -----------------------------------------

FisherResult qfi_coherent(double n_mean, const LossChannel& channel);

/// Symmetric-loss ceiling t^2 N (1 - mu) / mu on any N-photon probe.
double qfi_upper_bound(double n_total, const LossChannel& channel);
double qfi_upper_bound(double n_total, double mu, double t);

FisherResult qfi_tfs_exact(int n, const LossChannel& channel);
double qfi_tfs_exact(int n, double mu, double t);

/// Poisson-limit TFS QFI, G(N_abs) / gamma^2.
double qfi_tfs_poisson(double n_abs, double gamma = 1.0);

/// NOON state prepared in the normal modes of H_int: N^2 t^2 (1 - mu)^N.
FisherResult qfi_noon(int n, const LossChannel& channel);
double qfi_noon(int n, double mu, double t);
double qfi_noon_poisson(double n_abs, double gamma = 1.0);

FisherResult qfi_fock_pair(int m, int l, const LossChannel& channel);
double qfi_fock_pair(int m, int l, double mu, double t);

// --- number-resolved measurement ----------------------------------------

/// One outcome of the joint photon-number measurement on the lossy,
/// evolved |m, l>: photons counted in each mode, probability and g-derivative.
struct NrmOutcome {
  int a = 0;
  int b = 0;
  double prob = 0.0;
  double dprob_dg = 0.0;
};

std::vector<NrmOutcome> nrm_outcomes(int m, int l, double mu, double t, double g);

/// CFI of the number-resolved measurement. g == 0 returns the g -> 0 limit,
/// computed from the leading order of the outcome expansion.
FisherResult cfi_nrm(int m, int l, const LossChannel& channel, double g);
double cfi_nrm(int m, int l, double mu, double t, double g);

/// g -> 0 closed form t^2 ((1-mu)^{m+1} (m+1) l + (1-mu)^{l+1} (l+1) m).
double cfi_nrm_zero_closed_form(int m, int l, double mu, double t);

struct CouplingOptimum {
  double g = 0.0;
  double value = 0.0;
};

/// Maximize cfi_nrm over g t in (0, pi): 64-point scan then golden section.
CouplingOptimum optimize_cfi_nrm(int m, int l, double mu, double t, double tol = 1e-8);

struct NrmPoissonOptions {
  int q_max = 10;
  int n_loss_max = -1;  // < 0: max(4, ceil(4 N_abs))
  int n_per_mode = 500;
  double gamma = 1.0;
  bool extrapolate = true;  // Richardson step from n and 2n photons per mode
};

/// Truncated NRM CFI of a TFS in the Poisson limit, evaluated at finite n
/// with t = N_abs / (2 gamma n). The coupling enters through the scaled
/// phase x = g t n, which stays finite as n grows. With `extrapolate` the
/// values at n and 2n are combined to cancel the 1/n term.
double cfi_nrm_poisson(double n_abs, double scaled_phase, const NrmPoissonOptions& opts = {});

CouplingOptimum optimize_cfi_nrm_poisson(double n_abs, const NrmPoissonOptions& opts = {},
                                         double scaled_phase_max = 6.0);

// --- squeezed probes -------------------------------------------------------

/// Finite-t NRM CFI of the squeezed probe (valid for N >> 1; noted in the result).
FisherResult cfi_squeezed(const SqueezedParams& params, const LossChannel& channel);

/// Poisson-limit form in terms of N_abs.
double cfi_squeezed_poisson(double n_abs, double beta_r, double beta_s, double gamma = 1.0);

struct SqueezedOptimum {
  double beta_r = 0.0;
  double beta_s = 0.0;
  double value = 0.0;
};

/// 200 x 200 grid on the simplex, then Nelder-Mead refinement to 1e-8.
SqueezedOptimum optimize_squeezed(double n_abs, double gamma = 1.0);

// --- optimal global measurement -------------------------------------------

struct OptimalObservable {
  TwoModeBasis basis;
  Eigen::SparseMatrix<std::complex<double>> L;
};

/// Symmetric logarithmic derivative of the lossy TFS |n, n> on the basis
/// with at most 2n photons.
OptimalObservable optimal_measurement_L(int n, double mu);

/// CFI of projecting the lossy, evolved TFS onto the eigenbasis of L.
double cfi_of_L(int n, const LossChannel& channel, double g);
double cfi_of_L(int n, double mu, double t, double g);

}  // namespace photometrix
