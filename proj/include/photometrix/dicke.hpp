#pragma once

// Atom-cavity implementation: preparation of Fock states by superradiant
// emission from an excited ensemble and number-resolved readout by
// absorption into a ground-state ensemble.

#include "photometrix/core.hpp"
#include "photometrix/fisher.hpp"
#include "photometrix/protocol.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace photometrix::dicke {

struct DickeConfig {
  int n_atoms = 40;
  double coupling = 1.0;  // J
  double omega = 0.0;     // bare frequency; a uniform shift inside each sector
  double n_target = 1.0;  // mean photons per cavity after preparation

  void validate() const;
};

enum class Regime { Preparation, Absorption };

/// Excitation-conserving ladder: basis state i holds photons[i] photons and
/// E - photons[i] atomic excitations. couplings[i] links states i and i+1.
struct LadderSector {
  int excitations = 0;
  Regime regime = Regime::Preparation;
  double diagonal = 0.0;  // omega * E
  std::vector<int> photons;
  std::vector<double> couplings;

  int dimension() const { return static_cast<int>(photons.size()); }
  int index_of_photons(int k) const;
};

/// Preparation: E = N_at, all atoms excited at zero photons.
/// Absorption: E photons entering a ground-state ensemble.
LadderSector build_sector(const DickeConfig& config, int excitations, Regime regime);

/// Diagonalizes the sector once and evolves any initial basis state.
class SectorPropagator {
 public:
  explicit SectorPropagator(const LadderSector& sector);

  const LadderSector& sector() const { return sector_; }
  const Eigen::VectorXd& energies() const { return energies_; }

  std::vector<std::complex<double>> evolve(double t, int initial_index) const;
  /// |amplitude|^2 indexed by basis state.
  std::vector<double> probabilities(double t, int initial_index) const;

 private:
  LadderSector sector_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd modes_;
};

std::vector<std::complex<double>> evolve_sector(const LadderSector& sector, double t,
                                                int initial_index);

/// Cavity photon distribution during preparation.
PhotonPMF photon_pmf(const DickeConfig& config, double t);
double mean_photons(const DickeConfig& config, double t);

/// Time of the first maximum of the mean photon number during preparation.
double peak_photon_time(const DickeConfig& config);

double t_prep(const DickeConfig& config);
double t_meas(const DickeConfig& config);
/// Linearized (N_at >> n) preparation statistics n^k / (n+1)^{k+1}.
double q_linear(double n, int k);
PhotonPMF q_linear_pmf(double n, double tail = 1e-14);

/// Probability that photons remain after `rounds` absorption windows of
/// t_meas. Between rounds the atoms are read out (projecting the cavity onto
/// a Fock state) and reset to the ground state.
double p_error(const DickeConfig& config, int n_photons, int rounds = 1);
double eta_from_perror(double p_error, int n_photons);

enum class AcFisher { QFI, NrmZero };

struct AcOptions {
  AcFisher kind = AcFisher::NrmZero;
  bool linear_statistics = false;  // use q_linear instead of the exact dynamics
  bool peak_time = false;          // prepare at peak_photon_time instead of t_prep
  std::optional<double> dead_time;  // per-run time of a (0,0) outcome; default t_ext
  std::optional<int> cutoff;        // largest photon number kept per cavity
};

struct AcResult {
  double precision = 0.0;  // (Delta g)^-2
  double mean_time_per_run = 0.0;
  double captured_mass = 0.0;  // probability mass of the kept (m, l) pairs
  bool capped = false;
};

/// Aggregated precision over the random Fock pairs (m, l) produced by the
/// preparation, each interrogated until N_abs photons are absorbed.
AcResult ac_precision(const DickeConfig& config, const Budget& budget, double gamma,
                      const AcOptions& options = {});

/// Same aggregation for an arbitrary per-cavity photon distribution.
AcResult ac_precision(const PhotonPMF& q, const Budget& budget, double gamma,
                      const AcOptions& options = {});

// --- mean-field switch ------------------------------------------------------

struct MeanFieldSample {
  double t = 0.0;
  std::complex<double> alpha;
  std::complex<double> beta;
};

struct OdeTolerances {
  double relative = 1e-9;
  double absolute = 1e-12;
};

/// Integrates d alpha/dt = -i beta^2 / 2, d beta/dt = -i conj(beta) alpha from
/// alpha = i sqrt(N), beta = 1 and samples n_samples + 1 equally spaced times.
std::vector<MeanFieldSample> meanfield_evolve(double n, double t_end, int n_samples = 1000,
                                              const OdeTolerances& tol = {});

/// Time of maximal |beta|^2 on the mean-field trajectory.
double switch_time(double n, const OdeTolerances& tol = {});
double switch_time_formula(double n);

}  // namespace photometrix::dicke
