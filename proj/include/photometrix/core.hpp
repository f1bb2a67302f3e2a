#pragma once

// Number-basis probability machinery: loss channels, photon-count pmfs,
// beamsplitter transition probabilities and brute-force QFI oracles.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace photometrix {

/// Probability of each photon count 0..k_max. `tail_mass` is the probability
/// that was cut off beyond k_max; it is reported, never folded back in
/// unless renormalized() is called.
struct PhotonPMF {
  std::vector<double> probs;
  double tail_mass = 0.0;

  std::size_t k_max() const { return probs.empty() ? 0 : probs.size() - 1; }
  double operator[](std::size_t k) const { return k < probs.size() ? probs[k] : 0.0; }
  double total() const;
  double mean() const;
  PhotonPMF renormalized() const;
  PhotonPMF truncated(std::size_t k_max) const;
};

/// Exponential absorption at rate gamma for a time t followed by a detector
/// of efficiency eta. Only the absorbed part damages the sample.
class LossChannel {
 public:
  LossChannel(double gamma, double t, double eta = 1.0);

  double gamma() const { return gamma_; }
  double t() const { return t_; }
  double eta() const { return eta_; }

  /// Total per-photon loss probability, 1 - eta * exp(-gamma t).
  double mu() const;
  /// Probability that a photon is absorbed by the sample, 1 - exp(-gamma t).
  double mu_abs() const;
  double survival() const { return 1.0 - mu(); }

  LossChannel with_time(double t) const { return LossChannel(gamma_, t, eta_); }

 private:
  double gamma_;
  double t_;
  double eta_;
};

/// Joint pmf of surviving photons: probs(i, j) = P(i left in mode a, j left in mode b).
struct JointFockPMF {
  Eigen::MatrixXd probs;
  double total() const { return probs.sum(); }
};

struct FockLabel {
  int a = 0;
  int b = 0;
  friend bool operator==(const FockLabel&, const FockLabel&) = default;
};

/// rho = sum_s weights[s] |labels[s]><labels[s]| evolved for time t under
/// exp(-i g t H_int). Labels are two-mode Fock states, hence orthogonal.
class MixedFockDecomposition {
 public:
  MixedFockDecomposition(std::vector<double> weights, std::vector<FockLabel> labels, double t,
                         double g = 0.0);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<FockLabel>& labels() const { return labels_; }
  double t() const { return t_; }
  double g() const { return g_; }

  /// Lossy two-mode Fock state |m, l> pushed through a loss channel with loss
  /// probability mu; zero-weight terms are dropped.
  static MixedFockDecomposition lossy_fock(int m, int l, double mu, double t);

 private:
  std::vector<double> weights_;
  std::vector<FockLabel> labels_;
  double t_;
  double g_;
};

// --- operations -----------------------------------------------------------

PhotonPMF binomial_loss_pmf(int n, double mu);

/// Throws CutoffTooSmall if more than 1e-9 of the mass lies beyond k_max.
PhotonPMF poisson_pmf(double lambda, int k_max);

/// Smallest cutoff whose Poisson tail is below `tail`.
int poisson_cutoff(double lambda, double tail);

/// Real-valued transition amplitude <k-q, m+q| exp(-i 2 theta H_int) |k, m>
/// with the global phase i^q stripped, and its theta derivative.
struct BeamsplitterAmplitude {
  double value = 0.0;
  double dtheta = 0.0;
};

BeamsplitterAmplitude beamsplitter_amplitude(int k, int m, int q, double theta);

/// |<k-q, m+q| exp(-i g t H_int) |k, m>|^2 with theta = g t / 2.
double beamsplitter_prob(int k, int m, int q, double theta);

JointFockPMF apply_loss_joint(int m, int l, double mu);
JointFockPMF apply_loss_joint(int m, int l, const LossChannel& channel);

/// QFI of an orthogonal mixture under the generator t H_int, from the
/// variances and off-diagonal couplings of H_int between the labels.
double mixed_qfi_oracle(const MixedFockDecomposition& dec);

class TwoModeBasis;

/// Eigenbasis QFI of a density matrix on a truncated two-mode basis, under
/// the generator t H_int. Throws NotAState if rho is not Hermitian, unit
/// trace and positive semidefinite to 1e-10.
double spectral_qfi_oracle(const Eigen::MatrixXcd& rho, const TwoModeBasis& basis, double t);

}  // namespace photometrix
