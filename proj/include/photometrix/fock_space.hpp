#pragma once

// Dense two-mode Fock space, truncated at a total photon number. Used by the
// eigenbasis oracles and the optimal-measurement construction.

#include "photometrix/core.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

namespace photometrix {

class TwoModeBasis {
 public:
  /// All |a, b> with a + b <= max_total, ordered by total photon number, then a.
  explicit TwoModeBasis(int max_total);

  int max_total() const { return max_total_; }
  int size() const { return static_cast<int>(states_.size()); }
  const FockLabel& state(int i) const { return states_[i]; }
  std::optional<int> index(int a, int b) const;
  int index_or_throw(int a, int b) const;

 private:
  int max_total_;
  std::vector<FockLabel> states_;
};

/// Matrix of H_int = (a^dag b + a b^dag) / 2. Block diagonal in the total
/// photon number, so the truncated basis is closed under it.
Eigen::MatrixXd interaction_generator(const TwoModeBasis& basis);

/// exp(-i phase H_int) on the truncated basis.
Eigen::MatrixXcd interaction_unitary(const TwoModeBasis& basis, double phase);

Eigen::MatrixXcd projector(const Eigen::VectorXcd& psi);

Eigen::VectorXcd fock_ket(const TwoModeBasis& basis, int a, int b);

/// Product of coherent states with amplitudes alpha, beta, truncated to the basis.
Eigen::VectorXcd coherent_ket(const TwoModeBasis& basis, std::complex<double> alpha,
                              std::complex<double> beta);

/// (|N,0> + |0,N>)/sqrt 2 in the normal modes (a +- b)/sqrt 2 that
/// diagonalize H_int, written in the a/b Fock basis.
Eigen::VectorXcd noon_ket(const TwoModeBasis& basis, int n);

/// Independent binomial loss with probability mu on each mode, applied
/// through its Kraus operators.
Eigen::MatrixXcd apply_symmetric_loss(const TwoModeBasis& basis, const Eigen::MatrixXcd& rho,
                                      double mu);

}  // namespace photometrix
