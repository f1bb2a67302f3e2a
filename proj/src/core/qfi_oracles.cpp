#include "photometrix/core.hpp"
#include "photometrix/errors.hpp"
#include "photometrix/fock_space.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace photometrix {

namespace {

// <x| H_int |y> for two-mode Fock labels.
double interaction_element(const FockLabel& x, const FockLabel& y) {
  if (x.a + x.b != y.a + y.b) return 0.0;
  if (x.a == y.a + 1 && x.b == y.b - 1) return 0.5 * std::sqrt(static_cast<double>(x.a) * y.b);
  if (x.a == y.a - 1 && x.b == y.b + 1) return 0.5 * std::sqrt(static_cast<double>(y.a) * x.b);
  return 0.0;
}

// Var(H_int) in |a, b>: (a + b + 2ab) / 4.
double interaction_variance(const FockLabel& x) {
  return 0.25 * (x.a + x.b + 2.0 * x.a * x.b);
}

}  // namespace

double mixed_qfi_oracle(const MixedFockDecomposition& dec) {
  const auto& q = dec.weights();
  const auto& labels = dec.labels();
  double diag = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) diag += q[i] * interaction_variance(labels[i]);
  double off = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (i == j) continue;
      const double s = q[i] + q[j];
      if (s == 0.0) continue;
      const double h = interaction_element(labels[i], labels[j]);
      off += 2.0 * q[i] * q[j] * h * h / s;
    }
  }
  const double t = dec.t();
  return 4.0 * t * t * (diag - off);
}

double spectral_qfi_oracle(const Eigen::MatrixXcd& rho, const TwoModeBasis& basis, double t) {
  constexpr double kTol = 1e-10;
  if (rho.rows() != basis.size() || rho.cols() != basis.size())
    throw NotAState("density matrix does not match the basis dimension");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kTol) throw NotAState("rho is not Hermitian");
  if (std::abs(rho.trace() - std::complex<double>(1.0)) > kTol)
    throw NotAState("rho does not have unit trace");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()));
  const Eigen::VectorXd& lam = es.eigenvalues();
  if (lam.minCoeff() < -kTol) throw NotAState("rho is not positive semidefinite");

  const Eigen::MatrixXcd& v = es.eigenvectors();
  const Eigen::MatrixXcd h =
      v.adjoint() * interaction_generator(basis).cast<std::complex<double>>() * v;
  double f = 0.0;
  for (int i = 0; i < lam.size(); ++i) {
    const double li = std::max(lam(i), 0.0);
    for (int j = 0; j < lam.size(); ++j) {
      const double lj = std::max(lam(j), 0.0);
      const double s = li + lj;
      if (s <= 0.0) continue;
      const double d = li - lj;
      f += d * d / s * std::norm(h(i, j));
    }
  }
  return 2.0 * t * t * f;
}

}  // namespace photometrix
