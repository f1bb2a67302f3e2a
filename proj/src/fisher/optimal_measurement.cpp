#include "photometrix/errors.hpp"
#include "photometrix/fisher.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace photometrix {

namespace {

using Complex = std::complex<double>;

// Diagonal weights of the lossy TFS |n, n> on the basis.
Eigen::VectorXd lossy_tfs_weights(const TwoModeBasis& basis, int n, double mu) {
  const JointFockPMF joint = apply_loss_joint(n, n, mu);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(basis.size());
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) w(basis.index_or_throw(i, j)) = joint.probs(i, j);
  return w;
}

}  // namespace

// L_xy = 2 i H_xy (w_x - w_y) / (w_x + w_y): the symmetric logarithmic
// derivative of exp(-i g t H) rho exp(i g t H) at g = 0, per unit t.
OptimalObservable optimal_measurement_L(int n, double mu) {
  if (n < 1) throw InvalidArgument("twin-Fock photon number must be >= 1");
  if (!(mu >= 0.0 && mu < 1.0)) throw InvalidArgument("loss probability must be in [0, 1)");
  TwoModeBasis basis(2 * n);
  const Eigen::VectorXd w = lossy_tfs_weights(basis, n, mu);
  std::vector<Eigen::Triplet<Complex>> entries;
  for (int x = 0; x < basis.size(); ++x) {
    const auto [a, b] = basis.state(x);
    if (b == 0) continue;
    // <a+1, b-1| H |a, b> = sqrt((a+1) b) / 2
    const int y = basis.index_or_throw(a + 1, b - 1);
    const double s = w(x) + w(y);
    if (s == 0.0) continue;
    const double h = 0.5 * std::sqrt(static_cast<double>(a + 1) * b);
    const Complex v(0.0, 2.0 * h * (w(y) - w(x)) / s);
    entries.emplace_back(y, x, v);
    entries.emplace_back(x, y, std::conj(v));
  }
  Eigen::SparseMatrix<Complex> L(basis.size(), basis.size());
  L.setFromTriplets(entries.begin(), entries.end());
  return {std::move(basis), std::move(L)};
}

double cfi_of_L(int n, double mu, double t, double g) {
  const OptimalObservable obs = optimal_measurement_L(n, mu);
  const TwoModeBasis& basis = obs.basis;
  const Eigen::VectorXd w = lossy_tfs_weights(basis, n, mu);
  const Eigen::MatrixXcd rho0 = w.cast<Complex>().asDiagonal();
  const Eigen::MatrixXcd u = interaction_unitary(basis, g * t);
  const Eigen::MatrixXcd rho = u * rho0 * u.adjoint();
  const Eigen::MatrixXcd h = interaction_generator(basis).cast<Complex>();
  // d rho / dg = -i t [H, rho]
  const Eigen::MatrixXcd drho = Complex(0.0, -t) * (h * rho - rho * h);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(obs.L));
  const Eigen::MatrixXcd& v = es.eigenvectors();
  double f = 0.0;
  for (int e = 0; e < v.cols(); ++e) {
    const double p = (v.col(e).adjoint() * rho * v.col(e))(0, 0).real();
    const double dp = (v.col(e).adjoint() * drho * v.col(e))(0, 0).real();
    if (p > 1e-15) f += dp * dp / p;
  }
  return f;
}

double cfi_of_L(int n, const LossChannel& channel, double g) {
  return cfi_of_L(n, channel.mu(), channel.t(), g);
}

}  // namespace photometrix
