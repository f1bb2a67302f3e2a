#include "photometrix/fock_space.hpp"

#include "photometrix/errors.hpp"
#include "photometrix/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace photometrix {

TwoModeBasis::TwoModeBasis(int max_total) : max_total_(max_total) {
  if (max_total < 0) throw InvalidArgument("basis cutoff must be >= 0");
  states_.reserve(static_cast<std::size_t>(max_total + 1) * (max_total + 2) / 2);
  for (int n = 0; n <= max_total; ++n)
    for (int a = 0; a <= n; ++a) states_.push_back({a, n - a});
}

std::optional<int> TwoModeBasis::index(int a, int b) const {
  if (a < 0 || b < 0 || a + b > max_total_) return std::nullopt;
  const int n = a + b;
  return n * (n + 1) / 2 + a;
}

int TwoModeBasis::index_or_throw(int a, int b) const {
  if (auto i = index(a, b)) return *i;
  throw IndexOutOfRange("state outside the truncated two-mode basis");
}

Eigen::MatrixXd interaction_generator(const TwoModeBasis& basis) {
  const int d = basis.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const auto [a, b] = basis.state(i);
    // a^dag b |a, b> = sqrt((a+1) b) |a+1, b-1>
    if (b > 0) {
      const int j = basis.index_or_throw(a + 1, b - 1);
      const double v = 0.5 * std::sqrt(static_cast<double>(a + 1) * b);
      h(j, i) += v;
      h(i, j) += v;
    }
  }
  return h;
}

Eigen::MatrixXcd interaction_unitary(const TwoModeBasis& basis, double phase) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(interaction_generator(basis));
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0.0, -phase))
          .array()
          .exp();
  const Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
  return v * phases.asDiagonal() * v.adjoint();
}

Eigen::MatrixXcd projector(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

Eigen::VectorXcd fock_ket(const TwoModeBasis& basis, int a, int b) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.size());
  psi(basis.index_or_throw(a, b)) = 1.0;
  return psi;
}

Eigen::VectorXcd coherent_ket(const TwoModeBasis& basis, std::complex<double> alpha,
                              std::complex<double> beta) {
  Eigen::VectorXcd psi(basis.size());
  const double norm = std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)));
  for (int i = 0; i < basis.size(); ++i) {
    const auto [a, b] = basis.state(i);
    psi(i) = norm * std::pow(alpha, a) * std::pow(beta, b) /
             std::sqrt(std::tgamma(a + 1.0) * std::tgamma(b + 1.0));
  }
  return psi;
}

Eigen::VectorXcd noon_ket(const TwoModeBasis& basis, int n) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.size());
  const double scale = std::pow(2.0, -0.5 * n) / std::sqrt(2.0);
  for (int r = 0; r <= n; ++r) {
    const double amp = std::exp(0.5 * numerics::log_binomial(n, r));
    const double parity = ((n - r) & 1) ? -1.0 : 1.0;
    psi(basis.index_or_throw(r, n - r)) = scale * amp * (1.0 + parity);
  }
  return psi;
}

Eigen::MatrixXcd apply_symmetric_loss(const TwoModeBasis& basis, const Eigen::MatrixXcd& rho,
                                      double mu) {
  const int d = basis.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  auto kraus = [mu](int n, int k) {
    return std::exp(0.5 * numerics::log_binomial(n, k)) * std::pow(mu, 0.5 * k) *
           std::pow(1.0 - mu, 0.5 * (n - k));
  };
  for (int i = 0; i < d; ++i) {
    const auto [a, b] = basis.state(i);
    for (int j = 0; j < d; ++j) {
      const std::complex<double> r = rho(i, j);
      if (r == 0.0) continue;
      const auto [c, e] = basis.state(j);
      for (int k1 = 0; k1 <= std::min(a, c); ++k1) {
        const double fa = kraus(a, k1) * kraus(c, k1);
        if (fa == 0.0) continue;
        for (int k2 = 0; k2 <= std::min(b, e); ++k2) {
          const double f = fa * kraus(b, k2) * kraus(e, k2);
          if (f == 0.0) continue;
          out(basis.index_or_throw(a - k1, b - k2), basis.index_or_throw(c - k1, e - k2)) += f * r;
        }
      }
    }
  }
  return out;
}

}  // namespace photometrix
