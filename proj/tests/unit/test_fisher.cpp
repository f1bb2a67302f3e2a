#include "photometrix/errors.hpp"
#include "photometrix/fisher.hpp"
#include "photometrix/fock_space.hpp"

#include <doctest.h>

#include <cmath>

using namespace photometrix;

namespace {

// Outcome distribution of the number-resolved measurement from the dense
// density matrix: loss and H_int commute, so evolve then apply loss.
Eigen::VectorXd dense_outcomes(int m, int l, double mu, double t, double g) {
  const TwoModeBasis basis(m + l);
  const Eigen::MatrixXcd u = interaction_unitary(basis, g * t);
  const Eigen::VectorXcd psi = u * fock_ket(basis, m, l);
  return apply_symmetric_loss(basis, projector(psi), mu).diagonal().real();
}

double dense_cfi(int m, int l, double mu, double t, double g) {
  const double h = 1e-6 * std::max(1.0, 1.0 / t);
  const Eigen::VectorXd p = dense_outcomes(m, l, mu, t, g);
  const Eigen::VectorXd dp =
      (dense_outcomes(m, l, mu, t, g + h) - dense_outcomes(m, l, mu, t, g - h)) / (2.0 * h);
  double f = 0.0;
  for (int i = 0; i < p.size(); ++i)
    if (p(i) > 1e-13) f += dp(i) * dp(i) / p(i);
  return f;
}

double spectral_tfs(int m, int l, double mu, double t) {
  const TwoModeBasis basis(m + l);
  return spectral_qfi_oracle(apply_symmetric_loss(basis, projector(fock_ket(basis, m, l)), mu),
                             basis, t);
}

}  // namespace

TEST_CASE("coherent and bound") {
  const LossChannel ch(1.0, 0.4, 0.9);
  CHECK(qfi_coherent(50.0, ch).value == doctest::Approx(0.16 * 50.0 * 0.9 * std::exp(-0.4)));
  CHECK(qfi_upper_bound(10.0, 0.2, 2.0) == doctest::Approx(4.0 * 10.0 * 0.8 / 0.2));
  CHECK_THROWS_AS(qfi_upper_bound(10.0, 0.0, 1.0), MuZero);
  for (int n = 1; n <= 5; ++n)
    CHECK(qfi_tfs_exact(n, 0.2, 2.0) <= qfi_upper_bound(2.0 * n, 0.2, 2.0));
}

TEST_CASE("tfs and fock pair qfi against the spectral oracle") {
  for (double mu : {0.0, 0.1, 0.3, 0.7})
    for (int m = 0; m <= 5; ++m)
      for (int l = 0; l + m <= 8; ++l) {
        const double oracle = spectral_tfs(m, l, mu, 1.3);
        CHECK(qfi_fock_pair(m, l, mu, 1.3) == doctest::Approx(oracle).epsilon(1e-9).scale(1e-12));
        if (m == l && m > 0) CHECK(qfi_tfs_exact(m, mu, 1.3) == doctest::Approx(oracle).epsilon(1e-9));
      }
}

TEST_CASE("qfi scales with t squared at fixed mu") {
  for (int n : {1, 3, 6}) CHECK(qfi_tfs_exact(n, 0.25, 2.0) == doctest::Approx(4.0 * qfi_tfs_exact(n, 0.25, 1.0)));
  CHECK(qfi_fock_pair(2, 5, 0.4, 3.0) == doctest::Approx(9.0 * qfi_fock_pair(2, 5, 0.4, 1.0)));
}

TEST_CASE("lossless tfs") {
  // Var(H_int) in |n, n> is (2n + 2n^2) / 4.
  for (int n = 1; n <= 6; ++n) CHECK(qfi_tfs_exact(n, 0.0, 1.0) == doctest::Approx(2.0 * n * (n + 1)));
}

TEST_CASE("noon") {
  for (int n = 1; n <= 4; ++n) {
    const TwoModeBasis basis(n);
    const double oracle = spectral_qfi_oracle(
        apply_symmetric_loss(basis, projector(noon_ket(basis, n)), 0.3), basis, 1.0);
    CHECK(qfi_noon(n, 0.3, 1.0) == doctest::Approx(oracle).epsilon(1e-10));
  }
  CHECK(qfi_noon_poisson(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(qfi_noon_poisson(1e-3) / qfi_tfs_poisson(1e-3) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("poisson limit of the tfs qfi") {
  for (double n_abs : {0.5, 1.0, 2.0, 4.0}) {
    const int n = 10000;
    const double t = n_abs / (2.0 * n);
    CHECK(qfi_tfs_exact(n, -std::expm1(-t), t) == doctest::Approx(qfi_tfs_poisson(n_abs)).epsilon(1e-3));
  }
  CHECK(qfi_tfs_poisson(50.0) * 2.0 / 50.0 == doctest::Approx(1.0).epsilon(0.1));
  CHECK(qfi_tfs_poisson(0.1) * 2.0 / 0.01 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("nrm against the dense finite-difference oracle") {
  for (auto [m, l] : {std::pair{1, 1}, {2, 1}, {3, 3}, {4, 2}})
    for (double mu : {0.0, 0.2, 0.5})
      for (double g : {0.3, 1.0, 2.2}) {
        const double t = 0.8;
        CHECK(cfi_nrm(m, l, mu, t, g) == doctest::Approx(dense_cfi(m, l, mu, t, g)).epsilon(1e-6));
      }
}

TEST_CASE("nrm derivative is analytic") {
  const double t = 0.9;
  for (double g : {0.2, 0.9, 1.7}) {
    const double h = 1e-6 * std::max(1.0, 1.0 / t);
    const auto mid = nrm_outcomes(3, 2, 0.25, t, g);
    const auto up = nrm_outcomes(3, 2, 0.25, t, g + h);
    const auto down = nrm_outcomes(3, 2, 0.25, t, g - h);
    REQUIRE(mid.size() == up.size());
    double total = 0.0;
    for (std::size_t i = 0; i < mid.size(); ++i) {
      total += mid[i].prob;
      const double fd = (up[i].prob - down[i].prob) / (2.0 * h);
      CHECK(mid[i].dprob_dg == doctest::Approx(fd).epsilon(1e-6).scale(1e-6));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("nrm g -> 0 limit") {
  for (int n = 1; n <= 15; ++n)
    for (int i = 0; i <= 9; ++i) {
      const double mu = 0.1 * i;
      const double expected = 2.0 * std::pow(1.0 - mu, n + 1) * (n + 1) * n;
      CHECK(cfi_nrm(n, n, mu, 1.0, 0.0) == doctest::Approx(expected).epsilon(1e-10).scale(1e-300));
      CHECK(cfi_nrm_zero_closed_form(n, n, mu, 1.0) == doctest::Approx(expected).epsilon(1e-12));
    }
  // and the limit is continuous
  CHECK(cfi_nrm(3, 2, 0.3, 1.0, 1e-5) == doctest::Approx(cfi_nrm(3, 2, 0.3, 1.0, 0.0)).epsilon(1e-6));
}

TEST_CASE("cfi never exceeds qfi") {
  for (int m = 1; m <= 5; ++m)
    for (int l = 0; l <= 5; ++l)
      for (double mu : {0.0, 0.15, 0.6})
        for (double g : {0.0, 0.1, 0.8, 1.9, 3.0}) {
          const double q = qfi_fock_pair(m, l, mu, 1.1);
          CHECK(cfi_nrm(m, l, mu, 1.1, g) <= q * (1.0 + 1e-10) + 1e-12);
        }
  for (int n = 1; n <= 4; ++n)
    for (double g : {0.0, 0.5, 1.5})
      CHECK(cfi_of_L(n, 0.2, 1.0, g) <= qfi_tfs_exact(n, 0.2, 1.0) * (1.0 + 1e-8));
}

TEST_CASE("coupling optimum") {
  const CouplingOptimum best = optimize_cfi_nrm(4, 4, 0.2, 1.0);
  CHECK(best.value >= cfi_nrm(4, 4, 0.2, 1.0, 0.0) - 1e-12);
  CHECK(best.value <= qfi_tfs_exact(4, 0.2, 1.0));
  CHECK(cfi_nrm(4, 4, 0.2, 1.0, best.g) == doctest::Approx(best.value));
}

TEST_CASE("poisson nrm") {
  // g -> 0: N_abs^2 e^{-N_abs / 2} / 2
  for (double n_abs : {0.05, 0.5, 2.0})
    CHECK(cfi_nrm_poisson(n_abs, 0.0) ==
          doctest::Approx(n_abs * n_abs * std::exp(-0.5 * n_abs) / 2.0).epsilon(2e-4));
  const CouplingOptimum best = optimize_cfi_nrm_poisson(2.0);
  CHECK(best.value >= cfi_nrm_poisson(2.0, 0.0));
  CHECK(best.value <= qfi_tfs_poisson(2.0));
}

TEST_CASE("optimal measurement saturates the qfi") {
  for (int n = 1; n <= 4; ++n)
    for (double mu : {0.0, 0.1, 0.3})
      CHECK(cfi_of_L(n, mu, 1.0, 0.0) == doctest::Approx(qfi_tfs_exact(n, mu, 1.0)).epsilon(1e-6));
  const OptimalObservable obs = optimal_measurement_L(2, 0.2);
  const Eigen::MatrixXcd dense(obs.L);
  CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("squeezed probe") {
  CHECK_THROWS_AS((SqueezedParams{10.0, 0.6, 0.5}.validate()), InvalidFractions);
  CHECK_THROWS_AS((SqueezedParams{10.0, 0.0, 0.5}.validate()), InvalidFractions);
  CHECK_NOTHROW((SqueezedParams{10.0, 0.3, 0.5}.validate()));
  const FisherResult r = cfi_squeezed(SqueezedParams{1e4, 0.2, 0.3}, LossChannel(1.0, 1e-4));
  CHECK(r.kind == FisherKind::CFI);
  CHECK_FALSE(r.note.empty());
  CHECK(r.value > 0.0);
  const SqueezedOptimum o = optimize_squeezed(1.0);
  CHECK(o.value >= cfi_squeezed_poisson(1.0, 0.25, 0.25) - 1e-12);
  CHECK(o.beta_r + o.beta_s <= 1.0 + 1e-12);
}
