#include "photometrix/dicke.hpp"
#include "photometrix/errors.hpp"
#include "photometrix/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace photometrix::dicke {

void DickeConfig::validate() const {
  if (n_atoms < 1) throw InvalidArgument("need at least one atom per cavity");
  if (!(coupling > 0.0)) throw InvalidArgument("coupling J must be > 0");
  if (!std::isfinite(omega)) throw InvalidArgument("bare frequency must be finite");
  if (!(n_target >= 0.0)) throw InvalidArgument("target photon number must be >= 0");
}

int LadderSector::index_of_photons(int k) const {
  if (photons.empty() || k < photons.front() || k > photons.back())
    throw IndexOutOfRange("photon number outside the sector");
  return k - photons.front();
}

LadderSector build_sector(const DickeConfig& config, int excitations, Regime regime) {
  config.validate();
  if (excitations < 0) throw InvalidArgument("excitation count must be >= 0");
  const int n_at = config.n_atoms;
  const double j = config.coupling;
  LadderSector s;
  s.excitations = excitations;
  s.regime = regime;
  s.diagonal = config.omega * excitations;
  // Basis (k photons, E - k excitations). Moving one excitation from the
  // symmetric atomic state with e = E - k excitations into the cavity costs
  // sqrt(k + 1) from the field and sqrt(e (N - e + 1)) from the collective spin.
  int k_min = 0;
  if (regime == Regime::Preparation) {
    if (excitations > n_at) throw InvalidArgument("cannot excite more atoms than there are");
  } else {
    k_min = std::max(0, excitations - n_at);
  }
  for (int k = k_min; k <= excitations; ++k) s.photons.push_back(k);
  for (int k = k_min; k < excitations; ++k) {
    const double e = excitations - k;
    s.couplings.push_back(j * std::sqrt((k + 1.0) * e * (n_at - e + 1.0)));
  }
  return s;
}

SectorPropagator::SectorPropagator(const LadderSector& sector) : sector_(sector) {
  const int d = sector.dimension();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) h(i, i) = sector.diagonal;
  for (int i = 0; i + 1 < d; ++i) {
    h(i, i + 1) = sector.couplings[i];
    h(i + 1, i) = sector.couplings[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  energies_ = es.eigenvalues();
  modes_ = es.eigenvectors();
}

std::vector<std::complex<double>> SectorPropagator::evolve(double t, int initial_index) const {
  const int d = sector_.dimension();
  if (initial_index < 0 || initial_index >= d) throw IndexOutOfRange("initial state outside the sector");
  Eigen::VectorXcd c(d);
  for (int e = 0; e < d; ++e)
    c(e) = modes_(initial_index, e) * std::exp(std::complex<double>(0.0, -energies_(e) * t));
  const Eigen::VectorXcd psi = modes_.cast<std::complex<double>>() * c;
  return {psi.data(), psi.data() + d};
}

std::vector<double> SectorPropagator::probabilities(double t, int initial_index) const {
  const auto psi = evolve(t, initial_index);
  std::vector<double> p(psi.size());
  std::transform(psi.begin(), psi.end(), p.begin(), [](const auto& a) { return std::norm(a); });
  return p;
}

std::vector<std::complex<double>> evolve_sector(const LadderSector& sector, double t,
                                                int initial_index) {
  return SectorPropagator(sector).evolve(t, initial_index);
}

namespace {

PhotonPMF preparation_pmf(const SectorPropagator& prop, double t) {
  PhotonPMF pmf;
  pmf.probs = prop.probabilities(t, prop.sector().index_of_photons(0));
  return pmf;
}

}  // namespace

PhotonPMF photon_pmf(const DickeConfig& config, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("time must be >= 0");
  const SectorPropagator prop(build_sector(config, config.n_atoms, Regime::Preparation));
  return preparation_pmf(prop, t);
}

double mean_photons(const DickeConfig& config, double t) { return photon_pmf(config, t).mean(); }

double peak_photon_time(const DickeConfig& config) {
  const SectorPropagator prop(build_sector(config, config.n_atoms, Regime::Preparation));
  auto mean = [&](double t) { return preparation_pmf(prop, t).mean(); };
  const double root = std::sqrt(static_cast<double>(config.n_atoms)) * config.coupling;
  // Generous window around the superradiant switch time log(4N)/(2 J sqrt N).
  const double t_hi = 2.0 * std::log(4.0 * config.n_atoms + 4.0) / root + 2.0 / root;
  const int n_scan = 400;
  const auto ts = numerics::linspace(0.0, t_hi, n_scan);
  double prev = mean(ts[0]);
  for (int i = 1; i < n_scan; ++i) {
    const double cur = mean(ts[i]);
    if (cur < prev) {
      const double lo = ts[std::max(0, i - 2)];
      return numerics::golden_section_max(mean, lo, ts[i], 1e-12).x;
    }
    prev = cur;
  }
  throw Error("no photon-number maximum found in the scan window");
}

double t_prep(const DickeConfig& config) {
  config.validate();
  return std::asinh(std::sqrt(config.n_target)) /
         (std::sqrt(static_cast<double>(config.n_atoms)) * config.coupling);
}

double t_meas(const DickeConfig& config) {
  config.validate();
  return 3.14159265358979323846 /
         (2.0 * config.coupling * std::sqrt(static_cast<double>(config.n_atoms)));
}

double q_linear(double n, int k) {
  if (!(n >= 0.0) || k < 0) throw InvalidArgument("q_linear needs n >= 0 and k >= 0");
  if (n == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(n) - (k + 1) * std::log1p(n));
}

PhotonPMF q_linear_pmf(double n, double tail) {
  PhotonPMF pmf;
  if (n == 0.0) {
    pmf.probs = {1.0};
    return pmf;
  }
  // Mass beyond k is (n / (n + 1))^{k + 1}.
  const double r = n / (n + 1.0);
  const int k_max = std::max(0, static_cast<int>(std::ceil(std::log(tail) / std::log(r))) - 1);
  for (int k = 0; k <= k_max; ++k) pmf.probs.push_back(q_linear(n, k));
  pmf.tail_mass = std::pow(r, k_max + 1);
  return pmf;
}

}  // namespace photometrix::dicke
