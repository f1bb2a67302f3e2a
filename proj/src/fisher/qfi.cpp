#include "photometrix/errors.hpp"
#include "photometrix/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace photometrix {

void SqueezedParams::validate() const {
  if (!(n_mean >= 0.0)) throw InvalidFractions("mean photon number must be >= 0");
  if (!(beta_r > 0.0 && beta_r < 1.0)) throw InvalidFractions("beta_r must lie in (0, 1)");
  if (!(beta_s > 0.0 && beta_s < 1.0)) throw InvalidFractions("beta_s must lie in (0, 1)");
  if (beta_r + beta_s > 1.0) throw InvalidFractions("beta_r + beta_s must not exceed 1");
}

double total_photons(const ProbeSpec& p) {
  struct {
    double operator()(const probe::Coherent& c) const { return c.n_mean; }
    double operator()(const probe::TwinFock& c) const { return 2.0 * c.n; }
    double operator()(const probe::Noon& c) const { return c.n; }
    double operator()(const probe::FockPair& c) const { return c.m + c.l; }
    double operator()(const probe::Squeezed& c) const { return c.params.n_mean; }
  } visitor;
  return std::visit(visitor, p);
}

std::string describe(const ProbeSpec& p) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, probe::Coherent>)
          os << "coherent(N=" << c.n_mean << ")";
        else if constexpr (std::is_same_v<T, probe::TwinFock>)
          os << "tfs(n=" << c.n << ")";
        else if constexpr (std::is_same_v<T, probe::Noon>)
          os << "noon(N=" << c.n << ")";
        else if constexpr (std::is_same_v<T, probe::FockPair>)
          os << "fock(m=" << c.m << ", l=" << c.l << ")";
        else
          os << "squeezed(N=" << c.params.n_mean << ", beta_r=" << c.params.beta_r
             << ", beta_s=" << c.params.beta_s << ")";
      },
      p);
  return os.str();
}

namespace {

FisherResult make_result(double value, FisherKind kind, ProbeSpec probe,
                         const LossChannel& channel, double g = 0.0, std::string note = {}) {
  FisherResult r;
  r.value = value;
  r.kind = kind;
  r.probe = std::move(probe);
  r.channel = channel;
  r.g = g;
  r.note = std::move(note);
  return r;
}

// Index range carrying all but a negligible part of a pmf.
std::pair<int, int> support(const PhotonPMF& p) {
  double top = 0.0;
  for (double x : p.probs) top = std::max(top, x);
  const double floor = 1e-17 * top;
  int lo = 0;
  int hi = static_cast<int>(p.probs.size()) - 1;
  while (lo < hi && p.probs[lo] < floor) ++lo;
  while (hi > lo && p.probs[hi] < floor) --hi;
  return {lo, hi};
}

// remaining * gain * (1/2 - 1/(1 + gain*lost_self_plus1 / (lost_partner*remaining))),
// rearranged so lost_partner = 0 needs no special case.
double kernel(double lost_partner, double remaining, double gain, double lost_self_plus1) {
  if (remaining == 0.0 || gain == 0.0) return 0.0;
  const double a = lost_partner * remaining;
  const double b = gain * lost_self_plus1;
  return remaining * gain * (0.5 - a / (a + b));
}

}  // namespace

FisherResult qfi_coherent(double n_mean, const LossChannel& channel) {
  if (!(n_mean >= 0.0)) throw InvalidArgument("mean photon number must be >= 0");
  const double t = channel.t();
  const double v = t * t * n_mean * channel.eta() * std::exp(-channel.gamma() * t);
  return make_result(v, FisherKind::QFI, probe::Coherent{n_mean}, channel);
}

double qfi_upper_bound(double n_total, double mu, double t) {
  if (mu == 0.0) throw MuZero();
  if (!(mu > 0.0 && mu <= 1.0)) throw InvalidArgument("loss probability must be in (0, 1]");
  return t * t * n_total * (1.0 - mu) / mu;
}

double qfi_upper_bound(double n_total, const LossChannel& channel) {
  return qfi_upper_bound(n_total, channel.mu(), channel.t());
}

double qfi_fock_pair(int m, int l, double mu, double t) {
  if (m < 0 || l < 0) throw InvalidArgument("photon numbers must be >= 0");
  const PhotonPMF pm = binomial_loss_pmf(m, mu);
  const PhotonPMF pl = binomial_loss_pmf(l, mu);
  const auto [jlo, jhi] = support(pm);
  const auto [ilo, ihi] = support(pl);
  long double acc = 0.0L;
  // i photons lost from the l-mode, j from the m-mode.
  for (int i = ilo; i <= ihi; ++i) {
    for (int j = jlo; j <= jhi; ++j) {
      const double w = pl[i] * pm[j];
      if (w == 0.0) continue;
      const double first = kernel(j, l - i, m - j + 1, i + 1);
      const double second = kernel(i, m - j, l - i + 1, j + 1);
      acc += static_cast<long double>(w) * (first + second);
    }
  }
  return 2.0 * t * t * static_cast<double>(acc);
}

FisherResult qfi_fock_pair(int m, int l, const LossChannel& channel) {
  return make_result(qfi_fock_pair(m, l, channel.mu(), channel.t()), FisherKind::QFI,
                     probe::FockPair{m, l}, channel);
}

double qfi_tfs_exact(int n, double mu, double t) {
  if (n < 1) throw InvalidArgument("twin-Fock photon number must be >= 1");
  const PhotonPMF p = binomial_loss_pmf(n, mu);
  const auto [lo, hi] = support(p);
  long double acc = 0.0L;
  for (int i = lo; i <= hi; ++i)
    for (int j = lo; j <= hi; ++j) {
      const double w = p[i] * p[j];
      if (w == 0.0) continue;
      acc += static_cast<long double>(w) * kernel(j, n - i, n - j + 1, i + 1);
    }
  return 4.0 * t * t * static_cast<double>(acc);
}

FisherResult qfi_tfs_exact(int n, const LossChannel& channel) {
  return make_result(qfi_tfs_exact(n, channel.mu(), channel.t()), FisherKind::QFI,
                     probe::TwinFock{n}, channel);
}

double qfi_tfs_poisson(double n_abs, double gamma) {
  if (!(n_abs >= 0.0)) throw InvalidArgument("absorbed photon number must be >= 0");
  if (!(gamma > 0.0)) throw InvalidArgument("loss rate must be > 0");
  if (n_abs == 0.0) return 0.0;
  const double lambda = 0.5 * n_abs;
  const PhotonPMF p = poisson_pmf(lambda, poisson_cutoff(lambda, 1e-12));
  long double acc = 0.0L;
  for (std::size_t i = 0; i < p.probs.size(); ++i)
    for (std::size_t j = 0; j < p.probs.size(); ++j)
      acc += static_cast<long double>(p.probs[i] * p.probs[j]) *
             (0.5 - static_cast<double>(j) / static_cast<double>(i + 1 + j));
  return n_abs * n_abs * static_cast<double>(acc) / (gamma * gamma);
}

double qfi_noon(int n, double mu, double t) {
  if (n < 1) throw InvalidArgument("NOON photon number must be >= 1");
  return static_cast<double>(n) * n * t * t * std::pow(1.0 - mu, n);
}

FisherResult qfi_noon(int n, const LossChannel& channel) {
  return make_result(qfi_noon(n, channel.mu(), channel.t()), FisherKind::QFI, probe::Noon{n},
                     channel);
}

double qfi_noon_poisson(double n_abs, double gamma) {
  if (!(n_abs >= 0.0)) throw InvalidArgument("absorbed photon number must be >= 0");
  return n_abs * n_abs * std::exp(-n_abs) / (gamma * gamma);
}

}  // namespace photometrix
