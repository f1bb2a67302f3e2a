#include "photometrix/core.hpp"
#include "photometrix/errors.hpp"
#include "photometrix/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace photometrix {

double PhotonPMF::total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

double PhotonPMF::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) m += static_cast<double>(k) * probs[k];
  return m;
}

PhotonPMF PhotonPMF::renormalized() const {
  PhotonPMF out{probs, 0.0};
  const double s = total();
  if (s > 0.0)
    for (double& p : out.probs) p /= s;
  return out;
}

PhotonPMF PhotonPMF::truncated(std::size_t k_max) const {
  if (k_max + 1 >= probs.size()) return *this;
  PhotonPMF out;
  out.probs.assign(probs.begin(), probs.begin() + static_cast<std::ptrdiff_t>(k_max + 1));
  out.tail_mass = tail_mass + std::accumulate(probs.begin() + static_cast<std::ptrdiff_t>(k_max + 1),
                                              probs.end(), 0.0);
  return out;
}

LossChannel::LossChannel(double gamma, double t, double eta) : gamma_(gamma), t_(t), eta_(eta) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("loss rate must be >= 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("duration must be >= 0");
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("detector efficiency must be in (0, 1]");
}

double LossChannel::mu() const { return 1.0 - eta_ * std::exp(-gamma_ * t_); }

double LossChannel::mu_abs() const { return -std::expm1(-gamma_ * t_); }

MixedFockDecomposition::MixedFockDecomposition(std::vector<double> weights,
                                               std::vector<FockLabel> labels, double t, double g)
    : weights_(std::move(weights)), labels_(std::move(labels)), t_(t), g_(g) {
  if (weights_.size() != labels_.size())
    throw InvalidArgument("decomposition needs one weight per label");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw InvalidArgument("decomposition weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InvalidArgument("decomposition weights must sum to 1");
  std::set<std::pair<int, int>> seen;
  for (const auto& l : labels_) {
    if (l.a < 0 || l.b < 0) throw InvalidArgument("negative photon number in label");
    if (!seen.emplace(l.a, l.b).second) throw InvalidArgument("decomposition labels must be distinct");
  }
}

MixedFockDecomposition MixedFockDecomposition::lossy_fock(int m, int l, double mu, double t) {
  const JointFockPMF joint = apply_loss_joint(m, l, mu);
  std::vector<double> w;
  std::vector<FockLabel> labels;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= l; ++j)
      if (joint.probs(i, j) > 0.0) {
        w.push_back(joint.probs(i, j));
        labels.push_back({i, j});
      }
  // Absorb rounding so the weights form a probability vector.
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= s;
  return {std::move(w), std::move(labels), t};
}

PhotonPMF binomial_loss_pmf(int n, double mu) {
  if (n < 0) throw InvalidArgument("photon count must be >= 0");
  if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidArgument("loss probability must be in [0, 1]");
  PhotonPMF pmf;
  pmf.probs.assign(static_cast<std::size_t>(n) + 1, 0.0);
  if (mu == 0.0) {
    pmf.probs[0] = 1.0;
    return pmf;
  }
  if (mu == 1.0) {
    pmf.probs[n] = 1.0;
    return pmf;
  }
  const double log_mu = std::log(mu);
  const double log_keep = std::log1p(-mu);
  for (int k = 0; k <= n; ++k)
    pmf.probs[k] = std::exp(numerics::log_binomial(n, k) + k * log_mu + (n - k) * log_keep);
  return pmf;
}

namespace {

double poisson_term(double lambda, int k) {
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

// Direct summation of the Poisson mass above k_max.
double poisson_tail(double lambda, int k_max) {
  if (lambda == 0.0) return 0.0;
  double tail = 0.0;
  for (int k = k_max + 1;; ++k) {
    const double p = poisson_term(lambda, k);
    tail += p;
    if (k > lambda && p < 1e-18 * std::max(tail, 1e-300)) break;
    if (k > lambda && p == 0.0) break;
  }
  return tail;
}

}  // namespace

PhotonPMF poisson_pmf(double lambda, int k_max) {
  if (!(lambda >= 0.0)) throw InvalidArgument("poisson mean must be >= 0");
  if (k_max < 0) throw InvalidArgument("cutoff must be >= 0");
  PhotonPMF pmf;
  pmf.probs.resize(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) pmf.probs[k] = poisson_term(lambda, k);
  pmf.tail_mass = poisson_tail(lambda, k_max);
  if (pmf.tail_mass > 1e-9) throw CutoffTooSmall(pmf.tail_mass, k_max);
  return pmf;
}

int poisson_cutoff(double lambda, double tail) {
  int k = static_cast<int>(std::ceil(lambda));
  while (poisson_tail(lambda, k) >= tail) k += 1 + k / 8;
  // Walk back to the smallest admissible cutoff.
  while (k > 0 && poisson_tail(lambda, k - 1) < tail) --k;
  return k;
}

JointFockPMF apply_loss_joint(int m, int l, double mu) {
  if (m < 0 || l < 0) throw InvalidArgument("photon numbers must be >= 0");
  const PhotonPMF lost_a = binomial_loss_pmf(m, mu);
  const PhotonPMF lost_b = binomial_loss_pmf(l, mu);
  JointFockPMF out;
  out.probs = Eigen::MatrixXd::Zero(m + 1, l + 1);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= l; ++j) out.probs(m - i, l - j) = lost_a[i] * lost_b[j];
  return out;
}

JointFockPMF apply_loss_joint(int m, int l, const LossChannel& channel) {
  return apply_loss_joint(m, l, channel.mu());
}

}  // namespace photometrix
