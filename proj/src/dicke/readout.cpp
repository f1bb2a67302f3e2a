#include "photometrix/dicke.hpp"
#include "photometrix/errors.hpp"

#include <cmath>
#include <vector>

namespace photometrix::dicke {

double p_error(const DickeConfig& config, int n_photons, int rounds) {
  config.validate();
  if (n_photons < 0) throw InvalidArgument("photon number must be >= 0");
  if (rounds < 1) throw InvalidArgument("need at least one absorption round");
  if (n_photons == 0) return 0.0;
  const double t = t_meas(config);

  // transfer[r][r'] = P(r' photons left | r photons enter a fresh window)
  std::vector<std::vector<double>> transfer(n_photons + 1);
  transfer[0] = {1.0};
  for (int r = 1; r <= n_photons; ++r) {
    const SectorPropagator prop(build_sector(config, r, Regime::Absorption));
    const auto p = prop.probabilities(t, prop.sector().index_of_photons(r));
    transfer[r].assign(r + 1, 0.0);
    for (int i = 0; i < prop.sector().dimension(); ++i) transfer[r][prop.sector().photons[i]] = p[i];
  }

  std::vector<double> dist(n_photons + 1, 0.0);
  dist[n_photons] = 1.0;
  for (int round = 0; round < rounds; ++round) {
    std::vector<double> next(n_photons + 1, 0.0);
    for (int r = 0; r <= n_photons; ++r) {
      if (dist[r] == 0.0) continue;
      for (int k = 0; k <= r; ++k) next[k] += dist[r] * transfer[r][k];
    }
    dist = std::move(next);
  }
  return std::max(0.0, 1.0 - dist[0]);
}

double eta_from_perror(double p, int n_photons) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("error probability must be in [0, 1]");
  if (n_photons < 0) throw InvalidArgument("photon number must be >= 0");
  if (n_photons == 0) return 1.0;
  return std::pow(1.0 - p, 1.0 / n_photons);
}

}  // namespace photometrix::dicke
