#include "photometrix/errors.hpp"
#include "photometrix/numerics.hpp"
#include "photometrix/protocol.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace photometrix {

namespace {

ProbeSpec twin_fock_of(int n_total) {
  if (n_total < 2 || n_total % 2 != 0)
    throw InvalidArgument("twin-Fock photon number must be even and >= 2");
  return probe::TwinFock{n_total / 2};
}

constexpr double kEtaFloor = 1e-9;

}  // namespace

double advantage_ratio(BoundaryFamily family, int n_total, double n_abs_value, double eta,
                       double gamma_t_ext, double gamma) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("efficiency must be in (0, 1]");
  if (!(gamma_t_ext >= 0.0)) throw InvalidArgument("overhead must be >= 0");
  const double t_ext = gamma_t_ext / gamma;
  switch (family) {
    case BoundaryFamily::TfsQfi: {
      const ProbeSpec p = twin_fock_of(n_total);
      return protocol_advantage(p, n_abs_value, eta, t_ext, gamma, default_engine(p));
    }
    case BoundaryFamily::TfsNrm: {
      const ProbeSpec p = twin_fock_of(n_total);
      return protocol_advantage(p, n_abs_value, eta, t_ext, gamma, nrm_zero_engine(p));
    }
    case BoundaryFamily::GeneralFixedN: {
      double t = saturation_time(n_total, n_abs_value, gamma);
      t = std::min(t, max_interrogation_time(gamma));
      return j_of_t(t, gamma, eta, t_ext);
    }
    case BoundaryFamily::GeneralAnyT:
      return max_j(gamma, eta, t_ext);
  }
  throw InvalidArgument("unknown boundary family");
}

double boundary_eta(BoundaryFamily family, int n_total, double n_abs_value, double gamma_t_ext,
                    double gamma, double tol) {
  auto excess = [&](double eta) {
    return advantage_ratio(family, n_total, n_abs_value, eta, gamma_t_ext, gamma) - 1.0;
  };
  const double top = excess(1.0);
  if (!(top > 0.0))
    throw NoCrossing("advantage ratio stays below 1 for every efficiency at gamma t_ext = " +
                     std::to_string(gamma_t_ext));
  // Bisection needs a ratio that grows with eta.
  double prev = excess(kEtaFloor);
  for (double eta : numerics::linspace(0.05, 1.0, 20)) {
    const double cur = excess(eta);
    if (cur < prev - 1e-9 * std::max(1.0, std::abs(prev)))
      throw Error("advantage ratio is not monotone in the detector efficiency");
    prev = cur;
  }
  if (excess(kEtaFloor) >= 0.0) return kEtaFloor;
  return numerics::bisect(excess, kEtaFloor, 1.0, tol);
}

std::vector<double> default_overhead_grid(int points) { return numerics::logspace(1e-3, 1.0, points); }

std::vector<BoundaryPoint> advantage_boundary(BoundaryFamily family, int n_total,
                                              double n_abs_value,
                                              const std::vector<double>& gamma_t_ext_grid,
                                              double gamma, double tol) {
  std::vector<BoundaryPoint> out;
  out.reserve(gamma_t_ext_grid.size());
  for (double x : gamma_t_ext_grid) {
    BoundaryPoint p;
    p.gamma_t_ext = x;
    try {
      p.eta = boundary_eta(family, n_total, n_abs_value, x, gamma, tol);
      p.crossing = true;
    } catch (const NoCrossing&) {
      p.eta = std::numeric_limits<double>::quiet_NaN();
      p.crossing = false;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace photometrix
