#include "photometrix/dicke.hpp"
#include "photometrix/errors.hpp"
#include "photometrix/numerics.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace photometrix::dicke {

namespace {

namespace odeint = boost::numeric::odeint;

// (Re alpha, Im alpha, Re beta, Im beta)
using State = std::array<double, 4>;

void rhs(const State& x, State& dxdt, double /*t*/) {
  const std::complex<double> a(x[0], x[1]);
  const std::complex<double> b(x[2], x[3]);
  const std::complex<double> mi(0.0, -1.0);
  const std::complex<double> da = mi * b * b * 0.5;
  const std::complex<double> db = mi * std::conj(b) * a;
  dxdt = {da.real(), da.imag(), db.real(), db.imag()};
}

State initial_state(double n) { return {0.0, std::sqrt(n), 1.0, 0.0}; }

// Integrates x from t0 to t1 in place.
void advance(State& x, double t0, double t1, const OdeTolerances& tol) {
  if (t1 <= t0) return;
  auto stepper = odeint::make_controlled(tol.absolute, tol.relative,
                                        odeint::runge_kutta_dopri5<State>());
  double t = t0;
  double dt = (t1 - t0) / 100.0;
  const double end_slack = 1e-14 * std::max(1.0, std::abs(t1));
  for (int attempts = 0; t1 - t > end_slack; ++attempts) {
    if (attempts > 1000000 || dt < 1e-15 * std::max(1.0, std::abs(t)))
      throw ODEFailure("mean-field integration stalled at t = " + std::to_string(t));
    // Land exactly on t1 instead of overshooting.
    dt = std::min(dt, t1 - t);
    stepper.try_step(rhs, x, t, dt);
  }
  for (double v : x)
    if (!std::isfinite(v)) throw ODEFailure("mean-field integration produced a non-finite state");
}

}  // namespace

std::vector<MeanFieldSample> meanfield_evolve(double n, double t_end, int n_samples,
                                              const OdeTolerances& tol) {
  if (!(n >= 2.0)) throw InvalidArgument("mean-field switch needs N >= 2");
  if (!(t_end > 0.0) || n_samples < 1) throw InvalidArgument("need a positive time span");
  std::vector<MeanFieldSample> out;
  out.reserve(n_samples + 1);
  State x = initial_state(n);
  double t = 0.0;
  out.push_back({0.0, {x[0], x[1]}, {x[2], x[3]}});
  for (int i = 1; i <= n_samples; ++i) {
    const double t_next = t_end * i / n_samples;
    advance(x, t, t_next, tol);
    t = t_next;
    out.push_back({t, {x[0], x[1]}, {x[2], x[3]}});
  }
  return out;
}

double switch_time(double n, const OdeTolerances& tol) {
  // Sample past the predicted switch, then refine on the best bracket.
  double t_end = 3.0 * switch_time_formula(n);
  for (int attempt = 0; attempt < 8; ++attempt, t_end *= 2.0) {
    const int samples = 400;
    const auto traj = meanfield_evolve(n, t_end, samples, tol);
    int best = 0;
    for (int i = 1; i <= samples; ++i)
      if (std::norm(traj[i].beta) > std::norm(traj[best].beta)) best = i;
    if (best == samples) continue;
    const int lo = std::max(0, best - 1);
    const State start{traj[lo].alpha.real(), traj[lo].alpha.imag(), traj[lo].beta.real(),
                      traj[lo].beta.imag()};
    const double t0 = traj[lo].t;
    auto photons = [&](double t) {
      State x = start;
      advance(x, t0, t, tol);
      return x[2] * x[2] + x[3] * x[3];
    };
    return numerics::golden_section_max(photons, t0, traj[best + 1].t, 1e-12).x;
  }
  throw ODEFailure("no photon maximum found on the mean-field trajectory");
}

double switch_time_formula(double n) {
  if (!(n > 0.0)) throw InvalidArgument("N must be > 0");
  return std::log(4.0 * n) / (2.0 * std::sqrt(n));
}

}  // namespace photometrix::dicke
