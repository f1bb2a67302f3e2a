#include "photometrix/errors.hpp"
#include "photometrix/fisher.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

namespace photometrix {

namespace {

// 1/beta_r + beta_r/beta_s - 3, the squeezing penalty in the denominator.
double squeeze_penalty(double beta_r, double beta_s) { return 1.0 / beta_r + beta_r / beta_s - 3.0; }

bool admissible(double br, double bs) { return br > 0.0 && br < 1.0 && bs > 0.0 && bs < 1.0 && br + bs <= 1.0; }

struct Vertex {
  double br;
  double bs;
  double value;
};

// Nelder-Mead maximization on the (beta_r, beta_s) simplex; points outside
// the admissible region score -inf.
Vertex nelder_mead(const std::function<double(double, double)>& f, Vertex start, double step,
                   double tol) {
  auto eval = [&](double br, double bs) {
    return admissible(br, bs) ? f(br, bs) : -std::numeric_limits<double>::infinity();
  };
  std::array<Vertex, 3> v{start, Vertex{start.br + step, start.bs, 0.0},
                          Vertex{start.br, start.bs + step, 0.0}};
  for (int i = 1; i < 3; ++i) {
    if (!admissible(v[i].br, v[i].bs)) {
      v[i].br = start.br - (i == 1 ? step : 0.0);
      v[i].bs = start.bs - (i == 2 ? step : 0.0);
    }
    v[i].value = eval(v[i].br, v[i].bs);
  }
  for (int it = 0; it < 2000; ++it) {
    std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
    const double spread = std::max(std::abs(v[0].br - v[2].br) + std::abs(v[0].bs - v[2].bs),
                                   std::abs(v[0].br - v[1].br) + std::abs(v[0].bs - v[1].bs));
    if (spread < tol) break;
    const double cr = 0.5 * (v[0].br + v[1].br);
    const double cs = 0.5 * (v[0].bs + v[1].bs);
    auto along = [&](double c) {
      const double br = cr + c * (v[2].br - cr);
      const double bs = cs + c * (v[2].bs - cs);
      return Vertex{br, bs, eval(br, bs)};
    };
    const Vertex refl = along(-1.0);
    if (refl.value > v[0].value) {
      const Vertex exp = along(-2.0);
      v[2] = exp.value > refl.value ? exp : refl;
    } else if (refl.value > v[1].value) {
      v[2] = refl;
    } else {
      const Vertex con = refl.value > v[2].value ? along(-0.5) : along(0.5);
      if (con.value > std::max(v[2].value, refl.value)) {
        v[2] = con;
      } else {
        for (int i = 1; i < 3; ++i) {
          v[i].br = 0.5 * (v[i].br + v[0].br);
          v[i].bs = 0.5 * (v[i].bs + v[0].bs);
          v[i].value = eval(v[i].br, v[i].bs);
        }
      }
    }
  }
  std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
  return v[0];
}

}  // namespace

FisherResult cfi_squeezed(const SqueezedParams& params, const LossChannel& channel) {
  params.validate();
  const double t = channel.t();
  const double mu = channel.mu();
  const double n = params.n_mean;
  const double c = 1.0 - 2.0 * params.beta_r;
  const double denom = n * mu / (1.0 - mu) + 0.25 * squeeze_penalty(params.beta_r, params.beta_s);
  FisherResult r;
  r.value = denom > 0.0 ? n * n * t * t * c * c / denom : 0.0;
  r.kind = FisherKind::CFI;
  r.probe = probe::Squeezed{params};
  r.channel = channel;
  r.note = "large-N approximation, valid for N >> 1";
  return r;
}

double cfi_squeezed_poisson(double n_abs, double beta_r, double beta_s, double gamma) {
  SqueezedParams{0.0, beta_r, beta_s}.validate();
  if (!(n_abs >= 0.0)) throw InvalidArgument("absorbed photon number must be >= 0");
  const double c = 1.0 - 2.0 * beta_r;
  const double denom = 4.0 * n_abs + squeeze_penalty(beta_r, beta_s);
  if (denom <= 0.0) return 0.0;
  return n_abs * n_abs / (gamma * gamma) * 4.0 * c * c / denom;
}

SqueezedOptimum optimize_squeezed(double n_abs, double gamma) {
  if (!(n_abs > 0.0)) throw InvalidArgument("absorbed photon number must be > 0");
  auto f = [&](double br, double bs) { return cfi_squeezed_poisson(n_abs, br, bs, gamma); };
  constexpr int kGrid = 200;
  Vertex best{0.0, 0.0, -1.0};
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double br = (i + 0.5) / kGrid;
      const double bs = (j + 0.5) / kGrid;
      if (!admissible(br, bs)) continue;
      const double v = f(br, bs);
      if (v > best.value) best = {br, bs, v};
    }
  }
  const Vertex refined = nelder_mead(f, best, 0.5 / kGrid, 1e-8);
  const Vertex& out = refined.value >= best.value ? refined : best;
  return {out.br, out.bs, out.value};
}

}  // namespace photometrix
