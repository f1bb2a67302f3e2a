#include "photometrix/cli/pipelines.hpp"

#include "photometrix/cli/csv.hpp"
#include "photometrix/dicke.hpp"
#include "photometrix/errors.hpp"
#include "photometrix/fisher.hpp"
#include "photometrix/numerics.hpp"
#include "photometrix/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace photometrix::cli {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::string join(const std::string& dir, const std::string& file) {
  if (dir.empty() || dir == ".") return file;
  return dir.back() == '/' ? dir + file : dir + "/" + file;
}

// lo, every 10^(k / per_decade) strictly inside (lo, hi), and hi. Round
// values such as 1 land on the grid exactly.
std::vector<double> decade_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi >= lo) || per_decade < 1)
    throw ConfigError("grid needs 0 < min <= max and at least one point per decade");
  std::vector<double> out{lo};
  const int k_lo = static_cast<int>(std::floor(per_decade * std::log10(lo))) + 1;
  const int k_hi = static_cast<int>(std::ceil(per_decade * std::log10(hi))) - 1;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double v = std::pow(10.0, static_cast<double>(k) / per_decade);
    if (v > lo && v < hi) out.push_back(v);
  }
  if (hi > lo) out.push_back(hi);
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

std::vector<double> absorbed_grid(Params& p, double lo, double hi, int per_decade) {
  const double n_lo = p.number("n_abs_min", lo);
  const double n_hi = p.number("n_abs_max", hi);
  const int pd = p.integer("per_decade", per_decade);
  return decade_grid(n_lo, n_hi, pd);
}

std::vector<double> overhead_grid(Params& p, int points) {
  const double lo = p.number("t_ext_min", 1e-3);
  const double hi = p.number("t_ext_max", 1.0);
  const int n = p.integer("points", points);
  require(lo > 0.0 && hi >= lo && n >= 1, "overhead grid needs 0 < t_ext_min <= t_ext_max");
  return numerics::logspace(lo, hi, n);
}

void check_even(const std::vector<int>& ns) {
  for (int n : ns) require(n >= 2 && n % 2 == 0, "twin-Fock photon numbers N must be even and >= 2");
}

// --- Fig. 1 ---------------------------------------------------------------

std::vector<OutputFile> fig1(Params& p, const std::string& out) {
  const double gamma = p.number("gamma", 1.0);
  const auto grid = absorbed_grid(p, 0.05, 5.0, 8);
  NrmPoissonOptions opts;
  opts.gamma = gamma;
  opts.n_per_mode = p.integer("n_per_mode", 500);
  opts.q_max = p.integer("q_max", 10);
  p.finish();

  CsvWriter csv(join(out, "fig1.csv"), {"N_abs", "qfi_tfs", "qfi_noon", "cfi_nrm_g0",
                                         "cfi_nrm_gstar", "cfi_squeezed", "upper_bound"});
  for (double n_abs : grid) {
    const double g0 = cfi_nrm_poisson(n_abs, 0.0, opts);
    const double gstar = std::max(g0, optimize_cfi_nrm_poisson(n_abs, opts).value);
    csv.row({n_abs, qfi_tfs_poisson(n_abs, gamma), qfi_noon_poisson(n_abs, gamma), g0, gstar,
             optimize_squeezed(n_abs, gamma).value, n_abs / (gamma * gamma)});
  }
  return {{"fig1.csv", csv.rows()}};
}

// --- Fig. 2 / Fig. 3(a) and the appendix noise figure ---------------------

struct PrecisionCurveDefaults {
  const char* file;
  double eta;
  double t_ext;
  std::vector<int> n_values;
  bool with_nrm;
};

std::vector<OutputFile> precision_curves(Params& p, const std::string& out,
                                         const PrecisionCurveDefaults& d) {
  const double total_time = p.number("T", 10.0);
  const double gamma = p.number("gamma", 1.0);
  const double eta = p.number("eta", d.eta);
  const double gamma_t_ext = p.number("t_ext", d.t_ext);
  const auto ns = p.integers("N", d.n_values);
  const auto grid = absorbed_grid(p, 0.01, 10.0, 8);
  p.finish();
  check_even(ns);

  std::vector<std::string> header{"N_abs", "N", "dg2_per_gT", "nu_opt", "classical"};
  if (d.with_nrm) header = {"N_abs", "N", "qfi_per_gT", "nrm_per_gT", "classical"};
  CsvWriter csv(join(out, d.file), header);
  for (int n : ns) {
    const ProbeSpec probe = probe::TwinFock{n / 2};
    for (double n_abs_value : grid) {
      Budget b{total_time, n_abs_value, gamma_t_ext / gamma, eta};
      const PrecisionResult q = optimize_nu(probe, b, gamma);
      const double norm = gamma * total_time;
      const double classical = n_abs_value / (gamma * gamma);
      if (d.with_nrm) {
        const PrecisionResult c = optimize_nu(probe, b, gamma, nrm_zero_engine(probe));
        csv.row({n_abs_value, static_cast<long long>(n), q.accumulated / norm,
                 c.accumulated / norm, classical});
      } else {
        csv.row({n_abs_value, static_cast<long long>(n), q.accumulated / norm, q.nu, classical});
      }
    }
  }
  return {{d.file, csv.rows()}};
}

std::vector<OutputFile> fig2(Params& p, const std::string& out) {
  return precision_curves(p, out, {"fig2.csv", 1.0, 0.0, {2, 4, 6, 8}, false});
}

std::vector<OutputFile> fig3a(Params& p, const std::string& out) {
  return precision_curves(p, out, {"fig3a.csv", 0.96, 0.04, {2, 4, 6, 8, 12, 16, 20}, false});
}

std::vector<OutputFile> app_tfs_noise(Params& p, const std::string& out) {
  return precision_curves(p, out, {"app_tfs_noise.csv", 0.95, 0.05, {2, 4, 8, 12, 16, 20}, true});
}

// --- Fig. 3(b) ------------------------------------------------------------

void write_boundary(CsvWriter& csv, const std::string& family, int n,
                    const std::vector<BoundaryPoint>& curve) {
  for (const auto& pt : curve)
    csv.row({family, static_cast<long long>(n), pt.gamma_t_ext, pt.eta, 1.0 - pt.eta,
             static_cast<long long>(pt.crossing)});
}

std::vector<OutputFile> fig3b(Params& p, const std::string& out) {
  const double gamma = p.number("gamma", 1.0);
  const double n_abs_value = p.number("n_abs", 1.0);
  const auto ns = p.integers("N", {2, 4, 8, 12, 16, 20});
  const double tol = p.number("tol", 1e-6);
  const auto grid = overhead_grid(p, 200);
  const bool envelope = p.flag("envelope", true);
  const auto env_ns =
      p.integers("envelope_N", {2, 4, 6, 8, 10, 12, 16, 20, 24, 32, 40, 50, 64, 80, 100, 128, 160, 200});
  const int env_points = p.integer("envelope_points", 40);
  p.finish();
  check_even(ns);
  check_even(env_ns);
  require(env_points >= 1, "envelope_points must be >= 1");

  std::vector<OutputFile> files;
  CsvWriter csv(join(out, "fig3b.csv"), {"family", "N", "gamma_t_ext", "eta", "one_minus_eta", "crossing"});
  for (int n : ns)
    write_boundary(csv, "tfs_qfi", n,
                   advantage_boundary(BoundaryFamily::TfsQfi, n, n_abs_value, grid, gamma, tol));
  files.push_back({"fig3b.csv", csv.rows()});

  if (envelope) {
    // Grey region: efficiency below which no TFS in the list beats the classical bound.
    const auto env_grid = numerics::logspace(grid.front(), grid.back(), env_points);
    std::vector<std::vector<BoundaryPoint>> curves;
    for (int n : env_ns)
      curves.push_back(advantage_boundary(BoundaryFamily::TfsQfi, n, n_abs_value, env_grid, gamma, tol));
    CsvWriter env(join(out, "fig3b_envelope.csv"),
                  {"gamma_t_ext", "eta", "one_minus_eta", "N_best", "crossing"});
    for (std::size_t i = 0; i < env_grid.size(); ++i) {
      double best = std::numeric_limits<double>::quiet_NaN();
      long long best_n = 0;
      for (std::size_t c = 0; c < curves.size(); ++c) {
        const BoundaryPoint& pt = curves[c][i];
        if (pt.crossing && !(pt.eta >= best)) {
          best = pt.eta;
          best_n = env_ns[c];
        }
      }
      env.row({env_grid[i], best, 1.0 - best, best_n, static_cast<long long>(best_n != 0)});
    }
    files.push_back({"fig3b_envelope.csv", env.rows()});
  }
  return files;
}

// --- cavity figures -------------------------------------------------------

dicke::DickeConfig cavity_config(int n_atoms, double coupling, double omega, double n_target) {
  dicke::DickeConfig c;
  c.n_atoms = n_atoms;
  c.coupling = coupling;
  c.omega = omega;
  c.n_target = n_target;
  c.validate();
  return c;
}

std::vector<OutputFile> cavity_perror(Params& p, const std::string& out) {
  const double coupling = p.number("J", 1.0);
  const double omega = p.number("omega", 1.0);
  const auto atoms = p.integers("n_atoms", {20, 40, 100});
  const int n_max = p.integer("n_max", 10);
  const auto rounds = p.integers("rounds", {1, 2});
  const int haas_atoms = p.integer("haas_n_atoms", 40);
  const double haas_j_hz = p.number("haas_coupling_hz", 170e6);
  const double haas_kappa_hz = p.number("haas_kappa_hz", 52e6);
  const int haas_n = p.integer("haas_n", 8);
  p.finish();
  require(n_max >= 1, "n_max must be >= 1");
  for (int r : rounds) require(r >= 1, "rounds must be >= 1");

  CsvWriter csv(join(out, "cavity_perror.csv"), {"N_at", "n", "rounds", "p_error", "eta"});
  for (int n_at : atoms) {
    const auto cfg = cavity_config(n_at, coupling, omega, 1.0);
    for (int r : rounds)
      for (int n = 1; n <= n_max; ++n) {
        const double pe = dicke::p_error(cfg, n, r);
        csv.row({static_cast<long long>(n_at), static_cast<long long>(n), static_cast<long long>(r),
                 pe, dicke::eta_from_perror(pe, n)});
      }
  }

  // Worked example with SI rates: J and kappa given in Hz, used as 2 pi f.
  const double j_rad = kTwoPi * haas_j_hz;
  const double kappa_rad = kTwoPi * haas_kappa_hz;
  const auto haas = cavity_config(haas_atoms, j_rad, 0.0, haas_n);
  const double tp = dicke::t_prep(haas);
  const double tm = dicke::t_meas(haas);
  const double eta_cavity = std::exp(-(tp + tm) * kappa_rad);
  const double pe1 = dicke::p_error(haas, haas_n, 1);
  const double pe2 = dicke::p_error(haas, haas_n, 2);
  CsvWriter ex(join(out, "cavity_haas.csv"),
               {"N_at", "J_rad_per_s", "kappa_rad_per_s", "n", "t_prep_s", "t_meas_s",
                "t_meas_over_t_prep", "eta_cavity", "p_error_1", "p_error_2", "eta_total"});
  ex.row({static_cast<long long>(haas_atoms), j_rad, kappa_rad, static_cast<long long>(haas_n), tp, tm,
          tm / tp, eta_cavity, pe1, pe2, eta_cavity * dicke::eta_from_perror(pe1, haas_n)});
  return {{"cavity_perror.csv", csv.rows()}, {"cavity_haas.csv", ex.rows()}};
}

dicke::AcOptions ac_options(Params& p) {
  dicke::AcOptions o;
  const std::string kind = p.text("kind", "nrm");
  require(kind == "nrm" || kind == "qfi", "kind must be 'nrm' or 'qfi'");
  o.kind = kind == "qfi" ? dicke::AcFisher::QFI : dicke::AcFisher::NrmZero;
  const std::string stats = p.text("statistics", "exact");
  require(stats == "exact" || stats == "linear", "statistics must be 'exact' or 'linear'");
  o.linear_statistics = stats == "linear";
  const std::string prep = p.text("prep_time", "linear");
  require(prep == "linear" || prep == "peak", "prep_time must be 'linear' or 'peak'");
  o.peak_time = prep == "peak";
  return o;
}

PhotonPMF preparation_statistics(const dicke::DickeConfig& cfg, const dicke::AcOptions& o) {
  if (o.linear_statistics) return dicke::q_linear_pmf(cfg.n_target);
  return dicke::photon_pmf(cfg, o.peak_time ? dicke::peak_photon_time(cfg) : dicke::t_prep(cfg));
}

std::vector<OutputFile> cavity_ac(Params& p, const std::string& out) {
  const double gamma = p.number("gamma", 1.0);
  const double coupling = p.number("J", 1.0);
  const double omega = p.number("omega", 1.0);
  const double n_abs_value = p.number("n_abs", 1.0);
  const double gamma_t_ext = p.number("t_ext", 0.0);
  const auto etas = p.numbers("eta", {1.0, 0.95, 0.9});
  const auto atoms = p.integers("n_atoms", {20, 50, 100});
  const auto ns = p.integers("n", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  const dicke::AcOptions opts = ac_options(p);
  const auto b_ns = p.integers("boundary_n", {2, 4, 6, 8, 10});
  const int b_atoms = p.integer("boundary_n_atoms", 100);
  const auto grid = overhead_grid(p, 20);
  const double tol = p.number("tol", 1e-6);
  p.finish();
  for (int n : ns) require(n >= 1, "n must be >= 1");
  for (int n : b_ns) require(n >= 1, "boundary_n must be >= 1");

  const double total_time = 1.0;  // precision is reported per unit gamma T
  CsvWriter csv(join(out, "cavity_ac.csv"), {"N_at", "n", "eta", "ac_per_gT", "tfs_per_gT",
                                              "classical", "mean_time_per_run", "capped"});
  for (int n_at : atoms)
    for (int n : ns) {
      const auto cfg = cavity_config(n_at, coupling, omega, n);
      const PhotonPMF q = preparation_statistics(cfg, opts);
      const ProbeSpec tfs = probe::TwinFock{n};
      const FisherEngine engine =
          opts.kind == dicke::AcFisher::QFI ? default_engine(tfs) : nrm_zero_engine(tfs);
      for (double eta : etas) {
        const Budget b{total_time, n_abs_value, gamma_t_ext / gamma, eta};
        const dicke::AcResult r = dicke::ac_precision(q, b, gamma, opts);
        const PrecisionResult ideal = precision_at_saturation(tfs, b, gamma, engine);
        csv.row({static_cast<long long>(n_at), static_cast<long long>(n), eta,
                 r.precision / (gamma * total_time), ideal.accumulated / (gamma * total_time),
                 n_abs_value / (gamma * gamma), r.mean_time_per_run,
                 static_cast<long long>(r.capped)});
      }
    }

  CsvWriter bnd(join(out, "cavity_ac_boundary.csv"),
                {"N_at", "n", "gamma_t_ext", "eta", "one_minus_eta", "crossing"});
  for (int n : b_ns) {
    const auto cfg = cavity_config(b_atoms, coupling, omega, n);
    const PhotonPMF q = preparation_statistics(cfg, opts);
    for (double x : grid) {
      auto excess = [&](double eta) {
        const Budget b{total_time, n_abs_value, x / gamma, eta};
        return dicke::ac_precision(q, b, gamma, opts).precision /
                   classical_bound(total_time, gamma, n_abs_value) -
               1.0;
      };
      double eta = std::numeric_limits<double>::quiet_NaN();
      bool crossing = false;
      if (excess(1.0) > 0.0) {
        eta = excess(1e-9) >= 0.0 ? 1e-9 : numerics::bisect(excess, 1e-9, 1.0, tol);
        crossing = true;
      }
      bnd.row({static_cast<long long>(b_atoms), static_cast<long long>(n), x, eta, 1.0 - eta,
               static_cast<long long>(crossing)});
    }
  }
  return {{"cavity_ac.csv", csv.rows()}, {"cavity_ac_boundary.csv", bnd.rows()}};
}

// --- appendix figures -----------------------------------------------------

std::vector<OutputFile> app_cfi(Params& p, const std::string& out) {
  const double t = p.number("t", 1.0);
  const int n = p.integer("n", 5);
  const auto mus = p.numbers("mu", {0.1, 0.3});
  const int phase_points = p.integer("phase_points", 100);
  const int n_max = p.integer("n_max", 15);
  p.finish();
  require(n >= 1 && n_max >= 1 && phase_points >= 2, "need n, n_max >= 1 and phase_points >= 2");
  for (double mu : mus) require(mu >= 0.0 && mu < 1.0, "mu must be in [0, 1)");
  constexpr double kPi = 3.14159265358979323846;

  CsvWriter phase(join(out, "app_cfi_phase.csv"), {"n", "mu", "phase", "cfi", "qfi", "snl"});
  for (double mu : mus) {
    const double qfi = qfi_tfs_exact(n, mu, t);
    const double snl = t * t * 2.0 * n * (1.0 - mu);
    for (int i = 0; i < phase_points; ++i) {
      const double x = kPi * i / (phase_points - 1);
      phase.row({static_cast<long long>(n), mu, x, cfi_nrm(n, n, mu, t, x / t), qfi, snl});
    }
  }
  CsvWriter vs_n(join(out, "app_cfi_n.csv"),
                 {"N", "mu", "cfi_g0", "cfi_gstar", "gstar_phase", "qfi", "snl"});
  for (double mu : mus)
    for (int k = 1; k <= n_max; ++k) {
      const CouplingOptimum best = optimize_cfi_nrm(k, k, mu, t);
      vs_n.row({static_cast<long long>(2 * k), mu, cfi_nrm(k, k, mu, t, 0.0), best.value,
                best.g * t, qfi_tfs_exact(k, mu, t), t * t * 2.0 * k * (1.0 - mu)});
    }
  return {{"app_cfi_phase.csv", phase.rows()}, {"app_cfi_n.csv", vs_n.rows()}};
}

std::vector<OutputFile> app_regions(Params& p, const std::string& out) {
  const double gamma = p.number("gamma", 1.0);
  const double n_abs_value = p.number("n_abs", 1.0);
  const auto bound_ns = p.integers("bound_N", {2, 4, 8, 16, 32, 64});
  const auto tfs_ns = p.integers("N", {2, 4, 8, 12, 16, 20});
  const double tol = p.number("tol", 1e-6);
  const auto grid = overhead_grid(p, 60);
  p.finish();
  check_even(tfs_ns);
  for (int n : bound_ns) require(n >= 1, "bound_N must be >= 1");

  CsvWriter csv(join(out, "app_regions.csv"),
                {"family", "N", "gamma_t_ext", "eta", "one_minus_eta", "crossing"});
  write_boundary(csv, "general_any_t", 0,
                 advantage_boundary(BoundaryFamily::GeneralAnyT, 0, n_abs_value, grid, gamma, tol));
  for (int n : bound_ns)
    write_boundary(csv, "general_fixed_n", n,
                   advantage_boundary(BoundaryFamily::GeneralFixedN, n, n_abs_value, grid, gamma, tol));
  for (int n : tfs_ns)
    write_boundary(csv, "tfs_qfi", n,
                   advantage_boundary(BoundaryFamily::TfsQfi, n, n_abs_value, grid, gamma, tol));
  for (int n : tfs_ns)
    write_boundary(csv, "tfs_nrm", n,
                   advantage_boundary(BoundaryFamily::TfsNrm, n, n_abs_value, grid, gamma, tol));
  return {{"app_regions.csv", csv.rows()}};
}

std::vector<OutputFile> app_dicke_prep(Params& p, const std::string& out) {
  const double coupling = p.number("J", 1.0);
  const double omega = p.number("omega", 1.0);
  const auto atoms = p.integers("n_atoms", {10, 20, 50, 100});
  const int points = p.integer("points", 200);
  const int pmf_atoms = p.integer("pmf_n_atoms", 50);
  p.finish();
  require(points >= 2, "points must be >= 2");

  CsvWriter mean(join(out, "dicke_prep_mean.csv"), {"N_at", "t", "mean_photons", "mean_over_N_at"});
  CsvWriter peak(join(out, "dicke_prep_peak.csv"),
                 {"N_at", "t_peak", "peak_over_N_at", "t_switch_formula"});
  for (int n_at : atoms) {
    const auto cfg = cavity_config(n_at, coupling, omega, 1.0);
    const double tp = dicke::peak_photon_time(cfg);
    for (double t : numerics::linspace(0.0, 2.0 * tp, points)) {
      const double m = dicke::mean_photons(cfg, t);
      mean.row({static_cast<long long>(n_at), t, m, m / n_at});
    }
    peak.row({static_cast<long long>(n_at), tp, dicke::mean_photons(cfg, tp) / n_at,
              n_at >= 2 ? dicke::switch_time_formula(n_at) / coupling
                        : std::numeric_limits<double>::quiet_NaN()});
  }
  const auto cfg = cavity_config(pmf_atoms, coupling, omega, 1.0);
  const double tp = dicke::peak_photon_time(cfg);
  const PhotonPMF q = dicke::photon_pmf(cfg, tp);
  CsvWriter pmf(join(out, "dicke_prep_pmf.csv"), {"N_at", "t_peak", "k", "prob"});
  for (std::size_t k = 0; k < q.probs.size(); ++k)
    pmf.row({static_cast<long long>(pmf_atoms), tp, static_cast<long long>(k), q.probs[k]});
  return {{"dicke_prep_mean.csv", mean.rows()},
          {"dicke_prep_peak.csv", peak.rows()},
          {"dicke_prep_pmf.csv", pmf.rows()}};
}

std::vector<OutputFile> app_timescale(Params& p, const std::string& out) {
  const auto ns = p.integers("N", {10, 20, 50, 100, 200, 500, 1000});
  const bool exact = p.flag("exact", true);
  p.finish();
  for (int n : ns) require(n >= 2, "N must be >= 2");

  CsvWriter csv(join(out, "app_timescale.csv"),
                {"N", "t_formula", "t_meanfield", "t_exact", "rel_err_meanfield", "rel_err_exact"});
  for (int n : ns) {
    const double f = dicke::switch_time_formula(n);
    const double mf = dicke::switch_time(n);
    double ex = std::numeric_limits<double>::quiet_NaN();
    if (exact) ex = dicke::peak_photon_time(cavity_config(n, 1.0, 0.0, 1.0));
    csv.row({static_cast<long long>(n), f, mf, ex, std::abs(mf - f) / mf, std::abs(ex - f) / ex});
  }
  return {{"app_timescale.csv", csv.rows()}};
}

}  // namespace

const std::vector<PipelineInfo>& pipelines() {
  static const std::vector<PipelineInfo> all{
      {"fig1", "Poisson-limit Fisher information of each probe family vs N_abs", fig1},
      {"fig2", "optimized TFS precision vs N_abs, ideal devices", fig2},
      {"fig3a", "optimized TFS precision vs N_abs with eta < 1 and overhead time", fig3a},
      {"fig3b", "advantage boundaries in the (gamma t_ext, 1 - eta) plane", fig3b},
      {"cavity-perror", "absorption error probability and the worked cavity example", cavity_perror},
      {"cavity-ac", "atom-cavity precision and its noise boundaries", cavity_ac},
      {"app-cfi", "number-resolved CFI vs coupling phase and photon number", app_cfi},
      {"app-regions", "general and TFS advantage regions", app_regions},
      {"app-tfs-noise", "TFS QFI and NRM precision vs N_abs under noise", app_tfs_noise},
      {"app-dicke-prep", "superradiant preparation: mean photons and peak distribution", app_dicke_prep},
      {"app-timescale", "mean-field switch time against the closed form and exact dynamics", app_timescale},
  };
  return all;
}

const PipelineInfo* find_pipeline(const std::string& name) {
  for (const auto& p : pipelines())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace photometrix::cli
