#include "photometrix/cli/csv.hpp"
#include "photometrix/cli/pipelines.hpp"

#include "photometrix/dicke.hpp"
#include "photometrix/errors.hpp"
#include "photometrix/protocol.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

namespace photometrix::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_number(const std::string& axis, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d))
    throw ConfigError("grid axis '" + axis + "': '" + v + "' is not a number");
  return d;
}

using Point = std::map<std::string, double>;

struct Engine {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;  // name and default
  std::vector<std::string> outputs;
  std::function<std::vector<Cell>(const Point&)> eval;
};

int even_photons(double n) {
  if (n != std::floor(n) || n < 2 || static_cast<long long>(n) % 2 != 0)
    throw ConfigError("N must be an even integer >= 2");
  return static_cast<int>(n);
}

int whole(const std::string& key, double v, int min) {
  if (v != std::floor(v) || v < min)
    throw ConfigError("'" + key + "' must be an integer >= " + std::to_string(min));
  return static_cast<int>(v);
}

std::vector<Cell> tfs_precision(const Point& p, bool nrm) {
  const double gamma = p.at("gamma");
  const ProbeSpec probe = probe::TwinFock{even_photons(p.at("N")) / 2};
  const Budget b{p.at("T"), p.at("n_abs"), p.at("t_ext") / gamma, p.at("eta")};
  const PrecisionResult r =
      nrm ? optimize_nu(probe, b, gamma, nrm_zero_engine(probe)) : optimize_nu(probe, b, gamma);
  return {r.accumulated / (gamma * b.total_time), r.nu, r.t, static_cast<long long>(r.capped)};
}

const std::vector<Engine>& engines() {
  static const std::vector<Engine> all{
      {"tfs-ratio",
       {{"N", 8}, {"n_abs", 1}, {"eta", 1}, {"t_ext", 0}, {"gamma", 1}},
       {"ratio"},
       [](const Point& p) -> std::vector<Cell> {
         return {advantage_ratio(BoundaryFamily::TfsQfi, even_photons(p.at("N")), p.at("n_abs"),
                                 p.at("eta"), p.at("t_ext"), p.at("gamma"))};
       }},
      {"tfs-nrm-ratio",
       {{"N", 8}, {"n_abs", 1}, {"eta", 1}, {"t_ext", 0}, {"gamma", 1}},
       {"ratio"},
       [](const Point& p) -> std::vector<Cell> {
         return {advantage_ratio(BoundaryFamily::TfsNrm, even_photons(p.at("N")), p.at("n_abs"),
                                 p.at("eta"), p.at("t_ext"), p.at("gamma"))};
       }},
      {"tfs-boundary",
       {{"N", 8}, {"n_abs", 1}, {"t_ext", 0.05}, {"gamma", 1}, {"tol", 1e-6}},
       {"eta", "one_minus_eta", "crossing"},
       [](const Point& p) -> std::vector<Cell> {
         const auto pts =
             advantage_boundary(BoundaryFamily::TfsQfi, even_photons(p.at("N")), p.at("n_abs"),
                                {p.at("t_ext")}, p.at("gamma"), p.at("tol"));
         return {pts[0].eta, 1.0 - pts[0].eta, static_cast<long long>(pts[0].crossing)};
       }},
      {"tfs-precision",
       {{"N", 8}, {"n_abs", 1}, {"eta", 1}, {"t_ext", 0}, {"T", 10}, {"gamma", 1}},
       {"dg2_per_gT", "nu", "t", "capped"},
       [](const Point& p) { return tfs_precision(p, false); }},
      {"tfs-nrm-precision",
       {{"N", 8}, {"n_abs", 1}, {"eta", 1}, {"t_ext", 0}, {"T", 10}, {"gamma", 1}},
       {"dg2_per_gT", "nu", "t", "capped"},
       [](const Point& p) { return tfs_precision(p, true); }},
      {"general-bound",
       {{"eta", 1}, {"t_ext", 0}, {"gamma", 1}},
       {"max_j"},
       [](const Point& p) -> std::vector<Cell> {
         return {max_j(p.at("gamma"), p.at("eta"), p.at("t_ext") / p.at("gamma"))};
       }},
      {"ac-precision",
       {{"n_atoms", 100}, {"n", 8}, {"n_abs", 1}, {"eta", 1}, {"t_ext", 0}, {"gamma", 1}, {"J", 1}},
       {"ac_per_gT", "ratio", "mean_time_per_run", "capped"},
       [](const Point& p) -> std::vector<Cell> {
         dicke::DickeConfig c;
         c.n_atoms = whole("n_atoms", p.at("n_atoms"), 1);
         c.coupling = p.at("J");
         c.n_target = whole("n", p.at("n"), 1);
         c.validate();
         const double gamma = p.at("gamma");
         const Budget b{1.0, p.at("n_abs"), p.at("t_ext") / gamma, p.at("eta")};
         const dicke::AcResult r = dicke::ac_precision(c, b, gamma);
         const double per_gt = r.precision / gamma;
         return {per_gt, per_gt / (b.n_abs_max / (gamma * gamma)), r.mean_time_per_run,
                 static_cast<long long>(r.capped)};
       }},
  };
  return all;
}

}  // namespace

std::vector<GridAxis> parse_grid(const std::string& spec) {
  std::vector<GridAxis> axes;
  if (trim(spec).empty()) return axes;
  for (const std::string& part : split(spec, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("grid axis '" + part + "' needs name=values");
    GridAxis axis{trim(part.substr(0, eq)), {}};
    if (axis.name.empty()) throw ConfigError("grid axis without a name in '" + part + "'");
    for (const auto& a : axes)
      if (a.name == axis.name) throw ConfigError("grid axis '" + axis.name + "' given twice");
    const std::string values = trim(part.substr(eq + 1));
    if (values.find(':') != std::string::npos) {
      const auto r = split(values, ':');
      if (r.size() != 3) throw ConfigError("grid range '" + values + "' must be start:stop:step");
      const double lo = to_number(axis.name, r[0]);
      const double hi = to_number(axis.name, r[1]);
      const double step = to_number(axis.name, r[2]);
      if (!(step > 0.0)) throw ConfigError("grid step for '" + axis.name + "' must be > 0");
      // Inclusive of the end point up to rounding in the step count.
      const double span = (hi - lo) / step;
      if (span > 1e7) throw ConfigError("grid for '" + axis.name + "' is too large");
      const long long n = span < -1e-9 ? -1 : static_cast<long long>(std::floor(span + 1e-9));
      for (long long i = 0; i <= n; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        axis.values.push_back(std::abs(v - hi) < 1e-9 * std::max(1.0, std::abs(hi)) ? hi : v);
      }
    } else if (!values.empty()) {
      for (const std::string& v : split(values, ',')) axis.values.push_back(to_number(axis.name, v));
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

std::vector<std::string> sweep_engines() {
  std::vector<std::string> out;
  for (const auto& e : engines()) out.push_back(e.name);
  return out;
}

std::vector<OutputFile> run_sweep(Params& params, const std::vector<std::string>& grids,
                                  const std::string& out_dir) {
  const std::string name = params.text("engine", "tfs-ratio");
  const std::string file = params.text("file", "sweep.csv");
  const auto it = std::find_if(engines().begin(), engines().end(),
                               [&](const Engine& e) { return e.name == name; });
  if (it == engines().end()) {
    std::string known;
    for (const auto& e : sweep_engines()) known += (known.empty() ? "" : ", ") + e;
    throw ConfigError("unknown sweep engine '" + name + "' (known: " + known + ")");
  }
  const Engine& engine = *it;

  std::vector<GridAxis> axes;
  for (const auto& g : grids)
    for (auto& a : parse_grid(g)) {
      for (const auto& b : axes)
        if (b.name == a.name) throw ConfigError("grid axis '" + a.name + "' given twice");
      axes.push_back(std::move(a));
    }
  // An explicitly empty --grid means an empty sweep.
  bool empty = false;
  for (const auto& g : grids)
    if (trim(g).empty()) empty = true;

  Point base;
  for (const auto& [key, fallback] : engine.inputs) base[key] = params.number(key, fallback);
  for (const auto& a : axes)
    if (!base.count(a.name))
      throw ConfigError("engine '" + name + "' has no parameter '" + a.name + "'");
  params.finish();

  std::vector<std::string> header;
  for (const auto& a : axes) header.push_back(a.name);
  for (const auto& o : engine.outputs) header.push_back(o);
  const std::string path = out_dir.empty() || out_dir == "." ? file : out_dir + "/" + file;
  CsvWriter csv(path, header);

  std::size_t total = empty ? 0 : 1;
  for (const auto& a : axes) total *= a.values.size();
  std::vector<std::size_t> idx(axes.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Point p = base;
    std::vector<Cell> cells;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      p[axes[k].name] = axes[k].values[idx[k]];
      cells.emplace_back(axes[k].values[idx[k]]);
    }
    for (auto& c : engine.eval(p)) cells.push_back(std::move(c));
    csv.row(cells);
    // Last axis varies fastest.
    for (std::size_t k = axes.size(); k-- > 0;) {
      if (++idx[k] < axes[k].values.size()) break;
      idx[k] = 0;
    }
  }
  return {{file, csv.rows()}};
}

}  // namespace photometrix::cli
