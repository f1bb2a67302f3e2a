#include "photometrix/cli/app.hpp"

#include "photometrix/cli/config.hpp"
#include "photometrix/cli/pipelines.hpp"
#include "photometrix/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#ifndef PHOTOMETRIX_VERSION
#define PHOTOMETRIX_VERSION "0.0.0"
#endif

namespace photometrix::cli {

namespace {

std::string usage() {
  std::string s =
      "usage: photometrix <pipeline> [--config FILE] [--out DIR] [--key value ...]\n"
      "       photometrix sweep --grid \"name=start:stop:step\" [--engine NAME] [--key value ...]\n"
      "\npipelines:\n";
  for (const auto& p : pipelines()) {
    const std::size_t pad = p.name.size() < 16 ? 16 - p.name.size() : 1;
    s += "  " + p.name + std::string(pad, ' ') + p.summary + "\n";
  }
  s += "  sweep           grid over one of:";
  for (const auto& e : sweep_engines()) s += " " + e;
  return s + "\n";
}

// "--key value" and "--key=value" pairs left over after the fixed options.
RawConfig parse_overrides(const std::vector<std::string>& extras) {
  RawConfig out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& tok = extras[i];
    if (tok.rfind("--", 0) != 0 || tok.size() == 2)
      throw ConfigError("unexpected argument '" + tok + "'");
    std::string key = tok.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.erase(eq);
    } else {
      if (i + 1 >= extras.size()) throw ConfigError("option '--" + key + "' needs a value");
      value = extras[++i];
    }
    if (key.empty()) throw ConfigError("empty option name in '" + tok + "'");
    out[key] = value;
  }
  return out;
}

void write_manifest(const std::string& path, const std::string& pipeline, const Params& params,
                    double seconds, const std::vector<OutputFile>& outputs) {
  nlohmann::ordered_json j;
  j["pipeline"] = pipeline;
  j["version"] = version();
  j["parameters"] = params.resolved();
  j["wall_clock_seconds"] = seconds;
  j["outputs"] = nlohmann::json::array();
  for (const auto& o : outputs) j["outputs"].push_back({{"file", o.file}, {"rows", o.rows}});
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << j.dump(2) << '\n';
}

}  // namespace

std::string version() { return PHOTOMETRIX_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"photometrix"};
  app.allow_extras();
  app.set_help_flag();
  std::string pipeline;
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> grids;
  bool help = false;
  bool show_version = false;
  app.add_option("pipeline", pipeline);
  app.add_option("--config", config_path);
  app.add_option("--out", out_dir);
  app.add_option("--grid", grids)->take_all();
  app.add_flag("-h,--help", help);
  app.add_flag("--version", show_version);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    err << "photometrix: " << e.what() << "\n" << usage();
    return kConfigError;
  }
  if (help) {
    out << usage();
    return kOk;
  }
  if (show_version) {
    out << "photometrix " << version() << "\n";
    return kOk;
  }
  if (pipeline.empty()) {
    err << "photometrix: missing pipeline\n" << usage();
    return kConfigError;
  }
  const PipelineInfo* info = pipeline == "sweep" ? nullptr : find_pipeline(pipeline);
  if (pipeline != "sweep" && !info) {
    err << "photometrix: unknown pipeline '" << pipeline << "'\n" << usage();
    return kConfigError;
  }

  try {
    RawConfig raw = config_path.empty() ? RawConfig{} : read_config_file(config_path);
    for (auto& [k, v] : parse_overrides(app.remaining())) raw[k] = v;
    if (pipeline != "sweep" && !grids.empty()) throw ConfigError("--grid only applies to sweep");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());

    Params params(std::move(raw));
    const auto start = std::chrono::steady_clock::now();
    const std::vector<OutputFile> files =
        info ? info->run(params, out_dir) : run_sweep(params, grids, out_dir);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest((std::filesystem::path(out_dir) / "manifest.json").string(), pipeline, params,
                   seconds, files);
    for (const auto& f : files) out << f.file << ": " << f.rows << " rows\n";
    return kOk;
  } catch (const ConfigError& e) {
    err << "photometrix: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "photometrix: invalid parameter: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidFractions& e) {
    err << "photometrix: invalid parameter: " << e.what() << "\n";
    return kConfigError;
  } catch (const Infeasible& e) {
    err << "photometrix: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const NoCrossing& e) {
    err << "photometrix: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "photometrix: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace photometrix::cli
