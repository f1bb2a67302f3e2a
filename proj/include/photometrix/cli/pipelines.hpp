#pragma once

#include "photometrix/cli/config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace photometrix::cli {

struct OutputFile {
  std::string file;  // relative to the output directory
  std::size_t rows = 0;
};

using Pipeline = std::function<std::vector<OutputFile>(Params&, const std::string& out_dir)>;

struct PipelineInfo {
  std::string name;
  std::string summary;
  Pipeline run;
};

const std::vector<PipelineInfo>& pipelines();
const PipelineInfo* find_pipeline(const std::string& name);

/// Runs a parameter grid through a named engine and writes sweep.csv.
std::vector<OutputFile> run_sweep(Params& params, const std::vector<std::string>& grids,
                                  const std::string& out_dir);

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

/// "name=a:b:step" (inclusive) or "name=v1,v2,...". Several axes may be
/// joined with ';'. Throws ConfigError on malformed input.
std::vector<GridAxis> parse_grid(const std::string& spec);

std::vector<std::string> sweep_engines();

}  // namespace photometrix::cli
