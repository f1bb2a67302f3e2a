#pragma once

#include "photometrix/errors.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace photometrix::cli {

// Bad command line or configuration file; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

using RawConfig = std::map<std::string, std::string>;

/// Flat `key = value` text; '#' starts a comment, blank lines are ignored.
RawConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
RawConfig read_config_file(const std::string& path);

/// Typed view over the raw key/value pairs. Every lookup records the
/// resolved value (default or user supplied) for the run manifest, and
/// finish() rejects keys that no lookup asked for.
class Params {
 public:
  explicit Params(RawConfig raw = {});

  double number(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback);

  /// Throws ConfigError naming the first key that was never looked up.
  void finish() const;

  const std::map<std::string, std::string>& resolved() const { return resolved_; }

 private:
  const std::string* lookup(const std::string& key);

  RawConfig raw_;
  std::set<std::string> used_;
  std::map<std::string, std::string> resolved_;
};

/// Shortest text that reads back as the same double.
std::string format_number(double v);

}  // namespace photometrix::cli
