#include "photometrix/cli/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace photometrix::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  errno = 0;
  const double d = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
    throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  return d;
}

int parse_int(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 1e9)
    throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
  return static_cast<int>(d);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

RawConfig parse_config_text(const std::string& text, const std::string& origin) {
  RawConfig out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

RawConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

Params::Params(RawConfig raw) : raw_(std::move(raw)) {}

const std::string* Params::lookup(const std::string& key) {
  used_.insert(key);
  const auto it = raw_.find(key);
  return it == raw_.end() ? nullptr : &it->second;
}

double Params::number(const std::string& key, double fallback) {
  const std::string* v = lookup(key);
  const double d = v ? parse_double(key, *v) : fallback;
  resolved_[key] = format_number(d);
  return d;
}

int Params::integer(const std::string& key, int fallback) {
  const std::string* v = lookup(key);
  const int i = v ? parse_int(key, *v) : fallback;
  resolved_[key] = std::to_string(i);
  return i;
}

bool Params::flag(const std::string& key, bool fallback) {
  const std::string* v = lookup(key);
  bool b = fallback;
  if (v) {
    const std::string t = trim(*v);
    if (t == "1" || t == "true" || t == "yes" || t == "on")
      b = true;
    else if (t == "0" || t == "false" || t == "no" || t == "off")
      b = false;
    else
      throw ConfigError("'" + key + "' expects true/false, got '" + *v + "'");
  }
  resolved_[key] = b ? "true" : "false";
  return b;
}

std::string Params::text(const std::string& key, const std::string& fallback) {
  const std::string* v = lookup(key);
  std::string s = v ? trim(*v) : fallback;
  resolved_[key] = s;
  return s;
}

std::vector<double> Params::numbers(const std::string& key, const std::vector<double>& fallback) {
  const std::string* v = lookup(key);
  std::vector<double> out = fallback;
  if (v) {
    out.clear();
    for (const auto& part : split(*v, ','))
      if (!part.empty()) out.push_back(parse_double(key, part));
  }
  std::string echo;
  for (std::size_t i = 0; i < out.size(); ++i) echo += (i ? "," : "") + format_number(out[i]);
  resolved_[key] = echo;
  return out;
}

std::vector<int> Params::integers(const std::string& key, const std::vector<int>& fallback) {
  const std::string* v = lookup(key);
  std::vector<int> out = fallback;
  if (v) {
    out.clear();
    for (const auto& part : split(*v, ','))
      if (!part.empty()) out.push_back(parse_int(key, part));
  }
  std::string echo;
  for (std::size_t i = 0; i < out.size(); ++i) echo += (i ? "," : "") + std::to_string(out[i]);
  resolved_[key] = echo;
  return out;
}

void Params::finish() const {
  for (const auto& [key, value] : raw_)
    if (!used_.count(key)) throw ConfigError("unknown parameter '" + key + "'");
}

}  // namespace photometrix::cli
