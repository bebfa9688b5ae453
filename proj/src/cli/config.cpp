#include "fiscap/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fiscap::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool known_field(std::string_view key) {
  for (const auto& f : field_names()) {
    if (f == key) return true;
  }
  return false;
}

}  // namespace

double parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("malformed number: '" + std::string(text) + "'");
  }
  return v;
}

RawParams parse_config(std::string_view text) {
  RawParams raw;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (!known_field(key)) throw ConfigError("line " + std::to_string(line_no) + ": unknown field: " + key);
    if (raw.contains(key)) throw ConfigError("line " + std::to_string(line_no) + ": duplicate field: " + key);
    try {
      raw.emplace(key, parse_number(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return raw;
}

RawParams read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

CostSpec parse_cost(std::string_view text) {
  constexpr std::string_view prefix = "quadratic:c=";
  if (text.substr(0, prefix.size()) != prefix) {
    throw ConfigError("unsupported cost '" + std::string(text) + "' (expected quadratic:c=VALUE)");
  }
  const double c = parse_number(text.substr(prefix.size()));
  if (!(c > 0.0)) throw ConfigError("quadratic cost coefficient must be positive");
  return CostSpec::quadratic(c);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string round_trip(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace fiscap::cli
