#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "toymodel/error.hpp"

namespace toymodel::cli {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::config, msg); }

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  std::string cleaned;
  for (char c : s) {
    if (c != '_') cleaned.push_back(c);
  }
  if (!cleaned.empty() && cleaned.front() == '+') cleaned.erase(0, 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cleaned.data(), cleaned.data() + cleaned.size(), v);
  if (ec != std::errc{} || ptr != cleaned.data() + cleaned.size() || cleaned.empty()) {
    return std::nullopt;
  }
  return v;
}

/// Strips a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::optional<ConfigValue> parse_value(std::string_view raw, bool allow_bare) {
  const std::string_view v = trim(raw);
  if (v.empty()) return std::nullopt;
  if (v == "true") return ConfigValue{true};
  if (v == "false") return ConfigValue{false};
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') return std::nullopt;
    return ConfigValue{std::string(v.substr(1, v.size() - 2))};
  }
  if (v.front() == '[') {
    if (v.back() != ']') return std::nullopt;
    std::vector<double> out;
    std::string_view body = trim(v.substr(1, v.size() - 2));
    while (!body.empty()) {
      const auto comma = body.find(',');
      const auto item = trim(body.substr(0, comma));
      if (!item.empty()) {
        const auto x = parse_number(item);
        if (!x) return std::nullopt;
        out.push_back(*x);
      }
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
    return ConfigValue{std::move(out)};
  }
  if (const auto x = parse_number(v)) return ConfigValue{*x};
  if (allow_bare) return ConfigValue{std::string(v)};
  return std::nullopt;
}

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  });
}

}  // namespace

Config Config::parse(std::string_view text, const std::string& origin) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const std::string where = origin + ":" + std::to_string(no);
    const std::string_view body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') fail(where + ": tables are not supported, keys must be flat");
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) fail(where + ": expected key = value");
    const std::string key(trim(body.substr(0, eq)));
    if (!valid_key(key)) fail(where + ": invalid key '" + key + "'");
    if (cfg.has(key)) fail(where + ": duplicate key '" + key + "'");
    const auto value = parse_value(body.substr(eq + 1), false);
    if (!value) fail(where + ": cannot parse value of '" + key + "'");
    cfg.values_[key] = *value;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

void Config::set_from_flag(const std::string& key, const std::string& raw) {
  const auto value = parse_value(raw, true);
  if (!value) fail("--" + key + ": empty value");
  values_[key] = *value;
}

double Config::number(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (const double* x = std::get_if<double>(&it->second)) return *x;
  fail("'" + key + "' must be a number");
}

std::size_t Config::count(const std::string& key, std::size_t fallback) const {
  if (!has(key)) return fallback;
  const double x = number(key, 0.0);
  if (!(x >= 0.0) || x != std::floor(x) || x > 1e15) {
    fail("'" + key + "' must be a nonnegative integer");
  }
  return static_cast<std::size_t>(x);
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  fail("'" + key + "' must be a string");
}

std::vector<double> Config::numbers(const std::string& key,
                                    const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
  if (const double* x = std::get_if<double>(&it->second)) return {*x};
  fail("'" + key + "' must be a number or an array of numbers");
}

void Config::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail("unknown key '" + key + "' for this subcommand");
    }
  }
}

nlohmann::json Config::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, value] : values_) {
    std::visit([&](const auto& v) { out[key] = v; }, value);
  }
  return out;
}

}  // namespace toymodel::cli
