#pragma once

// Run configuration: a flat subset of TOML (key = value lines, # comments,
// numbers, booleans, quoted strings and one-line numeric arrays). Command-line
// flags with the same names are layered on top of the file.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace toymodel::cli {

using ConfigValue = std::variant<bool, double, std::string, std::vector<double>>;

class Config {
 public:
  static Config parse(std::string_view text, const std::string& origin = "<config>");
  static Config load(const std::filesystem::path& path);

  /// Parses raw as a TOML value; anything that is not a number, boolean or
  /// array is taken as a bare string, so `--ic shock` works without quotes.
  void set_from_flag(const std::string& key, const std::string& raw);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, ConfigValue>& values() const noexcept { return values_; }

  double number(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;

  /// Throws Error{config} naming the first key not in allowed.
  void require_known(const std::vector<std::string>& allowed) const;

  nlohmann::json to_json() const;

 private:
  std::map<std::string, ConfigValue> values_;
};

}  // namespace toymodel::cli
