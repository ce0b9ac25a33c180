#pragma once

// JSON config files. Keys are the long option names of the subcommand; each
// entry becomes "--key=value" arguments. Arrays of strings feed repeatable
// options, an object under "tol" becomes name=value entries, and any other
// value is passed through as its JSON text (so "params": [[1, 2]] works).

#include <algorithm>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dkpew/errors.hpp"

namespace dkpew::cli {

using ConfigEntry = std::pair<std::string, std::vector<std::string>>;

inline std::vector<ConfigEntry> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config '" + path + "': top level must be an object");

  std::vector<ConfigEntry> out;
  for (const auto& [key, v] : j.items()) {
    std::vector<std::string> inputs;
    if (key == "tol" && v.is_object()) {
      for (const auto& [name, tol] : v.items()) inputs.push_back(name + "=" + tol.dump());
    } else if (v.is_string()) {
      inputs.push_back(v.get<std::string>());
    } else if (v.is_array() && !v.empty() &&
               std::all_of(v.begin(), v.end(), [](const auto& e) { return e.is_string(); })) {
      for (const auto& e : v) inputs.push_back(e.template get<std::string>());
    } else if (v.is_object()) {
      throw ConfigError("config key '" + key + "': nested objects are not options");
    } else {
      inputs.push_back(v.dump());
    }
    out.emplace_back(key, std::move(inputs));
  }
  return out;
}

/// Command-line arguments for the entries whose option was not already given.
/// Unknown keys are a ConfigError.
inline std::vector<std::string> config_args(const CLI::App& sub, const std::vector<ConfigEntry>& entries) {
  std::vector<std::string> args;
  for (const auto& [key, inputs] : entries) {
    if (key == "config") throw ConfigError("config files do not nest");
    const CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw ConfigError("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;  // the command line wins
    for (const std::string& in : inputs) args.push_back("--" + key + "=" + in);
  }
  return args;
}

}  // namespace dkpew::cli
