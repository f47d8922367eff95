#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace tightsigma::cli {

enum class Format { text, json };

/* One subcommand's result. Fields keep insertion order so both renderings
 * are stable; timing is the only field that can differ between runs and is
 * left out unless asked for. */
struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::string outcome; // ok, pass, fail, found or none
  std::vector<std::pair<std::string, nlohmann::ordered_json>> fields;
  std::optional<double> milliseconds;

  void add(std::string key, nlohmann::ordered_json value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
  bool success() const { return outcome == "ok" || outcome == "pass" || outcome == "found"; }
};

std::string render(const Report& r, Format format);

/// Shell-style echo of an argument vector; arguments with spaces or quotes
/// are double-quoted.
std::string echo(const std::vector<std::string>& args);

} // namespace tightsigma::cli
