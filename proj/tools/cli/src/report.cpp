#include "tightsigma/cli/report.hpp"

#include <cstdio>

namespace tightsigma::cli {

namespace {

std::string text_value(const nlohmann::ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

bool needs_quotes(const std::string& s) {
  if (s.empty()) {
    return true;
  }
  for (char c : s) {
    if (c == ' ' || c == '"' || c == '\'' || c == '\\' || c == '&' || c == '|' || c == '!' ||
        c == ';' || c == '^' || c == '(' || c == ')' || c == '\t') {
      return true;
    }
  }
  return false;
}

} // namespace

std::string echo(const std::vector<std::string>& args) {
  std::string out = "tsig";
  for (const auto& a : args) {
    out += ' ';
    if (!needs_quotes(a)) {
      out += a;
      continue;
    }
    out += '"';
    for (char c : a) {
      if (c == '"' || c == '\\') {
        out += '\\';
      }
      out += c;
    }
    out += '"';
  }
  return out;
}

std::string render(const Report& r, Format format) {
  if (format == Format::json) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["seed"] = r.seed;
    j["outcome"] = r.outcome;
    for (const auto& [key, value] : r.fields) {
      j[key] = value;
    }
    if (r.milliseconds) {
      j["milliseconds"] = *r.milliseconds;
    }
    return j.dump() + "\n";
  }
  std::string out = "command: " + r.command + "\nseed: " + std::to_string(r.seed) +
                    "\noutcome: " + r.outcome + "\n";
  for (const auto& [key, value] : r.fields) {
    out += key + ": " + text_value(value) + "\n";
  }
  if (r.milliseconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *r.milliseconds);
    out += std::string("milliseconds: ") + buf + "\n";
  }
  return out;
}

} // namespace tightsigma::cli
