#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wallcross/config.hpp"

namespace wallcross {

using Json = nlohmann::ordered_json;

// Result of one batch command: a JSON document and the same data as CSV rows.
struct CommandOutput {
  Json doc = Json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool ok = true;  // false when a check inside the command failed
  std::string log;  // diagnostics for stderr
};

const std::vector<std::string>& command_names();

// cfg may be null only for "selftest". Config and input problems throw ConfigError / InputError.
CommandOutput run_command(const std::string& command, const RunConfig* cfg);

// "json" or "csv".
std::string render(const CommandOutput& out, std::string_view format);

}  // namespace wallcross
