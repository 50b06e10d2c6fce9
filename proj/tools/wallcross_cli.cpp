// Batch front end: one config, one command, one output file (or stdout).
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "wallcross/commands.hpp"
#include "wallcross/config.hpp"
#include "wallcross/errors.hpp"

using namespace wallcross;

namespace {
enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2 };
}

int main(int argc, char** argv) {
  CLI::App app{"Exact wall-crossing and rationality checks on toy cone models"};
  std::string config_path, command, out_dir, format = "json";
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--out", out_dir, "Directory for <command>.<format>; stdout when omitted");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  CommandOutput out;
  try {
    std::optional<RunConfig> cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    out = run_command(command, cfg ? &*cfg : nullptr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }

  std::cerr << out.log;
  const std::string text = render(out, format);
  if (out_dir.empty()) {
    std::cout << text;
  } else {
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / (command + "." + format);
    std::ofstream file(path);
    file << text;
    if (!file) {
      std::cerr << "cannot write " << path.string() << '\n';
      return kConfigError;
    }
  }
  return out.ok ? kOk : kCheckFailed;
}
