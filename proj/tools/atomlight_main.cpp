#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "atomlight/config.hpp"
#include "atomlight/errors.hpp"
#include "atomlight/io.hpp"

using namespace atomlight;

namespace {

constexpr int kNumericFailure = 1;
constexpr int kConfigFailure = 2;

struct Invocation {
  std::string config_path;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load(const Invocation& inv, RunMode mode) {
  RunConfig config;
  if (inv.config_path.empty()) {
    config = parse_config("", mode, inv.overrides);
  } else if (inv.config_path.ends_with(".json")) {
    // A manifest from an earlier run.
    nlohmann::ordered_json manifest;
    try {
      manifest = nlohmann::ordered_json::parse(slurp(inv.config_path));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(inv.config_path + ": " + e.what());
    }
    config = config_from_manifest(manifest);
    if (config.mode != mode)
      throw ConfigError("manifest mode '" + to_string(config.mode) + "' conflicts with the requested " +
                        to_string(mode));
    apply_overrides(config, inv.overrides);
  } else {
    try {
      config = parse_config(slurp(inv.config_path), mode, inv.overrides);
    } catch (const ConfigError& e) {
      throw ConfigError(inv.config_path + ": " + e.what());
    }
  }
  if (inv.seed) apply_override(config, "rng_seed=" + std::to_string(*inv.seed), Source::command_line);
  if (!inv.output.empty()) apply_override(config, "output_dir=" + inv.output, Source::command_line);
  return config;
}

int dispatch(const Invocation& inv, RunMode mode) {
  try {
    const RunConfig config = load(inv, mode);
    const int status = run(config);
    const auto manifest = read_manifest(config.output_dir);
    for (const auto& w : manifest["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    for (const auto& n : manifest["notes"]) std::cerr << "note: " << n.get<std::string>() << "\n";
    std::cout << config.output_dir << ": " << manifest["status"].get<std::string>() << "\n";
    return status == 0 ? 0 : kNumericFailure;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const DomainError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-organized crystallization of a driven quasi-1D condensate"};
  app.require_subcommand(0, 1);
  bool list_keys = false;
  app.add_flag("--list-keys", list_keys, "Print every config key with its default and exit");

  Invocation inv;
  std::optional<RunMode> chosen;
  const std::pair<const char*, RunMode> commands[] = {
      {"ground-state", RunMode::ground_state},   {"quench", RunMode::quench},
      {"spectrum", RunMode::spectrum},           {"threshold-scan", RunMode::threshold_scan},
      {"sweep", RunMode::sweep},
  };
  for (const auto& [name, mode] : commands) {
    auto* sub = app.add_subcommand(name, "Run mode " + to_string(mode));
    sub->add_option("--config", inv.config_path, "Flat key = value config, or a run manifest.json");
    sub->add_option("--output", inv.output, "Run directory (overrides output_dir)");
    sub->add_option("--seed", inv.seed, "Noise seed (overrides rng_seed)");
    sub->add_option("--override", inv.overrides, "key=value applied after the config file")->take_all();
    sub->callback([&chosen, m = mode] { chosen = m; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigFailure;
  }

  if (list_keys) {
    const RunConfig defaults;
    for (const auto& k : config_keys())
      std::cout << k.name << " = " << config_value(defaults, k.name) << "    # " << k.description << "\n";
    return 0;
  }
  if (!chosen) {
    std::cerr << app.help();
    return kConfigFailure;
  }
  return dispatch(inv, *chosen);
}
