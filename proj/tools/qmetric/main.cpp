#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using nlohmann::json;
using namespace qmetric::cli;

json error_json(const std::string& field, const std::string& message) {
  return {{"error", {{"kind", "Config"}, {"field", field}, {"message", message}}}};
}

// KEY=VALUE where VALUE is JSON when it parses as JSON and a plain string
// otherwise. Dotted keys address nested objects (tolerances.spectral=1e-8).
void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected KEY=VALUE, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json* node = &config;
  std::size_t start = 0;
  for (auto dot = key.find('.'); dot != std::string::npos; dot = key.find('.', start)) {
    node = &(*node)[key.substr(start, dot - start)];
    if (!node->is_object()) *node = json::object();
    start = dot + 1;
  }
  (*node)[key.substr(start)] = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional quantum metric approximations"};
  app.require_subcommand(1);

  struct Args {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
    bool no_write = false;
  };
  Args args;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", args.config_path, "JSON config file");
    sub->add_option("-s,--set", args.overrides, "Override a config key: KEY=VALUE (VALUE as JSON)");
    sub->add_option("--seed", args.seed, "Override the seed");
    sub->add_option("-o,--output-dir", args.output_dir, std::string("Where to write results (else $") + kOutputDirEnv + ", else .)");
    sub->add_flag("--no-write", args.no_write, "Print the result only");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  json config = json::object();
  try {
    if (!args.config_path.empty()) {
      std::ifstream in(args.config_path);
      if (!in) {
        std::cout << dump(error_json("config", "cannot open " + args.config_path));
        return kExitValidation;
      }
      config = json::parse(in);
    }
    for (const auto& o : args.overrides) apply_override(config, o);
    if (args.seed) config["seed"] = *args.seed;
  } catch (const std::exception& e) {
    std::cout << dump(error_json("config", e.what()));
    return kExitValidation;
  }

  const auto outcome = run(command, config);
  if (outcome.exit_code == kExitValidation || outcome.exit_code == kExitInternal) {
    std::cout << dump(outcome.json);
    return outcome.exit_code;
  }
  if (!args.no_write) {
    try {
      write_artifacts(resolve_output_dir(args.output_dir), outcome);
    } catch (const std::exception& e) {
      std::cout << dump({{"error", {{"kind", "Internal"}, {"field", "output_dir"}, {"message", e.what()}}}});
      return kExitInternal;
    }
  }
  std::cout << dump(outcome.json);
  return outcome.exit_code;
}
