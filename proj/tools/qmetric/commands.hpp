#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qmetric::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitAcceptance = 3;

inline constexpr const char* kOutputDirEnv = "QMETRIC_OUTPUT_DIR";

struct Artifact {
  std::string filename;
  std::string content;
};

/// Result of one command. On validation failure `json` holds
/// {"error": {"kind", "field", "message"}} and there are no artifacts.
struct Outcome {
  int exit_code = kExitSuccess;
  nlohmann::json json;
  std::vector<Artifact> artifacts;
};

const std::vector<std::string>& command_names();

/// Validates `config` for `command`, runs it, and returns the result JSON
/// plus the files to write (<command>.json and, for sweeps, a CSV). Nothing
/// touches the filesystem except reading input files.
Outcome run(const std::string& command, const nlohmann::json& config);

/// Output directory: explicit flag, else $QMETRIC_OUTPUT_DIR, else ".".
std::string resolve_output_dir(const std::optional<std::string>& flag);

/// Writes every artifact under `dir`, creating it if needed.
void write_artifacts(const std::string& dir, const Outcome& outcome);

/// Same JSON text every time for the same value.
std::string dump(const nlohmann::json& j);

}  // namespace qmetric::cli
