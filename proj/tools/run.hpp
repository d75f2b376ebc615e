#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sbk::cli {

enum class Format { json, csv };

inline constexpr int kExitPass = 0;
inline constexpr int kExitResidual = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
  std::string command;
  std::vector<double> t_list{1.0};
  std::vector<double> mu_list{0.0};
  std::uint64_t seed = 20240601;
  std::size_t samples = 500;
  double tol = 1e-10;
  double truncation_tol = 1e-14;
  int quad_order = 64;
  int haar_resolution = 16;
  std::string output_path;
  std::optional<Format> format;  // unset: csv for table commands, json otherwise
  bool timestamp = true;
  std::size_t dim = 1;
  std::string flavor = "su2";       // heat-kernel, transform: su2 | coxeter
  std::string matrix = "identity";  // heat-kernel su2: identity | minus-identity | diag:<tau> | random
  std::string version = "C";        // transform: A | B | C
  std::string function = "one";     // transform, factorization (factorization: "all" by default)
  std::size_t grid = 20;            // transform, factorization, bounds grid size
};

struct RunResult {
  int exit_code = kExitPass;
  std::string body;
  std::string message;  // diagnostic for stderr
};

/// Throws sbk::UsageError for malformed or out-of-range configs.
void validate(const RunConfig& config);

[[nodiscard]] Format effective_format(const RunConfig& config);

/// Runs the subcommand and renders its report. Config errors are reported
/// through exit code 2, never thrown.
[[nodiscard]] RunResult run(const RunConfig& config);

/// Resolves where the report goes: --output, else $SBK_OUTPUT_DIR/<command>.<ext>,
/// else empty (stdout).
[[nodiscard]] std::string output_destination(const RunConfig& config);

/// Parses argv; returns nullopt and sets `exit_code` when parsing ends the
/// program (help or error).
[[nodiscard]] std::optional<RunConfig> parse_args(int argc, const char* const* argv, int& exit_code);

}  // namespace sbk::cli
