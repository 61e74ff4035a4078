#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omlkit/lattice.hpp"

namespace omlkit {

struct RunConfig {
  std::string command;  // check | blocks | center | solve | modal | actualize | export
  std::string input_path;
  std::optional<std::string> input_format;  // gd | ksv | oml; else from the extension
  std::optional<std::string> mode;          // all | blocks
  std::optional<std::string> extend;        // identity | diagonal:k
  std::optional<std::size_t> enumerate_all;
  bool structured = false;
  bool as_hypergraph = false;
  std::optional<std::string> context;
  std::optional<std::string> prop;
  std::optional<std::size_t> nu;
  std::optional<std::string> export_to;  // dot | oml | gd
  unsigned jobs = 1;
  Limits limits;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Parses argv-style arguments (without the program name). Throws Usage.
RunConfig parse_args(const std::vector<std::string>& args);

/// Reads OMLKIT_ELEMENT_CAP into `config.limits`. Throws Usage on a bad value.
void apply_environment(RunConfig& config);

/// Executes one command on the input bytes. Exit codes: 0 success (UNSAT
/// included), 2 parse or usage, 3 validation, 4 cap exceeded.
RunResult run(const RunConfig& config, std::string_view input);

/// parse_args + apply_environment + file read + run.
RunResult run_command_line(const std::vector<std::string>& args);

}  // namespace omlkit
