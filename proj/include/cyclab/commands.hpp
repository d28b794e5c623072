#pragma once

#include "cyclab/catalog.hpp"
#include "cyclab/core.hpp"
#include "cyclab/feasibility.hpp"
#include "cyclab/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cyclab {

enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 1, kExitValidation = 2, kExitUnsupported = 3 };

struct CommandOptions {
  std::optional<double> tol;  ///< overrides the document and the environment
  std::uint64_t seed = kDefaultSeed;
  int restarts = 32;
  int iterations = 500;
};

/// A finished command: the report plus the exit code it implies. A failed
/// `expected` check yields kExitValidation with the report still filled in.
struct CommandResult {
  json report;
  int exit_code = kExitOk;
};

/// --tol, then the document's "tolerance", then CYCLAB_DEFAULT_TOL, then 1e-9.
double effective_tolerance(const CommandOptions& opts, const InputDocument& doc);

CommandResult cmd_analyze(const InputDocument& doc, const CommandOptions& opts);
CommandResult cmd_find_cyclic(const InputDocument& doc, const CommandOptions& opts);
CommandResult cmd_classify(const InputDocument& doc, const CommandOptions& opts);

/// `args` is a tag followed by its parameters. Direct products list their
/// factors separated by "/": DirectProduct Sl2Cyclic 1 2 / Abelian 1.
/// The report is an input document with reference values under "expected".
CommandResult cmd_catalog(const std::vector<std::string>& args);

/// Runs the acceptance checks (all when `only` is empty) concurrently.
CommandResult cmd_selftest(const std::vector<int>& only = {});

/// Family parameters as {"family", "name", "dim", "values", "factors"}.
json params_json(const FamilyParams& p);
FamilyParams params_from_json(const json& j, const std::string& field);

/// Machine format: indented JSON with a trailing newline.
std::string render_machine(const json& report);
/// Text format: nested "key: value" lines; the input echo is left out.
std::string render_text(const json& report);

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

}  // namespace cyclab
