#pragma once

#include "cyclab/core.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cyclab {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// A metric Lie algebra as stored on disk.
///
///   {
///     "schema_version": 1,
///     "dim": 3,
///     "basis_labels": ["e1", "e2", "e3"],
///     "structure_constants": [{"i": 1, "j": 2, "k": 3, "value": 1.0}],
///     "gram": "identity" | [[...], ...],
///     "tolerance": 1e-9,
///     "expected": {...},
///     "description": "..."
///   }
///
/// Indices are 1-based with i < j; [e_j, e_i] is implied.
struct InputDocument {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<BracketEntry> entries;  ///< 0-based
  std::optional<Matrix> gram;         ///< nullopt means identity
  std::optional<double> tolerance;
  json expected;                      ///< null when absent
  std::string description;
};

/// Parses and checks the schema. Throws InvalidInput with the offending
/// field (and line/column for syntax errors).
InputDocument parse_input(const std::string& text);
InputDocument read_input_file(const std::string& path);

json to_json(const InputDocument& doc);

/// Builds the metric Lie algebra; ValidationFailure when the algebra or the
/// metric fails its checks.
MetricLieAlgebra build_algebra(const InputDocument& doc, double tol);

/// Sparse document for an algebra; entries below `drop` in magnitude are omitted.
InputDocument document_from(const MetricLieAlgebra& m, double drop = 0.0);

json matrix_json(const Matrix& m);
json vector_json(const Vector& v);
Matrix matrix_from_json(const json& j, const std::string& field);

}  // namespace cyclab
