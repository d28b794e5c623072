#include "cyclab/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace cyclab {

namespace {

const std::set<std::string> kKnownKeys = {"schema_version", "dim",       "basis_labels",
                                          "structure_constants", "gram", "tolerance",
                                          "expected",       "description"};

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw InvalidInput("field '" + field + "': " + message);
}

int integer_field(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !(j.is_number_float() && j.get<double>() == std::floor(j.get<double>())))
    fail(field, "expected an integer");
  return j.get<int>();
}

double number_field(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j) == 0.0 ? 0.0 : m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i) == 0.0 ? 0.0 : v(i));
  return out;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) fail(field + "[0]", "expected an array");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) fail(rf, "rows must all have the same length");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = number_field(j[r][c], rf + "[" + std::to_string(c) + "]");
  }
  return m;
}

InputDocument parse_input(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::ostringstream os;
    os << "JSON syntax error at line " << line << ", column " << col << ": " << e.what();
    throw InvalidInput(os.str());
  }
  if (!j.is_object()) throw InvalidInput("top level must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kKnownKeys.count(key)) fail(key, "unknown field");

  if (!j.contains("schema_version")) fail("schema_version", "missing");
  if (integer_field(j["schema_version"], "schema_version") != kSchemaVersion)
    fail("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");

  InputDocument doc;
  if (!j.contains("dim")) fail("dim", "missing");
  doc.dim = integer_field(j["dim"], "dim");
  if (doc.dim < 1) fail("dim", "must be positive");
  const int n = doc.dim;

  if (j.contains("basis_labels")) {
    const json& l = j["basis_labels"];
    if (!l.is_array() || static_cast<int>(l.size()) != n)
      fail("basis_labels", "expected " + std::to_string(n) + " strings");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string()) fail("basis_labels[" + std::to_string(i) + "]", "expected a string");
      doc.labels.push_back(l[i].get<std::string>());
    }
  } else {
    for (int i = 0; i < n; ++i) doc.labels.push_back("e" + std::to_string(i + 1));
  }

  if (j.contains("structure_constants")) {
    const json& sc = j["structure_constants"];
    if (!sc.is_array()) fail("structure_constants", "expected an array");
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t e = 0; e < sc.size(); ++e) {
      const std::string f = "structure_constants[" + std::to_string(e) + "]";
      const json& r = sc[e];
      if (!r.is_object()) fail(f, "expected an object {i, j, k, value}");
      for (const char* key : {"i", "j", "k", "value"})
        if (!r.contains(key)) fail(f + "." + key, "missing");
      for (const auto& [key, value] : r.items())
        if (key != "i" && key != "j" && key != "k" && key != "value") fail(f + "." + key, "unknown field");
      const int i = integer_field(r["i"], f + ".i");
      const int jj = integer_field(r["j"], f + ".j");
      const int k = integer_field(r["k"], f + ".k");
      for (const auto& [name, v] : {std::pair{"i", i}, {"j", jj}, {"k", k}})
        if (v < 1 || v > n) fail(f + "." + name, "index out of range 1.." + std::to_string(n));
      if (i >= jj) fail(f, "entries must have i < j (the antisymmetric partner is implied)");
      if (!seen.insert({i, jj, k}).second) fail(f, "duplicate entry for (i, j, k)");
      doc.entries.push_back({i - 1, jj - 1, k - 1, number_field(r["value"], f + ".value")});
    }
  }

  if (j.contains("gram")) {
    const json& g = j["gram"];
    if (g.is_string()) {
      if (g.get<std::string>() != "identity") fail("gram", "expected \"identity\" or a matrix");
    } else {
      Matrix m = matrix_from_json(g, "gram");
      if (m.rows() != n || m.cols() != n)
        fail("gram", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
      doc.gram = std::move(m);
    }
  }

  if (j.contains("tolerance")) {
    const double t = number_field(j["tolerance"], "tolerance");
    if (!(t > 0.0)) fail("tolerance", "must be positive");
    doc.tolerance = t;
  }
  if (j.contains("expected")) {
    if (!j["expected"].is_object()) fail("expected", "expected an object");
    doc.expected = j["expected"];
  }
  if (j.contains("description")) {
    if (!j["description"].is_string()) fail("description", "expected a string");
    doc.description = j["description"].get<std::string>();
  }
  return doc;
}

InputDocument read_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_input(ss.str());
}

json to_json(const InputDocument& doc) {
  json j;
  j["schema_version"] = kSchemaVersion;
  if (!doc.description.empty()) j["description"] = doc.description;
  j["dim"] = doc.dim;
  j["basis_labels"] = doc.labels;
  json sc = json::array();
  for (const BracketEntry& e : doc.entries)
    sc.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1}, {"value", e.value}});
  j["structure_constants"] = std::move(sc);
  if (doc.gram)
    j["gram"] = matrix_json(*doc.gram);
  else
    j["gram"] = "identity";
  if (doc.tolerance) j["tolerance"] = *doc.tolerance;
  if (!doc.expected.is_null()) j["expected"] = doc.expected;
  return j;
}

MetricLieAlgebra build_algebra(const InputDocument& doc, double tol) {
  LieAlgebra a = LieAlgebra::from_brackets(doc.dim, doc.entries, doc.labels);
  const InnerProduct g = doc.gram ? InnerProduct(*doc.gram, tol) : InnerProduct::identity(doc.dim);
  return MetricLieAlgebra(std::move(a), g, tol);
}

InputDocument document_from(const MetricLieAlgebra& m, double drop) {
  InputDocument doc;
  doc.dim = m.dim();
  doc.labels = m.labels();
  if (static_cast<int>(doc.labels.size()) != doc.dim) {
    doc.labels.clear();
    for (int i = 0; i < doc.dim; ++i) doc.labels.push_back("e" + std::to_string(i + 1));
  }
  for (int i = 0; i < doc.dim; ++i)
    for (int j = i + 1; j < doc.dim; ++j)
      for (int k = 0; k < doc.dim; ++k) {
        const double v = m.c(i, j, k);
        if (v != 0.0 && std::abs(v) > drop) doc.entries.push_back({i, j, k, v});
      }
  if (!m.gram().isIdentity(0.0)) doc.gram = m.gram();
  return doc;
}

}  // namespace cyclab
