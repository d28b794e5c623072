#include "cyclab/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Flags {
  std::optional<double> tol;
  std::uint64_t seed = cyclab::kDefaultSeed;
  int restarts = 32;
  int iterations = 500;
  std::string format = "text";
  std::string output;
  std::string witness;
  std::string input;
  std::vector<std::string> catalog_args;
  std::vector<int> criteria;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw cyclab::InvalidInput("cannot write '" + path + "'");
  out << text;
}

int run(const std::string& command, const Flags& f) {
  using namespace cyclab;
  CommandOptions opts;
  opts.tol = f.tol;
  opts.seed = f.seed;
  opts.restarts = f.restarts;
  opts.iterations = f.iterations;

  CommandResult r;
  if (command == "catalog") {
    r = cmd_catalog(f.catalog_args);
    emit(render_machine(r.report), f.output);
    return r.exit_code;
  }
  if (command == "selftest") {
    r = cmd_selftest(f.criteria);
  } else {
    const InputDocument doc = read_input_file(f.input);
    if (command == "analyze")
      r = cmd_analyze(doc, opts);
    else if (command == "find-cyclic")
      r = cmd_find_cyclic(doc, opts);
    else
      r = cmd_classify(doc, opts);
    if (!f.witness.empty()) {
      const json& block = r.report["feasibility"];
      if (!block.contains("witness_document"))
        std::cerr << "no cyclic metric found; " << f.witness << " not written\n";
      else
        emit(render_machine(block["witness_document"]), f.witness);
    }
  }
  emit(f.format == "machine" ? render_machine(r.report) : render_text(r.report), f.output);
  if (r.exit_code == kExitValidation && r.report.contains("expected_checks"))
    std::cerr << "expected-value check failed\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclab: metric Lie algebras, homogeneous structures, curvature and cyclic metrics"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", f.tol, "relative tolerance (default: file, then CYCLAB_DEFAULT_TOL, then 1e-9)");
    sub->add_option("--format", f.format, "report format")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--output", f.output, "write the report to PATH instead of stdout");
  };

  auto* analyze = app.add_subcommand("analyze", "structure, homogeneous structure and curvature report");
  analyze->add_option("input", f.input, "input JSON file")->required();
  common(analyze);

  auto* find = app.add_subcommand("find-cyclic", "search for a cyclic metric on the algebra");
  find->add_option("input", f.input, "input JSON file")->required();
  common(find);
  find->add_option("--seed", f.seed, "random seed");
  find->add_option("--restarts", f.restarts, "random restarts")->check(CLI::PositiveNumber);
  find->add_option("--iters", f.iterations, "iterations per restart")->check(CLI::PositiveNumber);
  find->add_option("--witness", f.witness, "write the witness as an input document to PATH");

  auto* cls = app.add_subcommand("classify", "identify the family of a cyclic metric Lie algebra (dim <= 5)");
  cls->add_option("input", f.input, "input JSON file")->required();
  common(cls);

  auto* cat = app.add_subcommand("catalog", "write the input document of a catalog family");
  cat->add_option("--output", f.output, "write the document to PATH instead of stdout");
  cat->add_option("tag_and_params", f.catalog_args, "TAG [PARAMS...]; products: DirectProduct A a.. / B b..")
      ->required()
      ->allow_extra_args();

  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--criteria", f.criteria, "only these criteria (1-10)");
  self->add_option("--format", f.format, "report format")->check(CLI::IsMember({"text", "machine"}));
  self->add_option("--output", f.output, "write the report to PATH instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cyclab::kExitInvalidInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, f);
  } catch (const cyclab::ValidationFailure& e) {
    std::cerr << "validation failure: " << e.what() << " (defect " << e.defect() << ")\n";
    return cyclab::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cyclab::exit_code_for(e);
  }
}
