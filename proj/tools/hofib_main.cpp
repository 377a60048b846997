#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hofib/commands.hpp"

namespace {

std::string builtin_help() {
  std::string out = "Builtin targets:";
  for (const auto& name : hofib::builtin_examples()) out += " " + name;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology fibrations, subdivision and Borel constructions on finite simplicial sets"};
  app.footer(builtin_help());

  std::string command;
  std::string target;
  std::string file;
  std::string coefficients = "Z";
  std::string format = "text";
  std::string output;
  std::string alpha;
  hofib::RunOptions options;
  bool no_timing = false;

  app.add_option("command", command, "Pipeline to run")
      ->required()
      ->check(CLI::IsMember(hofib::command_names()));
  app.add_option("target", target, "Space, map, monoid or diagram name")->required();
  app.add_option("-f,--file", file, "Document with sset/map/monoid/diagram declarations")
      ->check(CLI::ExistingFile);
  app.add_option("--max-dim", options.max_dim, "Truncation bound N")
      ->default_val(4)
      ->check(CLI::Range(1, 12));
  app.add_option("--coefficients", coefficients, "Z, Z2, Z3, ...")->default_val("Z");
  app.add_option("--format", format, "Report format")
      ->default_val("text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--deep-ops", options.deep_ops, "Audit every order map, not only faces and degeneracies");
  app.add_option("--seed", options.seed, "Seed for corpus sampling")->default_val(0);
  app.add_option("--alpha", alpha, "Telescope element for group-completion on a monoid");
  app.add_flag("--no-timing", no_timing, "Report timing_ms as 0 for byte-stable output");
  app.add_option("-o,--output", output, "Write the report to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    options.ring = hofib::Coefficients::parse(coefficients);
    options.timing = !no_timing;
    if (!alpha.empty()) options.alpha = alpha;
    const hofib::Document doc =
        file.empty() ? hofib::Document{options.max_dim, {}, {}, {}, {}}
                     : hofib::parse_file(file, options.max_dim);
    const hofib::Report report = hofib::run(command, target, doc, options);
    const std::string text =
        hofib::emit(report, format == "json" ? hofib::Format::Json : hofib::Format::Text);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output, std::ios::binary);
      out << text;
      if (!out) throw hofib::PreconditionError("cannot write '" + output + "'");
    }
    return report.passed() ? 0 : 1;
  } catch (const hofib::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
