#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gkz/errors.hpp"
#include "gkz/problem.hpp"
#include "gkz/report.hpp"

namespace {

int run(const std::string& command, const std::string& spec_path, const std::string& format,
        const std::string& out_path) {
  std::ifstream in(spec_path);
  if (!in) {
    std::cerr << "gkz: cannot read " << spec_path << "\n";
    return 2;
  }
  std::stringstream text;
  text << in.rdbuf();

  gkz::ProblemSpec spec;
  try {
    spec = gkz::parse_problem(text.str());
  } catch (const gkz::Error& e) {
    std::cerr << "gkz: " << spec_path << ": " << e.what() << "\n";
    return 2;
  }

  gkz::Report report;
  try {
    report = gkz::run_command(spec, command);
  } catch (const gkz::Error& e) {
    std::cerr << "gkz: " << e.what() << "\n";
    return 1;
  }

  const std::string bytes = gkz::emit_report(report, gkz::parse_format(format));
  if (out_path.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "gkz: cannot write " << out_path << "\n";
      return 2;
    }
    out << bytes;
  }
  if (!report.all_passed()) {
    for (const auto& c : report.checks)
      if (!c.passed) std::cerr << "FAIL " << c.name << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GKZ system A = (a b): solution bases, Gevrey indices, Ext tables"};
  app.require_subcommand(1);
  std::string spec_path;
  std::string format = "json";
  std::string out_path;
  std::string chosen;
  for (const auto& name : gkz::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--spec", spec_path, "problem file")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return run(chosen, spec_path, format, out_path);
}
