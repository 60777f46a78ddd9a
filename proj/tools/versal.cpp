// Command-line front end: computes resolvents, tangent cohomology and
// semi-universal deformations of weighted-homogeneous ideals, and
// re-certifies previously produced reports.
//
// Exit codes: 0 success, 1 unreadable or unparseable input, 2 semantic
// rejection, 3 failed certification, 4 internal error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "versal/errors.hpp"
#include "versal/report.hpp"

namespace {

struct CommonArgs {
  std::string inputFile;
  std::string expr;
  std::string format = "json";
  std::string outputFile;
  int depth = 0;
  int order = 0;
  int weightBound = 0;
  bool hasDepth = false;
  bool hasOrder = false;
  bool hasWeightBound = false;
};

void addCommonOptions(CLI::App* cmd, CommonArgs& args, bool withOrder) {
  cmd->add_option("input", args.inputFile, "Input file (problem description)");
  cmd->add_option("-e,--expr", args.expr, "Inline problem description");
  cmd->add_option("--depth", args.depth, "Resolvent depth (default 3)")
      ->check(CLI::PositiveNumber);
  if (withOrder)
    cmd->add_option("--order", args.order,
                    "Parameter order of the lift (default 5)")
        ->check(CLI::PositiveNumber);
  cmd->add_option("--weight-bound", args.weightBound,
                  "Certified weight bound (default derived from the input)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", args.format, "Output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("-o,--output", args.outputFile,
                  "Write the report to a file instead of stdout");
}

int run(const std::string& subcommand, const CLI::App* cmd,
        const CommonArgs& args) {
  versal::JobSpec job;
  job.subcommand = subcommand;

  if (!args.expr.empty() && !args.inputFile.empty()) {
    std::cerr << "error: give either an input file or --expr, not both\n";
    return 1;
  }
  if (!args.expr.empty()) {
    job.inputText = args.expr;
  } else if (!args.inputFile.empty()) {
    std::ifstream in(args.inputFile);
    if (!in) {
      std::cerr << "error: cannot read '" << args.inputFile << "'\n";
      return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    job.inputText = buf.str();
  } else {
    std::cerr << "error: no input given (file argument or --expr)\n";
    return 1;
  }

  if (cmd->count("--depth") > 0) job.depth = args.depth;
  const CLI::Option* order = cmd->get_option_no_throw("--order");
  if (order != nullptr && order->count() > 0) job.order = args.order;
  if (cmd->count("--weight-bound") > 0) job.weightBound = args.weightBound;

  auto started = std::chrono::steady_clock::now();
  versal::JobResult result;
  try {
    result = versal::runJob(job);
  } catch (const versal::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 1;
  } catch (const versal::SemanticError& e) {
    std::cerr << "semantic error: " << e.what() << "\n";
    return 2;
  } catch (const versal::Error& e) {
    std::cerr << "semantic error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - started)
                       .count();

  std::string rendered =
      args.format == "text"
          ? versal::renderText(result.report, seconds)
          : versal::renderJson(result.report);

  if (!args.outputFile.empty()) {
    std::ofstream out(args.outputFile, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << args.outputFile << "'\n";
      return 1;
    }
    out << rendered;
  } else {
    std::cout << rendered;
  }
  return result.certificationPass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Semi-universal deformations of weighted-homogeneous singularities"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    bool withOrder;
  };
  const Sub subs[] = {
      {"resolve", "Build and certify the resolvent of the input ideal", false},
      {"tangent", "Tangent cohomology of the input ideal", false},
      {"deform", "Semi-universal deformation and Kuranishi map", true},
      {"verify", "Re-certify a previously produced deformation report", true},
  };

  CommonArgs args[4];
  for (int i = 0; i < 4; ++i)
    addCommonOptions(app.add_subcommand(subs[i].name, subs[i].help), args[i],
                     subs[i].withOrder);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (int i = 0; i < 4; ++i) {
    CLI::App* cmd = app.get_subcommand(subs[i].name);
    if (cmd->parsed()) return run(subs[i].name, cmd, args[i]);
  }
  return 1;
}
