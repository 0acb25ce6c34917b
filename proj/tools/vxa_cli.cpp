// Command-line front end: parses a verification script from a file or
// stdin and executes it against the symbolic engine.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "vxa/dsl.hpp"

int main(int argc, char** argv) {
  CLI::App app{"vxa - exact free-field vertex algebra engine"};
  std::string script_path;
  vxa::dsl::RunOptions opt;
  long max_weight = 3;
  app.add_option("script", script_path, "script file (reads stdin when absent)");
  app.add_flag("--json", opt.json, "emit machine-readable reports");
  app.add_option("--seed", opt.seed, "seed for the sampled property checks");
  app.add_option("--max-weight", max_weight, "weight bound for sampled verifications");
  app.add_option("--series-order", opt.series_order, "default series truncation order");
  app.add_option("--degree-window", opt.degree_window, "degree window for rank computations");
  CLI11_PARSE(app, argc, argv);
  opt.max_weight = max_weight;

  std::string source;
  if (script_path.empty() || script_path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    source = ss.str();
  } else {
    std::ifstream in(script_path);
    if (!in) {
      std::cerr << "error: cannot open " << script_path << "\n";
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    source = ss.str();
  }

  vxa::dsl::ParseResult pr = vxa::dsl::parse(source);
  if (!pr.ok()) {
    for (const auto& d : pr.diagnostics) std::cerr << d.str() << "\n";
    return 2;
  }
  vxa::dsl::RunResult res = vxa::dsl::run(*pr.script, opt);
  for (const auto& d : res.diagnostics) std::cerr << d.str() << "\n";
  std::cout << res.output;
  return res.exit_code;
}
