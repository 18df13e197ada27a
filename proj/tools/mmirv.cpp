// mmirv: symbolic-execution memory-safety verifier for mini-MIR programs.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mmirv/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mmirv - separation-logic verifier for .mmir programs"};

  mmirv::RunConfig cfg;
  std::string format = "text";
  std::string function;

  app.add_option("inputs", cfg.inputs, "input .mmir files")->required()->expected(-1);
  app.add_option("--function", function, "verify only the named function");
  app.add_flag("--trace", cfg.emit_trace, "include per-step symbolic states in the report");
  app.add_option("--format", format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-paths", cfg.max_paths, "abort exploration beyond this many paths")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (!function.empty()) cfg.function_filter = function;
  cfg.format = format == "json" ? mmirv::RunConfig::Format::Json : mmirv::RunConfig::Format::Text;

  return mmirv::run(cfg, std::cout, std::cerr);
}
