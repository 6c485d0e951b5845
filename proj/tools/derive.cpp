// Regenerates scripts/<name>.script for every manifest entry with a
// derivation source, by searching for the moves between its written lines.
#include <iostream>

#include "CLI11.hpp"
#include "torel/catalog.hpp"

using namespace torel;

int main(int argc, char** argv) {
  CLI::App app{"Derive move scripts from derivation sources"};
  std::string dir = Catalog::default_dir();
  std::vector<std::string> only;
  std::size_t budget = 200000;
  app.add_option("--catalog", dir, "catalog directory");
  app.add_option("--budget", budget, "node budget per line");
  app.add_option("names", only, "entries to derive (default: all)");
  CLI11_PARSE(app, argc, argv);

  try {
    Catalog cat(dir);
    int failures = 0;
    for (const auto& e : cat.entries()) {
      if (e.field("drv").empty()) continue;
      if (!only.empty() && std::find(only.begin(), only.end(), e.name) == only.end()) continue;
      try {
        Derivation d = parse_derivation(read_file(cat.path(e.field("drv"))));
        DerivedScript ds = derive_script(cat, d, budget);
        std::string text = "# " + e.name + ": " + d.source + " -> " + d.expect + "\n";
        std::size_t line = 0;
        for (std::size_t i = 0; i <= ds.script.steps.size(); ++i) {
          while (line < ds.line_steps.size() && ds.line_steps[line] == i) text += "# line " + std::to_string(++line) + "\n";
          if (i < ds.script.steps.size()) text += format_step(ds.script.steps[i]) + "\n";
        }
        write_file(cat.path(e.field("script")), text);
        std::cout << e.name << ": " << ds.script.steps.size() << " steps\n";
      } catch (const std::exception& ex) {
        std::cout << e.name << ": FAILED " << ex.what() << "\n";
        ++failures;
      }
    }
    return failures ? 1 : 0;
  } catch (const std::exception& ex) {
    std::cerr << ex.what() << "\n";
    return 2;
  }
}
