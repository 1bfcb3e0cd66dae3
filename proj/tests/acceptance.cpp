// Acceptance run: one PASS/FAIL line per criterion, followed by its gate lines.
// Usage: acceptance [--quick] [--json <path>]
#include <cstring>
#include <fstream>
#include <iostream>

#include "sphsplit/suite.hpp"

int main(int argc, char** argv) {
  using namespace sphsplit;
  SuiteConfig cfg;
  std::string json_path;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--quick"))
      cfg.scale = Scale::Quick;
    else if (!std::strcmp(argv[i], "--json") && i + 1 < argc)
      json_path = argv[++i];
  }
  Suite suite(cfg);
  std::cout << "acceptance: scale=" << (cfg.scale == Scale::Full ? "full" : "quick") << " seed=" << cfg.seed
            << " z-threshold=" << suite.threshold() << std::endl;
  auto results = suite.run_all([](const CriterionResult& r) { std::cout << format_result(r) << std::endl; });
  int failed = 0;
  std::cout << "\nsummary:\n";
  for (const auto& r : results) {
    std::cout << (r.pass() ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.title << ")\n";
    failed += !r.pass();
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed" << std::endl;
  if (!json_path.empty()) std::ofstream(json_path) << suite_json(results, cfg, suite.threshold());
  return failed ? 1 : 0;
}
