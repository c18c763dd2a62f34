// acceptance [N...] runs the listed criteria (all of them by default) and
// exits non-zero if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "scenarios.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  std::uint64_t seed = persist::kDefaultSeed;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
      continue;
    }
    int id = persist::scenario_id(a);
    if (!id) {
      std::fprintf(stderr, "unknown criterion %s\n", a.c_str());
      return 1;
    }
    ids.push_back(id);
  }
  if (ids.empty())
    for (const auto& s : persist::scenario_list()) ids.push_back(s.id);
  int failed = 0;
  for (int id : ids) {
    persist::ScenarioResult r = persist::run_scenario(id, seed);
    std::fputs(persist::format_result(r).c_str(), stdout);
    if (!r.passed()) ++failed;
  }
  if (ids.size() > 1) std::printf("%zu criteria, %d failed\n", ids.size(), failed);
  return failed ? 2 : 0;
}
