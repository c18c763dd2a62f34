#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "persist/complexes.hpp"
#include "persist/filtered_complex.hpp"
#include "persist/function_theory.hpp"

namespace persist {

// Worked examples shared by the CLI, tests and scenarios.
PointCloud hexagon_cloud();
FilteredComplex heart_sphere_complex(double a1, double a2, double a3, double a4);
TrigPolynomial2D sine_sum(int n);  // sin(n x) + sin(n y)
PointCloud circle_cloud(std::size_t n);

struct Check {
  std::string what;
  bool pass = false;
  std::string detail;
};

struct ScenarioResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  double seconds = 0;
  bool passed() const;
};

struct ScenarioInfo {
  int id;
  const char* name;
  const char* summary;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

const std::vector<ScenarioInfo>& scenario_list();
// Accepts a number or a name; returns 0 when unknown.
int scenario_id(const std::string& key);
ScenarioResult run_scenario(int id, std::uint64_t seed = kDefaultSeed);
std::string format_result(const ScenarioResult& r);

}  // namespace persist
