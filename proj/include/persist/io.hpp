#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "persist/barcode.hpp"
#include "persist/complexes.hpp"
#include "persist/filtered_complex.hpp"
#include "persist/module_rep.hpp"
#include "persist/representations.hpp"

namespace persist {

// 17 significant digits; infinities as the strings "inf" / "-inf".
std::string format_number(double x);

std::string barcode_to_json(const Barcode& B);
Barcode barcode_from_json(const std::string& text);
std::string module_to_json(const ModuleRep& V);
ModuleRep module_from_json(const std::string& text, Field f);

// One cell per line, `id degree u : b1 b2 ...` or `id degree u : b1:c1 b2:c2 ...`.
// Blank lines and lines starting with '#' are ignored.
FilteredComplex parse_complex(std::istream& in, const std::string& source = "<input>");
std::string complex_to_text(const FilteredComplex& C);

// Comma-separated rows of numbers; errors name the line.
std::vector<std::vector<double>> read_csv(std::istream& in, const std::string& source = "<input>");
PointCloud point_cloud_from_csv(std::istream& in, const std::string& source = "<input>");
FiniteMetricSpace distance_matrix_from_csv(std::istream& in, const std::string& source = "<input>");
GridFunction grid_from_csv(std::istream& in, double period, const std::string& source = "<input>");

// {"order": g, "degree": k, "cells": {"x": "y", "s": "-s"}}; unlisted cells are fixed.
struct ComplexActionSpec {
  std::size_t order = 2;
  int degree = 0;
  CellAction action;
};
ComplexActionSpec action_spec_from_json(const std::string& text, const FilteredComplex& C);
// {"module": {...ModuleRep JSON...}, "order": g, "action": [row-major arrays per cell]}
ModuleRepWithAction slice_action_from_json(const std::string& text, Field f);

struct ExperimentConfig {
  std::size_t grid = 64;
  int lambda = 9;
  std::size_t count = 20;
  std::uint64_t seed = 1;
  double slack_pct = 5;
};
ExperimentConfig experiment_config_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Horizontal bars grouped by degree, deterministic output.
std::string barcode_svg(const Barcode& B);

}  // namespace persist
