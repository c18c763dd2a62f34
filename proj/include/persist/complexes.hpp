#pragma once

#include <cstddef>
#include <vector>

#include "persist/barcode.hpp"
#include "persist/filtered_complex.hpp"

namespace persist {

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // Checks symmetry, zero diagonal and non-negativity.
  explicit FiniteMetricSpace(std::vector<std::vector<double>> dist);
  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  bool satisfies_triangle_inequality(double tol = 1e-12) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

struct PointCloud {
  std::vector<std::vector<double>> points;
  std::size_t dim() const { return points.empty() ? 0 : points[0].size(); }
};

FiniteMetricSpace euclidean_metric(const PointCloud& P);

struct GridFunction {
  std::size_t nx = 0, ny = 0;
  std::vector<double> values;  // row-major, values[y * nx + x]
  bool periodic = true;
  double period = 6.283185307179586;

  double at(std::size_t x, std::size_t y) const { return values[y * nx + x]; }
  double step_x() const { return period / static_cast<double>(nx); }
  double step_y() const { return period / static_cast<double>(ny); }
};

// A simplicial complex given by vertex lists; closed under faces.
struct Triangulation {
  std::size_t num_vertices = 0;
  std::vector<std::vector<std::size_t>> simplices;  // each sorted ascending

  // Closure of the given top simplices, ordered by dimension then lexicographically.
  static Triangulation from_maximal(std::size_t num_vertices, const std::vector<std::vector<std::size_t>>& top);
};

// Builds oriented simplicial complexes: the boundary of [v0..vk] is
// sum_i (-1)^i [v0..^vi..vk], so the result is valid over any prime field.
FilteredComplex simplicial_complex(const std::vector<std::vector<std::size_t>>& simplices,
                                   const std::vector<double>& values);

// Flag complex with u = diameter, vertices at 0; simplices of dimension
// <= max_dim with diameter < max_scale.
FilteredComplex rips_complex(const FiniteMetricSpace& X, int max_dim, double max_scale = kInf);
// All simplices of dimension <= max_dim with u = 2 * (radius of the minimal enclosing ball).
FilteredComplex cech_complex(const PointCloud& P, int max_dim);
double meb_radius(const std::vector<std::vector<double>>& points);

// Bars of degree < max_degree only (the top degree of a truncated complex is not meaningful).
Barcode below_degree(const Barcode& B, int max_degree);
Barcode log2_rescale(const Barcode& B);

FilteredComplex sublevel_filtration(const Triangulation& T, const std::vector<double>& vertex_values);
FilteredComplex circle_complex(const std::vector<double>& samples);
Triangulation torus_grid_triangulation(std::size_t nx, std::size_t ny);
FilteredComplex torus_grid_complex(const GridFunction& g);
double oscillation(const Triangulation& T, const std::vector<double>& vertex_values);

}  // namespace persist
