#pragma once

// Independent reference computations and random instance generators used by
// the tests and the acceptance scenarios. Nothing here is used by the library.

#include <cstdint>
#include <random>
#include <vector>

#include "persist/barcode.hpp"
#include "persist/complexes.hpp"
#include "persist/filtered_complex.hpp"
#include "persist/module_rep.hpp"
#include "persist/representations.hpp"

namespace persist::oracle {

using Rng = std::mt19937_64;

struct BarcodeShape {
  std::size_t max_bars = 6;
  double lo = 0, hi = 4;
  double step = 0;  // endpoints rounded to multiples of step when > 0
  double ray_prob = 0.15;
  double neg_ray_prob = 0.0;
  int max_degree = -1;  // -1 leaves bars untagged
  bool allow_empty = true;
};
Barcode random_barcode(Rng& rng, const BarcodeShape& shape);

// Exhaustive search over partial matchings (one pool or per degree).
double bottleneck_exhaustive(const Barcode& B, const Barcode& C);
// Minimum over all permutations of max |b_i - c_sigma(i)|.
double matching_permutation_min(const std::vector<double>& b, const std::vector<double>& c);
// Windows (s, e] scanned on a grid of step h * span plus infinite sentinels;
// the best scale per window is evaluated in closed form.
double multiplicity_grid(const Barcode& B, std::size_t k, double rel_step = 1e-3);
// Barcode of a module by growing a submodule spanned by interval generators.
Barcode normal_form_barcode(const ModuleRep& V);

// Random simplicial complex with integer filtration values, faces first.
FilteredComplex random_complex(Rng& rng, std::size_t max_cells, int max_degree);

// The morphism of interval sums from_barcode(B) -> from_barcode(C) with
// scalar phi(J, I) on each allowed pair b_J <= b_I < d_J <= d_I.
bool morphism_allowed(const Bar& I, const Bar& J);
ModuleMorphism bar_sum_morphism(const Barcode& B, const Barcode& C, const std::vector<std::vector<Scalar>>& phi,
                                Field f);
std::vector<std::vector<Scalar>> random_allowed_coefficients(const Barcode& B, const Barcode& C, Rng& rng, Field f,
                                                             double density = 0.5);
// Unitriangular automorphism of from_barcode(B) with respect to the (birth, death) order.
ModuleMorphism random_automorphism(const Barcode& B, Rng& rng, Field f);

struct ComposablePair {
  ModuleMorphism f, g;
};
// Random injective (or surjective) morphisms U -> V -> W between interval sums.
ComposablePair random_injections(Rng& rng, Field f);
ComposablePair random_surjections(Rng& rng, Field f);

// from_barcode(B) with a diagonal sign action, then conjugated by a random automorphism.
ModuleRepWithAction random_involution(const Barcode& B, Rng& rng, Field f);
// Pairs of equal bars rotated by the order-4 block [[0,-1],[1,0]], plus scalar
// parts with rho^4 = 1, conjugated by a random automorphism.
ModuleRepWithAction random_order4(Rng& rng, Field f, std::size_t max_pairs, std::size_t max_singles);

// Sample points spaced at most `spacing` apart along a random weighted tree,
// with the tree metric; eps is the covering radius of the sample.
struct TreeSample {
  FiniteMetricSpace metric;
  double eps = 0;
};
TreeSample random_tree_net(Rng& rng, std::size_t edges, double spacing);

}  // namespace persist::oracle
