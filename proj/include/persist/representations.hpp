#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "persist/filtered_complex.hpp"
#include "persist/module_rep.hpp"

namespace persist {

// A persistence module with a Z_g action given slice by slice.
struct ModuleRepWithAction {
  ModuleRep rep;
  std::size_t order = 2;
  std::vector<Matrix> action;  // one per cell of rep
};

bool verify_representation(const ModuleRepWithAction& R);
ModuleRep eigenspace_submodule(const ModuleRepWithAction& R, Scalar xi);
// Every window (s, e] between endpoints of B contains an even number of bars.
bool even_multiplicity_check(const Barcode& B);
// mu_odd of the (-1)-eigenspace barcode of an involution.
double z4_obstruction_bound(const ModuleRepWithAction& R);

// Image of each cell under a filtration-preserving chain automorphism: (cell index, sign).
using CellAction = std::vector<std::pair<std::size_t, long long>>;
// Action induced by a vertex permutation on a simplicial complex, with orientation signs.
CellAction simplicial_action(const FilteredComplex& C, const std::vector<std::size_t>& vertex_perm);
// The action on H_k of the sublevel module of C.
ModuleRepWithAction homology_action(const FilteredComplex& C, int k, const CellAction& theta, std::size_t order,
                                    Field f = Field(5));

ModuleRepWithAction power_action(const ModuleRepWithAction& R, std::size_t e, std::size_t new_order);
// phi rho phi^{-1} for a module automorphism phi given by its components.
ModuleRepWithAction conjugate(const ModuleRepWithAction& R, const std::vector<Matrix>& phi);

// Rectangle with sides 1 and a in the plane, H_0 of its Rips module, with the
// point reflection through the centre acting; a = 1 is the square.
ModuleRepWithAction rectangle_pmi(double a, Field f = Field(5));
// Two points at level a joined by an edge at level b, plus a 2-cell at level c;
// the involution swaps the points and reverses the edge.
FilteredComplex teeth_sphere_complex(double a, double b, double c);
CellAction teeth_sphere_involution();

}  // namespace persist
