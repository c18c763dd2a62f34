#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "persist/barcode.hpp"
#include "persist/field.hpp"
#include "persist/module_rep.hpp"

namespace persist {

struct Cell {
  std::string id;
  int degree = 0;
  double value = 0;
  // (cell index, integer coefficient); reduced into the field on use.
  std::vector<std::pair<std::size_t, long long>> boundary;
  // Vertex indices for simplicial cells, empty otherwise.
  std::vector<std::size_t> vertices;
};

class FilteredComplex {
 public:
  std::size_t add_cell(std::string id, int degree, double value,
                       std::vector<std::pair<std::size_t, long long>> boundary = {},
                       std::vector<std::size_t> vertices = {});
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t i) const { return cells_[i]; }
  std::size_t size() const { return cells_.size(); }
  int max_degree() const;
  std::size_t index_of(const std::string& id) const;
  bool has_id(const std::string& id) const { return ids_.count(id) > 0; }

  // Cells of degree k ordered by (value, insertion index).
  std::vector<std::size_t> sorted_cells(int k) const;
  // Throws unless boundaries drop degree by one, never raise the filtration,
  // and square to zero over f.
  void validate(Field f) const;

 private:
  std::vector<Cell> cells_;
  std::unordered_map<std::string, std::size_t> ids_;
};

using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

struct DegreeBlock {
  std::vector<std::size_t> cells;  // local index -> cell index
  std::vector<SparseVec> basis;    // f^k_i in local e^k coordinates
  std::vector<long> pair_down;     // phi_k(i) in degree k-1, or -1
  std::vector<long> pair_up;       // the i' in degree k+1 with phi_{k+1}(i') = i, or -1
};

struct JordanPairing {
  Field field{2};
  std::vector<DegreeBlock> blocks;  // indexed by degree
};

// Graded triangular change of basis bringing d to Jordan form.
JordanPairing barannikov_reduce(const FilteredComplex& C, Field f = Field(2));
bool verify_jordan(const FilteredComplex& C, const JordanPairing& J);
Barcode barcode_of_jordan(const FilteredComplex& C, const JordanPairing& J);
Barcode barcode_of_complex(const FilteredComplex& C, Field f = Field(2));

double boundary_depth_usher(const FilteredComplex& C, Field f = Field(2));

// H_k of the sublevel complexes {u < t}, with the representing cycles and
// boundary bases for every cell of the resulting spectrum.
struct HomologySlices {
  ModuleRep module;
  std::vector<std::size_t> chain_cells;  // degree-k cells, coordinate order
  std::vector<Matrix> cycles;            // per spectral cell
  std::vector<Matrix> boundaries;        // per spectral cell
};

HomologySlices homology_slices(const FilteredComplex& C, int k, Field f = Field(2));
ModuleRep homology_module(const FilteredComplex& C, int k, Field f = Field(2));
namespace serial {
HomologySlices homology_slices(const FilteredComplex& C, int k, Field f = Field(2));
}

}  // namespace persist
