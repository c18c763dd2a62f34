#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "persist/barcode.hpp"
#include "persist/field.hpp"

namespace persist {

// A persistence module with finitely many spectral points a_0 < ... < a_{N-1}.
// Cell c is (a_{c-1}, a_c] with a_{-1} = -inf and a_N = +inf, so there are
// N+1 cells; maps()[c] is the transition from cell c to cell c+1.
class ModuleRep {
 public:
  ModuleRep(std::vector<double> spectrum, std::vector<std::size_t> dims, std::vector<Matrix> maps, Field f);
  static ModuleRep zero(Field f);

  const std::vector<double>& spectrum() const { return spectrum_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Matrix>& maps() const { return maps_; }
  const Field& field() const { return field_; }
  std::size_t num_cells() const { return dims_.size(); }
  std::size_t last_cell() const { return dims_.size() - 1; }

  // Index of the cell containing t.
  std::size_t cell_of(double t) const;
  // Left and right endpoints of a cell (infinite at the ends).
  double cell_lo(std::size_t c) const;
  double cell_hi(std::size_t c) const;
  Matrix transition(std::size_t from, std::size_t to) const;
  bool is_standard() const { return dims_.front() == 0; }
  std::size_t total_dim() const;

  bool operator==(const ModuleRep& o) const;

 private:
  std::vector<double> spectrum_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> maps_;
  Field field_;
};

// Re-express V over a superset of its spectrum, inserting identity maps.
ModuleRep refine(const ModuleRep& V, const std::vector<double>& spectrum);
std::vector<double> union_spectrum(const std::vector<double>& a, const std::vector<double>& b);
std::pair<ModuleRep, ModuleRep> refine_spectra(const ModuleRep& V, const ModuleRep& W);

ModuleRep from_barcode(const Barcode& B, Field f = Field(2));
// Indices of the bars of B alive on cell c of the given spectrum, ascending;
// this is the basis order used by from_barcode.
std::vector<std::size_t> bars_alive_in_cell(const Barcode& B, const std::vector<double>& spectrum, std::size_t c);

// r(i, j) = rank of the transition from cell i to cell j, for i <= j (0-based).
class RankTable {
 public:
  explicit RankTable(std::size_t cells) : n_(cells), r_(cells * cells, 0) {}
  std::size_t cells() const { return n_; }
  std::size_t operator()(std::size_t i, std::size_t j) const { return r_[i * n_ + j]; }
  std::size_t& at(std::size_t i, std::size_t j) { return r_[i * n_ + j]; }
  bool operator==(const RankTable& o) const = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> r_;
};

RankTable rank_table(const ModuleRep& V);
namespace serial {
RankTable rank_table(const ModuleRep& V);
}

// b_ij with 1-based cell indices; zero outside 1 <= i <= j <= N+1.
std::size_t rank_invariant(const ModuleRep& V, long i, long j);
Barcode barcode(const ModuleRep& V);
Barcode barcode_from_ranks(const ModuleRep& V, const RankTable& r);

ModuleRep shift(const ModuleRep& V, double delta);
ModuleRep direct_sum(const ModuleRep& V, const ModuleRep& W);
ModuleRep truncate(const ModuleRep& V, const Bar& I);

class ModuleMorphism {
 public:
  // Source and target must share a spectrum; throws if a square fails to commute.
  ModuleMorphism(ModuleRep source, ModuleRep target, std::vector<Matrix> components);

  const ModuleRep& source() const { return source_; }
  const ModuleRep& target() const { return target_; }
  const std::vector<Matrix>& components() const { return components_; }

 private:
  ModuleRep source_, target_;
  std::vector<Matrix> components_;
};

ModuleMorphism refine(const ModuleMorphism& f, const std::vector<double>& spectrum);
ModuleMorphism identity_morphism(const ModuleRep& V);
ModuleMorphism zero_morphism(const ModuleRep& V, const ModuleRep& W);
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);
ModuleMorphism shift(const ModuleMorphism& f, double delta);
// Structure map V -> W where W has V's dims and maps over a spectrum shifted
// down (as produced by shift); the component at t is V_t -> V_{t + offset}.
ModuleMorphism persistence_morphism(const ModuleRep& V, const ModuleRep& W);
ModuleMorphism shift_morphism(const ModuleRep& V, double eps);
bool equal(const ModuleMorphism& f, const ModuleMorphism& g);
bool is_injective(const ModuleMorphism& f);
bool is_surjective(const ModuleMorphism& f);

ModuleRep kernel(const ModuleMorphism& f);
ModuleRep image(const ModuleMorphism& f);

Matching induced_matching_inj(const Barcode& B, const Barcode& C);
Matching induced_matching_sur(const Barcode& B, const Barcode& C);
// Pairs index barcode(f.source()) with barcode(f.target()).
Matching induced_matching(const ModuleMorphism& f);
Matching compose_matchings(const Matching& second, const Matching& first);

// F: from_barcode(B) -> shift(from_barcode(C), delta) and G the other way.
std::pair<ModuleMorphism, ModuleMorphism> interleaving_from_matching(const Barcode& B, const Barcode& C,
                                                                     const Matching& M, double delta,
                                                                     Field f = Field(2));
bool verify_interleaving(const ModuleMorphism& F, const ModuleMorphism& G, double delta);
double interleaving_distance(const ModuleRep& V, const ModuleRep& W);

double characteristic_exponent(const ModuleRep& V, const Vec& v);
// Values of c on a basis of V_infinity adapted to the image filtration.
std::vector<double> characteristic_spectrum(const ModuleRep& V);

}  // namespace persist
