#include <doctest.h>

#include "oracles.hpp"
#include "persist/representations.hpp"

using namespace persist;

namespace {

Bar bar(double b, double d) { return Bar{b, d, {}}; }
const Field F5(5);

ModuleRepWithAction scalar_action(const Barcode& B, Scalar s, std::size_t order, Field f) {
  ModuleRep V = from_barcode(B, f);
  std::vector<Matrix> act;
  for (auto d : V.dims()) act.push_back(Matrix::identity(d, f).scaled(s));
  return {V, order, act};
}

}  // namespace

TEST_CASE("verify_representation") {
  Barcode B{bar(0, 2), bar(1, 3)};
  CHECK(verify_representation(scalar_action(B, 1, 3, F5)));
  CHECK(verify_representation(scalar_action(B, 4, 2, F5)));
  CHECK_FALSE(verify_representation(scalar_action(B, 2, 2, F5)));
  CHECK(verify_representation(scalar_action(B, 2, 4, F5)));
  // Two bars sharing a slice: swapping them on one slice only breaks equivariance.
  ModuleRep V = from_barcode(Barcode{bar(0, 2), bar(0, 3)}, F5);
  std::vector<Matrix> act;
  for (auto d : V.dims()) act.push_back(Matrix::identity(d, F5));
  std::size_t c = V.cell_of(1);
  act[c] = Matrix::from_rows({{0, 1}, {1, 0}}, F5);
  CHECK_FALSE(verify_representation({V, 2, act}));
}

TEST_CASE("eigenspace submodules") {
  Barcode B{bar(0, 2), bar(1, 3), bar(1, kInf)};
  ModuleRepWithAction T = scalar_action(B, 1, 2, F5);
  CHECK(same_bars(barcode(eigenspace_submodule(T, 1)), B));
  CHECK(barcode(eigenspace_submodule(T, 4)).empty());
  ModuleRepWithAction R = rectangle_pmi(3, F5);
  CHECK(verify_representation(R));
  CHECK(same_bars(barcode(eigenspace_submodule(R, 4)), Barcode{bar(0, 1), bar(0, 3)}, 1e-12));
  CHECK(same_bars(barcode(eigenspace_submodule(R, 1)), Barcode{bar(0, 1), bar(0, kInf)}, 1e-12));
  CHECK_THROWS(eigenspace_submodule(R, 2));
}

TEST_CASE("teeth sphere") {
  FilteredComplex C = teeth_sphere_complex(1, 2.5, 4);
  ModuleRepWithAction R = homology_action(C, 0, teeth_sphere_involution(), 2, F5);
  CHECK(verify_representation(R));
  CHECK(same_bars(barcode(eigenspace_submodule(R, 4)), Barcode{bar(1, 2.5)}));
  CHECK(z4_obstruction_bound(R) == 1.5 / 4);
  ModuleRepWithAction R2 = homology_action(C, 2, teeth_sphere_involution(), 2, F5);
  CHECK(barcode(eigenspace_submodule(R2, 4)).empty());
  CHECK_THROWS(teeth_sphere_complex(2, 1, 3));
  // Swapping the points without reversing the edge is not a chain map.
  CHECK_THROWS(homology_action(C, 0, {{1, 1}, {0, 1}, {2, 1}, {3, 1}}, 2, F5));
}

TEST_CASE("simplicial actions carry orientation signs") {
  FilteredComplex C = simplicial_complex({{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}, {0, 1, 2}}, {0, 0, 0, 1, 1, 1, 2});
  // Transposition of 0 and 1 reverses the edge 01 and the triangle.
  CellAction a = simplicial_action(C, {1, 0, 2});
  CHECK(a[3] == std::pair<std::size_t, long long>{3, -1});
  CHECK(a[4] == std::pair<std::size_t, long long>{5, 1});
  CHECK(a[6].second == -1);
  // Rotation preserves the triangle's orientation.
  CellAction r = simplicial_action(C, {1, 2, 0});
  CHECK(r[6].second == 1);
  CHECK(r[5] == std::pair<std::size_t, long long>{3, -1});
  CHECK_NOTHROW(homology_action(C, 1, r, 3, Field(7)));
}

TEST_CASE("even multiplicity check") {
  CHECK(even_multiplicity_check(Barcode{bar(0, 1), bar(0, 1)}));
  CHECK_FALSE(even_multiplicity_check(Barcode{bar(0, 2), bar(0, 1)}));
  CHECK(even_multiplicity_check(Barcode{}));
  CHECK(even_multiplicity_check(Barcode{bar(0, kInf), bar(0, kInf), bar(-kInf, 3), bar(-kInf, 3)}));
  CHECK_FALSE(even_multiplicity_check(Barcode{bar(0, kInf)}));
}

TEST_CASE("obstruction bound examples") {
  CHECK(z4_obstruction_bound(rectangle_pmi(1, F5)) == 0);
  // The definition gives min(a/4, (a-1)/2) for {(0,1], (0,a]}.
  CHECK(z4_obstruction_bound(rectangle_pmi(3, F5)) == 0.75);
  CHECK(z4_obstruction_bound(rectangle_pmi(1.4, F5)) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS(z4_obstruction_bound(scalar_action(Barcode{bar(0, 1)}, 2, 4, F5)));
}

TEST_CASE("eigenspaces of involutions add up to the module") {
  oracle::Rng rng(61);
  oracle::BarcodeShape shape{6, 0, 5, 0.5, 0.2, 0, -1, false};
  for (int t = 0; t < 80; ++t) {
    Field f(t % 2 ? 5 : 7);
    Barcode B = oracle::random_barcode(rng, shape);
    ModuleRepWithAction R = oracle::random_involution(B, rng, f);
    REQUIRE(verify_representation(R));
    ModuleRep P = eigenspace_submodule(R, 1), M = eigenspace_submodule(R, f.p() - 1);
    for (std::size_t c = 0; c < R.rep.num_cells(); ++c) {
      double t0 = R.rep.cell_hi(c) == kInf ? R.rep.cell_lo(c) + 1 : R.rep.cell_hi(c);
      CHECK(P.dims()[P.cell_of(t0)] + M.dims()[M.cell_of(t0)] == R.rep.dims()[c]);
    }
    Barcode U = barcode(P), L = barcode(M);
    U.bars.insert(U.bars.end(), L.bars.begin(), L.bars.end());
    CHECK(same_bars(U, B));
  }
}

TEST_CASE("squares of order-4 actions have even (-1)-multiplicities without a square root of -1") {
  oracle::Rng rng(62);
  for (std::uint32_t p : {3u, 7u, 11u}) {
    Field f(p);
    for (int t = 0; t < 40; ++t) {
      ModuleRepWithAction R = oracle::random_order4(rng, f, 3, 3);
      REQUIRE(verify_representation(R));
      ModuleRepWithAction S = power_action(R, 2, 2);
      CHECK(verify_representation(S));
      CHECK(even_multiplicity_check(barcode(eigenspace_submodule(S, f.p() - 1))));
      CHECK(z4_obstruction_bound(S) == 0);
    }
  }
}

TEST_CASE("over F5 the rotation blocks still give even multiplicities") {
  oracle::Rng rng(63);
  for (int t = 0; t < 40; ++t) {
    ModuleRepWithAction R = oracle::random_order4(rng, F5, 3, 0);
    ModuleRepWithAction S = power_action(R, 2, 2);
    CHECK(even_multiplicity_check(barcode(eigenspace_submodule(S, 4))));
  }
}

TEST_CASE("over F5 a scalar square root of -1 breaks the parity") {
  // rho = 2 on one bar has order 4 and squares to -1.
  ModuleRepWithAction R = scalar_action(Barcode{bar(0, 1)}, 2, 4, F5);
  REQUIRE(verify_representation(R));
  ModuleRepWithAction S = power_action(R, 2, 2);
  CHECK_FALSE(even_multiplicity_check(barcode(eigenspace_submodule(S, 4))));
}

TEST_CASE("the obstruction bound is conjugation invariant") {
  oracle::Rng rng(64);
  oracle::BarcodeShape shape{5, 0, 4, 0.5, 0.2, 0, -1, false};
  for (int t = 0; t < 40; ++t) {
    Barcode B = oracle::random_barcode(rng, shape);
    ModuleRepWithAction R = oracle::random_involution(B, rng, F5);
    ModuleMorphism phi = oracle::random_automorphism(B, rng, F5);
    ModuleRepWithAction C = conjugate(R, phi.components());
    CHECK(verify_representation(C));
    CHECK(z4_obstruction_bound(C) == z4_obstruction_bound(R));
  }
}
