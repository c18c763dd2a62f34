#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "persist/filtered_complex.hpp"
#include "persist/io.hpp"

using namespace persist;

namespace {

Bar bar(double b, double d, int k) { return Bar{b, d, k}; }

FilteredComplex heart(double a1, double a2, double a3, double a4) {
  FilteredComplex C;
  C.add_cell("x1", 0, a1);
  C.add_cell("x2", 1, a2, {{0, 0}});
  C.add_cell("x3", 2, a3, {{1, 1}});
  C.add_cell("x4", 2, a4, {{1, 1}});
  return C;
}

FilteredComplex hollow_triangle() {
  FilteredComplex C;
  for (int i = 0; i < 3; ++i) C.add_cell("v" + std::to_string(i), 0, 0);
  C.add_cell("e01", 1, 1, {{1, 1}, {0, -1}});
  C.add_cell("e12", 1, 1, {{2, 1}, {1, -1}});
  C.add_cell("e02", 1, 1, {{2, 1}, {0, -1}});
  return C;
}

}  // namespace

TEST_CASE("complex validation") {
  FilteredComplex C;
  C.add_cell("v", 0, 1);
  CHECK_THROWS(C.add_cell("v", 0, 2));
  C.add_cell("e", 1, 0.5, {{0, 1}});
  CHECK_THROWS(C.validate(Field(2)));
  FilteredComplex bad;
  bad.add_cell("v", 0, 0);
  bad.add_cell("w", 0, 0);
  bad.add_cell("e", 1, 1, {{0, 1}, {1, 1}});
  bad.add_cell("f", 2, 1, {{2, 1}});
  CHECK_THROWS(bad.validate(Field(2)));
  FilteredComplex skip;
  skip.add_cell("v", 0, 0);
  skip.add_cell("t", 2, 1, {{0, 1}});
  CHECK_THROWS(skip.validate(Field(2)));
}

TEST_CASE("single vertex") {
  FilteredComplex C;
  C.add_cell("v", 0, 2.5);
  CHECK(same_bars(barcode_of_complex(C), Barcode{bar(2.5, kInf, 0)}));
  CHECK(same_bars(barcode(homology_module(C, 0)), Barcode{Bar{2.5, kInf, {}}}));
}

TEST_CASE("heart sphere") {
  FilteredComplex C = heart(0, 1, 2.5, 4);
  JordanPairing J = barannikov_reduce(C);
  CHECK(verify_jordan(C, J));
  // x3 kills x2; x4 - x3 is the surviving 2-cycle.
  REQUIRE(J.blocks.size() == 3);
  CHECK(J.blocks[2].pair_down[0] == 0);
  CHECK(J.blocks[2].pair_down[1] == -1);
  CHECK(J.blocks[2].basis[1].size() == 2);
  CHECK(J.blocks[0].pair_up[0] == -1);
  Barcode B = barcode_of_complex(C);
  CHECK(same_bars(B, Barcode{bar(0, kInf, 0), bar(1, 2.5, 1), bar(4, kInf, 2)}));
  CHECK(boundary_depth(B) == 1.5);
  CHECK(boundary_depth_usher(C) == 1.5);
  CHECK(same_bars(barcode(homology_module(C, 1)), Barcode{Bar{1, 2.5, {}}}));
  CHECK(infinite_endpoint_spectrum(B) == std::vector<double>{0, 4});
}

TEST_CASE("hollow triangle") {
  FilteredComplex C = hollow_triangle();
  for (std::uint32_t p : {2u, 3u, 7u}) {
    JordanPairing J = barannikov_reduce(C, Field(p));
    CHECK(verify_jordan(C, J));
    Barcode B = barcode_of_jordan(C, J);
    Barcode want{bar(0, kInf, 0), bar(0, 1, 0), bar(0, 1, 0), bar(1, kInf, 1)};
    CHECK(same_bars(B, want));
    CHECK(boundary_depth_usher(C, Field(p)) == 1);
  }
}

TEST_CASE("acyclic complex at zero gives only Betti rays") {
  FilteredComplex C = hollow_triangle();
  FilteredComplex D;
  for (const auto& c : C.cells()) D.add_cell(c.id, c.degree, 0, c.boundary);
  D.add_cell("t", 2, 0, {{3, 1}, {4, 1}, {5, -1}});
  CHECK(same_bars(barcode_of_complex(D, Field(3)), Barcode{bar(0, kInf, 0)}));
  CHECK(boundary_depth_usher(D) == 0);
}

TEST_CASE("no boundaries means zero depth") {
  FilteredComplex C;
  C.add_cell("a", 0, 0);
  C.add_cell("b", 0, 1);
  C.add_cell("c", 1, 3);
  CHECK(boundary_depth_usher(C) == 0);
}

TEST_CASE("reduction agrees with homology modules on random complexes") {
  oracle::Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    Field f(t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5));
    FilteredComplex C = oracle::random_complex(rng, 40, 3);
    JordanPairing J = barannikov_reduce(C, f);
    CHECK(verify_jordan(C, J));
    Barcode B = barcode_of_jordan(C, J);
    CHECK(2 * B.finite_count() <= C.size());
    for (int k = 0; k <= C.max_degree(); ++k)
      CHECK(same_bars(B.in_degree(k).untagged(), barcode(homology_module(C, k, f))));
    CHECK(boundary_depth_usher(C, f) == boundary_depth(B));
  }
}

TEST_CASE("barcode does not depend on tie order") {
  oracle::Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    FilteredComplex C = oracle::random_complex(rng, 25, 2);
    // Rebuild with cells of each degree in reverse order (faces still first).
    std::vector<std::size_t> order;
    for (int k = 0; k <= C.max_degree(); ++k) {
      std::vector<std::size_t> cells;
      for (std::size_t i = 0; i < C.size(); ++i)
        if (C.cell(i).degree == k) cells.push_back(i);
      std::reverse(cells.begin(), cells.end());
      order.insert(order.end(), cells.begin(), cells.end());
    }
    std::vector<std::size_t> pos(C.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    FilteredComplex D;
    for (auto i : order) {
      auto bd = C.cell(i).boundary;
      for (auto& [b, c] : bd) b = pos[b];
      D.add_cell(C.cell(i).id, C.cell(i).degree, C.cell(i).value, bd);
    }
    CHECK(same_bars(barcode_of_complex(C), barcode_of_complex(D)));
  }
}

TEST_CASE("change of basis is unitriangular in filtration order") {
  oracle::Rng rng(43);
  Field f(3);
  for (int t = 0; t < 100; ++t) {
    FilteredComplex C = oracle::random_complex(rng, 30, 2);
    JordanPairing J = barannikov_reduce(C, f);
    for (const auto& blk : J.blocks)
      for (std::size_t i = 0; i < blk.basis.size(); ++i) {
        // f_i = e_i + (terms of lower local index)
        Scalar diag = 0;
        for (auto [r, v] : blk.basis[i]) {
          CHECK(r <= i);
          if (r == i) diag = v;
        }
        CHECK(diag != 0);
      }
  }
}

TEST_CASE("homology slices: parallel and serial agree") {
  oracle::Rng rng(44);
  for (int t = 0; t < 40; ++t) {
    FilteredComplex C = oracle::random_complex(rng, 40, 2);
    for (int k = 0; k <= 1; ++k) {
      HomologySlices a = homology_slices(C, k, Field(5)), b = serial::homology_slices(C, k, Field(5));
      CHECK(a.module == b.module);
      CHECK(a.chain_cells == b.chain_cells);
      CHECK(a.cycles.size() == b.cycles.size());
      for (std::size_t c = 0; c < a.cycles.size(); ++c) {
        CHECK(a.cycles[c] == b.cycles[c]);
        CHECK(a.boundaries[c] == b.boundaries[c]);
      }
    }
  }
}

TEST_CASE("cycles in homology slices are cycles below the slice") {
  oracle::Rng rng(45);
  Field f(3);
  for (int t = 0; t < 30; ++t) {
    FilteredComplex C = oracle::random_complex(rng, 30, 2);
    HomologySlices s = homology_slices(C, 1, f);
    for (std::size_t c = 1; c < s.cycles.size(); ++c) {
      double thr = s.module.spectrum()[c - 1];
      for (std::size_t j = 0; j < s.cycles[c].cols(); ++j)
        for (std::size_t i = 0; i < s.chain_cells.size(); ++i)
          if (s.cycles[c](i, j)) CHECK(C.cell(s.chain_cells[i]).value <= thr);
    }
  }
}
