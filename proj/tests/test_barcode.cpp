#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "persist/barcode.hpp"

using namespace persist;

namespace {

Bar bar(double b, double d, std::optional<int> k = std::nullopt) { return Bar{b, d, k}; }

Barcode hexagon() {
  Barcode B;
  B.add(0, 1, 0, 5);
  B.add(0, kInf, 0);
  B.add(1, std::sqrt(3.0), 1);
  B.add(std::sqrt(3.0), 2, 2);
  return B;
}

}  // namespace

TEST_CASE("bars reject empty intervals") {
  CHECK_THROWS(Bar::make(1, 1));
  CHECK_THROWS(Bar::make(2, 1));
  CHECK_NOTHROW(Bar::make(-kInf, 0));
  CHECK(Bar::make(0, kInf).length() == kInf);
  CHECK_FALSE(Bar::make(-kInf, 0).finite());
}

TEST_CASE("bar_match_cost") {
  CHECK(bar_match_cost(bar(1, 2), bar(1, 2)) == 0);
  CHECK(bar_match_cost(bar(1, 2), bar(2, 3)) == 1);
  CHECK(bar_match_cost(bar(0.5, kInf), bar(2, kInf)) == 1.5);
  CHECK(bar_match_cost(bar(-kInf, 1), bar(-kInf, 3)) == 2);
  CHECK(bar_match_cost(bar(0, 1), bar(0, kInf)) == kInf);
}

TEST_CASE("is_delta_matching") {
  Barcode B{bar(0, 1)}, C{bar(5, 5.5)};
  CHECK(is_delta_matching(B, C, Matching{}, 0.5));
  CHECK(is_delta_matching(hexagon(), hexagon(), Matching{{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}}}, 0));
  CHECK_FALSE(is_delta_matching(Barcode{bar(1, 2)}, Barcode{bar(1, 3)}, Matching{{{0, 0}}}, 0.5));
  CHECK_THROWS(is_delta_matching(B, C, Matching{{{0, 3}}}, 1));
  CHECK_THROWS(is_delta_matching(B, C, Matching{{{0, 0}, {0, 0}}}, 10));
}

TEST_CASE("bottleneck examples") {
  CHECK(bottleneck_distance(Barcode{bar(1, 2)}, Barcode{bar(1, 3)}) == 1);
  CHECK(bottleneck_distance(Barcode{bar(1, 2)}, Barcode{bar(2, 3)}) == 0.5);
  CHECK(bottleneck_distance(Barcode{bar(1, 4)}, Barcode{bar(2, 5)}) == 1);
  CHECK(bottleneck_distance(hexagon(), hexagon()) == 0);
  CHECK(bottleneck_distance(Barcode{}, Barcode{}) == 0);
  CHECK(bottleneck_distance(Barcode{bar(0, kInf)}, Barcode{}) == kInf);
  CHECK(bottleneck_distance(Barcode{bar(-kInf, 0)}, Barcode{bar(0, kInf)}) == kInf);
  // Per degree: the degree-1 bar cannot absorb the degree-0 one.
  Barcode a{bar(0, 4, 0)}, b{bar(0, 4, 1)};
  CHECK(bottleneck_distance(a, b) == 2);
  CHECK(bottleneck_distance(a.untagged(), b.untagged()) == 0);
  BottleneckResult r = bottleneck(Barcode{bar(0, 3), bar(10, 11)}, Barcode{bar(0.5, 3.5)});
  CHECK(r.distance == 0.5);
  CHECK(is_delta_matching(Barcode{bar(0, 3), bar(10, 11)}, Barcode{bar(0.5, 3.5)}, r.matching, 0.5));
}

TEST_CASE("bottleneck equals exhaustive search on small barcodes") {
  oracle::Rng rng(21);
  oracle::BarcodeShape shape{4, 0, 4, 0.5, 0.2, 0.1, -1, true};
  for (int t = 0; t < 300; ++t) {
    Barcode B = oracle::random_barcode(rng, shape), C = oracle::random_barcode(rng, shape);
    CHECK(bottleneck_distance(B, C) == oracle::bottleneck_exhaustive(B, C));
  }
}

TEST_CASE("bottleneck is a metric on random triples") {
  oracle::Rng rng(22);
  oracle::BarcodeShape shape{6, 0, 5, 0, 0.15, 0, 2, true};
  for (int t = 0; t < 200; ++t) {
    Barcode A = oracle::random_barcode(rng, shape), B = oracle::random_barcode(rng, shape),
            C = oracle::random_barcode(rng, shape);
    double ab = bottleneck_distance(A, B), ba = bottleneck_distance(B, A), bc = bottleneck_distance(B, C),
           ac = bottleneck_distance(A, C);
    CHECK(ab == ba);
    CHECK(ac <= ab + bc + 1e-12);
    CHECK((bottleneck_distance(A, A) == 0));
    if (ab == 0) CHECK(same_bars(A, B));
    else CHECK_FALSE(same_bars(A, B));
  }
}

TEST_CASE("infinite endpoints bound the distance from below") {
  oracle::Rng rng(23);
  oracle::BarcodeShape shape{6, 0, 5, 0, 0.4, 0, -1, true};
  for (int t = 0; t < 200; ++t) {
    Barcode B = oracle::random_barcode(rng, shape), C = oracle::random_barcode(rng, shape);
    auto sb = infinite_endpoint_spectrum(B), sc = infinite_endpoint_spectrum(C);
    if (sb.size() != sc.size()) continue;
    double d = bottleneck_distance(B, C);
    if (std::isinf(d)) continue;
    CHECK(matching_lemma(sb, sc) <= d + 1e-12);
  }
}

TEST_CASE("matching lemma") {
  CHECK(matching_lemma({0}, {5}) == 5);
  CHECK(matching_lemma({0, 1}, {0.5, 3}) == 2);
  CHECK(matching_lemma({1, 2, 3}, {1, 2, 3}) == 0);
  CHECK(matching_lemma({}, {}) == 0);
  CHECK_THROWS(matching_lemma({1}, {1, 2}));
  CHECK(matching_lemma({2, 1}, {1, 2}) == 0);
}

TEST_CASE("interval interleaving distance") {
  CHECK(interval_interleaving_distance(bar(1, 2), bar(1, 3)) == 1);
  CHECK(interval_interleaving_distance(bar(1, 2), bar(2, 3)) == 0.5);
  CHECK(interval_interleaving_distance(bar(1, 4), bar(2, 5)) == 1);
  CHECK(interval_interleaving_distance(bar(1, 2), bar(1, 2)) == 0);
  CHECK(interval_interleaving_distance(bar(1, kInf), bar(1, 2)) == kInf);
  CHECK(interval_interleaving_distance(bar(1, kInf), bar(3, kInf)) == 2);
  oracle::Rng rng(24);
  std::uniform_int_distribution<int> v(0, 12);
  for (int t = 0; t < 200; ++t) {
    int a = v(rng), b = a + 1 + v(rng), c = v(rng), d = c + 1 + v(rng);
    Bar I = bar(a / 4.0, b / 4.0), J = bar(c / 4.0, d / 4.0);
    CHECK(interval_interleaving_distance(I, J) == bottleneck_distance(Barcode{I}, Barcode{J}));
  }
}

TEST_CASE("shift_barcode") {
  CHECK(same_bars(shift_barcode(hexagon(), 0), hexagon()));
  CHECK(same_bars(shift_barcode(Barcode{bar(0, 1)}, 2), Barcode{bar(2, 3)}));
  CHECK(same_bars(shift_barcode(Barcode{bar(1, kInf), bar(-kInf, 0)}, 0.5), Barcode{bar(1.5, kInf), bar(-kInf, 0.5)}));
}

TEST_CASE("boundary depth and beta_k") {
  Barcode heart{bar(0, kInf, 0), bar(1, 2.5, 1), bar(3, kInf, 2)};
  CHECK(boundary_depth(heart) == 1.5);
  CHECK(boundary_depth(Barcode{bar(0, kInf), bar(-kInf, 2)}) == 0);
  Barcode two{bar(0, 1), bar(0, 3), bar(5, kInf)};
  CHECK(beta_k(two, 1) == 3);
  CHECK(beta_k(two, 2) == 1);
  CHECK(beta_k(two, 3) == 0);
  CHECK_THROWS(beta_k(two, 0));
}

TEST_CASE("ell and nu") {
  CHECK(ell(Barcode{bar(0, kInf)}, 0, 1) == 1);
  CHECK(ell(Barcode{}, 0, 1) == 0);
  CHECK(ell(Barcode{bar(-1, 3), bar(0.5, 0.75)}, 0, 1) == 1.25);
  CHECK_THROWS(ell(Barcode{}, 1, 0));
  CHECK(nu(Barcode{bar(0, 1), bar(0, 1)}, 0) == 2);
  CHECK(nu(Barcode{bar(0, 1), bar(0, kInf)}, 5) == 0);
  CHECK(nu(Barcode{bar(0, 1), bar(0, 2)}, 1) == 1);
  oracle::Rng rng(25);
  oracle::BarcodeShape shape{8, 0, 5, 0, 0.2, 0, -1, true};
  for (int t = 0; t < 200; ++t) {
    Barcode B = oracle::random_barcode(rng, shape), F;
    for (const auto& b : B.bars)
      if (b.finite()) F.bars.push_back(b);
    if (F.empty()) continue;
    double lo = kInf, hi = -kInf;
    for (const auto& b : F.bars) lo = std::min(lo, b.birth), hi = std::max(hi, b.death);
    for (double c : {0.0, 0.3, 1.0, 2.5}) CHECK(c * static_cast<double>(nu(B, c)) <= ell(F, lo, hi) + 1e-12);
  }
}

TEST_CASE("persistent betti numbers") {
  CHECK(persistent_betti(Barcode{bar(0, 2)}, bar(0, 2)) == 1);
  CHECK(persistent_betti(hexagon().in_degree(1), bar(1.2, 1.5)) == 1);
  CHECK(persistent_betti(hexagon(), bar(1.2, 1.5)) == 2);
  CHECK(persistent_betti(Barcode{bar(0, 1)}, bar(2, 3)) == 0);
}

TEST_CASE("multiplicity function") {
  CHECK(multiplicity_function(Barcode{}, 1) == 0);
  CHECK(multiplicity_function(Barcode{}, 3) == 0);
  Barcode doubled{bar(0, 1), bar(0, 1), bar(2, 5), bar(2, 5)};
  CHECK(mu_odd(doubled) == 0);
  CHECK(multiplicity_function(doubled, 2) == 0.75);
  Barcode single{bar(0, 4)};
  CHECK(multiplicity_function(single, 1) == 1);
  CHECK(multiplicity_function(single, 2) == 0);
  CHECK(multiplicity_feasible(single, 1, 0.99));
  CHECK_FALSE(multiplicity_feasible(single, 1, 1));
  CHECK_THROWS(multiplicity_function(single, 0));
}

TEST_CASE("multiplicity of the rectangle eigen-barcode") {
  // The closed-form value min(a/4, (a-1)/2) of the definition; see the notes
  // on why this differs from (a-1)/4.
  Barcode L{bar(0, 1), bar(0, 3)};
  CHECK(multiplicity_function(L, 1) == 0.75);
  CHECK(multiplicity_function(L, 2) == 0.25);
  CHECK(mu_odd(L) == 0.75);
  // The nearest barcode with even multiplicities is {(0,2], (0,2]}, at distance 1,
  // so 0.75 is only a lower bound there, consistent with mu_k being 1-Lipschitz.
  CHECK(bottleneck_distance(L, Barcode{bar(0, 2), bar(0, 2)}) == 1);
}

TEST_CASE("multiplicity function matches the grid oracle") {
  oracle::Rng rng(26);
  oracle::BarcodeShape shape{4, 0, 1, 0, 0.15, 0.05, -1, false};
  for (int t = 0; t < 40; ++t) {
    Barcode B = oracle::random_barcode(rng, shape);
    for (std::size_t k = 1; k <= 2; ++k) {
      double mine = multiplicity_function(B, k), grid = oracle::multiplicity_grid(B, k, 2e-3);
      CHECK(((mine == grid) || std::abs(mine - grid) <= 4e-3));
    }
  }
}

TEST_CASE("infinite endpoint spectrum") {
  Barcode heart{bar(0, kInf, 0), bar(1, 2, 1), bar(3, kInf, 2)};
  CHECK(infinite_endpoint_spectrum(heart) == std::vector<double>{0, 3});
  CHECK(infinite_endpoint_spectrum(Barcode{}).empty());
  CHECK(infinite_endpoint_spectrum(Barcode{bar(0, kInf), bar(0, kInf)}) == std::vector<double>{0, 0});
}

TEST_CASE("Lipschitz properties of beta_k and mu_k") {
  oracle::Rng rng(27);
  oracle::BarcodeShape shape{5, 0, 3, 0, 0.2, 0, -1, true};
  for (int t = 0; t < 150; ++t) {
    Barcode B = oracle::random_barcode(rng, shape), C = oracle::random_barcode(rng, shape);
    double d = bottleneck_distance(B, C);
    if (std::isinf(d)) continue;
    for (std::size_t k = 1; k <= 3; ++k) {
      CHECK(std::abs(beta_k(B, k) - beta_k(C, k)) <= 2 * d + 1e-12);
      double mb = multiplicity_function(B, k), mc = multiplicity_function(C, k);
      if (mb != mc) CHECK(std::abs(mb - mc) <= d + 1e-12);
    }
  }
}

TEST_CASE("same_bars and sorting") {
  Barcode a{bar(1, 2, 0), bar(0, 1, 1)}, b{bar(0, 1, 1), bar(1, 2, 0)};
  CHECK(same_bars(a, b));
  CHECK_FALSE(same_bars(a, a.untagged()));
  CHECK(same_bars(Barcode{bar(0, 1)}, Barcode{bar(0, 1 + 1e-10)}, 1e-9));
  CHECK(a.sorted()[0].degree == 0);
  CHECK(a.degrees() == std::vector<int>{0, 1});
}
