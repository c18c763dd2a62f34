#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "persist/module_rep.hpp"

using namespace persist;

namespace {

Bar bar(double b, double d) { return Bar{b, d, {}}; }
const Field F2(2);

std::vector<std::pair<Bar, Bar>> pairs_of(const Matching& M, const Barcode& B, const Barcode& C) {
  std::vector<std::pair<Bar, Bar>> v;
  for (auto [i, j] : M.pairs) v.push_back({B[i], C[j]});
  return v;
}

}  // namespace

TEST_CASE("refine_spectra") {
  ModuleRep V = from_barcode(Barcode{bar(0, 1)}, F2);
  auto [a, b] = refine_spectra(V, V);
  CHECK(a == V);
  CHECK(b == V);
  ModuleRep R = refine(V, {0, 0.5, 1});
  CHECK(R.dims() == std::vector<std::size_t>{0, 1, 1, 0});
  CHECK(R.maps()[1] == Matrix::identity(1, F2));
  CHECK(same_bars(barcode(R), Barcode{bar(0, 1)}));
  CHECK_THROWS(refine(V, {0.5}));
}

TEST_CASE("from_barcode") {
  ModuleRep I = from_barcode(Barcode{bar(2, 5)}, F2);
  CHECK(I.spectrum() == std::vector<double>{2, 5});
  CHECK(I.dims() == std::vector<std::size_t>{0, 1, 0});
  ModuleRep V = from_barcode(Barcode{bar(0, 2), bar(1, 2)}, F2);
  CHECK(V.spectrum() == std::vector<double>{0, 1, 2});
  CHECK(V.dims() == std::vector<std::size_t>{0, 1, 2, 0});
  ModuleRep Z = from_barcode(Barcode{}, F2);
  CHECK(Z.total_dim() == 0);
  CHECK(barcode(Z).empty());
  ModuleRep P = from_barcode(Barcode{bar(-kInf, 1), bar(0, kInf)}, F2);
  CHECK_FALSE(P.is_standard());
  CHECK(same_bars(barcode(P), Barcode{bar(-kInf, 1), bar(0, kInf)}));
}

TEST_CASE("rank invariant") {
  ModuleRep V = from_barcode(Barcode{bar(1.5, kInf)}, F2);
  CHECK(rank_invariant(V, 2, 2) == 1);
  CHECK(rank_invariant(V, 1, 2) == 0);
  CHECK(rank_invariant(V, 2, 3) == 0);
  CHECK(rank_invariant(V, 1, 3) == 0);
  CHECK(rank_invariant(V, 0, 2) == 0);
  ModuleRep W = from_barcode(Barcode{bar(0, 1), bar(0, 3)}, F2);
  for (long i = 1; i <= static_cast<long>(W.num_cells()); ++i) CHECK(rank_invariant(W, i, i) == W.dims()[i - 1]);
  ModuleRep Z = ModuleRep::zero(F2);
  CHECK(rank_invariant(Z, 1, 1) == 0);
}

TEST_CASE("barcode from ranks") {
  Matrix z(1, 1, F2);
  ModuleRep V({0, 1, 2}, {0, 1, 1, 0}, {Matrix(1, 0, F2), z, Matrix(0, 1, F2)}, F2);
  CHECK(same_bars(barcode(V), Barcode{bar(0, 1), bar(1, 2)}));
  ModuleRep W({0, 1, 2}, {0, 1, 1, 0}, {Matrix(1, 0, F2), Matrix::identity(1, F2), Matrix(0, 1, F2)}, F2);
  CHECK(same_bars(barcode(W), Barcode{bar(0, 2)}));
  CHECK_THROWS(ModuleRep({0, 1}, {0, 1, 1}, {Matrix(1, 0, F2), Matrix(2, 1, F2)}, F2));
  CHECK_THROWS(ModuleRep({1, 0}, {0, 0, 0}, {Matrix(0, 0, F2), Matrix(0, 0, F2)}, F2));
}

TEST_CASE("barcode round trip on random barcodes") {
  oracle::Rng rng(31);
  oracle::BarcodeShape shape{8, 0, 6, 0.5, 0.2, 0.1, -1, true};
  for (int t = 0; t < 1000; ++t) {
    Barcode B = oracle::random_barcode(rng, shape);
    Field f(t % 2 ? 3 : 2);
    CHECK(same_bars(barcode(from_barcode(B, f)), B));
  }
}

TEST_CASE("rank table: parallel and serial agree") {
  oracle::Rng rng(32);
  oracle::BarcodeShape shape{12, 0, 10, 0.5, 0.2, 0.1, -1, true};
  for (int t = 0; t < 50; ++t) {
    ModuleRep V = from_barcode(oracle::random_barcode(rng, shape), Field(5));
    CHECK(rank_table(V) == serial::rank_table(V));
  }
}

TEST_CASE("shift, direct sum, truncation") {
  ModuleRep V = from_barcode(Barcode{bar(0, 1)}, F2);
  CHECK(same_bars(barcode(shift(V, 1.0 / 3)), Barcode{bar(-1.0 / 3, 1 - 1.0 / 3)}));
  oracle::Rng rng(33);
  oracle::BarcodeShape shape{5, 0, 4, 0.5, 0.2, 0, -1, true};
  for (int t = 0; t < 100; ++t) {
    Barcode A = oracle::random_barcode(rng, shape), B = oracle::random_barcode(rng, shape);
    Barcode U = A;
    U.bars.insert(U.bars.end(), B.bars.begin(), B.bars.end());
    CHECK(same_bars(barcode(direct_sum(from_barcode(A), from_barcode(B))), U));
  }
  CHECK(same_bars(barcode(truncate(from_barcode(Barcode{bar(0, 3)}), bar(1, 2))), Barcode{bar(1, 2)}));
}

TEST_CASE("kernel and image") {
  ModuleRep V = from_barcode(Barcode{bar(0, 2), bar(1, 3)}, F2);
  CHECK(barcode(kernel(identity_morphism(V))).empty());
  CHECK(same_bars(barcode(image(identity_morphism(V))), barcode(V)));
  ModuleMorphism z = zero_morphism(V, V);
  CHECK(same_bars(barcode(kernel(z)), barcode(V)));
  CHECK(barcode(image(z)).empty());
  // f: F(1,3] + F(1,2] -> F(3,4] + F(0,2], zero on the first summand.
  Barcode S{bar(1, 3), bar(1, 2)}, T{bar(3, 4), bar(0, 2)};
  ModuleMorphism f = oracle::bar_sum_morphism(S, T, {{0, 0}, {0, 1}}, F2);
  CHECK(same_bars(barcode(image(f)), Barcode{bar(1, 2)}));
  CHECK(same_bars(barcode(kernel(f)), Barcode{bar(1, 3)}));
  CHECK_THROWS(ModuleMorphism(from_barcode(Barcode{bar(0, 2)}), refine(from_barcode(Barcode{bar(1, 2)}), {0, 1, 2}),
                              {Matrix(0, 0, F2), Matrix(0, 1, F2), Matrix::identity(1, F2), Matrix(0, 0, F2)}));
}

TEST_CASE("kernel and image of random morphisms have complementary dimensions") {
  oracle::Rng rng(34);
  oracle::BarcodeShape shape{5, 0, 4, 0.5, 0.2, 0, -1, false};
  for (int t = 0; t < 100; ++t) {
    Field f(t % 2 ? 3 : 2);
    Barcode B = oracle::random_barcode(rng, shape), C = oracle::random_barcode(rng, shape);
    ModuleMorphism m = oracle::bar_sum_morphism(B, C, oracle::random_allowed_coefficients(B, C, rng, f), f);
    ModuleRep K = kernel(m), I = image(m);
    for (double t0 : {0.25, 1.25, 2.75, 3.9, 10.0}) {
      std::size_t src = m.source().dims()[m.source().cell_of(t0)];
      CHECK(K.dims()[K.cell_of(t0)] + I.dims()[I.cell_of(t0)] == src);
    }
  }
}

TEST_CASE("induced matchings of injections and surjections") {
  Barcode B{bar(1, 3), bar(1, 2)};
  CHECK(same_bars(B, B));
  Matching id = induced_matching_inj(B, B);
  CHECK(id.pairs.size() == 2);
  for (auto [i, j] : id.pairs) CHECK(B[i] == B[j]);
  Matching s = induced_matching_sur(B, Barcode{bar(1, 2)});
  REQUIRE(s.pairs.size() == 1);
  CHECK(B[s.pairs[0].first] == bar(1, 3));
  Barcode T{bar(3, 4), bar(0, 2)};
  Matching in = induced_matching_inj(Barcode{bar(1, 2)}, T);
  REQUIRE(in.pairs.size() == 1);
  CHECK(T[in.pairs[0].second] == bar(0, 2));
  CHECK_THROWS(induced_matching_inj(Barcode{bar(0, 2), bar(0, 2)}, Barcode{bar(0, 2)}));
  CHECK_THROWS(induced_matching_sur(Barcode{bar(0, 2)}, Barcode{bar(0, 2), bar(1, 2)}));
}

TEST_CASE("induced matching of a morphism") {
  Barcode S{bar(1, 3), bar(1, 2)}, T{bar(3, 4), bar(0, 2)};
  ModuleMorphism f = oracle::bar_sum_morphism(S, T, {{0, 0}, {0, 1}}, F2);
  Matching m = induced_matching(f);
  Barcode BS = barcode(f.source()), BT = barcode(f.target());
  auto p = pairs_of(m, BS, BT);
  REQUIRE(p.size() == 1);
  CHECK(p[0].first == bar(1, 3));
  CHECK(p[0].second == bar(0, 2));
  ModuleRep V = from_barcode(S);
  CHECK(induced_matching(identity_morphism(V)).pairs.size() == 2);
  CHECK(induced_matching(zero_morphism(V, V)).pairs.empty());
}

TEST_CASE("induced matchings compose for injections and surjections") {
  oracle::Rng rng(35);
  for (int t = 0; t < 60; ++t) {
    Field f(t % 2 ? 5 : 2);
    auto [a, b] = t % 4 < 2 ? oracle::random_injections(rng, f) : oracle::random_surjections(rng, f);
    CHECK((t % 4 < 2 ? is_injective(a) && is_injective(b) : is_surjective(a) && is_surjective(b)));
    ModuleMorphism h = compose(b, a);
    auto direct = pairs_of(induced_matching(h), barcode(h.source()), barcode(h.target()));
    Barcode BV = barcode(a.target()), BV2 = barcode(b.source());
    CHECK(same_bars(BV, BV2));
    auto first = pairs_of(induced_matching(a), barcode(a.source()), BV);
    auto second = pairs_of(induced_matching(b), BV2, barcode(b.target()));
    // Compose by bar values: equal bars in V are interchangeable.
    std::vector<std::pair<Bar, Bar>> composed;
    std::vector<char> used(second.size(), 0);
    for (auto [u, v] : first)
      for (std::size_t k = 0; k < second.size(); ++k)
        if (!used[k] && second[k].first == v) {
          used[k] = 1;
          composed.push_back({u, second[k].second});
          break;
        }
    auto key = [](const std::pair<Bar, Bar>& x) { return std::tuple(x.first.birth, x.first.death, x.second.birth, x.second.death); };
    auto less = [&](const auto& x, const auto& y) { return key(x) < key(y); };
    std::sort(direct.begin(), direct.end(), less);
    std::sort(composed.begin(), composed.end(), less);
    CHECK(direct == composed);
  }
}

TEST_CASE("induced matchings are not functorial in general") {
  Barcode II{bar(0, 1), bar(0, 1)}, I{bar(0, 1)};
  ModuleMorphism f = oracle::bar_sum_morphism(II, II, {{1, 0}, {0, 0}}, F2);
  ModuleMorphism g = oracle::bar_sum_morphism(II, I, {{0, 1}}, F2);
  CHECK(compose_matchings(induced_matching(g), induced_matching(f)).pairs.size() == 1);
  CHECK(induced_matching(compose(g, f)).pairs.empty());
}

TEST_CASE("interleaving from a matching") {
  Barcode B{bar(0, 2)};
  auto [F, G] = interleaving_from_matching(B, B, Matching{{{0, 0}}}, 0, F2);
  CHECK(verify_interleaving(F, G, 0));
  CHECK(equal(F, identity_morphism(F.source())));
  Barcode C{bar(1, 3)};
  auto [F1, G1] = interleaving_from_matching(B, C, Matching{{{0, 0}}}, 1, F2);
  CHECK(verify_interleaving(F1, G1, 1));
  bool nonzero = std::any_of(F1.components().begin(), F1.components().end(), [](const Matrix& m) { return !m.is_zero(); });
  CHECK(nonzero);
  Barcode S{bar(0, 1)}, T{bar(5, 5.5)};
  auto [F2m, G2m] = interleaving_from_matching(S, T, Matching{}, 0.5, F2);
  CHECK(verify_interleaving(F2m, G2m, 0.5));
  CHECK_THROWS(interleaving_from_matching(B, C, Matching{{{0, 0}}}, 0.5, F2));
}

TEST_CASE("stability round trip on dyadic barcodes") {
  oracle::Rng rng(36);
  oracle::BarcodeShape shape{4, 0, 4, 0.25, 0.25, 0, -1, true};
  int done = 0;
  while (done < 80) {
    Barcode B = oracle::random_barcode(rng, shape), C = oracle::random_barcode(rng, shape);
    BottleneckResult r = bottleneck(B, C);
    if (std::isinf(r.distance)) continue;
    ++done;
    CHECK(is_delta_matching(B, C, r.matching, r.distance));
    auto [F, G] = interleaving_from_matching(B, C, r.matching, r.distance, Field(3));
    CHECK(verify_interleaving(F, G, r.distance));
  }
}

TEST_CASE("interleaving distance") {
  ModuleRep V = from_barcode(Barcode{bar(1, 2)}), W = from_barcode(Barcode{bar(2, 3)});
  CHECK(interleaving_distance(V, V) == 0);
  CHECK(interleaving_distance(V, W) == 0.5);
  CHECK(interleaving_distance(V, from_barcode(Barcode{bar(1, kInf)})) == kInf);
}

TEST_CASE("characteristic exponents") {
  ModuleRep V = from_barcode(Barcode{bar(2.5, kInf)}, F2);
  CHECK(characteristic_exponent(V, Vec{0}) == -kInf);
  CHECK(characteristic_exponent(V, Vec{1}) == 2.5);
  CHECK_THROWS(characteristic_exponent(V, Vec{1, 0}));
  oracle::Rng rng(37);
  oracle::BarcodeShape shape{6, 0, 5, 0.5, 0.6, 0, -1, true};
  Field f(5);
  for (int t = 0; t < 60; ++t) {
    Barcode B = oracle::random_barcode(rng, shape);
    ModuleRep M = oracle::random_automorphism(B, rng, f).target();
    auto spec = characteristic_spectrum(M);
    CHECK(spec == infinite_endpoint_spectrum(B));
    std::size_t d = M.dims().back();
    if (d == 0) continue;
    std::uniform_int_distribution<Scalar> val(0, 4);
    Vec v1(d), v2(d), sum(d);
    for (std::size_t i = 0; i < d; ++i) {
      v1[i] = val(rng);
      v2[i] = val(rng);
      sum[i] = f.add(v1[i], v2[i]);
    }
    Vec scaled = v1;
    for (auto& x : scaled) x = f.mul(x, 3);
    CHECK(characteristic_exponent(M, scaled) == characteristic_exponent(M, v1));
    CHECK(characteristic_exponent(M, sum) <= std::max(characteristic_exponent(M, v1), characteristic_exponent(M, v2)));
  }
}
