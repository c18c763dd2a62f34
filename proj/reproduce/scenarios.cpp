#include "scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "persist/metric_geometry.hpp"
#include "persist/representations.hpp"
#include "persist/symplectic_forms.hpp"

namespace persist {

PointCloud hexagon_cloud() {
  PointCloud P;
  for (int i = 0; i < 6; ++i) {
    double t = std::numbers::pi * i / 3;
    P.points.push_back({std::cos(t), std::sin(t)});
  }
  return P;
}

FilteredComplex heart_sphere_complex(double a1, double a2, double a3, double a4) {
  FilteredComplex C;
  C.add_cell("x1", 0, a1);
  C.add_cell("x2", 1, a2, {{0, 0}});
  C.add_cell("x3", 2, a3, {{1, 1}});
  C.add_cell("x4", 2, a4, {{1, 1}});
  return C;
}

TrigPolynomial2D sine_sum(int n) { return TrigPolynomial2D{{{n, 0, 0, 1}, {0, n, 0, 1}}}; }

PointCloud circle_cloud(std::size_t n) {
  PointCloud P;
  for (std::size_t i = 0; i < n; ++i) {
    double t = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    P.points.push_back({std::cos(t), std::sin(t)});
  }
  return P;
}

bool ScenarioResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

using oracle::Rng;

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string show(const Barcode& B) {
  std::string s = "{";
  auto S = B.sorted();
  for (std::size_t i = 0; i < S.size(); ++i) {
    const Bar& b = S[i];
    s += (i ? ", " : "") + std::string("(") + fmt(b.birth) + "," + fmt(b.death) + "]";
    if (b.degree) s += "_" + std::to_string(*b.degree);
  }
  return s + "}";
}

Check check(std::string what, bool pass, std::string detail) { return {std::move(what), pass, std::move(detail)}; }

Check counted(std::string what, std::size_t bad, std::size_t total, std::string first_failure) {
  std::string d = std::to_string(total - bad) + "/" + std::to_string(total) + " agree";
  if (bad) d += "; first failure: " + first_failure;
  return check(std::move(what), bad == 0, d);
}

Barcode hexagon_rips_expected() {
  Barcode B;
  B.add(0, 1, 0, 5);
  B.add(0, kInf, 0);
  B.add(1, std::sqrt(3.0), 1);
  B.add(std::sqrt(3.0), 2, 2);
  return B;
}

Barcode hexagon_cech_expected() {
  Barcode B;
  B.add(0, 1, 0, 5);
  B.add(0, kInf, 0);
  B.add(1, 2, 1);
  return B;
}

void s1(ScenarioResult& r, Rng&) {
  Barcode got = below_degree(barcode_of_complex(rips_complex(euclidean_metric(hexagon_cloud()), 3)), 3);
  Barcode want = hexagon_rips_expected();
  r.checks.push_back(check("hexagon Rips barcode (tol 1e-9)", same_bars(got, want, 1e-9),
                           "expected " + show(want) + ", computed " + show(got)));
}

void s2(ScenarioResult& r, Rng&) {
  Barcode cech = below_degree(barcode_of_complex(cech_complex(hexagon_cloud(), 3)), 3);
  Barcode want = hexagon_cech_expected();
  r.checks.push_back(check("hexagon Cech barcode (tol 1e-9)", same_bars(cech, want, 1e-9),
                           "expected " + show(want) + ", computed " + show(cech)));
  Barcode rips = below_degree(barcode_of_complex(rips_complex(euclidean_metric(hexagon_cloud()), 3)), 3);
  double d = bottleneck_distance(log2_rescale(rips), log2_rescale(cech));
  r.checks.push_back(check("log2 Rips vs Cech bottleneck <= 1", d <= 1, "d_bot = " + fmt(d)));
}

void s3(ScenarioResult& r, Rng&) {
  FilteredComplex C = heart_sphere_complex(0, 1, 2, 3);
  Barcode got = barcode_of_complex(C);
  Barcode want{Bar{0, kInf, 0}, Bar{1, 2, 1}, Bar{3, kInf, 2}};
  r.checks.push_back(check("heart sphere barcode", same_bars(got, want, 0), "expected " + show(want) + ", computed " + show(got)));
  double bd = boundary_depth(got), bu = boundary_depth_usher(C);
  r.checks.push_back(check("boundary depth = 1 by barcode and by filtration lookup", bd == 1 && bu == 1,
                           "barcode " + fmt(bd) + ", direct " + fmt(bu)));
}

void s4(ScenarioResult& r, Rng&) {
  struct Row { Bar I, J; double want; };
  std::vector<Row> rows{{Bar{1, 2, {}}, Bar{1, 3, {}}, 1}, {Bar{1, 2, {}}, Bar{2, 3, {}}, 0.5}, {Bar{1, 4, {}}, Bar{2, 5, {}}, 1}};
  for (const auto& row : rows) {
    double a = interval_interleaving_distance(row.I, row.J);
    double b = bottleneck_distance(Barcode{row.I}, Barcode{row.J});
    std::string name = "(" + fmt(row.I.birth) + "," + fmt(row.I.death) + "] vs (" + fmt(row.J.birth) + "," +
                       fmt(row.J.death) + "]";
    r.checks.push_back(check(name, a == row.want && b == row.want,
                             "expected " + fmt(row.want) + ", interval formula " + fmt(a) + ", bottleneck " + fmt(b)));
  }
}

void s5(ScenarioResult& r, Rng& rng) {
  std::size_t bad = 0, bad_count = 0, bad_jordan = 0, total = 500;
  std::string first, first_count;
  for (std::size_t t = 0; t < total; ++t) {
    Field f(t % 2 ? 5 : 2);
    FilteredComplex C = oracle::random_complex(rng, 30, 2);
    JordanPairing J = barannikov_reduce(C, f);
    if (!verify_jordan(C, J)) ++bad_jordan;
    Barcode B = barcode_of_jordan(C, J);
    for (int k = 0; k <= C.max_degree(); ++k) {
      Barcode mine = B.in_degree(k).untagged();
      Barcode ref = barcode(homology_module(C, k, f));
      if (!same_bars(mine, ref, 0)) {
        if (!bad) first = "trial " + std::to_string(t) + " degree " + std::to_string(k) + ": " + show(mine) + " vs " + show(ref);
        ++bad;
        break;
      }
    }
    if (2 * B.finite_count() > C.size()) {
      if (!bad_count) first_count = "trial " + std::to_string(t);
      ++bad_count;
    }
  }
  r.checks.push_back(counted("reduction barcode = homology-module barcode (F2 and F5)", bad, total, first));
  r.checks.push_back(counted("finite bars <= cells / 2", bad_count, total, first_count));
  r.checks.push_back(counted("Jordan basis conditions hold", bad_jordan, total, ""));
}

Matrix random_invertible(std::size_t n, Rng& rng, Field f) {
  std::uniform_int_distribution<Scalar> val(0, f.p() - 1);
  for (;;) {
    Matrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = val(rng);
    if (rank(m) == n) return m;
  }
}

void s6(ScenarioResult& r, Rng& rng) {
  oracle::BarcodeShape shape{8, 0, 6, 0.5, 0.2, 0.1, -1, true};
  std::size_t bad = 0, bad_nf = 0, total = 1000;
  std::string first, first_nf;
  for (std::size_t t = 0; t < total; ++t) {
    Field f(t % 3 == 2 ? 5 : 2);
    Barcode B = oracle::random_barcode(rng, shape);
    ModuleRep V = from_barcode(B, f);
    Barcode back = barcode(V);
    if (!same_bars(back, B, 0)) {
      if (!bad) first = show(B) + " -> " + show(back);
      ++bad;
    }
    // Scramble bases slice by slice, then compare against the normal-form construction.
    std::vector<Matrix> P;
    for (auto d : V.dims()) P.push_back(random_invertible(d, rng, f));
    std::vector<Matrix> maps;
    for (std::size_t c = 0; c + 1 < V.num_cells(); ++c) maps.push_back(P[c + 1] * V.maps()[c] * inverse(P[c]));
    ModuleRep Vs(V.spectrum(), V.dims(), maps, f);
    Barcode nf = oracle::normal_form_barcode(Vs), rk = barcode(Vs);
    if (!same_bars(nf, B, 0) || !same_bars(rk, B, 0)) {
      if (!bad_nf) first_nf = show(B) + ": ranks " + show(rk) + ", normal form " + show(nf);
      ++bad_nf;
    }
  }
  r.checks.push_back(counted("barcode(from_barcode(B)) = B", bad, total, first));
  r.checks.push_back(counted("rank formula = normal-form construction after random base change", bad_nf, total, first_nf));
  ModuleRep V = from_barcode(Barcode{Bar{1.5, kInf, {}}}, Field(2));
  long m12 = static_cast<long>(rank_invariant(V, 2, 2)) + static_cast<long>(rank_invariant(V, 1, 3)) -
             static_cast<long>(rank_invariant(V, 2, 3)) - static_cast<long>(rank_invariant(V, 1, 2));
  r.checks.push_back(check("m12 = b22 + b13 - b23 - b12 for F(a1, inf)", m12 == 1, "computed " + std::to_string(m12)));
}

void s7(ScenarioResult& r, Rng& rng) {
  std::size_t bad = 0, total = 500;
  std::string first;
  std::uniform_int_distribution<int> len(0, 6), val(-5, 5);
  std::uniform_real_distribution<double> real(-3, 3);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t n = len(rng);
    std::vector<double> b(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = t % 2 ? real(rng) : val(rng);
      c[i] = t % 2 ? real(rng) : val(rng);
    }
    double got = matching_lemma(b, c), want = oracle::matching_permutation_min(b, c);
    if (got != want) {
      if (!bad) first = fmt(got) + " vs " + fmt(want);
      ++bad;
    }
  }
  r.checks.push_back(counted("sorted matching = permutation minimum", bad, total, first));
}

double lipschitz_gap(double a, double b) {
  if (a == b) return 0;
  return std::abs(a - b);
}

void s8(ScenarioResult& r, Rng& rng) {
  std::size_t bad = 0, total = 200;
  std::string first;
  std::uniform_real_distribution<double> U(0, 1), E(0.01, 0.2);
  for (std::size_t t = 0; t < total; ++t) {
    if (t % 2 == 0) {
      GridFunction f{8, 8, std::vector<double>(64)}, g = f;
      double eps = E(rng), delta = 0;
      for (std::size_t i = 0; i < 64; ++i) {
        f.values[i] = U(rng);
        g.values[i] = f.values[i] + eps * (2 * U(rng) - 1);
        delta = std::max(delta, std::abs(f.values[i] - g.values[i]));
      }
      double d = bottleneck_distance(barcode_of_complex(torus_grid_complex(f)), barcode_of_complex(torus_grid_complex(g)));
      if (d > delta + 1e-12) {
        if (!bad) first = "torus trial " + std::to_string(t) + ": " + fmt(d) + " > " + fmt(delta);
        ++bad;
      }
    } else {
      std::size_t n = 5 + rng() % 20;
      std::vector<double> f(n), g(n);
      double eps = E(rng), delta = 0;
      for (std::size_t i = 0; i < n; ++i) {
        f[i] = U(rng);
        g[i] = f[i] + eps * (2 * U(rng) - 1);
        delta = std::max(delta, std::abs(f[i] - g[i]));
      }
      double d = bottleneck_distance(barcode_of_complex(circle_complex(f)), barcode_of_complex(circle_complex(g)));
      if (d > delta + 1e-12) {
        if (!bad) first = "circle trial " + std::to_string(t) + ": " + fmt(d) + " > " + fmt(delta);
        ++bad;
      }
    }
  }
  r.checks.push_back(counted("d_bot(sublevel f, sublevel g) <= |f - g|_0", bad, total, first));

  std::size_t bad_beta = 0, bad_mu = 0, pairs = 500;
  std::string fb, fm;
  oracle::BarcodeShape shape{5, 0, 3, 0, 0.2, 0, -1, true};
  for (std::size_t t = 0; t < pairs; ++t) {
    Barcode B = oracle::random_barcode(rng, shape), C;
    if (t % 2) {
      C = oracle::random_barcode(rng, shape);
    } else {
      double eps = E(rng);
      for (auto b : B.bars) {
        double nb = b.birth + eps * (2 * U(rng) - 1);
        double nd = std::isfinite(b.death) ? b.death + eps * (2 * U(rng) - 1) : kInf;
        if (nd > nb) C.bars.push_back(Bar{nb, nd, {}});
      }
    }
    double d = bottleneck_distance(B, C);
    if (!std::isfinite(d)) continue;
    for (std::size_t k = 1; k <= 3; ++k) {
      if (lipschitz_gap(beta_k(B, k), beta_k(C, k)) > 2 * d + 1e-12) {
        if (!bad_beta) fb = show(B) + " vs " + show(C) + " k=" + std::to_string(k);
        ++bad_beta;
      }
      if (lipschitz_gap(multiplicity_function(B, k), multiplicity_function(C, k)) > d + 1e-12) {
        if (!bad_mu) fm = show(B) + " vs " + show(C) + " k=" + std::to_string(k);
        ++bad_mu;
      }
    }
  }
  r.checks.push_back(counted("beta_k is 2-Lipschitz (k = 1..3)", bad_beta, pairs * 3, fb));
  r.checks.push_back(counted("mu_k is 1-Lipschitz (k = 1..3)", bad_mu, pairs * 3, fm));
}

using ValuePairs = std::vector<std::pair<std::pair<double, double>, std::pair<double, double>>>;

ValuePairs values_of(const Matching& M, const Barcode& B, const Barcode& C) {
  ValuePairs v;
  for (auto [i, j] : M.pairs) v.push_back({{B[i].birth, B[i].death}, {C[j].birth, C[j].death}});
  std::sort(v.begin(), v.end());
  return v;
}

void s9(ScenarioResult& r, Rng& rng) {
  for (int kind = 0; kind < 2; ++kind) {
    std::size_t bad = 0, total = 200;
    std::string first;
    for (std::size_t t = 0; t < total; ++t) {
      Field f(t % 2 ? 5 : 2);
      auto [fm, gm] = kind == 0 ? oracle::random_injections(rng, f) : oracle::random_surjections(rng, f);
      ModuleMorphism h = compose(gm, fm);
      Barcode BU = barcode(fm.source()), BV = barcode(fm.target()), BV2 = barcode(gm.source()), BW = barcode(gm.target());
      Matching mf = induced_matching(fm), mg = induced_matching(gm), mh = induced_matching(h);
      // Re-index mg onto BV so that the two matchings compose.
      Matching mg2;
      std::vector<char> used(BV.size(), 0);
      for (auto [i, j] : mg.pairs) {
        for (std::size_t a = 0; a < BV.size(); ++a)
          if (!used[a] && BV[a] == BV2[i]) {
            used[a] = 1;
            mg2.pairs.emplace_back(a, j);
            break;
          }
      }
      Matching composed = compose_matchings(mg2, mf);
      if (values_of(composed, BU, BW) != values_of(mh, barcode(h.source()), barcode(h.target()))) {
        if (!bad) first = "trial " + std::to_string(t);
        ++bad;
      }
    }
    r.checks.push_back(counted(kind == 0 ? "mu(g f) = mu(g) mu(f) for injections" : "mu(g f) = mu(g) mu(f) for surjections",
                               bad, total, first));
  }
  Field f(2);
  Barcode II{Bar{0, 1, {}}, Bar{0, 1, {}}}, I{Bar{0, 1, {}}};
  ModuleMorphism fm = oracle::bar_sum_morphism(II, II, {{1, 0}, {0, 0}}, f);
  ModuleMorphism gm = oracle::bar_sum_morphism(II, I, {{0, 1}}, f);
  Matching composed = compose_matchings(induced_matching(gm), induced_matching(fm));
  Matching direct = induced_matching(compose(gm, fm));
  r.checks.push_back(check("non-functoriality example: mu(g) mu(f) has one pair, mu(g f) is empty",
                           composed.pairs.size() == 1 && direct.pairs.empty(),
                           std::to_string(composed.pairs.size()) + " vs " + std::to_string(direct.pairs.size()) + " pairs"));
}

void s10(ScenarioResult& r, Rng& rng) {
  std::size_t bad = 0, total = 200, done = 0;
  std::string first;
  oracle::BarcodeShape shape{4, 0, 4, 1.0 / 16, 0.25, 0, -1, false};
  std::uniform_int_distribution<int> jitter(-8, 8);
  while (done < total) {
    Field f(done % 2 ? 3 : 2);
    Barcode B = oracle::random_barcode(rng, shape), C;
    for (auto b : B.bars) {
      double nb = b.birth + jitter(rng) / 16.0;
      double nd = std::isfinite(b.death) ? b.death + jitter(rng) / 16.0 : kInf;
      if (nd > nb) C.bars.push_back(Bar{nb, nd, {}});
      else if (!std::isfinite(b.death)) C.bars.push_back(Bar{nb, kInf, {}});
    }
    if (rng() % 3 == 0) C.bars.push_back(Bar{1, 1 + (1 + rng() % 8) / 16.0, {}});
    BottleneckResult res = bottleneck(B, C);
    if (!std::isfinite(res.distance)) continue;
    ++done;
    auto [F, G] = interleaving_from_matching(B, C, res.matching, res.distance, f);
    if (!verify_interleaving(F, G, res.distance)) {
      if (!bad) first = show(B) + " vs " + show(C) + " at delta " + fmt(res.distance);
      ++bad;
    }
  }
  r.checks.push_back(counted("G F and F G equal the 2 delta shift maps exactly", bad, total, first));
}

void s11(ScenarioResult& r, Rng&) {
  const int n = 2;
  TrigPolynomial2D p = sine_sum(n);
  GridFunction g = p.sample(128, 128);
  LengthReport L = verify_length_inequality(g, 0);
  std::size_t nu19 = nu(L.barcode, 1.9), low = 0, high = 0;
  for (const auto& b : L.barcode.bars)
    if (b.finite() && b.length() > 1.9) (b.death < 1 ? low : high)++;
  r.checks.push_back(check("nu(p, 1.9) = 2n^2 - 2 = 6", nu19 == 6, "computed " + std::to_string(nu19)));
  r.checks.push_back(check("ell(p) within 2% of 4n^2 + 4 = 20", std::abs(L.ell - 20) <= 0.02 * 20, "computed " + fmt(L.ell)));
  r.checks.push_back(check("long bars split 3 near (-2,0] and 3 near (0,2]", low == 3 && high == 3,
                           std::to_string(low) + " + " + std::to_string(high)));
  double exact = 3 * (p.l2_norm() + p.laplacian().l2_norm()), want = 6 * std::numbers::pi * (n * n + 1);
  r.checks.push_back(check("RHS = 6 pi (n^2 + 1): exact norms to 1e-12, grid norms to 0.1%",
                           std::abs(exact - want) <= 1e-12 * want && std::abs(L.rhs - want) <= 1e-3 * want,
                           "exact " + fmt(exact) + ", grid " + fmt(L.rhs) + ", target " + fmt(want)));
  r.checks.push_back(check("ell(p) <= RHS", L.holds, fmt(L.ell) + " <= " + fmt(L.rhs)));
}

void s12(ScenarioResult& r, Rng& rng) {
  std::size_t bad = 0, total = 20;
  std::string first, worst;
  double worst_ratio = 0;
  for (std::size_t t = 0; t < total; ++t) {
    int lambda = 1 + static_cast<int>(rng() % 9);
    TrigPolynomial2D p = TrigPolynomial2D::random(lambda, rng);
    LengthReport L = verify_length_inequality(p.sample(64, 64), 0.05);
    worst_ratio = std::max(worst_ratio, L.ell / L.rhs);
    if (!L.holds) {
      if (!bad) first = "lambda " + std::to_string(lambda) + ": " + fmt(L.ell) + " vs " + fmt(L.rhs);
      ++bad;
    }
  }
  Check c = counted("ell <= 3 (|f|_2 + |Lap f|_2) (1 + 5%)", bad, total, first);
  c.detail += "; largest ell / RHS = " + fmt(worst_ratio);
  r.checks.push_back(c);
}

void s13(ScenarioResult& r, Rng&) {
  Field f(5);
  ModuleRepWithAction R = rectangle_pmi(3, f);
  Barcode L = barcode(eigenspace_submodule(R, f.p() - 1));
  Barcode want{Bar{0, 1, {}}, Bar{0, 3, {}}};
  r.checks.push_back(check("(-1)-eigenspace barcode for a = 3", same_bars(L, want, 1e-9),
                           "expected " + show(want) + ", computed " + show(L)));
  double mu = z4_obstruction_bound(R);
  r.checks.push_back(check("mu_odd = (a - 1)/4 = 0.5 for a = 3", mu == 0.5, "computed " + fmt(mu)));
  double sq = z4_obstruction_bound(rectangle_pmi(1, f));
  r.checks.push_back(check("square a = 1 gives 0", sq == 0, "computed " + fmt(sq)));
}

FiniteMetricSpace random_four_point(Rng& rng) {
  std::uniform_real_distribution<double> U(0, 2);
  if (rng() % 2) {
    PointCloud P;
    for (int i = 0; i < 4; ++i) P.points.push_back({U(rng), U(rng)});
    return euclidean_metric(P);
  }
  std::vector<std::vector<double>> d(4, std::vector<double>(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d[i][j] = d[j][i] = 0.1 + U(rng);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return FiniteMetricSpace(d);
}

void s14(ScenarioResult& r, Rng& rng) {
  std::size_t bad = 0, total = 100;
  std::string first;
  double tightest = kInf;
  for (std::size_t t = 0; t < total; ++t) {
    FiniteMetricSpace X = random_four_point(rng), Y = random_four_point(rng);
    double gh = gh_bruteforce(X, Y);
    double d = bottleneck_distance(below_degree(barcode_of_complex(rips_complex(X, 2)), 2),
                                   below_degree(barcode_of_complex(rips_complex(Y, 2)), 2));
    tightest = std::min(tightest, gh - d / 2);
    if (gh < d / 2 - 1e-12) {
      if (!bad) first = fmt(gh) + " < " + fmt(d / 2);
      ++bad;
    }
  }
  Check c = counted("d_GH >= d_bot(Rips) / 2", bad, total, first);
  c.detail += "; smallest margin " + fmt(tightest);
  r.checks.push_back(c);
}

void s15(ScenarioResult& r, Rng& rng) {
  std::size_t bad = 0, total = 0;
  std::string first;
  oracle::BarcodeShape shape{5, 0, 1, 0, 0.15, 0.05, -1, false};
  for (std::size_t t = 0; t < 100; ++t) {
    Barcode B = oracle::random_barcode(rng, shape);
    for (std::size_t k = 1; k <= std::min<std::size_t>(B.size(), 3); ++k) {
      ++total;
      double mine = multiplicity_function(B, k), grid = oracle::multiplicity_grid(B, k, 1e-3);
      bool ok = (mine == grid) || std::abs(mine - grid) <= 2e-3;
      if (!ok) {
        if (!bad) first = show(B) + " k=" + std::to_string(k) + ": " + fmt(mine) + " vs grid " + fmt(grid);
        ++bad;
      }
    }
  }
  r.checks.push_back(counted("mu_k matches the grid search within 2e-3", bad, total, first));
}

void s16(ScenarioResult& r, Rng& rng) {
  std::size_t bad = 0, total = 30;
  std::string first;
  double worst = 0;
  for (std::size_t t = 0; t < total; ++t) {
    auto T = oracle::random_tree_net(rng, 3 + t % 3, 0.35);
    Barcode B = below_degree(barcode_of_complex(rips_complex(T.metric, 2)), 2);
    double longest = boundary_depth(B);
    worst = std::max(worst, longest / T.eps);
    if (longest > 6 * T.eps + 1e-12) {
      if (!bad) first = fmt(longest) + " > 6 * " + fmt(T.eps);
      ++bad;
    }
  }
  Check c = counted("finite Rips bars of tree nets have length <= 6 eps", bad, total, first);
  c.detail += "; largest length / eps = " + fmt(worst);
  r.checks.push_back(c);
}

void s17(ScenarioResult& r, Rng& rng) {
  std::size_t bad = 0, total = 100;
  std::string first;
  std::uniform_real_distribution<double> U(-2, 2);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t knots = 3 + rng() % 6, per = 1 + rng() % 5;
    std::vector<double> k(knots), samples;
    for (auto& x : k) x = U(rng);
    for (std::size_t i = 0; i < knots; ++i)
      for (std::size_t s = 0; s < per; ++s) {
        double w = static_cast<double>(s) / static_cast<double>(per);
        samples.push_back((1 - w) * k[i] + w * k[(i + 1) % knots]);
      }
    CircleIdentity c = circle_ell_identity(samples);
    if (std::abs(c.ell - c.half_tv) > 1e-9) {
      if (!bad) first = fmt(c.ell) + " vs " + fmt(c.half_tv);
      ++bad;
    }
  }
  r.checks.push_back(counted("ell = TV / 2 (tol 1e-9)", bad, total, first));
}

void s18(ScenarioResult& r, Rng&) {
  PointCloud P = circle_cloud(60);
  FilteredComplex C = rips_complex(euclidean_metric(P), 2);
  Barcode B = below_degree(barcode_of_complex(C), 2);
  double mst = 0;
  for (const auto& b : B.in_degree(0).bars)
    if (b.finite()) mst = std::max(mst, b.death);
  double s = std::log2(mst);
  Barcode L = log2_rescale(B);
  // Rank of the structure map across the inner part of J = (s, s + 4].
  Bar inner{s + 1, s + 3, {}};
  std::size_t b0 = persistent_betti(L.in_degree(0), inner), b1 = persistent_betti(L.in_degree(1), inner);
  std::size_t r0 = 0, r1 = 0;
  // Homology below 2^(s+3) only sees simplices under that scale.
  FilteredComplex low = rips_complex(euclidean_metric(P), 2, std::exp2(s + 3) * 1.01);
  for (int k = 0; k < 2; ++k) {
    ModuleRep V = homology_module(low, k);
    std::size_t rk = rank(V.transition(V.cell_of(std::exp2(s + 1)), V.cell_of(std::exp2(s + 3))));
    (k == 0 ? r0 : r1) = rk;
  }
  r.checks.push_back(check("b0 = 1 and b1 = 1 over the window", b0 == 1 && b1 == 1 && r0 == 1 && r1 == 1,
                           "window (" + fmt(s) + ", " + fmt(s + 4) + "]; from bars b0=" + std::to_string(b0) +
                               " b1=" + std::to_string(b1) + "; from module ranks b0=" + std::to_string(r0) +
                               " b1=" + std::to_string(r1)));
}

void s19(ScenarioResult& r, Rng&) {
  struct Row { double a; int n; double N; int want; };
  std::vector<Row> rows{{0.5, 1, 1, 0}, {1.5, 1, 1, -2}, {2.5, 1, 1, -4}, {0.5, 2, 8, 0}, {1.5, 2, 8, -2}, {2.5, 2, 8, -4}};
  std::size_t bad = 0, bad_idx = 0;
  std::string first, first_idx;
  for (const auto& row : rows) {
    int deg = ellipsoid_sh_degree(row.a, row.n, row.N);
    int idx = ellipsoid_index_from_rotations(row.a, row.n, row.N);
    std::string tag = "a=" + fmt(row.a) + " n=" + std::to_string(row.n) + " N=" + fmt(row.N);
    if (deg != row.want) {
      if (!bad) first = tag + ": " + std::to_string(deg) + " vs " + std::to_string(row.want);
      ++bad;
    }
    if (idx != deg) {
      if (!bad_idx) first_idx = tag + ": " + std::to_string(idx) + " vs " + std::to_string(deg);
      ++bad_idx;
    }
  }
  bool rejects = false;
  try {
    ellipsoid_sh_degree(1.0, 1, 1);
  } catch (const Error&) {
    rejects = true;
  }
  r.checks.push_back(counted("ellipsoid degree table", bad, rows.size(), first));
  r.checks.push_back(check("a in the action spectrum is rejected (homology vanishes elsewhere)", rejects, ""));
  double d = sbm_lower_bound({1, 8, 2}, {2, 2, 2});
  r.checks.push_back(check("sbm lower bound E(1,8) vs E(2,4) = ln 2 (tol 1e-12)", std::abs(d - std::log(2.0)) <= 1e-12,
                           "computed " + fmt(d)));
  r.checks.push_back(counted("rotation-index route = degree formula", bad_idx, rows.size(), first_idx));
}

using Runner = void (*)(ScenarioResult&, Rng&);

struct Entry {
  ScenarioInfo info;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {{1, "hexagon", "Rips barcode of the regular hexagon"}, s1},
      {{2, "hexagon-cech", "Cech barcode of the hexagon and the log-scale comparison"}, s2},
      {{3, "heart-sphere", "heart-shaped sphere barcode and boundary depth"}, s3},
      {{4, "interval-table", "interleaving distance between single intervals"}, s4},
      {{5, "oracle-equivalence", "reduction barcode vs homology module on random complexes"}, s5},
      {{6, "normal-form", "module round trips and the m12 rank formula"}, s6},
      {{7, "matching-lemma", "sorted matching vs permutations"}, s7},
      {{8, "stability", "sublevel stability and Lipschitz invariants"}, s8},
      {{9, "induced-matching", "functoriality of induced matchings"}, s9},
      {{10, "interleaving", "interleavings built from matchings"}, s10},
      {{11, "torus-n2", "sin 2x + sin 2y on a 128 x 128 torus grid"}, s11},
      {{12, "length-inequality", "length inequality for random trigonometric polynomials"}, s12},
      {{13, "rectangle-pmi", "eigenspace barcode and obstruction for the rectangle"}, s13},
      {{14, "gh-chain", "Gromov-Hausdorff vs Rips bottleneck"}, s14},
      {{15, "multiplicity-oracle", "multiplicity function vs grid search"}, s15},
      {{16, "tree-rips", "Rips bars of tree nets"}, s16},
      {{17, "circle-identity", "length vs total variation on the circle"}, s17},
      {{18, "manifold-learning", "circle homology from a log-scale Rips window"}, s18},
      {{19, "sbm-ellipsoid", "ellipsoid degrees, indices and the ln 2 bound"}, s19},
  };
  return e;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_list() {
  static const std::vector<ScenarioInfo> list = [] {
    std::vector<ScenarioInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return list;
}

int scenario_id(const std::string& key) {
  for (const auto& e : entries())
    if (key == e.info.name || key == std::to_string(e.info.id)) return e.info.id;
  return 0;
}

ScenarioResult run_scenario(int id, std::uint64_t seed) {
  for (const auto& e : entries()) {
    if (e.info.id != id) continue;
    ScenarioResult r;
    r.id = id;
    r.name = e.info.name;
    Rng rng(seed + static_cast<std::uint64_t>(id));
    auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(r, rng);
    } catch (const std::exception& ex) {
      r.checks.push_back(check("scenario ran to completion", false, ex.what()));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  fail_input("unknown scenario " + std::to_string(id));
}

std::string format_result(const ScenarioResult& r) {
  std::ostringstream os;
  char head[160];
  std::snprintf(head, sizeof head, "criterion %2d %-20s %s (%.2f s)\n", r.id, r.name.c_str(), r.passed() ? "PASS" : "FAIL",
                r.seconds);
  os << head;
  for (const auto& c : r.checks) os << "    [" << (c.pass ? "ok" : "FAIL") << "] " << c.what << (c.detail.empty() ? "" : ": ") << c.detail << "\n";
  return os.str();
}

}  // namespace persist
