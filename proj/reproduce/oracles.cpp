#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace persist::oracle {

namespace {

double snap(double x, double step) { return step > 0 ? std::round(x / step) * step : x; }

double gap(double x, double y) {
  if (x == y) return 0;  // covers equal infinities
  return std::abs(x - y);
}

double pair_cost(const Bar& a, const Bar& b) { return std::max(gap(a.birth, b.birth), gap(a.death, b.death)); }
double half_length(const Bar& a) { return a.finite() ? (a.death - a.birth) / 2 : kInf; }

bool exhaustive_feasible(const std::vector<Bar>& B, const std::vector<Bar>& C, double delta) {
  std::vector<char> used(C.size(), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == B.size()) {
      for (std::size_t j = 0; j < C.size(); ++j)
        if (!used[j] && half_length(C[j]) > delta) return false;
      return true;
    }
    if (half_length(B[i]) <= delta && go(i + 1)) return true;
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (used[j] || pair_cost(B[i], C[j]) > delta) continue;
      used[j] = 1;
      bool ok = go(i + 1);
      used[j] = 0;
      if (ok) return true;
    }
    return false;
  };
  return go(0);
}

double exhaustive_pool(const std::vector<Bar>& B, const std::vector<Bar>& C) {
  std::vector<double> cand{0};
  for (const auto& b : B)
    for (const auto& c : C) cand.push_back(pair_cost(b, c));
  for (const auto& b : B) cand.push_back(half_length(b));
  for (const auto& c : C) cand.push_back(half_length(c));
  std::sort(cand.begin(), cand.end());
  for (double d : cand)
    if (std::isfinite(d) && exhaustive_feasible(B, C, d)) return d;
  return kInf;
}

}  // namespace

Barcode random_barcode(Rng& rng, const BarcodeShape& shape) {
  std::uniform_int_distribution<std::size_t> count(shape.allow_empty ? 0 : 1, shape.max_bars);
  std::uniform_real_distribution<double> U(shape.lo, shape.hi), P(0, 1);
  Barcode B;
  std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    double x = snap(U(rng), shape.step), y = snap(U(rng), shape.step);
    if (x == y) y = x + (shape.step > 0 ? shape.step : 0.5);
    double b = std::min(x, y), d = std::max(x, y);
    double r = P(rng);
    if (r < shape.ray_prob) d = kInf;
    else if (r < shape.ray_prob + shape.neg_ray_prob) b = -kInf;
    std::optional<int> deg;
    if (shape.max_degree >= 0) deg = std::uniform_int_distribution<int>(0, shape.max_degree)(rng);
    B.bars.push_back(Bar{b, d, deg});
  }
  return B;
}

double bottleneck_exhaustive(const Barcode& B, const Barcode& C) {
  if (B.all_tagged() && C.all_tagged() && !(B.empty() && C.empty())) {
    std::vector<int> degs = B.degrees();
    for (int d : C.degrees()) degs.push_back(d);
    double best = 0;
    for (int d : degs) best = std::max(best, exhaustive_pool(B.in_degree(d).bars, C.in_degree(d).bars));
    return best;
  }
  return exhaustive_pool(B.bars, C.bars);
}

double matching_permutation_min(const std::vector<double>& b, const std::vector<double>& c) {
  if (b.size() != c.size()) fail_input("lists must have equal length");
  std::vector<std::size_t> perm(c.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = b.empty() ? 0 : kInf;
  do {
    double v = 0;
    for (std::size_t i = 0; i < b.size(); ++i) v = std::max(v, gap(b[i], c[perm[i]]));
    best = std::min(best, v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double multiplicity_grid(const Barcode& B, std::size_t k, double rel_step) {
  double lo = kInf, hi = -kInf;
  for (const auto& b : B.bars)
    for (double x : {b.birth, b.death})
      if (std::isfinite(x)) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
  std::vector<double> grid;
  if (lo <= hi) {
    double span = std::max(hi - lo, 1e-9);
    double h = rel_step * span;
    for (double x = lo - span - h; x <= hi + span + h; x += h) grid.push_back(x);
  }
  std::vector<double> S{-kInf}, E(grid);
  S.insert(S.end(), grid.begin(), grid.end());
  E.push_back(kInf);
  const auto& bars = B.bars;
  double best = 0;
  for (double s : S) {
    for (double e : E) {
      if (!(e > s)) continue;
      std::size_t m = 0;
      double c = (std::isfinite(s) && std::isfinite(e)) ? (e - s) / 4 : kInf;
      for (const auto& b : bars) {
        if (b.birth <= s && b.death >= e) {
          ++m;
          continue;
        }
        // Smallest scale at which this bar starts to contain the shortened window.
        double t1 = b.birth <= s ? 0 : (b.birth - s) / 2;
        double t2 = b.death >= e ? 0 : (e - b.death) / 2;
        c = std::min(c, std::max(t1, t2));
      }
      if (m == k) best = std::max(best, c);
    }
  }
  return best;
}

Barcode normal_form_barcode(const ModuleRep& V) {
  const Field& f = V.field();
  const std::size_t n = V.num_cells();
  std::vector<std::vector<Vec>> W(n);
  auto basis = [&](std::size_t c) { return Matrix::from_columns(W[c], V.dims()[c], f); };
  Barcode out;
  for (;;) {
    std::size_t i = 0;
    while (i < n && W[i].size() == V.dims()[i]) ++i;
    if (i == n) break;
    Vec z;
    for (std::size_t t = 0; t < V.dims()[i]; ++t) {
      Vec e(V.dims()[i], 0);
      e[t] = 1;
      if (!in_span(e, basis(i))) {
        z = e;
        break;
      }
    }
    std::vector<Vec> pushed{z};
    std::size_t j = i + 1;
    for (; j < n; ++j) {
      pushed.push_back(V.maps()[j - 1] * pushed.back());
      if (in_span(pushed.back(), basis(j))) break;
    }
    std::vector<Vec> gens;
    if (j == n) {
      gens = pushed;
      out.bars.push_back(Bar{V.cell_lo(i), kInf, std::nullopt});
    } else {
      Matrix Wi = basis(i);
      Matrix img = V.transition(i, j) * Wi;
      auto lam = solve(img, pushed.back());
      if (!lam) fail_state("normal form: generator image not reachable from the submodule");
      Vec x = Wi * *lam, y(z.size());
      for (std::size_t t = 0; t < y.size(); ++t) y[t] = f.sub(z[t], x[t]);
      gens.push_back(y);
      for (std::size_t k = i + 1; k < j; ++k) gens.push_back(V.maps()[k - 1] * gens.back());
      out.bars.push_back(Bar{V.cell_lo(i), V.cell_lo(j), std::nullopt});
    }
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (in_span(gens[k], basis(i + k))) fail_state("normal form: generator is not independent");
      W[i + k].push_back(gens[k]);
    }
  }
  return out;
}

FilteredComplex random_complex(Rng& rng, std::size_t max_cells, int max_degree) {
  std::uniform_int_distribution<std::size_t> nv_dist(1, 6);
  const std::size_t nv = nv_dist(rng);
  std::set<std::vector<std::size_t>> all;
  for (std::size_t v = 0; v < nv && all.size() < max_cells; ++v) all.insert({v});
  std::uniform_int_distribution<int> dim_dist(1, std::max(1, max_degree));
  std::uniform_int_distribution<std::size_t> vert(0, nv - 1);
  for (int attempt = 0; attempt < 40 && nv > 1; ++attempt) {
    int d = std::min<int>(dim_dist(rng), static_cast<int>(nv) - 1);
    std::set<std::size_t> pick;
    while (pick.size() < static_cast<std::size_t>(d + 1)) pick.insert(vert(rng));
    std::vector<std::size_t> top(pick.begin(), pick.end());
    std::set<std::vector<std::size_t>> add = all;
    for (std::size_t mask = 1; mask < (std::size_t{1} << top.size()); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t t = 0; t < top.size(); ++t)
        if (mask >> t & 1) face.push_back(top[t]);
      add.insert(face);
    }
    if (add.size() <= max_cells) all = std::move(add);
  }
  std::vector<std::vector<std::size_t>> simplices(all.begin(), all.end());
  std::stable_sort(simplices.begin(), simplices.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  // Shuffle within each dimension so ties are met in varying orders.
  for (std::size_t a = 0; a < simplices.size();) {
    std::size_t b = a;
    while (b < simplices.size() && simplices[b].size() == simplices[a].size()) ++b;
    std::shuffle(simplices.begin() + a, simplices.begin() + b, rng);
    a = b;
  }
  std::uniform_int_distribution<int> val(0, 4);
  std::map<std::vector<std::size_t>, double> value;
  std::vector<double> values;
  for (const auto& s : simplices) {
    double u = val(rng);
    if (s.size() > 1)
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto face = s;
        face.erase(face.begin() + i);
        u = std::max(u, value.at(face));
      }
    value[s] = u;
    values.push_back(u);
  }
  return simplicial_complex(simplices, values);
}

bool morphism_allowed(const Bar& I, const Bar& J) {
  return J.birth <= I.birth && I.birth < J.death && J.death <= I.death;
}

ModuleMorphism bar_sum_morphism(const Barcode& B, const Barcode& C, const std::vector<std::vector<Scalar>>& phi,
                                Field f) {
  if (phi.size() != C.size()) fail_input("coefficient matrix needs one row per target bar");
  for (const auto& row : phi)
    if (row.size() != B.size()) fail_input("coefficient matrix needs one column per source bar");
  ModuleRep V = from_barcode(B, f), W = from_barcode(C, f);
  auto S = union_spectrum(V.spectrum(), W.spectrum());
  ModuleRep rV = refine(V, S), rW = refine(W, S);
  std::vector<Matrix> comps;
  for (std::size_t c = 0; c < rV.num_cells(); ++c) {
    auto src = bars_alive_in_cell(B, S, c), dst = bars_alive_in_cell(C, S, c);
    Matrix m(dst.size(), src.size(), f);
    for (std::size_t r = 0; r < dst.size(); ++r)
      for (std::size_t q = 0; q < src.size(); ++q) {
        Scalar v = phi[dst[r]][src[q]] % f.p();
        if (v != 0 && !morphism_allowed(B[src[q]], C[dst[r]])) fail_input("coefficient on a pair with no morphism");
        m(r, q) = v;
      }
    comps.push_back(m);
  }
  return ModuleMorphism(rV, rW, comps);
}

std::vector<std::vector<Scalar>> random_allowed_coefficients(const Barcode& B, const Barcode& C, Rng& rng, Field f,
                                                             double density) {
  std::uniform_real_distribution<double> P(0, 1);
  std::uniform_int_distribution<Scalar> val(1, f.p() - 1);
  std::vector<std::vector<Scalar>> phi(C.size(), std::vector<Scalar>(B.size(), 0));
  for (std::size_t j = 0; j < C.size(); ++j)
    for (std::size_t i = 0; i < B.size(); ++i)
      if (morphism_allowed(B[i], C[j]) && P(rng) < density) phi[j][i] = val(rng);
  return phi;
}

namespace {

bool precedes(const Barcode& B, std::size_t a, std::size_t b) {
  if (B[a].birth != B[b].birth) return B[a].birth < B[b].birth;
  if (B[a].death != B[b].death) return B[a].death < B[b].death;
  return a < b;
}

std::vector<std::vector<Scalar>> unitriangular(const Barcode& B, Rng& rng, Field f) {
  std::uniform_real_distribution<double> P(0, 1);
  std::uniform_int_distribution<Scalar> val(1, f.p() - 1);
  std::vector<std::vector<Scalar>> phi(B.size(), std::vector<Scalar>(B.size(), 0));
  for (std::size_t i = 0; i < B.size(); ++i) {
    phi[i][i] = 1;
    for (std::size_t j = 0; j < B.size(); ++j)
      if (j != i && precedes(B, j, i) && morphism_allowed(B[i], B[j]) && P(rng) < 0.5) phi[j][i] = val(rng);
  }
  return phi;
}

}  // namespace

ModuleMorphism random_automorphism(const Barcode& B, Rng& rng, Field f) {
  return bar_sum_morphism(B, B, unitriangular(B, rng, f), f);
}

namespace {

Barcode child_bars(const Barcode& parent, Rng& rng, bool move_birth, std::vector<std::size_t>& origin) {
  std::uniform_real_distribution<double> P(0, 1);
  Barcode child;
  origin.clear();
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (P(rng) < 0.3) continue;
    Bar b = parent[i];
    double top = std::isfinite(b.death) ? b.death : b.birth + 2;
    int steps = static_cast<int>(std::round((top - b.birth) / 0.5));
    int k = std::uniform_int_distribution<int>(0, std::max(0, steps - 1))(rng);
    if (move_birth) b.birth += 0.5 * k;
    else if (std::isfinite(b.death)) b.death -= 0.5 * k;
    else if (P(rng) < 0.5) b.death = b.birth + 0.5 * (k + 1);
    child.bars.push_back(b);
    origin.push_back(i);
  }
  return child;
}

}  // namespace

ComposablePair random_injections(Rng& rng, Field f) {
  BarcodeShape shape{5, 0, 4, 0.5, 0.3, 0, -1, false};
  for (;;) {
    Barcode W = random_barcode(rng, shape);
    std::vector<std::size_t> ov, ou;
    Barcode V = child_bars(W, rng, true, ov);
    Barcode U = child_bars(V, rng, true, ou);
    auto g_phi = random_allowed_coefficients(V, W, rng, f, 0.3);
    for (std::size_t i = 0; i < V.size(); ++i) g_phi[ov[i]][i] = 1;
    auto f_phi = random_allowed_coefficients(U, V, rng, f, 0.3);
    for (std::size_t i = 0; i < U.size(); ++i) f_phi[ou[i]][i] = 1;
    ModuleMorphism fm = bar_sum_morphism(U, V, f_phi, f), gm = bar_sum_morphism(V, W, g_phi, f);
    if (is_injective(fm) && is_injective(gm)) return {fm, gm};
  }
}

ComposablePair random_surjections(Rng& rng, Field f) {
  BarcodeShape shape{5, 0, 4, 0.5, 0.3, 0, -1, false};
  for (;;) {
    Barcode U = random_barcode(rng, shape);
    std::vector<std::size_t> ov, ow;
    Barcode V = child_bars(U, rng, false, ov);
    Barcode W = child_bars(V, rng, false, ow);
    auto f_phi = random_allowed_coefficients(U, V, rng, f, 0.3);
    for (std::size_t j = 0; j < V.size(); ++j) f_phi[j][ov[j]] = 1;
    auto g_phi = random_allowed_coefficients(V, W, rng, f, 0.3);
    for (std::size_t j = 0; j < W.size(); ++j) g_phi[j][ow[j]] = 1;
    ModuleMorphism fm = bar_sum_morphism(U, V, f_phi, f), gm = bar_sum_morphism(V, W, g_phi, f);
    if (is_surjective(fm) && is_surjective(gm)) return {fm, gm};
  }
}

namespace {

ModuleRepWithAction block_action(const Barcode& B, std::size_t order, const std::vector<std::vector<Scalar>>& dense,
                                 Rng& rng, Field f) {
  ModuleMorphism rho = bar_sum_morphism(B, B, dense, f);
  ModuleMorphism phi = random_automorphism(B, rng, f);
  ModuleRepWithAction R{rho.source(), order, rho.components()};
  return conjugate(R, phi.components());
}

}  // namespace

ModuleRepWithAction random_involution(const Barcode& B, Rng& rng, Field f) {
  std::vector<std::vector<Scalar>> d(B.size(), std::vector<Scalar>(B.size(), 0));
  for (std::size_t i = 0; i < B.size(); ++i) d[i][i] = (rng() & 1) ? 1 : f.p() - 1;
  return block_action(B, 2, d, rng, f);
}

ModuleRepWithAction random_order4(Rng& rng, Field f, std::size_t max_pairs, std::size_t max_singles) {
  BarcodeShape shape{std::max<std::size_t>(max_pairs, 1), 0, 4, 0.5, 0.2, 0, -1, false};
  Barcode P = random_barcode(rng, shape);
  while (P.size() > max_pairs) P.bars.pop_back();
  shape.allow_empty = true;
  shape.max_bars = max_singles;
  Barcode S = random_barcode(rng, shape);
  Barcode B;
  for (const auto& b : P.bars) B.bars.insert(B.bars.end(), {b, b});
  for (const auto& b : S.bars) B.bars.push_back(b);
  std::vector<Scalar> roots;
  for (Scalar x = 1; x < f.p(); ++x)
    if (f.pow(x, 4) == 1) roots.push_back(x);
  std::vector<std::vector<Scalar>> d(B.size(), std::vector<Scalar>(B.size(), 0));
  for (std::size_t i = 0; i < 2 * P.size(); i += 2) {
    d[i][i + 1] = f.p() - 1;
    d[i + 1][i] = 1;
  }
  for (std::size_t i = 2 * P.size(); i < B.size(); ++i) d[i][i] = roots[rng() % roots.size()];
  return block_action(B, 4, d, rng, f);
}

TreeSample random_tree_net(Rng& rng, std::size_t edges, double spacing) {
  std::uniform_real_distribution<double> len(0.5, 2.0);
  // Points on the subdivided tree; adjacency with segment lengths.
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(edges + 1);
  double radius = 0;
  for (std::size_t v = 1; v <= edges; ++v) {
    std::size_t parent = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    double L = len(rng);
    std::size_t pieces = static_cast<std::size_t>(std::ceil(L / spacing));
    double seg = L / static_cast<double>(pieces);
    radius = std::max(radius, seg / 2);
    std::size_t prev = parent;
    for (std::size_t k = 1; k < pieces; ++k) {
      adj.emplace_back();
      std::size_t p = adj.size() - 1;
      adj[prev].emplace_back(p, seg);
      adj[p].emplace_back(prev, seg);
      prev = p;
    }
    adj[prev].emplace_back(v, seg);
    adj[v].emplace_back(prev, seg);
  }
  const std::size_t n = adj.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    std::vector<char> seen(n, 0);
    seen[s] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (auto [w, l] : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          d[s][w] = d[s][u] + l;
          stack.push_back(w);
        }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) d[i][j] = d[j][i] = std::max(d[i][j], d[j][i]);
  return {FiniteMetricSpace(std::move(d)), radius};
}

}  // namespace persist::oracle
