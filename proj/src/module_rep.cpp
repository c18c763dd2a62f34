#include "persist/module_rep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace persist {

ModuleRep::ModuleRep(std::vector<double> spectrum, std::vector<std::size_t> dims, std::vector<Matrix> maps, Field f)
    : spectrum_(std::move(spectrum)), dims_(std::move(dims)), maps_(std::move(maps)), field_(f) {
  for (std::size_t i = 0; i < spectrum_.size(); ++i) {
    if (!std::isfinite(spectrum_[i])) fail_input("spectrum values must be finite");
    if (i && !(spectrum_[i - 1] < spectrum_[i])) fail_input("spectrum must be strictly increasing");
  }
  if (dims_.size() != spectrum_.size() + 1) fail_input("module needs one dimension per spectral cell");
  if (maps_.size() != spectrum_.size()) fail_input("module needs one map per spectral point");
  for (std::size_t c = 0; c < maps_.size(); ++c) {
    require_same_field(maps_[c].field(), field_);
    if (maps_[c].rows() != dims_[c + 1] || maps_[c].cols() != dims_[c])
      fail_input("map " + std::to_string(c) + " has the wrong shape");
  }
}

ModuleRep ModuleRep::zero(Field f) { return ModuleRep({}, {0}, {}, f); }

std::size_t ModuleRep::cell_of(double t) const {
  return static_cast<std::size_t>(std::lower_bound(spectrum_.begin(), spectrum_.end(), t) - spectrum_.begin());
}

double ModuleRep::cell_lo(std::size_t c) const { return c == 0 ? -kInf : spectrum_[c - 1]; }
double ModuleRep::cell_hi(std::size_t c) const { return c == spectrum_.size() ? kInf : spectrum_[c]; }

Matrix ModuleRep::transition(std::size_t from, std::size_t to) const {
  if (from > to || to >= num_cells()) fail_input("transition indices out of order");
  Matrix m = Matrix::identity(dims_[from], field_);
  for (std::size_t c = from; c < to; ++c) m = maps_[c] * m;
  return m;
}

std::size_t ModuleRep::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims_) s += d;
  return s;
}

bool ModuleRep::operator==(const ModuleRep& o) const {
  return field_ == o.field_ && spectrum_ == o.spectrum_ && dims_ == o.dims_ && maps_ == o.maps_;
}

std::vector<double> union_spectrum(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

// For each cell of the refined spectrum, the cell of V containing it.
static std::vector<std::size_t> parent_cells(const ModuleRep& V, const std::vector<double>& S) {
  for (double a : V.spectrum())
    if (!std::binary_search(S.begin(), S.end(), a)) fail_input("refinement must contain the original spectrum");
  std::vector<std::size_t> parent(S.size() + 1);
  for (std::size_t r = 0; r <= S.size(); ++r) parent[r] = V.cell_of(r < S.size() ? S[r] : kInf);
  return parent;
}

ModuleRep refine(const ModuleRep& V, const std::vector<double>& S) {
  if (S == V.spectrum()) return V;
  auto parent = parent_cells(V, S);
  std::vector<std::size_t> dims(S.size() + 1);
  std::vector<Matrix> maps;
  for (std::size_t r = 0; r <= S.size(); ++r) dims[r] = V.dims()[parent[r]];
  for (std::size_t r = 0; r < S.size(); ++r) {
    if (parent[r] == parent[r + 1]) maps.push_back(Matrix::identity(dims[r], V.field()));
    else maps.push_back(V.maps()[parent[r]]);
  }
  return ModuleRep(S, dims, maps, V.field());
}

std::pair<ModuleRep, ModuleRep> refine_spectra(const ModuleRep& V, const ModuleRep& W) {
  require_same_field(V.field(), W.field());
  auto S = union_spectrum(V.spectrum(), W.spectrum());
  return {refine(V, S), refine(W, S)};
}

std::vector<std::size_t> bars_alive_in_cell(const Barcode& B, const std::vector<double>& spectrum, std::size_t c) {
  double lo = c == 0 ? -kInf : spectrum[c - 1];
  double hi = c == spectrum.size() ? kInf : spectrum[c];
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (B[i].birth <= lo && B[i].death >= hi) alive.push_back(i);
  return alive;
}

ModuleRep from_barcode(const Barcode& B, Field f) {
  std::vector<double> S;
  for (const auto& b : B.bars) {
    if (std::isfinite(b.birth)) S.push_back(b.birth);
    if (std::isfinite(b.death)) S.push_back(b.death);
  }
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  std::vector<std::vector<std::size_t>> alive(S.size() + 1);
  std::vector<std::size_t> dims(S.size() + 1);
  for (std::size_t c = 0; c <= S.size(); ++c) {
    alive[c] = bars_alive_in_cell(B, S, c);
    dims[c] = alive[c].size();
  }
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c < S.size(); ++c) {
    Matrix m(dims[c + 1], dims[c], f);
    std::size_t r = 0;
    for (std::size_t k = 0; k < alive[c].size(); ++k) {
      while (r < alive[c + 1].size() && alive[c + 1][r] < alive[c][k]) ++r;
      if (r < alive[c + 1].size() && alive[c + 1][r] == alive[c][k]) m(r, k) = 1;
    }
    maps.push_back(std::move(m));
  }
  return ModuleRep(S, dims, maps, f);
}

static void fill_rank_row(const ModuleRep& V, std::size_t i, RankTable& t) {
  Matrix m = Matrix::identity(V.dims()[i], V.field());
  for (std::size_t j = i; j < V.num_cells(); ++j) {
    if (j > i) m = V.maps()[j - 1] * m;
    t.at(i, j) = rank(m);
  }
}

RankTable rank_table(const ModuleRep& V) {
  RankTable t(V.num_cells());
  const long n = static_cast<long>(V.num_cells());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) fill_rank_row(V, static_cast<std::size_t>(i), t);
  return t;
}

namespace serial {
RankTable rank_table(const ModuleRep& V) {
  RankTable t(V.num_cells());
  for (std::size_t i = 0; i < V.num_cells(); ++i) fill_rank_row(V, i, t);
  return t;
}
}  // namespace serial

std::size_t rank_invariant(const ModuleRep& V, long i, long j) {
  long n = static_cast<long>(V.num_cells());
  if (i < 1 || j > n || i > j) return 0;
  return rank(V.transition(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)));
}

Barcode barcode_from_ranks(const ModuleRep& V, const RankTable& r) {
  const long n = static_cast<long>(V.num_cells());
  auto R = [&](long i, long j) -> long {
    if (i < 0 || j >= n || i > j) return 0;
    return static_cast<long>(r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  };
  Barcode B;
  for (long x = 0; x < n; ++x)
    for (long y = x; y < n; ++y) {
      long m = R(x, y) - R(x - 1, y) - R(x, y + 1) + R(x - 1, y + 1);
      if (m < 0) fail_state("negative bar multiplicity: inconsistent module");
      if (m == 0) continue;
      double birth = V.cell_lo(static_cast<std::size_t>(x));
      double death = V.cell_hi(static_cast<std::size_t>(y));
      for (long k = 0; k < m; ++k) B.bars.push_back(Bar{birth, death, std::nullopt});
    }
  return B;
}

Barcode barcode(const ModuleRep& V) { return barcode_from_ranks(V, rank_table(V)); }

ModuleRep shift(const ModuleRep& V, double delta) {
  std::vector<double> S = V.spectrum();
  for (auto& a : S) a -= delta;
  return ModuleRep(S, V.dims(), V.maps(), V.field());
}

static Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

ModuleRep direct_sum(const ModuleRep& V, const ModuleRep& W) {
  auto [v, w] = refine_spectra(V, W);
  std::vector<std::size_t> dims(v.num_cells());
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c < v.num_cells(); ++c) dims[c] = v.dims()[c] + w.dims()[c];
  for (std::size_t c = 0; c + 1 < v.num_cells(); ++c) maps.push_back(block_diag(v.maps()[c], w.maps()[c]));
  return ModuleRep(v.spectrum(), dims, maps, v.field());
}

ModuleRep truncate(const ModuleRep& V, const Bar& I) {
  std::vector<double> extra;
  if (std::isfinite(I.birth)) extra.push_back(I.birth);
  if (std::isfinite(I.death)) extra.push_back(I.death);
  std::sort(extra.begin(), extra.end());
  ModuleRep R = refine(V, union_spectrum(V.spectrum(), extra));
  std::vector<bool> keep(R.num_cells());
  std::vector<std::size_t> dims(R.num_cells());
  for (std::size_t c = 0; c < R.num_cells(); ++c) {
    keep[c] = R.cell_lo(c) >= I.birth && R.cell_hi(c) <= I.death;
    dims[c] = keep[c] ? R.dims()[c] : 0;
  }
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c + 1 < R.num_cells(); ++c) {
    if (keep[c] && keep[c + 1]) maps.push_back(R.maps()[c]);
    else maps.emplace_back(dims[c + 1], dims[c], R.field());
  }
  return ModuleRep(R.spectrum(), dims, maps, R.field());
}

ModuleMorphism::ModuleMorphism(ModuleRep source, ModuleRep target, std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  require_same_field(source_.field(), target_.field());
  if (source_.spectrum() != target_.spectrum()) fail_input("morphism requires a shared spectrum");
  if (components_.size() != source_.num_cells()) fail_input("morphism needs one component per cell");
  for (std::size_t c = 0; c < components_.size(); ++c)
    if (components_[c].rows() != target_.dims()[c] || components_[c].cols() != source_.dims()[c])
      fail_input("morphism component " + std::to_string(c) + " has the wrong shape");
  for (std::size_t c = 0; c + 1 < components_.size(); ++c)
    if (components_[c + 1] * source_.maps()[c] != target_.maps()[c] * components_[c])
      fail_input("invalid morphism: square " + std::to_string(c) + " does not commute");
}

ModuleMorphism refine(const ModuleMorphism& f, const std::vector<double>& S) {
  if (S == f.source().spectrum()) return f;
  auto parent = parent_cells(f.source(), S);
  std::vector<Matrix> comps;
  for (std::size_t r = 0; r <= S.size(); ++r) comps.push_back(f.components()[parent[r]]);
  return ModuleMorphism(refine(f.source(), S), refine(f.target(), S), comps);
}

ModuleMorphism identity_morphism(const ModuleRep& V) {
  std::vector<Matrix> comps;
  for (auto d : V.dims()) comps.push_back(Matrix::identity(d, V.field()));
  return ModuleMorphism(V, V, comps);
}

ModuleMorphism zero_morphism(const ModuleRep& V, const ModuleRep& W) {
  auto [v, w] = refine_spectra(V, W);
  std::vector<Matrix> comps;
  for (std::size_t c = 0; c < v.num_cells(); ++c) comps.emplace_back(w.dims()[c], v.dims()[c], v.field());
  return ModuleMorphism(v, w, comps);
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  auto S = union_spectrum(f.source().spectrum(), g.source().spectrum());
  ModuleMorphism ff = refine(f, S), gg = refine(g, S);
  if (!(ff.target() == gg.source())) fail_input("morphisms are not composable");
  std::vector<Matrix> comps;
  for (std::size_t c = 0; c < ff.components().size(); ++c) comps.push_back(gg.components()[c] * ff.components()[c]);
  return ModuleMorphism(ff.source(), gg.target(), comps);
}

ModuleMorphism shift(const ModuleMorphism& f, double delta) {
  return ModuleMorphism(shift(f.source(), delta), shift(f.target(), delta), f.components());
}

ModuleMorphism persistence_morphism(const ModuleRep& V, const ModuleRep& W) {
  if (V.dims() != W.dims() || V.maps() != W.maps()) fail_input("persistence morphism needs a shifted copy");
  for (std::size_t i = 0; i < V.spectrum().size(); ++i)
    if (W.spectrum()[i] > V.spectrum()[i]) fail_input("persistence morphism needs a non-negative shift");
  auto S = union_spectrum(V.spectrum(), W.spectrum());
  std::vector<Matrix> comps;
  for (std::size_t r = 0; r <= S.size(); ++r) {
    double t = r < S.size() ? S[r] : kInf;
    comps.push_back(V.transition(V.cell_of(t), W.cell_of(t)));
  }
  return ModuleMorphism(refine(V, S), refine(W, S), comps);
}

ModuleMorphism shift_morphism(const ModuleRep& V, double eps) { return persistence_morphism(V, shift(V, eps)); }

bool equal(const ModuleMorphism& f, const ModuleMorphism& g) {
  auto S = union_spectrum(f.source().spectrum(), g.source().spectrum());
  ModuleMorphism a = refine(f, S), b = refine(g, S);
  return a.source() == b.source() && a.target() == b.target() && a.components() == b.components();
}

bool is_injective(const ModuleMorphism& f) {
  for (const auto& m : f.components())
    if (rank(m) != m.cols()) return false;
  return true;
}

bool is_surjective(const ModuleMorphism& f) {
  for (const auto& m : f.components())
    if (rank(m) != m.rows()) return false;
  return true;
}

// Submodule spanned slice-wise by the columns of basis[c] inside M.
static ModuleRep submodule(const ModuleRep& M, const std::vector<Matrix>& basis) {
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  for (const auto& b : basis) dims.push_back(b.cols());
  for (std::size_t c = 0; c + 1 < basis.size(); ++c)
    maps.push_back(solve_in_basis(basis[c + 1], M.maps()[c] * basis[c]));
  return ModuleRep(M.spectrum(), dims, maps, M.field());
}

ModuleRep kernel(const ModuleMorphism& f) {
  std::vector<Matrix> basis;
  for (const auto& m : f.components()) basis.push_back(kernel_basis(m));
  return submodule(f.source(), basis);
}

ModuleRep image(const ModuleMorphism& f) {
  std::vector<Matrix> basis;
  for (const auto& m : f.components()) basis.push_back(column_basis(m));
  return submodule(f.target(), basis);
}

namespace {

// Bars grouped by one endpoint, each group ordered longest first (ties by index).
std::map<double, std::vector<std::size_t>> group_longest_first(const Barcode& B, bool by_death) {
  std::map<double, std::vector<std::size_t>> g;
  for (std::size_t i = 0; i < B.size(); ++i) g[by_death ? B[i].death : B[i].birth].push_back(i);
  for (auto& [key, idx] : g)
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return by_death ? B[a].birth < B[b].birth : B[a].death > B[b].death;
    });
  return g;
}

}  // namespace

Matching induced_matching_inj(const Barcode& B, const Barcode& C) {
  auto gb = group_longest_first(B, true), gc = group_longest_first(C, true);
  Matching m;
  for (const auto& [d, ib] : gb) {
    auto it = gc.find(d);
    std::size_t avail = it == gc.end() ? 0 : it->second.size();
    if (ib.size() > avail) fail_input("no injection witness: too few target bars ending at " + std::to_string(d));
    for (std::size_t k = 0; k < ib.size(); ++k) {
      std::size_t j = it->second[k];
      if (C[j].birth > B[ib[k]].birth) fail_input("no injection witness: target bar born too late");
      m.pairs.emplace_back(ib[k], j);
    }
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

Matching induced_matching_sur(const Barcode& B, const Barcode& C) {
  auto gb = group_longest_first(B, false), gc = group_longest_first(C, false);
  Matching m;
  for (const auto& [b, ic] : gc) {
    auto it = gb.find(b);
    std::size_t avail = it == gb.end() ? 0 : it->second.size();
    if (ic.size() > avail) fail_input("no surjection witness: too few source bars starting at " + std::to_string(b));
    for (std::size_t k = 0; k < ic.size(); ++k) {
      std::size_t i = it->second[k];
      if (C[ic[k]].death > B[i].death) fail_input("no surjection witness: target bar dies too late");
      m.pairs.emplace_back(i, ic[k]);
    }
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

Matching compose_matchings(const Matching& second, const Matching& first) {
  std::map<std::size_t, std::size_t> next(second.pairs.begin(), second.pairs.end());
  Matching m;
  for (auto [i, k] : first.pairs) {
    auto it = next.find(k);
    if (it != next.end()) m.pairs.emplace_back(i, it->second);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

Matching induced_matching(const ModuleMorphism& f) {
  Barcode bv = barcode(f.source()), bw = barcode(f.target()), bi = barcode(image(f));
  return compose_matchings(induced_matching_inj(bi, bw), induced_matching_sur(bv, bi));
}

static ModuleMorphism matching_morphism(const Barcode& B, const Barcode& C, const Matching& M, double delta,
                                        Field f, bool forward) {
  ModuleRep V = from_barcode(B, f);
  ModuleRep W = from_barcode(C, f);
  ModuleRep Wd = shift(W, delta);
  auto S = union_spectrum(V.spectrum(), Wd.spectrum());
  std::map<std::size_t, std::size_t> partner;
  for (auto [i, j] : M.pairs) {
    if (forward) partner[i] = j;
    else partner[j] = i;
  }
  std::vector<Matrix> comps;
  for (std::size_t r = 0; r <= S.size(); ++r) {
    double t = r < S.size() ? S[r] : kInf;
    auto src = bars_alive_in_cell(B, V.spectrum(), V.cell_of(t));
    auto dst = bars_alive_in_cell(C, W.spectrum(), Wd.cell_of(t));
    Matrix m(dst.size(), src.size(), f);
    for (std::size_t k = 0; k < src.size(); ++k) {
      auto it = partner.find(src[k]);
      if (it == partner.end()) continue;
      auto pos = std::lower_bound(dst.begin(), dst.end(), it->second);
      if (pos != dst.end() && *pos == it->second) m(static_cast<std::size_t>(pos - dst.begin()), k) = 1;
    }
    comps.push_back(std::move(m));
  }
  return ModuleMorphism(refine(V, S), refine(Wd, S), comps);
}

std::pair<ModuleMorphism, ModuleMorphism> interleaving_from_matching(const Barcode& B, const Barcode& C,
                                                                     const Matching& M, double delta, Field f) {
  if (!is_delta_matching(B, C, M, delta)) fail_input("interleaving needs a delta-matching");
  return {matching_morphism(B, C, M, delta, f, true), matching_morphism(C, B, M, delta, f, false)};
}

bool verify_interleaving(const ModuleMorphism& F, const ModuleMorphism& G, double delta) {
  try {
    bool a = equal(compose(shift(G, delta), F), shift_morphism(F.source(), 2 * delta));
    bool b = equal(compose(shift(F, delta), G), shift_morphism(G.source(), 2 * delta));
    return a && b;
  } catch (const Error&) {
    return false;
  }
}

double interleaving_distance(const ModuleRep& V, const ModuleRep& W) {
  return bottleneck_distance(barcode(V), barcode(W));
}

double characteristic_exponent(const ModuleRep& V, const Vec& v) {
  const std::size_t last = V.last_cell();
  if (v.size() != V.dims()[last]) fail_input("vector is not in the limit space");
  for (std::size_t i = 0; i <= last; ++i)
    if (in_span(v, V.transition(i, last))) return V.cell_lo(i);
  fail_state("limit vector outside every image");
}

std::vector<double> characteristic_spectrum(const ModuleRep& V) {
  const std::size_t last = V.last_cell();
  std::vector<double> out;
  std::size_t prev = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    std::size_t r = rank(V.transition(i, last));
    for (std::size_t k = prev; k < r; ++k) out.push_back(V.cell_lo(i));
    prev = r;
  }
  return out;
}

}  // namespace persist
