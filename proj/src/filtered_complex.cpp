#include "persist/filtered_complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace persist {

std::size_t FilteredComplex::add_cell(std::string id, int degree, double value,
                                      std::vector<std::pair<std::size_t, long long>> boundary,
                                      std::vector<std::size_t> vertices) {
  if (degree < 0) fail_input("cell degree must be non-negative");
  if (!std::isfinite(value)) fail_input("cell filtration value must be finite");
  if (ids_.count(id)) fail_input("duplicate cell id '" + id + "'");
  for (auto& [c, coeff] : boundary) {
    (void)coeff;
    if (c >= cells_.size()) fail_input("boundary of '" + id + "' references an unknown cell");
  }
  std::size_t idx = cells_.size();
  ids_.emplace(id, idx);
  cells_.push_back(Cell{std::move(id), degree, value, std::move(boundary), std::move(vertices)});
  return idx;
}

int FilteredComplex::max_degree() const {
  int d = -1;
  for (const auto& c : cells_) d = std::max(d, c.degree);
  return d;
}

std::size_t FilteredComplex::index_of(const std::string& id) const {
  auto it = ids_.find(id);
  if (it == ids_.end()) fail_input("unknown cell id '" + id + "'");
  return it->second;
}

std::vector<std::size_t> FilteredComplex::sorted_cells(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].degree == k) out.push_back(i);
  std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return cells_[a].value < cells_[b].value; });
  return out;
}

void FilteredComplex::validate(Field f) const {
  for (const auto& c : cells_)
    for (auto [b, coeff] : c.boundary) {
      (void)coeff;
      const Cell& d = cells_[b];
      if (d.degree != c.degree - 1) fail_input("boundary of '" + c.id + "' is not one degree lower");
      if (d.value > c.value) fail_input("boundary of '" + c.id + "' enters later in the filtration");
    }
  for (const auto& c : cells_) {
    std::map<std::size_t, Scalar> dd;
    for (auto [b, coeff] : c.boundary) {
      Scalar x = f.from_int(coeff);
      for (auto [bb, cc] : cells_[b].boundary) dd[bb] = f.add(dd[bb], f.mul(x, f.from_int(cc)));
    }
    for (auto& [k, v] : dd)
      if (v != 0) fail_input("boundary of '" + c.id + "' is not a cycle: d^2 != 0");
  }
}

namespace {

// Dense scratch vector with a touched list; used as a sparse accumulator.
class Accumulator {
 public:
  explicit Accumulator(std::size_t n, const Field& f) : v_(n, 0), mark_(n, false), f_(f) {}
  void axpy(Scalar q, const SparseVec& x, std::priority_queue<std::uint32_t>* heap = nullptr) {
    for (auto [i, c] : x) {
      touch(i);
      v_[i] = f_.add(v_[i], f_.mul(q, c));
      if (heap) heap->push(i);
    }
  }
  void add(std::uint32_t i, Scalar c) { touch(i); v_[i] = f_.add(v_[i], c); }
  Scalar operator[](std::uint32_t i) const { return v_[i]; }
  SparseVec take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec out;
    for (auto i : touched_) {
      if (v_[i]) out.emplace_back(i, v_[i]);
      v_[i] = 0;
      mark_[i] = false;
    }
    touched_.clear();
    return out;
  }
  void clear() { take(); }

 private:
  void touch(std::uint32_t i) {
    if (!mark_[i]) { mark_[i] = true; touched_.push_back(i); }
  }
  std::vector<Scalar> v_;
  std::vector<bool> mark_;
  std::vector<std::uint32_t> touched_;
  const Field& f_;
};

struct Local {
  int degree;
  std::uint32_t index;
};

std::vector<Local> local_indices(const FilteredComplex& C, std::vector<DegreeBlock>& blocks) {
  std::vector<Local> loc(C.size());
  for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
    blocks[k].cells = C.sorted_cells(k);
    for (std::size_t i = 0; i < blocks[k].cells.size(); ++i) loc[blocks[k].cells[i]] = {k, static_cast<std::uint32_t>(i)};
  }
  return loc;
}

SparseVec boundary_vector(const FilteredComplex& C, std::size_t cell, const std::vector<Local>& loc, const Field& f) {
  std::map<std::uint32_t, Scalar> acc;
  for (auto [b, coeff] : C.cell(cell).boundary) acc[loc[b].index] = f.add(acc[loc[b].index], f.from_int(coeff));
  SparseVec out;
  for (auto [i, c] : acc)
    if (c) out.emplace_back(i, c);
  return out;
}

}  // namespace

JordanPairing barannikov_reduce(const FilteredComplex& C, Field f) {
  C.validate(f);
  JordanPairing J;
  J.field = f;
  J.blocks.resize(static_cast<std::size_t>(std::max(0, C.max_degree() + 1)));
  auto loc = local_indices(C, J.blocks);
  for (auto& b : J.blocks) {
    std::size_t m = b.cells.size();
    b.basis.resize(m);
    b.pair_down.assign(m, -1);
    b.pair_up.assign(m, -1);
    for (std::size_t i = 0; i < m; ++i) b.basis[i] = {{static_cast<std::uint32_t>(i), 1}};
  }
  for (std::size_t k = 1; k < J.blocks.size(); ++k) {
    DegreeBlock& lower = J.blocks[k - 1];
    DegreeBlock& upper = J.blocks[k];
    Accumulator r(lower.cells.size(), f), g(lower.cells.size(), f), chain(upper.cells.size(), f);
    for (std::size_t i = 0; i < upper.cells.size(); ++i) {
      std::priority_queue<std::uint32_t> heap;
      r.axpy(1, boundary_vector(C, upper.cells[i], loc, f), &heap);
      chain.add(static_cast<std::uint32_t>(i), 1);
      long n = -1;
      while (!heap.empty()) {
        std::uint32_t m = heap.top();
        heap.pop();
        if (r[m] == 0) continue;
        const SparseVec& fm = lower.basis[m];
        Scalar q = f.mul(r[m], f.inv(fm.back().second));
        r.axpy(f.neg(q), fm, &heap);
        if (lower.pair_down[m] >= 0) fail_input("not a chain complex: boundary decomposition meets a non-cycle");
        if (lower.pair_up[m] >= 0) {
          chain.axpy(f.neg(q), upper.basis[static_cast<std::size_t>(lower.pair_up[m])]);
        } else {
          g.axpy(q, fm);
          if (n < 0) n = m;
        }
      }
      r.clear();
      upper.basis[i] = chain.take();
      SparseVec gv = g.take();
      if (n >= 0) {
        upper.pair_down[i] = n;
        lower.pair_up[static_cast<std::size_t>(n)] = static_cast<long>(i);
        lower.basis[static_cast<std::size_t>(n)] = std::move(gv);
      }
    }
  }
  return J;
}

bool verify_jordan(const FilteredComplex& C, const JordanPairing& J) {
  const Field& f = J.field;
  std::vector<DegreeBlock> blocks(J.blocks.size());
  auto loc = local_indices(C, blocks);
  for (std::size_t k = 0; k < J.blocks.size(); ++k) {
    const DegreeBlock& b = J.blocks[k];
    if (b.cells != blocks[k].cells) return false;
    for (std::size_t i = 0; i < b.cells.size(); ++i) {
      const SparseVec& v = b.basis[i];
      if (v.empty() || v.back().first != i || v.back().second == 0) return false;
      std::map<std::uint32_t, Scalar> d;
      for (auto [j, c] : v)
        for (auto [bj, bc] : boundary_vector(C, b.cells[j], loc, f)) d[bj] = f.add(d[bj], f.mul(c, bc));
      SparseVec dv;
      for (auto [j, c] : d)
        if (c) dv.emplace_back(j, c);
      if (b.pair_down[i] >= 0) {
        if (k == 0 || dv != J.blocks[k - 1].basis[static_cast<std::size_t>(b.pair_down[i])]) return false;
      } else if (!dv.empty()) {
        return false;
      }
    }
  }
  return true;
}

Barcode barcode_of_jordan(const FilteredComplex& C, const JordanPairing& J) {
  Barcode B;
  for (std::size_t k = 0; k < J.blocks.size(); ++k) {
    const DegreeBlock& b = J.blocks[k];
    for (std::size_t i = 0; i < b.cells.size(); ++i) {
      double u = C.cell(b.cells[i]).value;
      if (b.pair_down[i] >= 0) {
        double birth = C.cell(J.blocks[k - 1].cells[static_cast<std::size_t>(b.pair_down[i])]).value;
        if (birth < u) B.bars.push_back(Bar{birth, u, static_cast<int>(k) - 1});
      } else if (b.pair_up[i] < 0) {
        B.bars.push_back(Bar{u, kInf, static_cast<int>(k)});
      }
    }
  }
  return B.sorted();
}

Barcode barcode_of_complex(const FilteredComplex& C, Field f) { return barcode_of_jordan(C, barannikov_reduce(C, f)); }

namespace {

// Dense boundary matrix from degree-k cells (columns) to degree-(k-1) cells
// (rows), both in sorted order.
Matrix dense_boundary(const FilteredComplex& C, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols, Field f) {
  std::unordered_map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]] = i;
  Matrix m(rows.size(), cols.size(), f);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto [b, coeff] : C.cell(cols[j]).boundary) m(pos.at(b), j) = f.add(m(pos.at(b), j), f.from_int(coeff));
  return m;
}

std::vector<std::size_t> cols_up_to(const FilteredComplex& C, const std::vector<std::size_t>& cells, double w) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < cells.size(); ++j)
    if (C.cell(cells[j]).value <= w) idx.push_back(j);
  return idx;
}

}  // namespace

double boundary_depth_usher(const FilteredComplex& C, Field f) {
  C.validate(f);
  double depth = 0;
  for (int k = 0; k < C.max_degree(); ++k) {
    auto lo = C.sorted_cells(k), hi = C.sorted_cells(k + 1);
    Matrix A = dense_boundary(C, lo, hi, f);
    std::vector<double> levels;
    for (auto c : hi) levels.push_back(C.cell(c).value);
    std::vector<double> lambdas;
    for (auto c : lo) lambdas.push_back(C.cell(c).value);
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    for (double v : lambdas) {
      std::vector<std::size_t> outside;
      for (std::size_t i = 0; i < lo.size(); ++i)
        if (C.cell(lo[i]).value > v) outside.push_back(i);
      Matrix X = A * kernel_basis(A.select_rows(outside));
      if (rank(X) == 0) continue;
      std::vector<double> ws{v};
      for (double w : levels)
        if (w > v) ws.push_back(w);
      for (double w : ws) {
        Matrix Aw = A.select_columns(cols_up_to(C, hi, w));
        if (rank(Aw.hstack(X)) == rank(Aw)) {
          depth = std::max(depth, w - v);
          break;
        }
      }
    }
  }
  return depth;
}

namespace {

struct SliceInput {
  std::vector<std::size_t> lo, mid, hi;  // degree k-1, k, k+1 cells sorted
  Matrix dk, dk1;                        // d_k: mid -> lo, d_{k+1}: hi -> mid
  std::vector<double> spectrum;
};

SliceInput slice_input(const FilteredComplex& C, int k, Field f) {
  C.validate(f);
  SliceInput s;
  if (k > 0) s.lo = C.sorted_cells(k - 1);
  s.mid = C.sorted_cells(k);
  s.hi = C.sorted_cells(k + 1);
  s.dk = dense_boundary(C, s.lo, s.mid, f);
  s.dk1 = dense_boundary(C, s.mid, s.hi, f);
  for (auto c : s.mid) s.spectrum.push_back(C.cell(c).value);
  for (auto c : s.hi) s.spectrum.push_back(C.cell(c).value);
  std::sort(s.spectrum.begin(), s.spectrum.end());
  s.spectrum.erase(std::unique(s.spectrum.begin(), s.spectrum.end()), s.spectrum.end());
  return s;
}

void compute_slice(const FilteredComplex& C, const SliceInput& s, std::size_t c, Field f, Matrix& cyc, Matrix& bnd) {
  const std::size_t n = s.mid.size();
  if (c == 0) {
    cyc = Matrix(n, 0, f);
    bnd = Matrix(n, 0, f);
    return;
  }
  double thr = s.spectrum[c - 1];
  auto amid = cols_up_to(C, s.mid, thr);
  auto ahi = cols_up_to(C, s.hi, thr);
  Matrix kz = kernel_basis(s.dk.select_columns(amid));
  Matrix z(n, kz.cols(), f);
  for (std::size_t j = 0; j < kz.cols(); ++j)
    for (std::size_t i = 0; i < amid.size(); ++i) z(amid[i], j) = kz(i, j);
  bnd = column_basis(s.dk1.select_columns(ahi));
  std::map<std::size_t, Vec> echelon;  // first nonzero row -> vector normalised there
  auto reduce = [&](Vec v) {
    for (auto& [p, b] : echelon) {
      if (!v[p]) continue;
      Scalar t = v[p];
      for (std::size_t i = p; i < n; ++i)
        if (b[i]) v[i] = f.sub(v[i], f.mul(t, b[i]));
    }
    return v;
  };
  auto insert = [&](Vec v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < n && !v[p]) ++p;
    if (p == n) return false;
    Scalar t = f.inv(v[p]);
    for (std::size_t i = p; i < n; ++i) v[i] = f.mul(v[i], t);
    echelon.emplace(p, std::move(v));
    return true;
  };
  for (std::size_t j = 0; j < bnd.cols(); ++j) insert(bnd.column(j));
  std::vector<Vec> reps;
  for (std::size_t j = 0; j < z.cols(); ++j) {
    Vec v = z.column(j);
    if (insert(v)) reps.push_back(std::move(v));
  }
  cyc = Matrix::from_columns(reps, n, f);
}

Matrix slice_map(const Matrix& cyc_from, const Matrix& cyc_to, const Matrix& bnd_to) {
  Matrix coords = solve_in_basis(cyc_to.hstack(bnd_to), cyc_from);
  std::vector<std::size_t> top(cyc_to.cols());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  return coords.select_rows(top);
}

HomologySlices assemble(const SliceInput& s, std::vector<Matrix> cyc, std::vector<Matrix> bnd, std::vector<Matrix> maps,
                        Field f) {
  std::vector<std::size_t> dims;
  for (const auto& m : cyc) dims.push_back(m.cols());
  return HomologySlices{ModuleRep(s.spectrum, dims, std::move(maps), f), s.mid, std::move(cyc), std::move(bnd)};
}

}  // namespace

HomologySlices homology_slices(const FilteredComplex& C, int k, Field f) {
  SliceInput s = slice_input(C, k, f);
  const long cells = static_cast<long>(s.spectrum.size() + 1);
  std::vector<Matrix> cyc(cells), bnd(cells), maps(cells - 1);
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < cells; ++c) compute_slice(C, s, static_cast<std::size_t>(c), f, cyc[c], bnd[c]);
  bool ok = true;
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < cells - 1; ++c) {
    try {
      maps[c] = slice_map(cyc[c], cyc[c + 1], bnd[c + 1]);
    } catch (const Error&) {
#pragma omp atomic write
      ok = false;
    }
  }
  if (!ok) fail_state("homology slice map failed: inclusion does not preserve cycles");
  return assemble(s, std::move(cyc), std::move(bnd), std::move(maps), f);
}

namespace serial {
HomologySlices homology_slices(const FilteredComplex& C, int k, Field f) {
  SliceInput s = slice_input(C, k, f);
  const std::size_t cells = s.spectrum.size() + 1;
  std::vector<Matrix> cyc(cells), bnd(cells), maps;
  for (std::size_t c = 0; c < cells; ++c) compute_slice(C, s, c, f, cyc[c], bnd[c]);
  for (std::size_t c = 0; c + 1 < cells; ++c) maps.push_back(slice_map(cyc[c], cyc[c + 1], bnd[c + 1]));
  return assemble(s, std::move(cyc), std::move(bnd), std::move(maps), f);
}
}  // namespace serial

ModuleRep homology_module(const FilteredComplex& C, int k, Field f) { return homology_slices(C, k, f).module; }

}  // namespace persist
