#include "persist/representations.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "persist/complexes.hpp"

namespace persist {

namespace {

Matrix power(const Matrix& m, std::size_t e) {
  Matrix r = Matrix::identity(m.rows(), m.field());
  for (std::size_t i = 0; i < e; ++i) r = r * m;
  return r;
}

void check_shape(const ModuleRepWithAction& R) {
  if (R.order == 0) fail_input("group order must be positive");
  if (R.action.size() != R.rep.num_cells()) fail_input("one action matrix per cell is required");
  for (std::size_t c = 0; c < R.action.size(); ++c) {
    require_same_field(R.action[c].field(), R.rep.field());
    if (R.action[c].rows() != R.rep.dims()[c] || R.action[c].cols() != R.rep.dims()[c])
      fail_input("action matrix has the wrong size");
  }
}

}  // namespace

bool verify_representation(const ModuleRepWithAction& R) {
  try {
    check_shape(R);
  } catch (const Error&) {
    return false;
  }
  const auto& V = R.rep;
  for (std::size_t c = 0; c < V.num_cells(); ++c) {
    const Matrix& rho = R.action[c];
    if (power(rho, R.order) != Matrix::identity(rho.rows(), V.field())) return false;
    if (c + 1 < V.num_cells() && R.action[c + 1] * V.maps()[c] != V.maps()[c] * rho) return false;
  }
  return true;
}

ModuleRep eigenspace_submodule(const ModuleRepWithAction& R, Scalar xi) {
  check_shape(R);
  const auto& V = R.rep;
  const Field& f = V.field();
  if (xi >= f.p()) fail_input("eigenvalue is not a field element");
  if (f.pow(xi, R.order) != 1) fail_input("eigenvalue is not a root of unity of the group order");
  std::vector<Matrix> K;
  for (std::size_t c = 0; c < V.num_cells(); ++c) {
    Matrix shifted = R.action[c] - Matrix::identity(V.dims()[c], f).scaled(xi);
    K.push_back(kernel_basis(shifted));
  }
  std::vector<std::size_t> dims;
  for (const auto& k : K) dims.push_back(k.cols());
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c + 1 < V.num_cells(); ++c) {
    Matrix img = V.maps()[c] * K[c];
    try {
      maps.push_back(solve_in_basis(K[c + 1], img));
    } catch (const Error&) {
      fail_state("eigenspace is not preserved: the action does not commute with the module maps");
    }
  }
  return ModuleRep(V.spectrum(), dims, std::move(maps), f);
}

bool even_multiplicity_check(const Barcode& B) {
  std::vector<double> pts;
  for (const auto& b : B.bars) {
    if (std::isfinite(b.birth)) pts.push_back(b.birth);
    if (std::isfinite(b.death)) pts.push_back(b.death);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> S{-kInf}, E(pts);
  S.insert(S.end(), pts.begin(), pts.end());
  E.push_back(kInf);
  for (double s : S)
    for (double e : E) {
      if (!(e > s)) continue;
      if (persistent_betti(B, Bar{s, e, std::nullopt}) % 2) return false;
    }
  return true;
}

double z4_obstruction_bound(const ModuleRepWithAction& R) {
  if (R.order != 2) fail_input("the obstruction bound needs an involution");
  if (!verify_representation(R)) fail_input("not a persistence representation");
  return mu_odd(barcode(eigenspace_submodule(R, R.rep.field().p() - 1)));
}

CellAction simplicial_action(const FilteredComplex& C, const std::vector<std::size_t>& vertex_perm) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (C.cell(i).vertices.empty()) fail_input("simplicial action needs vertex lists on every cell");
    index[C.cell(i).vertices] = i;
  }
  CellAction theta;
  for (std::size_t i = 0; i < C.size(); ++i) {
    std::vector<std::size_t> img;
    for (auto v : C.cell(i).vertices) {
      if (v >= vertex_perm.size()) fail_input("vertex permutation is too short");
      img.push_back(vertex_perm[v]);
    }
    long long sign = 1;
    for (std::size_t a = 0; a < img.size(); ++a)
      for (std::size_t b = a + 1; b < img.size(); ++b)
        if (img[a] > img[b]) sign = -sign;
    std::sort(img.begin(), img.end());
    auto it = index.find(img);
    if (it == index.end()) fail_input("vertex permutation does not preserve the complex");
    theta.emplace_back(it->second, sign);
  }
  return theta;
}

ModuleRepWithAction homology_action(const FilteredComplex& C, int k, const CellAction& theta, std::size_t order,
                                    Field f) {
  if (theta.size() != C.size()) fail_input("one image per cell is required");
  for (std::size_t i = 0; i < C.size(); ++i) {
    const Cell& a = C.cell(i);
    if (theta[i].first >= C.size()) fail_input("cell image out of range");
    const Cell& b = C.cell(theta[i].first);
    if (a.degree != b.degree || a.value != b.value) fail_input("action must preserve degrees and filtration values");
  }
  // Chain-map check: d(theta x) = theta(d x) for every cell.
  for (std::size_t i = 0; i < C.size(); ++i) {
    std::map<std::size_t, Scalar> lhs, rhs;
    auto [ti, si] = theta[i];
    for (auto [b, c] : C.cell(ti).boundary) lhs[b] = f.add(lhs[b], f.from_int(c * si));
    for (auto [b, c] : C.cell(i).boundary) {
      auto [tb, sb] = theta[b];
      rhs[tb] = f.add(rhs[tb], f.from_int(c * sb));
    }
    std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
    if (lhs != rhs) fail_input("action does not commute with the boundary");
  }
  HomologySlices H = homology_slices(C, k, f);
  const auto& cells = H.chain_cells;
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < cells.size(); ++i) pos[cells[i]] = i;
  Matrix Theta(cells.size(), cells.size(), f);
  for (std::size_t j = 0; j < cells.size(); ++j) {
    auto [t, s] = theta[cells[j]];
    Theta(pos.at(t), j) = f.from_int(s);
  }
  ModuleRepWithAction R{H.module, order, {}};
  for (std::size_t c = 0; c < H.module.num_cells(); ++c) {
    const Matrix& Z = H.cycles[c];
    Matrix coords = solve_in_basis(Z.hstack(H.boundaries[c]), Theta * Z);
    std::vector<std::size_t> top(Z.cols());
    for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
    R.action.push_back(coords.select_rows(top));
  }
  return R;
}

ModuleRepWithAction power_action(const ModuleRepWithAction& R, std::size_t e, std::size_t new_order) {
  check_shape(R);
  ModuleRepWithAction S{R.rep, new_order, {}};
  for (const auto& m : R.action) S.action.push_back(power(m, e));
  return S;
}

ModuleRepWithAction conjugate(const ModuleRepWithAction& R, const std::vector<Matrix>& phi) {
  check_shape(R);
  // Checks that phi is a module endomorphism.
  ModuleMorphism m(R.rep, R.rep, phi);
  ModuleRepWithAction S{R.rep, R.order, {}};
  for (std::size_t c = 0; c < phi.size(); ++c) S.action.push_back(phi[c] * R.action[c] * inverse(phi[c]));
  return S;
}

ModuleRepWithAction rectangle_pmi(double a, Field f) {
  if (!(a >= 1)) fail_input("rectangle side a must be at least 1");
  // x1, y1, x2, y2 counter-clockwise; the reflection swaps x1 <-> x2 and y1 <-> y2.
  PointCloud P{{{0, 0}, {1, 0}, {1, a}, {0, a}}};
  FilteredComplex C = rips_complex(euclidean_metric(P), 1);
  return homology_action(C, 0, simplicial_action(C, {2, 3, 0, 1}), 2, f);
}

FilteredComplex teeth_sphere_complex(double a, double b, double c) {
  if (!(a < b && b < c)) fail_input("teeth sphere levels must satisfy a < b < c");
  FilteredComplex C;
  C.add_cell("x", 0, a);
  C.add_cell("y", 0, a);
  C.add_cell("s", 1, b, {{1, 1}, {0, -1}});
  C.add_cell("N", 2, c);
  return C;
}

CellAction teeth_sphere_involution() { return {{1, 1}, {0, 1}, {2, -1}, {3, 1}}; }

}  // namespace persist
