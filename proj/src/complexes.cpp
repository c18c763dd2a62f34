#include "persist/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>

namespace persist {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<double>> dist) : n_(dist.size()), d_(n_ * n_) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (dist[i].size() != n_) fail_input("distance matrix must be square");
    for (std::size_t j = 0; j < n_; ++j) {
      double v = dist[i][j];
      if (!std::isfinite(v) || v < 0) fail_input("distances must be finite and non-negative");
      d_[i * n_ + j] = v;
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (d_[i * n_ + i] != 0) fail_input("distance matrix needs a zero diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (d_[i * n_ + j] != d_[j * n_ + i]) fail_input("distance matrix must be symmetric");
  }
}

bool FiniteMetricSpace::satisfies_triangle_inequality(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + tol) return false;
  return true;
}

FiniteMetricSpace euclidean_metric(const PointCloud& P) {
  const std::size_t n = P.points.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (P.points[i].size() != P.points[j].size()) fail_input("points have different dimensions");
      double s = 0;
      for (std::size_t k = 0; k < P.points[i].size(); ++k) {
        double t = P.points[i][k] - P.points[j][k];
        s += t * t;
      }
      d[i][j] = d[j][i] = std::sqrt(s);
    }
  return FiniteMetricSpace(std::move(d));
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::size_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

bool simplex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string simplex_id(const std::vector<std::size_t>& s) {
  std::string id;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) id += '-';
    id += std::to_string(s[i]);
  }
  return id;
}

}  // namespace

Triangulation Triangulation::from_maximal(std::size_t num_vertices, const std::vector<std::vector<std::size_t>>& top) {
  std::set<std::vector<std::size_t>, decltype(&simplex_less)> all(&simplex_less);
  for (auto s : top) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail_input("simplex repeats a vertex");
    const std::size_t k = s.size();
    if (k == 0 || k > 20) fail_input("unsupported simplex size");
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) face.push_back(s[i]);
      if (face.back() >= num_vertices) fail_input("simplex vertex out of range");
      all.insert(face);
    }
  }
  Triangulation T;
  T.num_vertices = num_vertices;
  T.simplices.assign(all.begin(), all.end());
  return T;
}

FilteredComplex simplicial_complex(const std::vector<std::vector<std::size_t>>& simplices,
                                   const std::vector<double>& values) {
  if (simplices.size() != values.size()) fail_input("one filtration value per simplex is required");
  FilteredComplex C;
  std::unordered_map<std::vector<std::size_t>, std::size_t, VecHash> index;
  index.reserve(simplices.size() * 2);
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    const auto& v = simplices[s];
    if (v.empty() || !std::is_sorted(v.begin(), v.end())) fail_input("simplices need sorted, non-empty vertex lists");
    std::vector<std::pair<std::size_t, long long>> bd;
    if (v.size() > 1) {
      std::vector<std::size_t> face(v.size() - 1);
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0, t = 0; j < v.size(); ++j)
          if (j != i) face[t++] = v[j];
        auto it = index.find(face);
        if (it == index.end()) fail_input("face of " + simplex_id(v) + " is missing or listed later");
        bd.emplace_back(it->second, i % 2 ? -1 : 1);
      }
    }
    std::size_t idx = C.add_cell(simplex_id(v), static_cast<int>(v.size()) - 1, values[s], std::move(bd), v);
    index.emplace(v, idx);
  }
  return C;
}

FilteredComplex rips_complex(const FiniteMetricSpace& X, int max_dim, double max_scale) {
  if (max_dim < 0) fail_input("max_dim must be non-negative");
  const std::size_t n = X.size();
  std::vector<std::vector<std::size_t>> simplices;
  std::vector<double> values;
  std::vector<std::size_t> current;
  // Cliques grow by increasing vertex index, so each appears once.
  std::function<void(double)> grow = [&](double diam) {
    simplices.push_back(current);
    values.push_back(diam);
    if (static_cast<int>(current.size()) > max_dim) return;
    for (std::size_t w = current.back() + 1; w < n; ++w) {
      double d = diam;
      bool ok = true;
      for (auto u : current) {
        if (!(X(u, w) < max_scale)) { ok = false; break; }
        d = std::max(d, X(u, w));
      }
      if (!ok) continue;
      current.push_back(w);
      grow(d);
      current.pop_back();
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    current = {v};
    grow(0.0);
  }
  std::vector<std::size_t> order(simplices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return simplex_less(simplices[a], simplices[b]); });
  std::vector<std::vector<std::size_t>> s2;
  std::vector<double> v2;
  for (auto i : order) {
    s2.push_back(std::move(simplices[i]));
    v2.push_back(values[i]);
  }
  return simplicial_complex(s2, v2);
}

FilteredComplex cech_complex(const PointCloud& P, int max_dim) {
  if (max_dim < 0) fail_input("max_dim must be non-negative");
  const std::size_t d = P.dim();
  if (d < 1 || d > 4) fail_input("Cech complexes need points in dimension 1 to 4");
  const std::size_t n = P.points.size();
  std::vector<std::vector<std::size_t>> simplices;
  std::vector<double> values;
  std::vector<std::size_t> current;
  std::function<void()> grow = [&]() {
    std::vector<std::vector<double>> pts;
    for (auto i : current) pts.push_back(P.points[i]);
    simplices.push_back(current);
    values.push_back(current.size() == 1 ? 0.0 : 2 * meb_radius(pts));
    if (static_cast<int>(current.size()) > max_dim) return;
    for (std::size_t w = current.back() + 1; w < n; ++w) {
      current.push_back(w);
      grow();
      current.pop_back();
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (P.points[v].size() != d) fail_input("points have different dimensions");
    current = {v};
    grow();
  }
  std::vector<std::size_t> order(simplices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return simplex_less(simplices[a], simplices[b]); });
  std::vector<std::vector<std::size_t>> s2;
  std::vector<double> v2;
  for (auto i : order) {
    s2.push_back(simplices[i]);
    v2.push_back(values[i]);
  }
  // Enforce face monotonicity against rounding in the enclosing-ball solver.
  FilteredComplex tmp = simplicial_complex(s2, v2);
  for (std::size_t i = 0; i < tmp.size(); ++i)
    for (auto [b, c] : tmp.cell(i).boundary) {
      (void)c;
      v2[i] = std::max(v2[i], v2[b]);
    }
  return simplicial_complex(s2, v2);
}

Barcode below_degree(const Barcode& B, int max_degree) {
  Barcode r;
  for (const auto& b : B.bars)
    if (!b.degree || *b.degree < max_degree) r.bars.push_back(b);
  return r;
}

Barcode log2_rescale(const Barcode& B) {
  auto tr = [](double x) {
    if (x == 0) return -kInf;
    if (x == kInf) return kInf;
    if (!(x > 0)) fail_input("log2 rescaling needs positive endpoints (or a birth at 0)");
    return std::log2(x);
  };
  Barcode r;
  for (const auto& b : B.bars) r.bars.push_back(Bar{tr(b.birth), tr(b.death), b.degree});
  return r;
}

FilteredComplex sublevel_filtration(const Triangulation& T, const std::vector<double>& vertex_values) {
  if (vertex_values.size() != T.num_vertices) fail_input("one value per vertex is required");
  std::vector<double> values;
  for (const auto& s : T.simplices) {
    double u = -kInf;
    for (auto v : s) u = std::max(u, vertex_values[v]);
    values.push_back(u);
  }
  return simplicial_complex(T.simplices, values);
}

FilteredComplex circle_complex(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 3) fail_input("a circle needs at least 3 samples");
  std::vector<std::vector<std::size_t>> top;
  for (std::size_t i = 0; i < n; ++i) top.push_back({i, (i + 1) % n});
  return sublevel_filtration(Triangulation::from_maximal(n, top), samples);
}

Triangulation torus_grid_triangulation(std::size_t nx, std::size_t ny) {
  if (nx < 4 || ny < 4) fail_input("torus grid must be at least 4x4");
  auto id = [&](std::size_t x, std::size_t y) { return (y % ny) * nx + (x % nx); };
  Triangulation T;
  T.num_vertices = nx * ny;
  std::vector<std::vector<std::size_t>> edges, tris;
  auto sorted = [](std::vector<std::size_t> s) {
    std::sort(s.begin(), s.end());
    return s;
  };
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x) {
      std::size_t a = id(x, y), b = id(x + 1, y), c = id(x, y + 1), d = id(x + 1, y + 1);
      edges.push_back(sorted({a, b}));
      edges.push_back(sorted({a, c}));
      edges.push_back(sorted({a, d}));
      tris.push_back(sorted({a, b, d}));
      tris.push_back(sorted({a, c, d}));
    }
  std::sort(edges.begin(), edges.end());
  std::sort(tris.begin(), tris.end());
  for (std::size_t v = 0; v < T.num_vertices; ++v) T.simplices.push_back({v});
  for (auto& e : edges) T.simplices.push_back(std::move(e));
  for (auto& t : tris) T.simplices.push_back(std::move(t));
  return T;
}

FilteredComplex torus_grid_complex(const GridFunction& g) {
  if (!g.periodic) fail_input("torus grid complexes need periodic grids");
  if (g.values.size() != g.nx * g.ny) fail_input("grid values do not match the grid size");
  return sublevel_filtration(torus_grid_triangulation(g.nx, g.ny), g.values);
}

double oscillation(const Triangulation& T, const std::vector<double>& vertex_values) {
  if (vertex_values.size() != T.num_vertices) fail_input("one value per vertex is required");
  double osc = 0;
  for (const auto& s : T.simplices) {
    double lo = kInf, hi = -kInf;
    for (auto v : s) {
      lo = std::min(lo, vertex_values[v]);
      hi = std::max(hi, vertex_values[v]);
    }
    osc = std::max(osc, hi - lo);
  }
  return osc;
}

}  // namespace persist
