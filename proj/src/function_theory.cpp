#include "persist/function_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace persist {

double TrigPolynomial2D::operator()(double x, double y) const {
  double s = 0;
  for (const auto& t : terms) {
    double phase = t.n1 * x + t.n2 * y;
    s += t.cos_coef * std::cos(phase) + t.sin_coef * std::sin(phase);
  }
  return s;
}

int TrigPolynomial2D::lambda() const {
  int l = 0;
  for (const auto& t : terms) l = std::max(l, t.n1 * t.n1 + t.n2 * t.n2);
  return l;
}

TrigPolynomial2D TrigPolynomial2D::laplacian() const {
  TrigPolynomial2D p;
  for (auto t : terms) {
    double k = -(t.n1 * t.n1 + t.n2 * t.n2);
    t.cos_coef *= k;
    t.sin_coef *= k;
    p.terms.push_back(t);
  }
  return p;
}

double TrigPolynomial2D::l2_norm() const {
  // Collect onto (n1, n2) ~ (-n1, -n2): cos is even, sin odd.
  std::map<std::pair<int, int>, std::pair<double, double>> c;
  for (const auto& t : terms) {
    int a = t.n1, b = t.n2;
    double sgn = 1;
    if (a < 0 || (a == 0 && b < 0)) { a = -a; b = -b; sgn = -1; }
    auto& e = c[{a, b}];
    e.first += t.cos_coef;
    e.second += sgn * t.sin_coef;
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double s = 0;
  for (const auto& [k, v] : c) {
    if (k.first == 0 && k.second == 0) s += 4 * pi2 * v.first * v.first;
    else s += 2 * pi2 * (v.first * v.first + v.second * v.second);
  }
  return std::sqrt(s);
}

GridFunction TrigPolynomial2D::sample(std::size_t nx, std::size_t ny) const {
  GridFunction g;
  g.nx = nx;
  g.ny = ny;
  g.values.resize(nx * ny);
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x) g.values[y * nx + x] = (*this)(x * g.step_x(), y * g.step_y());
  return g;
}

TrigPolynomial2D TrigPolynomial2D::random(int lambda, std::mt19937_64& rng) {
  if (lambda < 1) fail_input("frequency cap must be at least 1");
  std::uniform_real_distribution<double> U(-1, 1);
  TrigPolynomial2D p;
  int r = static_cast<int>(std::sqrt(static_cast<double>(lambda)));
  for (int a = 0; a <= r; ++a)
    for (int b = -r; b <= r; ++b) {
      if (a == 0 && b <= 0) continue;
      if (a * a + b * b > lambda) continue;
      double cc = U(rng), ss = U(rng);
      p.terms.push_back({a, b, cc, ss});
    }
  return p;
}

FunctionNorms grid_norms(const GridFunction& g) {
  if (g.values.size() != g.nx * g.ny || g.nx < 3 || g.ny < 3) fail_input("grid must be at least 3x3 and complete");
  if (!g.periodic) fail_input("grid norms assume a periodic grid");
  const double hx = g.step_x(), hy = g.step_y();
  FunctionNorms n;
  double s2 = 0, l2 = 0;
  for (std::size_t y = 0; y < g.ny; ++y)
    for (std::size_t x = 0; x < g.nx; ++x) {
      std::size_t xp = (x + 1) % g.nx, xm = (x + g.nx - 1) % g.nx;
      std::size_t yp = (y + 1) % g.ny, ym = (y + g.ny - 1) % g.ny;
      double f = g.at(x, y);
      double lap = (g.at(xp, y) - 2 * f + g.at(xm, y)) / (hx * hx) + (g.at(x, yp) - 2 * f + g.at(x, ym)) / (hy * hy);
      double gx = (g.at(xp, y) - g.at(xm, y)) / (2 * hx), gy = (g.at(x, yp) - g.at(x, ym)) / (2 * hy);
      n.sup = std::max(n.sup, std::abs(f));
      n.gradient_sup = std::max(n.gradient_sup, std::hypot(gx, gy));
      s2 += f * f;
      l2 += lap * lap;
    }
  n.l2 = std::sqrt(s2 * hx * hy);
  n.laplacian_l2 = std::sqrt(l2 * hx * hy);
  return n;
}

double function_ell(const Barcode& B) {
  double lo = kInf, hi = -kInf;
  for (const auto& b : B.bars) {
    for (double e : {b.birth, b.death})
      if (std::isfinite(e)) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
      }
  }
  if (lo > hi) return 0;
  return ell(B, lo, hi);
}

LengthReport verify_length_inequality(const GridFunction& g, double slack) {
  if (slack < 0) fail_input("slack must be non-negative");
  LengthReport r;
  r.barcode = barcode_of_complex(torus_grid_complex(g));
  r.ell = function_ell(r.barcode);
  FunctionNorms n = grid_norms(g);
  r.rhs = 3 * (n.l2 + n.laplacian_l2);
  r.slack = slack;
  r.holds = r.ell <= r.rhs * (1 + slack);
  return r;
}

CircleIdentity circle_ell_identity(const std::vector<double>& samples) {
  CircleIdentity r;
  r.ell = function_ell(barcode_of_complex(circle_complex(samples)));
  double tv = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) tv += std::abs(samples[(i + 1) % samples.size()] - samples[i]);
  r.half_tv = tv / 2;
  return r;
}

std::optional<double> alternance_bound(const Barcode& h, std::size_t q_crit_count, double c, std::size_t zeta) {
  if (!(c > 0)) fail_input("alternance bound needs c > 0");
  if (q_crit_count < 2 * nu(h, c) + zeta) return c / 2;
  return std::nullopt;
}

PerturbationReport perturbation_inequalities(const Barcode& f, const Barcode& h, double sup_diff, std::size_t zeta) {
  if (!(sup_diff >= 0)) fail_input("sup distance must be non-negative");
  PerturbationReport r;
  r.ell_gap = function_ell(f) - function_ell(h);
  r.ell_bound = (2.0 * static_cast<double>(f.finite_count()) + static_cast<double>(zeta)) * sup_diff;
  r.ell_holds = r.ell_gap <= r.ell_bound * (1 + 1e-12) + 1e-12;
  // Both counts are right-continuous steps in c; checking every breakpoint is exhaustive.
  // Pairs (c, c + 2|f-h|_0); breakpoints coming from h keep their exact length.
  std::vector<std::pair<double, double>> cs{{0.0, 2 * sup_diff}};
  for (const auto& b : f.bars)
    if (b.finite()) cs.emplace_back(b.length(), b.length() + 2 * sup_diff);
  for (const auto& b : h.bars)
    if (b.finite() && b.length() - 2 * sup_diff > 0) cs.emplace_back(b.length() - 2 * sup_diff, b.length());
  r.nu_margin = std::numeric_limits<long>::max();
  for (auto [c, c2] : cs) {
    long m = static_cast<long>(nu(f, c)) - static_cast<long>(nu(h, c2));
    if (m < r.nu_margin) {
      r.nu_margin = m;
      r.nu_worst_c = c;
    }
  }
  r.nu_holds = r.nu_margin >= 0;
  return r;
}

}  // namespace persist
