#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "persist/complexes.hpp"

namespace persist {

namespace {

using Point = std::vector<double>;

struct Ball {
  Point center;
  double r2 = -1;  // squared radius; negative means empty
};

double dist2(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

bool contains(const Ball& B, const Point& p) {
  if (B.r2 < 0) return false;
  double tol = 1e-12 * std::max(1.0, B.r2);
  return dist2(B.center, p) <= B.r2 + tol;
}

// Ball through all points of R centred in their affine hull, if R is affinely independent.
std::optional<Ball> circumball(const std::vector<Point>& R) {
  Ball B;
  if (R.empty()) return B;
  const Point& p0 = R[0];
  const std::size_t m = R.size() - 1, d = p0.size();
  if (m == 0) return Ball{p0, 0};
  std::vector<Point> v(m, Point(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < d; ++k) v[i][k] = R[i + 1][k] - p0[k];
  std::vector<std::vector<double>> A(m, std::vector<double>(m + 1));
  double scale = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < d; ++k) s += v[i][k] * v[j][k];
      A[i][j] = 2 * s;
    }
    A[i][m] = A[i][i] / 2;
    scale = std::max(scale, A[i][i]);
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    if (std::abs(A[piv][c]) <= 1e-12 * scale) return std::nullopt;
    std::swap(A[piv], A[c]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c) continue;
      double t = A[r][c] / A[c][c];
      for (std::size_t j = c; j <= m; ++j) A[r][j] -= t * A[c][j];
    }
  }
  B.center = p0;
  for (std::size_t i = 0; i < m; ++i) {
    double lam = A[i][m] / A[i][i];
    for (std::size_t k = 0; k < d; ++k) B.center[k] += lam * v[i][k];
  }
  B.r2 = 0;
  for (const auto& p : R) B.r2 = std::max(B.r2, dist2(B.center, p));
  return B;
}

// Smallest ball with every point of R on or inside it; R has at most d + 1 points.
Ball ball_with_boundary(const std::vector<Point>& R) {
  if (auto B = circumball(R)) return *B;
  Ball best;
  const std::size_t n = R.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<Point> S;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) S.push_back(R[i]);
    auto B = circumball(S);
    if (!B) continue;
    bool all = std::all_of(R.begin(), R.end(), [&](const Point& p) { return contains(*B, p); });
    if (all && (best.r2 < 0 || B->r2 < best.r2)) best = *B;
  }
  return best;
}

Ball welzl(const std::vector<Point>& P, std::size_t n, std::vector<Point>& R) {
  if (n == 0 || R.size() == P[0].size() + 1) return ball_with_boundary(R);
  const Point& p = P[n - 1];
  Ball B = welzl(P, n - 1, R);
  if (contains(B, p)) return B;
  R.push_back(p);
  B = welzl(P, n - 1, R);
  R.pop_back();
  return B;
}

}  // namespace

double meb_radius(const std::vector<std::vector<double>>& points) {
  if (points.empty()) fail_input("enclosing ball of an empty set");
  for (const auto& p : points)
    if (p.size() != points[0].size()) fail_input("points have different dimensions");
  std::vector<Point> R;
  Ball B = welzl(points, points.size(), R);
  return std::sqrt(std::max(0.0, B.r2));
}

}  // namespace persist
