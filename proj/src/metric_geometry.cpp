#include "persist/metric_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace persist {

bool Correspondence::surjective() const {
  for (std::size_t i = 0; i < n; ++i) {
    bool hit = false;
    for (std::size_t j = 0; j < m && !hit; ++j) hit = (*this)(i, j);
    if (!hit) return false;
  }
  for (std::size_t j = 0; j < m; ++j) {
    bool hit = false;
    for (std::size_t i = 0; i < n && !hit; ++i) hit = (*this)(i, j);
    if (!hit) return false;
  }
  return true;
}

double distortion(const Correspondence& C, const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  if (C.n != X.size() || C.m != Y.size()) fail_input("correspondence does not match the spaces");
  if (!C.surjective()) fail_input("correspondence is not surjective");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < C.n; ++i)
    for (std::size_t j = 0; j < C.m; ++j)
      if (C(i, j)) pairs.emplace_back(i, j);
  double d = 0;
  for (auto [x, y] : pairs)
    for (auto [x2, y2] : pairs) d = std::max(d, std::abs(X(x, x2) - Y(y, y2)));
  return d;
}

namespace {

struct Enumeration {
  std::size_t n, m;
  std::vector<std::uint32_t> row_mask, col_mask;  // bit positions for each x / y
  std::vector<double> cost;                       // |d(x,x') - d(y,y')| over pair indices

  Enumeration(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::size_t guard)
      : n(X.size()), m(Y.size()) {
    if (n == 0 || m == 0) fail_input("Gromov-Hausdorff distance needs non-empty spaces");
    if (n * m > guard || n * m > 30) fail_input("correspondence enumeration exceeds the size guard");
    row_mask.assign(n, 0);
    col_mask.assign(m, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        row_mask[i] |= 1u << (i * m + j);
        col_mask[j] |= 1u << (i * m + j);
      }
    const std::size_t P = n * m;
    cost.resize(P * P);
    for (std::size_t a = 0; a < P; ++a)
      for (std::size_t b = 0; b < P; ++b)
        cost[a * P + b] = std::abs(X(a / m, b / m) - Y(a % m, b % m));
  }

  std::uint64_t count() const { return std::uint64_t{1} << (n * m); }

  bool surjective(std::uint32_t mask) const {
    for (auto r : row_mask)
      if (!(mask & r)) return false;
    for (auto c : col_mask)
      if (!(mask & c)) return false;
    return true;
  }

  double distortion(std::uint32_t mask, double cutoff) const {
    const std::size_t P = n * m;
    double d = 0;
    for (std::size_t a = 0; a < P; ++a) {
      if (!(mask >> a & 1)) continue;
      for (std::size_t b = a + 1; b < P; ++b)
        if (mask >> b & 1) {
          d = std::max(d, cost[a * P + b]);
          if (d >= cutoff) return d;
        }
    }
    return d;
  }
};

}  // namespace

double gh_bruteforce(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::size_t guard) {
  Enumeration E(X, Y, guard);
  const long long total = static_cast<long long>(E.count());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel
  {
    double local = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static)
    for (long long mask = 1; mask < total; ++mask) {
      auto mk = static_cast<std::uint32_t>(mask);
      if (!E.surjective(mk)) continue;
      local = std::min(local, E.distortion(mk, local));
    }
#pragma omp critical
    best = std::min(best, local);
  }
  return best / 2;
}

namespace serial {
double gh_bruteforce(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::size_t guard) {
  Enumeration E(X, Y, guard);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask < E.count(); ++mask) {
    auto mk = static_cast<std::uint32_t>(mask);
    if (E.surjective(mk)) best = std::min(best, E.distortion(mk, best));
  }
  return best / 2;
}
}  // namespace serial

namespace {

void check_involution(const FiniteMetricSpace& X, const std::vector<std::size_t>& A) {
  if (A.size() != X.size()) fail_input("action must permute every point");
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i] >= A.size() || A[A[i]] != i) fail_input("action is not an involution");
    for (std::size_t j = 0; j < A.size(); ++j)
      if (std::abs(X(A[i], A[j]) - X(i, j)) > 1e-12) fail_input("action is not an isometry");
  }
}

}  // namespace

double gh_equivariant(const FiniteMetricSpace& X, const std::vector<std::size_t>& A, const FiniteMetricSpace& Y,
                      const std::vector<std::size_t>& B, std::size_t guard) {
  check_involution(X, A);
  check_involution(Y, B);
  Enumeration E(X, Y, guard);
  const std::size_t m = E.m;
  std::vector<std::size_t> image(E.n * m);
  for (std::size_t i = 0; i < E.n; ++i)
    for (std::size_t j = 0; j < m; ++j) image[i * m + j] = A[i] * m + B[j];
  const long long total = static_cast<long long>(E.count());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel
  {
    double local = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static)
    for (long long mask = 1; mask < total; ++mask) {
      auto mk = static_cast<std::uint32_t>(mask);
      bool closed = true;
      for (std::size_t a = 0; a < image.size() && closed; ++a)
        if ((mk >> a & 1) && !(mk >> image[a] & 1)) closed = false;
      if (!closed || !E.surjective(mk)) continue;
      local = std::min(local, E.distortion(mk, local));
    }
#pragma omp critical
    best = std::min(best, local);
  }
  return best / 2;
}

}  // namespace persist
