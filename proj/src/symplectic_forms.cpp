#include "persist/symplectic_forms.hpp"

#include <cmath>
#include <string>

#include "persist/error.hpp"

namespace persist {

namespace {

bool is_integer(double x) { return std::isfinite(x) && x == std::round(x); }

void check_window(double a, int n, double N) {
  if (!(a > 0) || !std::isfinite(a)) fail_input("window endpoint a must be positive");
  if (n < 1) fail_input("complex dimension must be at least 1");
  if (!(N >= 1)) fail_input("aspect N must be at least 1");
  if (is_integer(a) || (n >= 2 && is_integer(a / N)))
    fail_input("a = " + std::to_string(a) + " lies in the action spectrum");
}

}  // namespace

int cz_rotation_index(double alpha) {
  if (!std::isfinite(alpha) || is_integer(alpha)) fail_input("degenerate rotation path: integer speed");
  if (alpha > 0) return 2 * static_cast<int>(std::floor(alpha)) + 1;
  return -2 * std::abs(static_cast<int>(std::ceil(alpha))) - 1;
}

int ellipsoid_index_from_rotations(double a, int n, double N) {
  check_window(a, n, N);
  int ind = normalized_index(cz_rotation_index(a), 1);
  for (int i = 1; i < n; ++i) ind += normalized_index(cz_rotation_index(a / N), 1);
  return ind;
}

int ellipsoid_sh_degree(double a, int n, double N) {
  check_window(a, n, N);
  int first = std::abs(static_cast<int>(std::ceil(-a)));
  int rest = std::abs(static_cast<int>(std::ceil(-a / N)));
  return -2 * first - 2 * (n - 1) * rest;
}

Bar ellipsoid_degree0_bar(const EllipsoidSpec& E) {
  if (!(E.r > 0) || !(E.N >= 1) || E.n < 1) fail_input("invalid ellipsoid");
  return Bar{-kInf, std::log(E.r), 0};
}

double sbm_lower_bound(const EllipsoidSpec& E1, const EllipsoidSpec& E2) {
  if (E1.n != E2.n) fail_input("ellipsoids must live in the same dimension");
  return bottleneck_distance(Barcode{ellipsoid_degree0_bar(E1)}, Barcode{ellipsoid_degree0_bar(E2)});
}

std::vector<ShTableRow> sh_table(const std::vector<double>& as, int n, double N) {
  std::vector<ShTableRow> rows;
  for (double a : as) {
    ShTableRow r{a, std::nullopt};
    try {
      r.degree = ellipsoid_sh_degree(a, n, N);
    } catch (const Error&) {
      if (!(a > 0)) throw;
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace persist
