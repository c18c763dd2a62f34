#pragma once

#include <optional>
#include <vector>

#include "persist/barcode.hpp"

namespace persist {

// E(r, rN, ..., rN) in complex dimension n.
struct EllipsoidSpec {
  double r = 1;
  double N = 1;
  int n = 1;

  static EllipsoidSpec ball(double R, int n) { return {R, 1, n}; }
};

int cz_rotation_index(double alpha);
inline int normalized_index(int mu_cz, int n) { return n - mu_cz; }
// Index of the rotation path with speeds a, a/N, ..., a/N summed coordinate-wise.
int ellipsoid_index_from_rotations(double a, int n, double N);
int ellipsoid_sh_degree(double a, int n, double N);
Bar ellipsoid_degree0_bar(const EllipsoidSpec& E);
double sbm_lower_bound(const EllipsoidSpec& E1, const EllipsoidSpec& E2);

struct ShTableRow {
  double a = 0;
  std::optional<int> degree;  // empty when a lies in the action spectrum
};
std::vector<ShTableRow> sh_table(const std::vector<double>& as, int n, double N);

}  // namespace persist
