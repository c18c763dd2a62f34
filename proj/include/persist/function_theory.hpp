#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "persist/barcode.hpp"
#include "persist/complexes.hpp"

namespace persist {

struct TrigTerm {
  int n1 = 0, n2 = 0;
  double cos_coef = 0, sin_coef = 0;  // a cos(n1 x + n2 y) + b sin(n1 x + n2 y)
};

struct TrigPolynomial2D {
  std::vector<TrigTerm> terms;

  double operator()(double x, double y) const;
  int lambda() const;  // largest n1^2 + n2^2 present
  TrigPolynomial2D laplacian() const;
  // Exact L2 norm over [0, 2pi]^2.
  double l2_norm() const;
  GridFunction sample(std::size_t nx, std::size_t ny) const;

  // Independent uniform coefficients in [-1, 1] on every frequency with n1^2 + n2^2 <= lambda.
  static TrigPolynomial2D random(int lambda, std::mt19937_64& rng);
};

struct FunctionNorms {
  double sup = 0, l2 = 0, laplacian_l2 = 0, gradient_sup = 0;
};

// Midpoint quadrature, periodic 5-point Laplacian and central-difference gradient.
FunctionNorms grid_norms(const GridFunction& g);

// Total length of the barcode inside [min f, max f], with min and max read
// off the lowest and highest finite endpoints.
double function_ell(const Barcode& B);

struct LengthReport {
  double ell = 0;
  double rhs = 0;  // 3 (|f|_2 + |Lap f|_2)
  double slack = 0;
  bool holds = false;
  Barcode barcode;
};
LengthReport verify_length_inequality(const GridFunction& g, double slack = 0);

struct CircleIdentity {
  double ell = 0, half_tv = 0;
};
CircleIdentity circle_ell_identity(const std::vector<double>& samples);

// c/2 when q has fewer than 2 nu(h, c) + zeta critical points.
std::optional<double> alternance_bound(const Barcode& h, std::size_t q_crit_count, double c, std::size_t zeta);

struct PerturbationReport {
  double ell_gap = 0;    // ell(f) - ell(h)
  double ell_bound = 0;  // (2 nu(f) + zeta) |f - h|_0
  bool ell_holds = false;
  double nu_worst_c = 0;  // c with the smallest nu(f,c) - nu(h, c + 2|f-h|_0)
  long nu_margin = 0;
  bool nu_holds = false;
  bool holds() const { return ell_holds && nu_holds; }
};
PerturbationReport perturbation_inequalities(const Barcode& f, const Barcode& h, double sup_diff, std::size_t zeta);

}  // namespace persist
