#pragma once

#include <cstddef>
#include <vector>

#include "persist/complexes.hpp"

namespace persist {

// A relation between X (rows) and Y (columns).
struct Correspondence {
  std::size_t n = 0, m = 0;
  std::vector<char> rel;  // rel[i * m + j]

  Correspondence(std::size_t n_, std::size_t m_) : n(n_), m(m_), rel(n_ * m_, 0) {}
  bool operator()(std::size_t i, std::size_t j) const { return rel[i * m + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v = true) { rel[i * m + j] = v; }
  bool surjective() const;
};

double distortion(const Correspondence& C, const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

inline constexpr std::size_t kGHGuard = 20;

// Half the minimal distortion over all surjective correspondences; |X||Y| <= guard.
double gh_bruteforce(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::size_t guard = kGHGuard);
// Restricted to correspondences with (x,y) in C implying (A x, B y) in C.
// A and B are given as permutations and must be isometric involutions.
double gh_equivariant(const FiniteMetricSpace& X, const std::vector<std::size_t>& A, const FiniteMetricSpace& Y,
                      const std::vector<std::size_t>& B, std::size_t guard = kGHGuard);

namespace serial {
double gh_bruteforce(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::size_t guard = kGHGuard);
}

}  // namespace persist
