#include <doctest.h>

#include <cmath>

#include "persist/symplectic_forms.hpp"

using namespace persist;

TEST_CASE("Conley-Zehnder index of rotations") {
  CHECK(cz_rotation_index(0.5) == 1);
  CHECK(cz_rotation_index(1.5) == 3);
  CHECK(cz_rotation_index(-0.5) == -1);
  CHECK(cz_rotation_index(-1.5) == -3);
  CHECK_THROWS(cz_rotation_index(2));
  CHECK_THROWS(cz_rotation_index(0));
}

TEST_CASE("normalized index") {
  CHECK(normalized_index(1, 1) == 0);
  CHECK(normalized_index(3, 2) == -1);
  // Speeds in (-1, 1): each negative one adds 2.
  for (double a : {-0.7, -0.2, 0.3, 0.9})
    for (double b : {-0.4, 0.6}) {
      int ind = normalized_index(cz_rotation_index(a) + cz_rotation_index(b), 2);
      CHECK(ind == 2 * ((a < 0) + (b < 0)));
    }
}

TEST_CASE("ellipsoid degrees") {
  CHECK(ellipsoid_sh_degree(0.5, 1, 1) == 0);
  CHECK(ellipsoid_sh_degree(1.5, 1, 1) == -2);
  CHECK(ellipsoid_sh_degree(1.5, 2, 8) == -2);
  CHECK(ellipsoid_sh_degree(2.5, 3, 2) == -4 - 2 * 2 * 1);
  CHECK_THROWS(ellipsoid_sh_degree(1, 1, 1));
  CHECK_THROWS(ellipsoid_sh_degree(4, 2, 2));
  CHECK_NOTHROW(ellipsoid_sh_degree(4.5, 2, 2));
  CHECK_THROWS(ellipsoid_sh_degree(-0.5, 1, 1));
}

TEST_CASE("degree formula equals the rotation-index route") {
  for (int n = 1; n <= 3; ++n)
    for (double N : {1.0, 1.5, 3.0, 8.0})
      for (double a = 0.1; a < 12; a += 0.37) {
        bool spectral = std::abs(a - std::round(a)) < 1e-9 || (n > 1 && std::abs(a / N - std::round(a / N)) < 1e-9);
        if (spectral) continue;
        CHECK(ellipsoid_sh_degree(a, n, N) == ellipsoid_index_from_rotations(a, n, N));
      }
}

TEST_CASE("degrees do not increase with a") {
  for (int n = 1; n <= 3; ++n) {
    auto rows = sh_table({0.3, 0.7, 1.2, 2.9, 3.1, 4.4, 7.7, 8.5, 9.9}, n, 3);
    int prev = 1;
    for (const auto& r : rows) {
      if (!r.degree) continue;
      CHECK(*r.degree <= prev);
      prev = *r.degree;
    }
  }
  auto t = sh_table({0.5, 1, 1.5}, 1, 1);
  REQUIRE(t.size() == 3);
  CHECK(t[0].degree == 0);
  CHECK_FALSE(t[1].degree);
  CHECK(t[2].degree == -2);
}

TEST_CASE("degree-0 bars and Banach-Mazur bounds") {
  Bar b = ellipsoid_degree0_bar({1, 8, 2});
  CHECK(b.birth == -kInf);
  CHECK(b.death == 0);
  CHECK(ellipsoid_degree0_bar({2, 2, 2}).death == doctest::Approx(std::log(2.0)));
  CHECK(ellipsoid_degree0_bar({std::exp(1.0), 1, 1}).death == doctest::Approx(1));
  CHECK(std::abs(sbm_lower_bound({1, 8, 2}, {2, 2, 2}) - std::log(2.0)) <= 1e-12);
  CHECK(sbm_lower_bound({1, 8, 2}, {1, 8, 2}) == 0);
  CHECK(sbm_lower_bound({0.5, 3, 2}, EllipsoidSpec::ball(4, 2)) == doctest::Approx(std::log(8.0)));
  CHECK_THROWS(sbm_lower_bound({1, 1, 1}, {1, 1, 2}));
  EllipsoidSpec A{0.7, 2, 2}, B{1.9, 3, 2}, C{3.3, 1, 2};
  CHECK(sbm_lower_bound(A, B) == sbm_lower_bound(B, A));
  CHECK(sbm_lower_bound(A, C) <= sbm_lower_bound(A, B) + sbm_lower_bound(B, C) + 1e-15);
}
