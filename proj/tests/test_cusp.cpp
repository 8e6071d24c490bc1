#include "ggl/cusp.hpp"
#include "ggl/field_invariants.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace ggl;

TEST_SUITE("cusp") {
  TEST_CASE("small cycles") {
    CHECK(cusp_cycle(5).digits == std::vector<std::int64_t>{3});
    CHECK(canonical_rotation(cusp_cycle(8).digits) == canonical_rotation({4, 2}));
    CHECK(canonical_rotation(cusp_cycle(13).digits) == canonical_rotation({5, 2, 2}));
    CHECK(cusp_cycle(5).eps_V == QuadElem::half(5, 3, 1));
    CHECK(cusp_cycle(8).eps_V == QuadElem(8, 3, 1));
  }

  TEST_CASE("cycles against the convex hull of totally positive integers") {
    int checked = 0;
    for (std::int64_t D = 5; D <= 2000; ++D) {
      if (!is_fundamental_discriminant(D)) continue;
      const CuspCycle c = cusp_cycle(D);
      if (to_long_double(c.eps_V.x()) > 2000) continue;
      const auto t = numerator(c.eps_V.trace()).convert_to<std::int64_t>();
      const auto u = numerator(Rational(2 * c.eps_V.y())).convert_to<std::int64_t>();
      const auto hull = oracle::hull_cycle(D, t, u);
      REQUIRE_FALSE(hull.empty());
      CHECK(canonical_rotation(hull) == canonical_rotation(c.digits));
      ++checked;
    }
    CHECK(checked > 50);
  }

  TEST_CASE("tangency on every chart") {
    for (std::int64_t D = 5; D <= 400; ++D) {
      if (!is_fundamental_discriminant(D)) continue;
      const CuspCycle c = cusp_cycle(D);
      validate_cycle(c);
      const CuspTangencyReport r = verify_cusp_tangency(c);
      CHECK(r.all_pass);
      for (const auto& ch : r.charts) {
        CHECK_FALSE(ch.wedge.degenerate);
        CHECK(ch.wedge.saturated == std::vector<int>{1, 1});
      }
    }
  }

  TEST_CASE("supplied modules and unit groups") {
    const CuspCycle c = cusp_cycle(QuadSurd(5, 2, 21), std::nullopt, 2);
    CHECK(c.digits == std::vector<std::int64_t>{5, 5});
    const CuspCycle d = cusp_cycle(QuadSurd(5, 2, 21), QuadElem::half(21, 5, 1));
    CHECK(d.digits == std::vector<std::int64_t>{5});
    CHECK_THROWS_AS(cusp_cycle(QuadSurd(5, 2, 21), QuadElem(21, 2, 0)), DomainError);
    // Non-reduced input is reduced first.
    CHECK(cusp_cycle(QuadSurd(1, 2, 5), std::nullopt).digits == std::vector<std::int64_t>{3});
  }
}
