#include "ggl/cyclic.hpp"

#include <doctest.h>

#include <numeric>
#include <sstream>

using namespace ggl;

TEST_SUITE("cyclic") {
  TEST_CASE("atlas sizes and determinants") {
    CHECK(hj_resolve(12, 5).charts.size() == 4);
    CHECK(hj_resolve(2, 1).charts.size() == 2);
    const ChartAtlas a = hj_resolve(5, 2);
    CHECK(a.rays.front() == std::array<Rational, 2>{1, 0});
    CHECK(a.rays.back() == std::array<Rational, 2>{0, 1});
    CHECK_THROWS_AS(hj_resolve(6, 4), DomainError);
    CHECK_THROWS_AS(hj_resolve(5, 5), DomainError);
  }

  TEST_CASE("tangency for every 1/n(1,q) with n <= 50") {
    for (std::int64_t n = 2; n <= 50; ++n) {
      for (std::int64_t q = 1; q < n; ++q) {
        if (std::gcd(n, q) != 1) continue;
        const ChartAtlas a = hj_resolve(n, q);
        for (const auto& r : tangency_divisor(a.charts, 2)) {
          CHECK(r.lambda == Rational(1, n));
          CHECK(r.lemma_holds);
        }
      }
    }
  }

  TEST_CASE("wedge conventions on a 3x3 chart") {
    ExponentMatrix B;
    B.B = {{Rational(1), Rational(1), Rational(1)}, {Rational(0), Rational(1), Rational(2)}, {Rational(0), Rational(0), Rational(1)}};
    const auto r = tangency_divisor(B);
    CHECK(r.lambda == 1);
    CHECK(r.exceptional == std::vector<bool>{true, false, false});
    CHECK(r.multiplicity == std::vector<int>{2, 2, 2});
    // wedge is u0^2 u1: u1 = 0 is not exceptional, so the lemma does not apply
    CHECK(r.saturated == std::vector<int>{2, 1, 0});
    CHECK_FALSE(r.lemma_holds);
    ExponentMatrix I;
    I.B = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    const auto ri = tangency_divisor(I);
    CHECK(ri.saturated == std::vector<int>{0, 0});
    CHECK(ri.lemma_holds);
    ExponentMatrix S;
    S.B = {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK(tangency_divisor(S).degenerate);
    CHECK_THROWS_AS(tangency_divisor({I}, 3), DomainError);
  }

  TEST_CASE("Tai bound") {
    const ChartAtlas a = hj_resolve(5, 2);
    for (const auto& c : a.charts) {
      const TaiResult t = tai_check({Rational(1, 5), Rational(2, 5)}, c);
      CHECK(t.m_value == Rational(3, 5));
      CHECK(t.all_pass);
    }
    // Literal sum against the group minimum.
    const ChartAtlas b = hj_resolve(5, 3);
    bool literal_all = true, group_all = true;
    for (const auto& c : b.charts) {
      literal_all = literal_all && tai_check({Rational(1, 5), Rational(3, 5)}, c).all_pass;
      group_all = group_all && tai_check_group({Rational(1, 5), Rational(3, 5)}, c).all_pass;
    }
    CHECK_FALSE(literal_all);
    CHECK(group_all);
    CHECK(minimal_age(5, 3) == Rational(3, 5));
    CHECK(minimal_age(12, 5) == Rational(1, 2));
    CHECK(minimal_age(2, 1) == 1);
    CHECK(tai_check({Rational(7, 10), Rational(7, 10)}, a.charts[0]).m_value == 1);
    CHECK_THROWS_AS(tai_check({Rational(1)}, a.charts[0]), DomainError);
  }

  TEST_CASE("Tai bound holds on every chart with the group minimum") {
    for (std::int64_t n = 2; n <= 40; ++n)
      for (std::int64_t q = 1; q < n; ++q) {
        if (std::gcd(n, q) != 1) continue;
        for (const auto& c : hj_resolve(n, q).charts)
          CHECK(tai_check_group({Rational(1, n), Rational(q, n)}, c).all_pass);
      }
  }

  TEST_CASE("metric extension at an elliptic point") {
    ExponentMatrix B;
    B.B = {{Rational(1, 2), Rational(1, 2)}, {Rational(0), Rational(1)}};
    const MetricExtension m = metric_extension_at_elliptic({3, 4}, 2, Rational(4, 5), B);
    CHECK(m.c == 3);
    CHECK(m.ord_G[0] == Rational(11, 2));
    CHECK(m.ord_G[1] == 6);
    // 2 b c * rowsum: row 0 = 2*4/5*3*1 = 24/5 > 2, row 1 same.
    CHECK(m.slack[0] == Rational(14, 5));
    CHECK(m.all_pass);
    const MetricExtension f = metric_extension_at_elliptic({1, 4}, 2, Rational(4, 5), B);
    CHECK(f.slack[0] == Rational(-2, 5));
    CHECK_FALSE(f.all_pass);
    // Boundary: 2bc * rowsum = 2 exactly fails (strict inequality).
    ExponentMatrix U;
    U.B = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    CHECK_FALSE(metric_extension_at_elliptic({1, 1}, 1, Rational(1), U).all_pass);
    CHECK_THROWS_AS(metric_extension_at_elliptic({1}, 1, Rational(1), U), DomainError);
    CHECK_THROWS_AS(metric_extension_at_elliptic({1, 1}, 1, Rational(0), U), DomainError);
  }

  TEST_CASE("matrix parser") {
    std::istringstream in("# two charts\n1 0\n1/12 5/12\n\n\n1/12 5/12  # tail\n1/6 5/6\n");
    const auto m = parse_matrices(in);
    REQUIRE(m.size() == 2);
    CHECK(m[0].B[1][1] == Rational(5, 12));
    CHECK(m[1].B[1][0] == Rational(1, 6));
    std::istringstream ragged("1 0\n1\n");
    CHECK_THROWS_AS(parse_matrices(ragged), DomainError);
    std::istringstream nonsq("1 0 0\n0 1 0\n");
    CHECK_THROWS_AS(parse_matrices(nonsq), DomainError);
    std::istringstream neg("1 -1\n0 1\n");
    CHECK_THROWS_AS(parse_matrices(neg), DomainError);
    std::istringstream junk("1 x\n0 1\n");
    CHECK_THROWS_AS(parse_matrices(junk), DomainError);
  }
}
