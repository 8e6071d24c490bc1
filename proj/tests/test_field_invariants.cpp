#include "ggl/field_invariants.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <thread>

using namespace ggl;

TEST_SUITE("field_invariants") {
  TEST_CASE("fundamental_discriminant") {
    CHECK(fundamental_discriminant(5) == 5);
    CHECK(fundamental_discriminant(2) == 8);
    CHECK(fundamental_discriminant(3) == 12);
    CHECK(fundamental_discriminant(6) == 24);
    CHECK_THROWS_AS(fundamental_discriminant(4), DomainError);
    CHECK_THROWS_AS(fundamental_discriminant(1), DomainError);
    CHECK_THROWS_AS(fundamental_discriminant(-5), DomainError);
  }

  TEST_CASE("units against a Pell search") {
    for (std::int64_t D = 5; D <= 1500; ++D) {
      if (!is_fundamental_discriminant(D)) continue;
      const oracle::Pell p = oracle::brute_pell(D, 200000);
      if (p.u == 0) continue;  // too large for the search
      const UnitResult u = fundamental_unit(D);
      CHECK(u.eps.t == p.t);
      CHECK(u.eps.u == p.u);
      CHECK(u.eps.norm == p.norm);
      CHECK(u.eps.value(D).is_unit());
    }
  }

  TEST_CASE("known units") {
    const UnitResult u = fundamental_unit(1009);
    CHECK(u.eps.t == 1080);
    CHECK(u.eps.u == 34);
    CHECK(u.eps.norm == -1);
    const UnitResult big = fundamental_unit(4 * 94);
    CHECK(big.eps.t == 2 * 2143295);
    CHECK(big.eps.u == 221064);
    CHECK(std::fabs(fundamental_unit(5).R - 0.48121182505960344750L) < 1e-17L);
  }

  TEST_CASE("narrow class numbers against Zagier cycles") {
    for (std::int64_t D = 5; D <= 3000; ++D) {
      if (!is_fundamental_discriminant(D)) continue;
      const ClassNumber c = class_number(D);
      CHECK(c.h_plus == oracle::zagier_narrow_class_number(D));
      const int norm = fundamental_unit(D).eps.norm;
      CHECK(c.h == (norm < 0 ? c.h_plus : c.h_plus / 2));
    }
  }

  TEST_CASE("reduced forms and rho") {
    for (const Form& f : reduced_forms(229)) {
      CHECK(f.b * f.b - 4 * f.a * f.c == 229);
      const Form g = rho(f, 229);
      CHECK(g.b * g.b - 4 * g.a * g.c == 229);
    }
    CHECK(class_number(229).h == 3);
    CHECK(class_number(40).h == 2);
    CHECK(class_number(12).h_plus == 2);
  }

  TEST_CASE("zeta_K(2) against Siegel's formula") {
    InvariantOptions o;
    o.dual_zeta = false;
    for (std::int64_t D = 5; D <= 2000; ++D) {
      if (!is_fundamental_discriminant(D)) continue;
      const QuadraticFieldInvariants inv = compute_invariants(D, o);
      CHECK(std::fabs(inv.zeta2.value - oracle::zeta_K2_siegel(D)) <= inv.zeta2.error + 1e-13L);
    }
  }

  TEST_CASE("dual zeta route and D=5") {
    const QuadraticFieldInvariants inv = compute_invariants(5);
    CHECK(inv.exact);
    CHECK(inv.h == 1);
    CHECK(inv.zeta2.dual_checked);
    CHECK(std::fabs(inv.zeta2.value - inv.zeta2.euler_value) <= inv.zeta2.error + inv.zeta2.euler_error);
    CHECK(std::fabs(inv.zeta2.value - 1.1616711956186L) < 1e-12L);
    CHECK(std::fabs(2 * inv.hR / std::sqrt(5.0L) - inv.L1.value) < 1e-12L);
  }

  TEST_CASE("fast path hR") {
    InvariantOptions fast;
    fast.exact = false;
    fast.dual_zeta = false;
    const QuadraticFieldInvariants a = compute_invariants(229, fast);
    const QuadraticFieldInvariants b = compute_invariants(229);
    CHECK_FALSE(a.exact);
    CHECK(std::fabs(a.hR - b.hR) <= a.hR_error + 1e-15L);
  }

  TEST_CASE("invalid fields") {
    CHECK_THROWS_AS(compute_invariants(4), DomainError);
    CHECK_THROWS_AS(compute_invariants(-4), DomainError);
    CHECK_THROWS_AS(fundamental_unit(20), DomainError);
  }

  TEST_CASE("invariant cache under concurrency") {
    InvariantCache cache;
    InvariantOptions o;
    o.dual_zeta = false;
    std::vector<std::thread> pool;
    std::vector<long double> got(8);
    for (int t = 0; t < 8; ++t) pool.emplace_back([&, t] { got[t] = cache.get(13 + (t % 2) * 4, o)->hR; });
    for (auto& th : pool) th.join();
    CHECK(cache.size() == 2);
    for (int t = 2; t < 8; ++t) CHECK(got[t] == got[t % 2]);
  }
}
