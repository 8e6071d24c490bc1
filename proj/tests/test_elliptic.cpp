#include "ggl/elliptic.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace ggl;

namespace {

std::set<oracle::Trace> as_set(const std::vector<EllipticTrace>& ts) {
  std::set<oracle::Trace> out;
  for (const auto& t : ts) out.insert({t.p, t.q});
  return out;
}

}  // namespace

TEST_SUITE("elliptic") {
  TEST_CASE("trace lists") {
    CHECK(as_set(elliptic_traces(5)) == std::set<oracle::Trace>{{0, 0}, {2, 0}, {1, 1}, {-1, 1}});
    CHECK(as_set(elliptic_traces(8)) == std::set<oracle::Trace>{{0, 0}, {2, 0}, {0, 1}});
    CHECK(as_set(elliptic_traces(13)) == std::set<oracle::Trace>{{0, 0}, {2, 0}});
    CHECK(as_set(elliptic_traces(12)) == std::set<oracle::Trace>{{0, 0}, {2, 0}, {0, 1}});
    CHECK_THROWS_AS(elliptic_traces(20), DomainError);
  }

  TEST_CASE("box enumeration is complete") {
    std::mt19937_64 rng(7);
    std::vector<std::int64_t> pool;
    for (std::int64_t D = 5; D <= 500; ++D)
      if (is_fundamental_discriminant(D)) pool.push_back(D);
    for (int i = 0; i < 50; ++i) {
      const std::int64_t D = pool[rng() % pool.size()];
      CHECK(as_set(elliptic_traces(D)) == oracle::brute_traces(D));
    }
  }

  TEST_CASE("CM extension invariants") {
    const CMExtensionInvariants a = cm_extension_invariants(5, 0);
    CHECK(a.subfield_discs == std::array<std::int64_t, 3>{5, -4, -20});
    CHECK(a.d_Kprime == 400);
    CHECK(a.w_prime == 4);
    CHECK(a.N_U0_sq == 1);
    const CMExtensionInvariants b = cm_extension_invariants(5, 1);
    CHECK(b.subfield_discs == std::array<std::int64_t, 3>{5, -3, -15});
    CHECK(b.w_prime == 6);
    const CMExtensionInvariants c = cm_extension_invariants(8, 0);
    CHECK(c.subfield_discs == std::array<std::int64_t, 3>{8, -4, -8});
    CHECK(c.d_Kprime == 256);
    CHECK(c.w_prime == 8);  // Q(zeta_8)
    CHECK(cm_extension_invariants(12, 0).w_prime == 12);  // Q(zeta_12)
    CHECK(cm_extension_invariants(13, 1).subfield_discs == std::array<std::int64_t, 3>{13, -3, -39});
    CHECK_THROWS_AS(cm_extension_invariants(5, Rational(1, 2)), DomainError);
    CHECK_THROWS_AS(cm_extension_invariants(5, 2), DomainError);
  }

  TEST_CASE("discriminant identities for D <= 10000") {
    LValue one;
    one.value = 1;
    for (std::int64_t D = 5; D <= 10000; ++D) {
      if (!is_fundamental_discriminant(D)) continue;
      for (int s : {0, 1}) {
        const CMExtensionInvariants x = cm_extension_invariants(D, s, 1e-12L, &one);
        CHECK(x.d_Kprime == D * std::abs(x.subfield_discs[1]) * std::abs(x.subfield_discs[2]));
        CHECK(x.N_U0_sq >= 1);
        CHECK(x.N_U0_sq * x.N_rel_disc == (s * s - 4) * (s * s - 4));
      }
    }
  }

  TEST_CASE("collapse case D=5, s=0") {
    const EllipticTrace t = elliptic_traces(5).front();
    REQUIRE(t.p == 0);
    REQUIRE(t.q == 0);
    long double prev = -1, prev_err = 0;
    for (long double tol : {1e-8L, 1e-10L, 1e-12L}) {
      InvariantOptions o;
      o.tol = tol;
      o.dual_zeta = false;
      const TraceBound b = trace_count_bound(compute_invariants(5, o), t);
      CHECK(b.exact);
      CHECK(b.bound > 0);
      CHECK(b.bound < 10);
      if (prev >= 0) CHECK(std::fabs(b.bound - prev) <= b.error + prev_err + 1e-15L);
      prev = b.bound;
      prev_err = b.error;
    }
    CHECK(std::fabs(prev - 2) < 1e-10L);
  }

  TEST_CASE("bounds are finite, positive and chained") {
    const EllipticSummary s = elliptic_summary(13);
    REQUIRE(s.traces.size() == 2);
    long double sum = 0;
    for (const auto& tb : s.traces) {
      CHECK(tb.bound > 0);
      CHECK(std::isfinite(tb.bound));
      CHECK(s.total_bound >= tb.bound);
      sum += tb.bound;
      if (tb.cm && tb.cm->N_U0_sq > 1) {
        CHECK(tb.bound <= tb.cm->hR_prime / compute_invariants(13).hR * tb.norm_4_minus_s2 * (1 + 1e-12L));
      }
    }
    CHECK(s.total_bound == doctest::Approx(static_cast<double>(sum)));
    const EllipticSummary f = elliptic_summary(5);
    CHECK(f.any_unresolved);
    CHECK_FALSE(f.all_exact);
  }

  TEST_CASE("rotation data") {
    const auto ts = elliptic_traces(5);
    for (const auto& t : ts) {
      const auto a = rotation_angles(t);
      if (t.p == 0) CHECK(a == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
      if (t.p == 2) CHECK(a == std::vector<Rational>{Rational(1, 3), Rational(1, 3)});
      if (t.q == 1 && t.p == 1) CHECK(a == std::vector<Rational>{Rational(1, 5), Rational(3, 5)});
      if (t.q == 1 && t.p == -1) CHECK(a == std::vector<Rational>{Rational(2, 5), Rational(4, 5)});
    }
    CHECK(worst_case_age({Rational(1, 2), Rational(1, 2)}) == 1);
    CHECK(worst_case_age({Rational(1, 3), Rational(1, 3)}) == Rational(2, 3));
    CHECK(worst_case_age({Rational(1, 5), Rational(3, 5)}) == Rational(3, 5));
    CHECK(worst_case_age({Rational(2, 5), Rational(4, 5)}) == Rational(3, 5));
  }

  TEST_CASE("residue bound dominates known residues") {
    // Q(zeta_5): d = 125, h = 1, w = 10, R = log((1+sqrt5)/2).
    const long double pi = std::numbers::pi_v<long double>;
    const long double R = std::log((1 + std::sqrt(5.0L)) / 2);
    const long double res = 4 * pi * pi * R / (10 * std::sqrt(125.0L));
    CHECK(res <= residue_upper_bound(4, 125));
  }
}
