#include "ggl/hj.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace ggl;

TEST_SUITE("hj") {
  TEST_CASE("hj_expand") {
    CHECK(hj_expand(12, 5) == std::vector<std::int64_t>{3, 2, 3});
    CHECK(hj_expand(2, 1) == std::vector<std::int64_t>{2});
    CHECK(hj_expand(5, 4) == std::vector<std::int64_t>{2, 2, 2, 2});
    CHECK(hj_expand(7, 1) == std::vector<std::int64_t>{7});
    CHECK_THROWS_AS(hj_expand(5, 7), DomainError);
    CHECK_THROWS_AS(hj_expand(6, 4), DomainError);
    CHECK_THROWS_AS(hj_expand(6, 0), DomainError);
  }

  TEST_CASE("reconstruction on random coprime pairs") {
    std::mt19937_64 rng(12345);
    int done = 0;
    while (done < 1000) {
      const std::int64_t p = 2 + static_cast<std::int64_t>(rng() % 100000);
      const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p - 1));
      if (std::gcd(p, q) != 1) continue;
      const auto d = hj_expand(p, q);
      for (auto b : d) CHECK(b >= 2);
      CHECK(hj_value(d) == Rational(p, q));
      ++done;
    }
  }

  TEST_CASE("periodic expansion") {
    const PeriodicExpansion e = periodic_hj(QuadSurd(3, 2, 5));
    CHECK(e.digits == std::vector<std::int64_t>{3});
    const PeriodicExpansion f = periodic_hj(QuadSurd(4, 2, 8));
    CHECK(canonical_rotation(f.digits) == std::vector<std::int64_t>{2, 4});
    CHECK_THROWS_AS(periodic_hj(QuadSurd(1, 2, 5)), DomainError);
    const Reduction r = reduce_surd(QuadSurd(1, 2, 5));
    CHECK(r.reduced.is_reduced());
  }

  TEST_CASE("rotation and joining") {
    CHECK(canonical_rotation({5, 2, 2}) == std::vector<std::int64_t>{2, 2, 5});
    CHECK(join_digits({3, 2, 3}) == "3 2 3");
  }
}
