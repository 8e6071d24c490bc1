#pragma once

// Slow, independent reference computations used by the tests.

#include "ggl/arith.hpp"
#include "ggl/lfunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using ggl::BigInt;
using ggl::Rational;

struct Pell {
  std::int64_t t = 0, u = 0;
  int norm = 0;
};

/// Smallest u >= 1 with D u^2 -+ 4 a square; -4 first (smaller t).
inline Pell brute_pell(std::int64_t D, std::int64_t u_max = 10'000'000) {
  for (std::int64_t u = 1; u <= u_max; ++u) {
    const __int128 base = static_cast<__int128>(D) * u * u;
    for (int norm : {-1, 1}) {
      const __int128 v = base + 4 * norm;
      if (v < 0) continue;
      auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
      while (static_cast<__int128>(r) * r > v) --r;
      while (static_cast<__int128>(r + 1) * (r + 1) <= v) ++r;
      if (static_cast<__int128>(r) * r == v) return {r, u, norm};
    }
  }
  return {};
}

/// Narrow class number as the number of cycles of Zagier-reduced forms
/// (a > 0, c > 0, b > a + c) under (a, b, c) -> (c, 2cn - b, cn^2 - bn + a),
/// n = ceil((b + sqrt D) / 2c).
inline std::int64_t zagier_narrow_class_number(std::int64_t D) {
  using F = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
  std::set<F> forms;
  const std::int64_t r = ggl::isqrt(D);
  for (std::int64_t a = 1; a <= D / 4 + 1; ++a) {
    for (std::int64_t t = -r; t <= r; ++t) {
      const std::int64_t b = 2 * a + t;
      if (t * t >= D || b <= 0 || b * b <= D || (b * b - D) % (4 * a) != 0) continue;
      const std::int64_t c = (b * b - D) / (4 * a);
      if (c > 0 && b > a + c) forms.insert({a, b, c});
    }
  }
  std::set<F> seen;
  std::int64_t cycles = 0;
  for (const F& f : forms) {
    if (seen.count(f)) continue;
    ++cycles;
    F g = f;
    while (!seen.count(g)) {
      seen.insert(g);
      auto [a, b, c] = g;
      const std::int64_t n = ggl::floor_surd(b, 1, 2 * c, D) + 1;
      g = {c, 2 * c * n - b, c * n * n - b * n + a};
      if (!forms.count(g)) return -1;  // map left the reduced set
    }
  }
  return cycles;
}

/// Siegel: zeta_K(-1) = (1/60) sum_{b^2 < D, b = D mod 2} sigma_1((D - b^2)/4).
inline Rational siegel_zeta_minus1(std::int64_t D) {
  BigInt s = 0;
  for (std::int64_t b = -ggl::isqrt(D); b * b < D; ++b) {
    if (((b - D) % 2 + 2) % 2 != 0) continue;
    const std::int64_t m = (D - b * b) / 4;
    std::int64_t sigma = 0;
    for (std::int64_t d = 1; d <= m; ++d)
      if (m % d == 0) sigma += d;
    s += sigma;
  }
  return Rational(s, 60);
}

/// zeta_K(2) = 4 pi^4 zeta_K(-1) / D^{3/2}.
inline long double zeta_K2_siegel(std::int64_t D) {
  const long double pi = std::numbers::pi_v<long double>;
  return 4 * pi * pi * pi * pi * ggl::to_long_double(siegel_zeta_minus1(D)) /
         std::pow(static_cast<long double>(D), 1.5L);
}

/// Even characters: L(2, chi_D) = pi^2 D^{-5/2} sum_{a=1}^{D} chi(a) a (a - D).
inline long double L2_even(std::int64_t D) {
  long double s = 0;
  for (std::int64_t a = 1; a <= D; ++a) s += ggl::kronecker_chi(D, a) * static_cast<long double>(a) * (a - D);
  const long double pi = std::numbers::pi_v<long double>;
  return pi * pi * s / std::pow(static_cast<long double>(D), 2.5L);
}

/// Odd characters: L(1, chi_d) = -pi |d|^{-3/2} sum_{a=1}^{|d|} chi(a) a.
inline long double L1_odd(std::int64_t d) {
  const std::int64_t q = -d;
  long double s = 0;
  for (std::int64_t a = 1; a <= q; ++a) s += ggl::kronecker_chi(d, a) * static_cast<long double>(a);
  return -std::numbers::pi_v<long double> * s / std::pow(static_cast<long double>(q), 1.5L);
}

/// Lattice point x + y w with w = (D mod 2 + sqrt D)/2.
struct LPoint {
  std::int64_t x, y;
  long double s1, s2;
};

/// Cusp cycle of O_K read off the boundary of the convex hull of the totally
/// positive integers: vertices v_{k-1} + v_{k+1} = b_k v_k between 1 and the
/// generator of U^+ (eps or eps^2), supplied as (t, u) with eps_V = (t + u sqrt D)/2.
inline std::vector<std::int64_t> hull_cycle(std::int64_t D, std::int64_t tV, std::int64_t uV) {
  const long double r = std::sqrt(static_cast<long double>(D));
  const long double w1 = (D % 2 + r) / 2, w2 = (D % 2 - r) / 2;
  const long double e1 = (tV + uV * r) / 2;
  // Box [0, L]^2 with L > e1 = 1 / e2 holds every vertex from the one before 1
  // through eps_V.
  const long double L = 1.01L * e1 + 1;
  std::vector<LPoint> pts;
  const auto ymax = static_cast<std::int64_t>(L / r) + 2;
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    const auto xlo = static_cast<std::int64_t>(std::floor(-y * std::max(w1, w2))) - 1;
    const auto xhi = static_cast<std::int64_t>(std::ceil(L - y * std::min(w1, w2))) + 1;
    for (std::int64_t x = xlo; x <= xhi; ++x) {
      const long double s1 = x + y * w1, s2 = x + y * w2;
      if (s1 > 0 && s2 > 0 && s1 <= L && s2 <= L) pts.push_back({x, y, s1, s2});
    }
  }
  std::sort(pts.begin(), pts.end(), [](const LPoint& a, const LPoint& b) { return a.s1 < b.s1; });
  // Lower hull keeping collinear boundary points. The embedding reverses
  // orientation, so a clockwise turn in (s1, s2) is a positive lattice cross.
  std::vector<LPoint> hull;
  for (const LPoint& p : pts) {
    while (hull.size() >= 2) {
      const LPoint& a = hull[hull.size() - 2];
      const LPoint& b = hull.back();
      const __int128 cross = static_cast<__int128>(b.x - a.x) * (p.y - a.y) - static_cast<__int128>(b.y - a.y) * (p.x - a.x);
      if (cross > 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  auto find = [&](std::int64_t x, std::int64_t y) {
    for (std::size_t i = 0; i < hull.size(); ++i)
      if (hull[i].x == x && hull[i].y == y) return static_cast<std::ptrdiff_t>(i);
    return static_cast<std::ptrdiff_t>(-1);
  };
  // eps_V in lattice coordinates: y = u, x = (t - u (D mod 2)) / 2.
  const std::ptrdiff_t i0 = find(1, 0);
  const std::ptrdiff_t i1 = find((tV - uV * (D % 2)) / 2, uV);
  if (i0 < 1 || i1 < 0 || i1 + 1 >= static_cast<std::ptrdiff_t>(hull.size())) return {};
  std::vector<std::int64_t> digits;
  for (std::ptrdiff_t i = i0; i < i1; ++i) {
    const LPoint &a = hull[i - 1], &b = hull[i], &c = hull[i + 1];
    const std::int64_t num = b.x != 0 ? a.x + c.x : a.y + c.y;
    const std::int64_t den = b.x != 0 ? b.x : b.y;
    if (num % den != 0) return {};
    digits.push_back(num / den);
  }
  return digits;
}

struct Trace {
  std::int64_t p, q;
  friend auto operator<=>(const Trace&, const Trace&) = default;
};

/// Canonical totally elliptic traces by a wide numeric search.
inline std::set<Trace> brute_traces(std::int64_t D, std::int64_t box = 10) {
  std::set<Trace> out;
  const long double r = std::sqrt(static_cast<long double>(D));
  for (std::int64_t p = -box; p <= box; ++p) {
    for (std::int64_t q = -box; q <= box; ++q) {
      if (((p - q * D) % 2 + 2) % 2 != 0) continue;
      const long double s1 = (p + q * r) / 2, s2 = (p - q * r) / 2;
      if (std::fabs(s1) < 2 && std::fabs(s2) < 2) {
        const bool canon = q > 0 || (q == 0 && p >= 0);
        out.insert(canon ? Trace{p, q} : Trace{-p, -q});
      }
    }
  }
  return out;
}

}  // namespace oracle
