#include "ggl/arith.hpp"

#include <cmath>
#include <cstdlib>

namespace ggl {

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw DomainError("isqrt of negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::int64_t n) {
  if (n < 0) return false;
  const auto r = isqrt(n);
  return r * r == n;
}

bool is_squarefree(std::int64_t n) {
  n = std::llabs(n);
  if (n == 0) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

std::int64_t squarefree_kernel(std::int64_t x) {
  if (x == 0) throw DomainError("squarefree kernel of zero");
  std::int64_t sign = x < 0 ? -1 : 1;
  std::int64_t n = std::llabs(x);
  std::int64_t kernel = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2 == 1) kernel *= p;
  }
  return sign * kernel * n;
}

std::int64_t discriminant_of_squarefree(std::int64_t m) {
  if (m == 0 || m == 1 || !is_squarefree(m)) {
    throw DomainError("expected a squarefree integer other than 0 and 1, got " + std::to_string(m));
  }
  return (((m % 4) + 4) % 4 == 1) ? m : 4 * m;
}

std::int64_t field_discriminant(std::int64_t x) {
  if (x > 0 && is_square(x)) throw DomainError("square has no quadratic field: " + std::to_string(x));
  return discriminant_of_squarefree(squarefree_kernel(x));
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  n = std::llabs(n);
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t divisor_sigma1(std::int64_t n) {
  std::int64_t s = 1;
  for (auto [p, e] : factorize(n)) {
    std::int64_t term = 1, pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      term += pk;
    }
    s *= term;
  }
  return s;
}

int sign_plus_sqrt(const BigInt& a, int s, std::int64_t D) {
  const int sa = a.sign();
  if (s == 0) return sa;
  if (sa == 0 || sa == s) return s;
  // Opposite signs: compare a^2 with D.
  return (a * a > D) ? sa : s;
}

int sign_quadratic(const Rational& x, const Rational& y, std::int64_t D) {
  const int sx = x.sign();
  const int sy = y.sign();
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  return (x * x > y * y * D) ? sx : sy;
}

std::int64_t floor_surd(std::int64_t P, int s, std::int64_t Q, std::int64_t D) {
  if (Q == 0) throw DomainError("floor_surd: zero denominator");
  const long double approx =
      (static_cast<long double>(P) + s * std::sqrt(static_cast<long double>(D))) / static_cast<long double>(Q);
  auto k = static_cast<std::int64_t>(std::floor(approx));
  const int sq = Q > 0 ? 1 : -1;
  // x - k has the sign of (P - kQ + s sqrt D) * sign(Q)
  auto diff_sign = [&](std::int64_t kk) { return sign_plus_sqrt(BigInt(P) - BigInt(kk) * Q, s, D) * sq; };
  while (diff_sign(k) < 0) --k;
  while (diff_sign(k + 1) >= 0) ++k;
  return k;
}

long double to_long_double(const Rational& r) { return r.convert_to<long double>(); }

long double to_long_double(const BigInt& r) { return r.convert_to<long double>(); }

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& token) {
  auto bad = [&] { return DomainError("not a rational number: '" + token + "'"); };
  auto parse_int = [&](std::string s, bool allow_sign) {
    bool neg = false;
    if (allow_sign && !s.empty() && (s[0] == '+' || s[0] == '-')) {
      neg = s[0] == '-';
      s.erase(0, 1);
    }
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw bad();
    BigInt v(s);
    return neg ? BigInt(-v) : v;
  };
  if (const auto slash = token.find('/'); slash != std::string::npos) {
    const BigInt den = parse_int(token.substr(slash + 1), false);
    if (den == 0) throw DomainError("zero denominator in '" + token + "'");
    return Rational(parse_int(token.substr(0, slash), true), den);
  }
  if (const auto dot = token.find('.'); dot != std::string::npos) {
    std::string whole = token.substr(0, dot);
    const std::string frac = token.substr(dot + 1);
    if (frac.empty()) throw bad();
    const bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational v = Rational(parse_int(whole, false)) + Rational(parse_int(frac, false), scale);
    return neg ? Rational(-v) : v;
  }
  return Rational(parse_int(token, true));
}

}  // namespace ggl
