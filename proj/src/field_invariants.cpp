#include "ggl/field_invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

namespace ggl {

namespace {

constexpr long double kUnit = std::numeric_limits<long double>::epsilon() / 2;

void require_real_fundamental(std::int64_t D, const char* what) {
  if (D <= 1 || !is_fundamental_discriminant(D)) {
    throw DomainError(std::string(what) + ": not a positive fundamental discriminant: " + std::to_string(D));
  }
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  const bool small = m < (std::int64_t{1} << 31);
  auto mul = [&](std::int64_t x, std::int64_t y) {
    return small ? x * y % m : static_cast<std::int64_t>(static_cast<__int128>(x) * y % m);
  };
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::int64_t bound) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<std::uint32_t>> cached;
  static std::int64_t cached_bound = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached || cached_bound < bound) {
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    auto primes = std::make_shared<std::vector<std::uint32_t>>();
    for (std::int64_t i = 2; i <= bound; ++i) {
      if (composite[static_cast<std::size_t>(i)]) continue;
      primes->push_back(static_cast<std::uint32_t>(i));
      for (std::int64_t j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    cached = primes;
    cached_bound = bound;
  }
  return cached;
}

}  // namespace

std::int64_t fundamental_discriminant(std::int64_t m) {
  if (m <= 1) throw DomainError("fundamental_discriminant: need m > 1, got " + std::to_string(m));
  if (!is_squarefree(m)) throw DomainError("fundamental_discriminant: " + std::to_string(m) + " is not squarefree");
  return discriminant_of_squarefree(m);
}

long double log_bigint(const BigInt& x) {
  if (x <= 0) throw DomainError("log of a nonpositive integer");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 64) return std::log(to_long_double(x));
  const std::size_t shift = bits - 64;
  const BigInt top = x >> shift;
  return std::log(to_long_double(top)) + static_cast<long double>(shift) * std::numbers::ln2_v<long double>;
}

UnitResult fundamental_unit(std::int64_t D) {
  require_real_fundamental(D, "fundamental_unit");
  // theta_0 = (P0 + sqrt D) / 2 generates O_K; theta_1 is reduced, so the
  // expansion is purely periodic from there.
  std::int64_t P = D % 2;
  std::int64_t Q = 2;
  auto step = [&](std::int64_t& p, std::int64_t& q) {
    const std::int64_t a = floor_surd(p, 1, q, D);
    const std::int64_t np = a * q - p;
    const std::int64_t nq = (D - np * np) / q;
    p = np;
    q = nq;
    return a;
  };
  step(P, Q);
  const std::int64_t P1 = P, Q1 = Q;

  // Bottom row of prod [[a_i, 1], [1, 0]].
  BigInt qk = 0, qprev = 1;
  int len = 0;
  do {
    const std::int64_t a = step(P, Q);
    BigInt next = qk * a + qprev;
    qprev = std::move(qk);
    qk = std::move(next);
    ++len;
  } while (P != P1 || Q != Q1);

  // eta = qk * theta_1 + qprev
  const BigInt two_q = 2 * qk;
  if (two_q % Q1 != 0 || (two_q * P1) % Q1 != 0) {
    throw VerificationError("fundamental_unit(" + std::to_string(D) + "): non-integral unit coordinates");
  }
  UnitResult out;
  out.eps.u = two_q / Q1;
  out.eps.t = two_q * P1 / Q1 + 2 * qprev;
  out.eps.norm = (len % 2 == 0) ? 1 : -1;
  out.period = len;
  const BigInt lhs = out.eps.t * out.eps.t - BigInt(D) * out.eps.u * out.eps.u;
  if (lhs != 4 * out.eps.norm) {
    throw VerificationError("fundamental_unit(" + std::to_string(D) + "): t^2 - D u^2 = " + lhs.str());
  }
  // R = log((t + u sqrt D)/2) = log(t - eps') with |eps'| = 1/eps.
  if (boost::multiprecision::msb(out.eps.t + 1) < 60) {
    const long double t = to_long_double(out.eps.t);
    const long double u = to_long_double(out.eps.u);
    out.R = std::log((t + u * std::sqrt(static_cast<long double>(D))) / 2);
  } else {
    out.R = log_bigint(out.eps.t);
  }
  return out;
}

std::vector<Form> reduced_forms(std::int64_t D) {
  require_real_fundamental(D, "reduced_forms");
  const std::int64_t s = isqrt(D);
  std::vector<Form> out;
  for (std::int64_t b = (D % 2 == 0) ? 2 : 1; b <= s; b += 2) {
    const std::int64_t n = (D - b * b) / 4;
    for (std::int64_t a : divisors(n)) {
      // sqrt D - b < 2a  and  2a < sqrt D + b, for a > 0
      const std::int64_t lo = 2 * a + b;
      const std::int64_t hi = 2 * a - b;
      if (lo * lo <= D) continue;
      if (hi >= 0 && hi * hi >= D) continue;
      out.push_back({a, b, -n / a});
      out.push_back({-a, b, n / a});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Form rho(const Form& f, std::int64_t D) {
  if (f.c == 0) throw DomainError("rho: degenerate form");
  const std::int64_t m = 2 * std::llabs(f.c);
  const std::int64_t s = isqrt(D);
  std::int64_t b;
  if (std::llabs(f.c) < s + 1) {
    // largest b' = -b mod 2|c| below sqrt D
    std::int64_t r = (s + f.b) % m;
    if (r < 0) r += m;
    b = s - r;
  } else {
    std::int64_t r = (-f.b) % m;
    if (r < 0) r += m;
    b = r > m / 2 ? r - m : r;
  }
  const std::int64_t num = b * b - D;
  if (num % (4 * f.c) != 0) throw VerificationError("rho: non-integral coefficient");
  return {f.c, b, num / (4 * f.c)};
}

ClassNumber class_number(std::int64_t D, int unit_norm) {
  const std::vector<Form> forms = reduced_forms(D);
  std::vector<bool> seen(forms.size(), false);
  auto index_of = [&](const Form& f) {
    auto it = std::lower_bound(forms.begin(), forms.end(), f);
    if (it == forms.end() || *it != f) {
      throw VerificationError("class_number(" + std::to_string(D) + "): rho left the reduced set");
    }
    return static_cast<std::size_t>(it - forms.begin());
  };
  ClassNumber out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (seen[i]) continue;
    ++out.cycles;
    std::size_t j = i;
    do {
      seen[j] = true;
      j = index_of(rho(forms[j], D));
    } while (j != i);
  }
  out.h_plus = out.cycles;
  if (unit_norm == -1) {
    out.h = out.h_plus;
  } else {
    if (out.h_plus % 2 != 0) throw VerificationError("class_number(" + std::to_string(D) + "): odd h+ with norm +1");
    out.h = out.h_plus / 2;
  }
  return out;
}

ClassNumber class_number(std::int64_t D) { return class_number(D, fundamental_unit(D).eps.norm); }

LValue dirichlet_L(int s, std::int64_t D_signed, long double tol, const LOptions& opt) {
  if (!is_fundamental_discriminant(D_signed)) {
    throw DomainError("dirichlet_L: not a fundamental discriminant: " + std::to_string(D_signed));
  }
  return L_value(LValueRequest{s, D_signed, tol}, opt);
}

ZetaK2 zeta_K2_euler(std::int64_t D, std::int64_t bound) {
  require_real_fundamental(D, "zeta_K2_euler");
  if (bound < 3) throw DomainError("zeta_K2_euler: bound too small");
  const auto primes = primes_up_to(bound);
  long double E = 1, Z2 = 1, Z4 = 1;
  std::size_t count = 0;
  for (std::uint32_t p32 : *primes) {
    if (p32 > bound) break;
    ++count;
    const std::int64_t p = p32;
    const long double pinv2 = 1.0L / (static_cast<long double>(p) * p);
    // Prime ideals above p: ramified, split or inert, read off from
    // solvability of x^2 = D (mod 4p).
    int kind;
    if (p == 2) {
      kind = (D % 2 == 0) ? 0 : (D % 8 == 1 ? 1 : -1);
    } else if (D % p == 0) {
      kind = 0;
    } else {
      kind = powmod(D, (p - 1) / 2, p) == 1 ? 1 : -1;
    }
    const long double f2 = 1 / (1 - pinv2);
    const long double f4 = 1 / (1 - pinv2 * pinv2);
    E *= kind == 0 ? f2 : (kind == 1 ? f2 * f2 : f4);
    Z2 *= f2;
    Z4 *= f4;
  }
  // Omitted factor T lies in [prod_{p>P} (1-p^-4)^-1, (prod_{p>P} (1-p^-2)^-1)^2].
  const long double z2_tail = zeta2_constant() / Z2;
  const long double z4_tail = zeta4_constant() / Z4;
  ZetaK2 out;
  out.dual_checked = false;
  out.euler_bound = bound;
  out.euler_value = E * z2_tail;
  const long double spread = std::max(z2_tail - 1, 1 - z4_tail / z2_tail);
  out.euler_error = E * z2_tail * std::max<long double>(spread, 0) + 16 * count * kUnit * out.euler_value;
  return out;
}

ZetaK2 zeta_K2(const QuadraticFieldInvariants& inv, bool dual, std::int64_t euler_bound) {
  ZetaK2 out;
  const long double z2 = zeta2_constant();
  out.value = z2 * inv.L2.value;
  out.error = z2 * inv.L2.error + 4 * kUnit * out.value;
  if (!dual) return out;
  const ZetaK2 e = zeta_K2_euler(inv.D, euler_bound);
  out.euler_value = e.euler_value;
  out.euler_error = e.euler_error;
  out.euler_bound = e.euler_bound;
  out.dual_checked = true;
  const long double diff = std::fabs(out.value - out.euler_value);
  if (diff > out.error + out.euler_error) {
    std::ostringstream os;
    os.precision(15);
    os << "zeta_K(2) for D=" << inv.D << ": character route " << out.value << " and Euler product "
       << out.euler_value << " differ by " << diff << " > " << (out.error + out.euler_error);
    throw NumericalAgreementError(os.str());
  }
  return out;
}

QuadraticFieldInvariants compute_invariants(std::int64_t D, const InvariantOptions& opt) {
  require_real_fundamental(D, "compute_invariants");
  QuadraticFieldInvariants inv;
  inv.D = D;
  inv.tol = opt.tol;
  {
    const CharacterTable chi(D);
    const LValuePair L = L_values_1_2(chi, opt.tol, opt.lopt);
    inv.L1 = L.s1;
    inv.L2 = L.s2;
  }
  const long double rootD = std::sqrt(static_cast<long double>(D));
  if (opt.exact) {
    const UnitResult unit = fundamental_unit(D);
    const ClassNumber cn = class_number(D, unit.eps.norm);
    inv.exact = true;
    inv.eps = unit.eps;
    inv.R = unit.R;
    inv.cf_period = unit.period;
    inv.h = cn.h;
    inv.h_plus = cn.h_plus;
    inv.hR = static_cast<long double>(cn.h) * unit.R;
    inv.hR_error = 8 * kUnit * inv.hR;
    const long double lhs = 2 * inv.hR / rootD;
    const long double allowed = std::max(opt.tol, inv.L1.error) + 8 * kUnit * lhs;
    if (std::fabs(lhs - inv.L1.value) > allowed) {
      std::ostringstream os;
      os.precision(15);
      os << "class number formula for D=" << D << ": 2hR/sqrt(D) = " << lhs << " but L(1) = " << inv.L1.value;
      throw NumericalAgreementError(os.str());
    }
  } else {
    inv.hR = rootD * inv.L1.value / 2;
    inv.hR_error = rootD * inv.L1.error / 2 + 4 * kUnit * inv.hR;
  }
  inv.zeta2 = zeta_K2(inv, opt.dual_zeta, opt.euler_bound);
  return inv;
}

std::shared_ptr<const QuadraticFieldInvariants> InvariantCache::get(std::int64_t D, const InvariantOptions& opt) {
  const Key key{D, opt.tol, opt.exact, opt.dual_zeta};
  {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }
  auto value = std::make_shared<const QuadraticFieldInvariants>(compute_invariants(D, opt));
  std::unique_lock lock(mu_);
  return map_.try_emplace(key, std::move(value)).first->second;
}

std::size_t InvariantCache::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

}  // namespace ggl
