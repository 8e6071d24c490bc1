#include "ggl/elliptic.hpp"

#include "ggl/cyclic.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ggl {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

std::int64_t to_int64(const Rational& r, const char* what) {
  if (denominator(r) != 1) throw VerificationError(std::string(what) + " is not an integer: " + to_string(r));
  return numerator(r).convert_to<std::int64_t>();
}

int roots_of_unity_biquadratic(const std::array<std::int64_t, 3>& d) {
  bool m3 = false, m4 = false, m8 = false, p8 = false;
  for (std::int64_t x : d) {
    m3 = m3 || x == -3;
    m4 = m4 || x == -4;
    m8 = m8 || x == -8;
    p8 = p8 || x == 8;
  }
  if (m3 && m4) return 12;  // Q(zeta_12)
  if (m4 && m8 && p8) return 8;  // Q(zeta_8)
  if (m4) return 4;
  if (m3) return 6;
  return 2;
}

}  // namespace

std::int64_t EllipticTrace::norm_4_minus_s2() const {
  const QuadElem x = QuadElem(s.D(), Rational(4), Rational(0)) - s * s;
  return to_int64(x.norm(), "N(4 - s^2)");
}

std::vector<EllipticTrace> elliptic_traces(std::int64_t D) {
  if (!is_fundamental_discriminant(D) || D <= 1) throw DomainError("elliptic_traces: D must be a positive fundamental discriminant");
  std::vector<EllipticTrace> out;
  for (std::int64_t q = 0; q * q * D < 16; ++q) {
    for (std::int64_t p = (q == 0 ? 0 : -3); p <= 3; ++p) {
      if (((p - q * D) % 2 + 2) % 2 != 0) continue;
      EllipticTrace t{QuadElem::half(D, BigInt(p), BigInt(q)), p, q, q == 0};
      bool ok = true;
      for (int j = 0; j < 2 && ok; ++j) {
        const Rational y = j == 0 ? Rational(q, 2) : Rational(-q, 2);
        ok = sign_quadratic(Rational(p, 2) - 2, y, D) < 0 && sign_quadratic(Rational(p, 2) + 2, y, D) > 0;
      }
      if (ok) out.push_back(std::move(t));
    }
  }
  return out;
}

CMExtensionInvariants cm_extension_invariants(std::int64_t D, const Rational& s, long double tol, const LValue* L1_D) {
  if (denominator(s) != 1) throw DomainError("cm_extension_invariants: trace " + to_string(s) + " is not rational");
  const std::int64_t si = numerator(s).convert_to<std::int64_t>();
  if (si * si >= 4) throw DomainError("cm_extension_invariants: |s| must be < 2");
  CMExtensionInvariants out;
  out.D = D;
  out.s = s;
  const std::int64_t x = si * si - 4;
  const std::int64_t d2 = field_discriminant(x);
  const std::int64_t d3 = field_discriminant(D * x);
  out.subfield_discs = {D, d2, d3};
  out.d_Kprime = D * std::abs(d2) * std::abs(d3);
  out.w_prime = roots_of_unity_biquadratic(out.subfield_discs);
  if (out.d_Kprime % (D * D) != 0) throw VerificationError("cm_extension_invariants: D^2 does not divide d_K'");
  out.N_rel_disc = out.d_Kprime / (D * D);
  const std::int64_t n4 = x * x;
  if (n4 % out.N_rel_disc != 0) throw VerificationError("cm_extension_invariants: N(D_{K'/K}) does not divide N(4 - s^2)");
  out.N_U0_sq = n4 / out.N_rel_disc;

  const LValue a = dirichlet_L(1, d2, tol);
  const LValue b = dirichlet_L(1, d3, tol);
  const LValue c = L1_D ? *L1_D : dirichlet_L(1, D, tol);
  const long double scale = out.w_prime * std::sqrt(static_cast<long double>(out.d_Kprime)) / (4 * kPi * kPi);
  out.hR_prime = scale * a.value * b.value * c.value;
  out.hR_prime_error =
      out.hR_prime * (a.error / a.value + b.error / b.value + c.error / c.value) + 8 * out.hR_prime * LDBL_EPSILON;
  return out;
}

long double residue_upper_bound(int n, long double d) {
  return std::pow(std::exp(1.0L) * std::log(d) / (2.0L * (n - 1)), static_cast<long double>(n - 1));
}

std::vector<Rational> rotation_angles(const EllipticTrace& t) {
  std::vector<Rational> out;
  for (int j = 0; j < 2; ++j) {
    const long double v = t.s.embedding(j);
    bool found = false;
    for (std::int64_t N = 1; N <= 12 && !found; ++N) {
      for (std::int64_t a = 1; a < N && !found; ++a) {
        if (std::gcd(a, N) != 1) continue;
        if (std::fabs(2 * std::cos(kPi * a / N) - v) < 1e-12L) {
          out.emplace_back(a, N);
          found = true;
        }
      }
    }
    if (!found) throw VerificationError("rotation_angles: no root of unity matches " + t.str());
  }
  return out;
}

Rational worst_case_age(const std::vector<Rational>& angles) {
  Rational best = 1;
  const std::size_t m = angles.size();
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<Rational> S;
    for (std::size_t j = 0; j < m; ++j) S.push_back((mask >> j) & 1u ? Rational(1 - angles[j]) : angles[j]);
    best = std::min(best, minimal_age(S));
  }
  return best;
}

TraceBound trace_count_bound(const QuadraticFieldInvariants& inv, const EllipticTrace& t) {
  if (t.s.D() != inv.D) throw DomainError("trace_count_bound: trace from a different field");
  TraceBound out;
  out.trace = t;
  out.norm_4_minus_s2 = t.norm_4_minus_s2();
  out.angles = rotation_angles(t);
  out.min_age = worst_case_age(out.angles);
  const long double hR = inv.hR;
  const long double n4 = static_cast<long double>(out.norm_4_minus_s2);
  if (t.rational) {
    out.cm = cm_extension_invariants(inv.D, t.s.x(), inv.tol, &inv.L1);
    const long double ratio = out.cm->hR_prime / hR;
    const long double ratio_err = ratio * (out.cm->hR_prime_error / out.cm->hR_prime + inv.hR_error / hR);
    const long double factor = out.cm->N_U0_sq == 1 ? 1.0L : n4;
    out.exact = out.cm->N_U0_sq == 1;
    out.bound = ratio * factor;
    out.error = ratio_err * factor;
  } else {
    // d_K' <= N(4 - s^2) D^2 and w' <= 12 for a quartic CM field.
    const long double dK = static_cast<long double>(inv.D);
    const long double d_upper = n4 * dK * dK;
    const long double hRp = 12 * std::sqrt(d_upper) * residue_upper_bound(4, d_upper) / (4 * kPi * kPi);
    out.unresolved = true;
    out.bound = hRp / hR * n4;
    out.error = out.bound * inv.hR_error / hR;
  }
  return out;
}

TraceBound trace_count_bound(std::int64_t D, const EllipticTrace& t) {
  InvariantOptions opt;
  opt.dual_zeta = false;
  return trace_count_bound(compute_invariants(D, opt), t);
}

EllipticSummary elliptic_summary(const QuadraticFieldInvariants& inv) {
  EllipticSummary out;
  out.D = inv.D;
  out.all_exact = true;
  for (const EllipticTrace& t : elliptic_traces(inv.D)) {
    out.traces.push_back(trace_count_bound(inv, t));
    out.total_bound += out.traces.back().bound;
    out.total_error += out.traces.back().error;
    out.all_exact = out.all_exact && out.traces.back().exact;
    out.any_unresolved = out.any_unresolved || out.traces.back().unresolved;
  }
  out.log_ratio = std::log(out.total_bound) / std::log(static_cast<long double>(inv.D));
  return out;
}

EllipticSummary elliptic_summary(std::int64_t D) {
  InvariantOptions opt;
  opt.dual_zeta = false;
  return elliptic_summary(compute_invariants(D, opt));
}

}  // namespace ggl
