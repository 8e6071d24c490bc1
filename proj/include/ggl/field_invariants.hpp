#pragma once

#include "ggl/arith.hpp"
#include "ggl/lfunction.hpp"
#include "ggl/quad.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

namespace ggl {

/// D = m for m = 1 mod 4, else 4m. Rejects m <= 1 and non-squarefree m.
std::int64_t fundamental_discriminant(std::int64_t m);

/// epsilon = (t + u sqrt(D)) / 2 > 1 with t^2 - D u^2 = 4 * norm.
struct FundamentalUnit {
  BigInt t;
  BigInt u;
  int norm = 1;

  QuadElem value(std::int64_t D) const { return QuadElem::half(D, t, u); }
};

struct UnitResult {
  FundamentalUnit eps;
  long double R = 0;  // log(epsilon)
  int period = 0;     // length of the continued-fraction period that produced it
};

UnitResult fundamental_unit(std::int64_t D);

/// Natural log of a positive big integer, without overflow.
long double log_bigint(const BigInt& x);

/// Reduced indefinite form a x^2 + b xy + c y^2.
struct Form {
  std::int64_t a = 0, b = 0, c = 0;
  friend auto operator<=>(const Form&, const Form&) = default;
};

/// All reduced forms of discriminant D: 0 < b < sqrt(D), sqrt(D) - b < 2|a| < sqrt(D) + b.
std::vector<Form> reduced_forms(std::int64_t D);
/// The reduction step rho(a, b, c) = (c, b', (b'^2 - D) / 4c).
Form rho(const Form& f, std::int64_t D);

struct ClassNumber {
  std::int64_t h = 0;
  std::int64_t h_plus = 0;
  std::int64_t cycles = 0;
};

/// h_plus counts rho-cycles of reduced forms; h follows from the norm of epsilon.
ClassNumber class_number(std::int64_t D);
ClassNumber class_number(std::int64_t D, int unit_norm);

/// Validated wrapper: rejects non-fundamental D of either sign.
LValue dirichlet_L(int s, std::int64_t D_signed, long double tol, const LOptions& opt = {});

struct ZetaK2 {
  long double value = 0;  // zeta(2) L(2, chi_D)
  long double error = 0;
  bool dual_checked = false;
  long double euler_value = 0;  // truncated Euler product over prime ideals
  long double euler_error = 0;
  std::int64_t euler_bound = 0;
};

/// Euler product over prime ideals of norm p or p^2 with p <= bound, with a
/// certified bound on the omitted factor.
ZetaK2 zeta_K2_euler(std::int64_t D, std::int64_t bound);

struct InvariantOptions {
  long double tol = 1e-12L;
  bool exact = true;       // unit, regulator and class numbers
  bool dual_zeta = true;   // second evaluation of zeta_K(2)
  std::int64_t euler_bound = 10'000'000;
  LOptions lopt{};
};

struct QuadraticFieldInvariants {
  std::int64_t D = 0;
  bool exact = false;  // h, h_plus, eps, R filled in
  std::int64_t h = 0;
  std::int64_t h_plus = 0;
  FundamentalUnit eps;
  long double R = 0;
  int cf_period = 0;
  LValue L1, L2;
  long double hR = 0;        // h * R when exact, sqrt(D) L1 / 2 otherwise
  long double hR_error = 0;
  ZetaK2 zeta2;
  long double tol = 0;
};

QuadraticFieldInvariants compute_invariants(std::int64_t D, const InvariantOptions& opt = {});

/// zeta_K(2) from populated invariants (the character route), with the
/// dual evaluation when requested. Throws NumericalAgreementError when the
/// two routes differ by more than their combined error.
ZetaK2 zeta_K2(const QuadraticFieldInvariants& inv, bool dual, std::int64_t euler_bound = 10'000'000);

/// Memo of invariants keyed by (D, tol, exact, dual): concurrent readers,
/// serialized writers.
class InvariantCache {
 public:
  std::shared_ptr<const QuadraticFieldInvariants> get(std::int64_t D, const InvariantOptions& opt = {});
  std::size_t size() const;

 private:
  using Key = std::tuple<std::int64_t, long double, bool, bool>;
  mutable std::shared_mutex mu_;
  std::map<Key, std::shared_ptr<const QuadraticFieldInvariants>> map_;
};

}  // namespace ggl
