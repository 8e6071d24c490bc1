#pragma once

// Elliptic trace classes of SL_2(O_K) and upper bounds on the number of
// elliptic fixed points with a given trace.

#include "ggl/field_invariants.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ggl {

/// s = (p + q sqrt(D)) / 2 with both embeddings in (-2, 2). Canonical under
/// s <-> -s: q > 0, or q = 0 and p >= 0.
struct EllipticTrace {
  QuadElem s;
  std::int64_t p = 0, q = 0;
  bool rational = true;

  std::string str() const { return s.str(); }
  /// N(4 - s^2), a positive integer.
  std::int64_t norm_4_minus_s2() const;
};

std::vector<EllipticTrace> elliptic_traces(std::int64_t D);

struct CMExtensionInvariants {
  std::int64_t D = 0;
  Rational s;
  std::array<std::int64_t, 3> subfield_discs{};  // D, d2, d3
  std::int64_t d_Kprime = 0;
  int w_prime = 2;
  long double hR_prime = 0;
  long double hR_prime_error = 0;
  std::int64_t N_rel_disc = 0;  // d_Kprime / D^2
  std::int64_t N_U0_sq = 0;     // N(4 - s^2) / N_rel_disc
};

/// Rational traces only (s in {0, 1} after canonicalization).
CMExtensionInvariants cm_extension_invariants(std::int64_t D, const Rational& s, long double tol = 1e-12L,
                                              const LValue* L1_D = nullptr);

struct TraceBound {
  EllipticTrace trace;
  long double bound = 0;
  long double error = 0;
  bool exact = false;       // collapse case: a value, not only a bound
  bool unresolved = false;  // R'h'/Rh replaced by an analytic upper bound
  std::int64_t norm_4_minus_s2 = 0;
  std::optional<CMExtensionInvariants> cm;
  std::vector<Rational> angles;  // theta_j / pi for the eigenvalue e^{i theta_j} at embedding j
  Rational min_age;              // least age over the sign choices of the rotation data
};

TraceBound trace_count_bound(const QuadraticFieldInvariants& inv, const EllipticTrace& t);
TraceBound trace_count_bound(std::int64_t D, const EllipticTrace& t);

struct EllipticSummary {
  std::int64_t D = 0;
  std::vector<TraceBound> traces;
  long double total_bound = 0;
  long double total_error = 0;
  bool all_exact = false;
  bool any_unresolved = false;
  long double log_ratio = 0;  // log(total_bound) / log(D)
};

EllipticSummary elliptic_summary(const QuadraticFieldInvariants& inv);
EllipticSummary elliptic_summary(std::int64_t D);

/// theta_j / pi with 2 cos(theta_j) = s^{(j)}, as a reduced fraction a/N.
std::vector<Rational> rotation_angles(const EllipticTrace& t);

/// Smallest least-age over rotation data (+-a_1/N_1, +-a_2/N_2) mod 1.
Rational worst_case_age(const std::vector<Rational>& angles);

/// Upper bound for the residue at s = 1 of the Dedekind zeta function of a
/// degree-n field with discriminant d (Louboutin).
long double residue_upper_bound(int n, long double d);

}  // namespace ggl
