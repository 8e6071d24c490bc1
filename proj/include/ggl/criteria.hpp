#pragma once

// Existence thresholds for modular forms with prescribed vanishing, the
// resulting per-field verdicts, and bulk scans over discriminants.

#include "ggl/elliptic.hpp"
#include "ggl/field_invariants.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ggl {

struct Thresholds {
  int n = 2;
  Rational epsilon;
  Rational b;        // 1 - n epsilon
  Rational nu_cusp;  // n / b
  std::vector<Rational> m;           // min(1, sum S_i) per elliptic orbit
  std::vector<Rational> c_elliptic;  // 1 / (m b)
};

Thresholds thresholds(int n, const Rational& epsilon, const std::vector<Rational>& S_sums = {});

/// Field data entering the leading coefficient; d_K, zeta_K(2) and hR may
/// come from any totally real field of degree n.
struct CriterionInputs {
  std::int64_t D = 0;
  long double d_K = 0;
  long double zeta2 = 0, zeta2_error = 0;
  long double hR = 0, hR_error = 0;
};

CriterionInputs criterion_inputs(const QuadraticFieldInvariants& inv);

long double rr_leading_coeff(const CriterionInputs& in, int n, long double nu);
long double nu_max(const CriterionInputs& in, int n);
/// First-order propagation of the zeta and hR errors into nu_max.
long double nu_max_error(const CriterionInputs& in, int n);

Rational beta_constant(const Rational& epsilon, int n, const Rational& sup_norm);
long double beta_constant(const Rational& epsilon, int n, long double sup_norm);

enum class Verdict { Satisfied, CandidateExceptional };
std::string to_string(Verdict v);

struct EllipticOrbit {
  std::string trace;
  Rational S_sum;        // sum of the rotation exponents used
  bool rotation_supplied = false;
  Rational m, c;         // c = 1 / (m b)
  long double nu_required = 0;  // n c = n / (m b)
  long double coefficient = 0;  // leading coefficient at nu_required
  long double margin = 0;       // nu_max - nu_required
  bool feasible = false;
};

struct CriterionReport {
  std::int64_t D = 0;
  int n = 2;
  Rational epsilon, b;
  long double nu_max = 0, nu_max_error = 0;
  long double nu_required = 0;  // nu_cusp
  long double rr_coefficient_at_required = 0;
  long double margin = 0;
  std::vector<EllipticOrbit> elliptic;
  bool elliptic_feasible = true;
  Verdict verdict = Verdict::CandidateExceptional;
  std::string assumption;
};

/// Rotation sums per orbit; an empty list means no elliptic points.
CriterionReport verdict(const CriterionInputs& in, int n, const Rational& epsilon,
                        const std::vector<std::pair<std::string, Rational>>& orbits);

/// Rotation data per trace string overrides the default, which is the least
/// age over the sign choices allowed by the trace's eigenvalue angles.
using RotationOverrides = std::map<std::string, std::vector<Rational>>;
CriterionReport verdict(const QuadraticFieldInvariants& inv, int n, const Rational& epsilon,
                        const EllipticSummary& ell, const RotationOverrides& rotation = {});

extern const char* const kJointExistenceAssumption;

struct ScanRecord {
  std::int64_t D = 0;
  bool exact = false;
  std::int64_t h = 0;
  long double R = 0;
  long double hR = 0;
  long double zeta2 = 0;
  long double nu_max = 0;
  long double nu_required = 0;
  long double margin = 0;
  long double elliptic_total_bound = 0;
  long double elliptic_nu_required = 0;
  bool elliptic_feasible = false;
  std::string verdict;  // Satisfied, CandidateExceptional, or NumericalError
  std::string error;

  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

class ScanCache {
 public:
  virtual ~ScanCache() = default;
  virtual std::optional<ScanRecord> find(std::int64_t D) = 0;
  virtual void put(const ScanRecord& rec) = 0;
};

struct ScanOptions {
  int n = 2;
  Rational epsilon{1, 100};
  long double tol = 1e-12L;
  unsigned threads = 0;           // 0: GGL_THREADS, then hardware concurrency
  std::int64_t exact_every = 16;  // exact (h, R) for every k-th field
  ScanCache* cache = nullptr;
};

struct BlockFraction {
  std::int64_t lo = 0, hi = 0;  // [lo, hi)
  std::int64_t fields = 0, failing = 0;
  std::int64_t cusp_failing = 0;  // nu_max <= nu_cusp, ignoring elliptic orders
};

struct ScanReport {
  std::int64_t D_max = 0;
  int n = 2;
  Rational epsilon;
  long double tol = 0;
  std::vector<ScanRecord> records;  // sorted by D
  std::vector<std::int64_t> failing;
  std::int64_t largest_failing = 0;
  std::vector<BlockFraction> blocks;  // dyadic blocks [2^k, 2^{k+1})
  std::size_t cache_hits = 0;
};

ScanRecord scan_field(std::int64_t D, const ScanOptions& opt, bool force_exact = false);
ScanReport scan(std::int64_t D_max, const ScanOptions& opt = {});
unsigned scan_threads(const ScanOptions& opt);

/// Fundamental discriminants 5 <= D <= D_max in increasing order.
std::vector<std::int64_t> fundamental_discriminants(std::int64_t D_max);

}  // namespace ggl
