#include "ggl/criteria.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <thread>

namespace ggl {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kU = LDBL_EPSILON;

void check_epsilon(int n, const Rational& epsilon) {
  if (n < 1) throw DomainError("degree n must be positive");
  if (epsilon <= 0 || epsilon * n >= 1) {
    throw DomainError("epsilon must lie in (0, 1/" + std::to_string(n) + "), got " + to_string(epsilon));
  }
}

}  // namespace

const char* const kJointExistenceAssumption =
    "elliptic orders use the same leading-coefficient count as the cusp order (joint existence assumed)";

Thresholds thresholds(int n, const Rational& epsilon, const std::vector<Rational>& S_sums) {
  check_epsilon(n, epsilon);
  Thresholds t;
  t.n = n;
  t.epsilon = epsilon;
  t.b = 1 - n * epsilon;
  t.nu_cusp = Rational(n) / t.b;
  for (const Rational& s : S_sums) {
    if (s <= 0) throw DomainError("rotation sum must be positive, got " + to_string(s) + " (smooth point?)");
    const Rational m = std::min(Rational(1), s);
    t.m.push_back(m);
    t.c_elliptic.push_back(1 / (m * t.b));
  }
  return t;
}

CriterionInputs criterion_inputs(const QuadraticFieldInvariants& inv) {
  CriterionInputs in;
  in.D = inv.D;
  in.d_K = static_cast<long double>(inv.D);
  in.zeta2 = inv.zeta2.value;
  in.zeta2_error = inv.zeta2.error;
  in.hR = inv.hR;
  in.hR_error = inv.hR_error;
  return in;
}

long double rr_leading_coeff(const CriterionInputs& in, int n, long double nu) {
  if (n < 2) throw DomainError("rr_leading_coeff: need n >= 2");
  if (nu < 0) throw DomainError("rr_leading_coeff: need nu >= 0");
  const long double nn = n;
  const long double first = std::pow(2.0L, 1 - 2 * nn) * std::pow(kPi, -2 * nn) * std::pow(in.d_K, 1.5L) * in.zeta2;
  const long double second = std::pow(2.0L, nn - 1) * std::pow(nu, nn) * std::pow(nn, -nn) * std::sqrt(in.d_K) * in.hR;
  return first - second;
}

long double nu_max(const CriterionInputs& in, int n) {
  if (n < 2) throw DomainError("nu_max: need n >= 2");
  if (!(in.hR > in.hR_error) || !(in.hR > 0)) {
    throw NumericalAgreementError("nu_max: hR is not resolved above its error for D=" + std::to_string(in.D));
  }
  return n / (8 * kPi * kPi) * std::pow(4 * in.d_K * in.zeta2 / in.hR, 1.0L / n);
}

long double nu_max_error(const CriterionInputs& in, int n) {
  const long double v = nu_max(in, n);
  return v / n * (in.zeta2_error / in.zeta2 + in.hR_error / in.hR) + 16 * kU * v;
}

Rational beta_constant(const Rational& epsilon, int n, const Rational& sup_norm) {
  check_epsilon(n, epsilon);
  if (sup_norm <= 0) throw DomainError("beta_constant: sup norm must be positive");
  return epsilon / 2 / sup_norm;
}

long double beta_constant(const Rational& epsilon, int n, long double sup_norm) {
  check_epsilon(n, epsilon);
  if (!(sup_norm > 0)) throw DomainError("beta_constant: sup norm must be positive");
  return to_long_double(epsilon) / 2 / sup_norm;
}

std::string to_string(Verdict v) { return v == Verdict::Satisfied ? "Satisfied" : "CandidateExceptional"; }

CriterionReport verdict(const CriterionInputs& in, int n, const Rational& epsilon,
                        const std::vector<std::pair<std::string, Rational>>& orbits) {
  std::vector<Rational> sums;
  for (const auto& o : orbits) sums.push_back(o.second);
  const Thresholds t = thresholds(n, epsilon, sums);
  CriterionReport r;
  r.D = in.D;
  r.n = n;
  r.epsilon = epsilon;
  r.b = t.b;
  r.nu_max = nu_max(in, n);
  r.nu_max_error = nu_max_error(in, n);
  r.nu_required = to_long_double(t.nu_cusp);
  r.rr_coefficient_at_required = rr_leading_coeff(in, n, r.nu_required);
  r.margin = r.nu_max - r.nu_required;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    EllipticOrbit o;
    o.trace = orbits[i].first;
    o.S_sum = orbits[i].second;
    o.m = t.m[i];
    o.c = t.c_elliptic[i];
    o.nu_required = to_long_double(Rational(n * o.c));
    o.coefficient = rr_leading_coeff(in, n, o.nu_required);
    o.margin = r.nu_max - o.nu_required;
    o.feasible = o.margin > 0;
    r.elliptic_feasible = r.elliptic_feasible && o.feasible;
    r.elliptic.push_back(std::move(o));
  }
  if (!orbits.empty()) r.assumption = kJointExistenceAssumption;
  r.verdict = r.margin > 0 && r.elliptic_feasible ? Verdict::Satisfied : Verdict::CandidateExceptional;
  return r;
}

CriterionReport verdict(const QuadraticFieldInvariants& inv, int n, const Rational& epsilon,
                        const EllipticSummary& ell, const RotationOverrides& rotation) {
  if (ell.D != inv.D) throw DomainError("verdict: elliptic summary belongs to a different field");
  std::vector<std::pair<std::string, Rational>> orbits;
  std::vector<bool> supplied;
  for (const TraceBound& tb : ell.traces) {
    const std::string key = tb.trace.str();
    if (auto it = rotation.find(key); it != rotation.end()) {
      Rational s = 0;
      for (const Rational& x : it->second) {
        if (x < 0 || x >= 1) throw DomainError("rotation exponent outside [0, 1) for trace " + key);
        s += x;
      }
      orbits.emplace_back(key, s);
      supplied.push_back(true);
    } else {
      orbits.emplace_back(key, tb.min_age);
      supplied.push_back(false);
    }
  }
  CriterionReport r = verdict(criterion_inputs(inv), n, epsilon, orbits);
  for (std::size_t i = 0; i < r.elliptic.size(); ++i) r.elliptic[i].rotation_supplied = supplied[i];
  return r;
}

std::vector<std::int64_t> fundamental_discriminants(std::int64_t D_max) {
  std::vector<std::int64_t> out;
  for (std::int64_t D = 5; D <= D_max; ++D)
    if (is_fundamental_discriminant(D)) out.push_back(D);
  return out;
}

ScanRecord scan_field(std::int64_t D, const ScanOptions& opt, bool force_exact) {
  ScanRecord rec;
  rec.D = D;
  try {
    InvariantOptions io;
    io.tol = opt.tol;
    io.dual_zeta = false;
    io.exact = force_exact;
    auto run = [&] {
      const QuadraticFieldInvariants inv = compute_invariants(D, io);
      const EllipticSummary ell = elliptic_summary(inv);
      return std::make_tuple(inv, ell, verdict(inv, opt.n, opt.epsilon, ell));
    };
    auto [inv, ell, rep] = run();
    if (!io.exact) {
      // Recompute with exact (h, R) when any margin is within reach of the error.
      const long double slack = 10 * std::max(opt.tol, rep.nu_max_error);
      bool close = std::fabs(rep.margin) <= slack;
      for (const EllipticOrbit& o : rep.elliptic) close = close || std::fabs(o.margin) <= slack;
      if (close) {
        io.exact = true;
        std::tie(inv, ell, rep) = run();
      }
    }
    rec.exact = inv.exact;
    rec.h = inv.exact ? inv.h : 0;
    rec.R = inv.exact ? inv.R : 0;
    rec.hR = inv.hR;
    rec.zeta2 = inv.zeta2.value;
    rec.nu_max = rep.nu_max;
    rec.nu_required = rep.nu_required;
    rec.margin = rep.margin;
    rec.elliptic_total_bound = ell.total_bound;
    for (const EllipticOrbit& o : rep.elliptic) rec.elliptic_nu_required = std::max(rec.elliptic_nu_required, o.nu_required);
    rec.elliptic_feasible = rep.elliptic_feasible;
    rec.verdict = to_string(rep.verdict);
  } catch (const NumericalAgreementError& e) {
    rec.verdict = "NumericalError";
    rec.error = e.what();
  } catch (const VerificationError& e) {
    rec.verdict = "NumericalError";
    rec.error = e.what();
  } catch (const LValueBudgetError& e) {
    rec.verdict = "NumericalError";
    rec.error = e.what();
  }
  return rec;
}

unsigned scan_threads(const ScanOptions& opt) {
  if (opt.threads > 0) return opt.threads;
  if (const char* env = std::getenv("GGL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024) throw DomainError(std::string("GGL_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScanReport scan(std::int64_t D_max, const ScanOptions& opt) {
  if (D_max < 5) throw DomainError("scan: D_max must be at least 5");
  check_epsilon(opt.n, opt.epsilon);
  ScanReport report;
  report.D_max = D_max;
  report.n = opt.n;
  report.epsilon = opt.epsilon;
  report.tol = opt.tol;
  const std::vector<std::int64_t> Ds = fundamental_discriminants(D_max);
  report.records.resize(Ds.size());

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < Ds.size(); ++i) {
    std::optional<ScanRecord> hit = opt.cache ? opt.cache->find(Ds[i]) : std::nullopt;
    if (hit) {
      report.records[i] = *hit;
      ++report.cache_hits;
    } else {
      todo.push_back(i);
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex cache_mu;
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      for (std::size_t k = next++; k < todo.size(); k = next++) {
        const std::size_t i = todo[k];
        const bool exact = opt.exact_every > 0 && i % static_cast<std::size_t>(opt.exact_every) == 0;
        report.records[i] = scan_field(Ds[i], opt, exact);
        if (opt.cache) {
          std::lock_guard lock(cache_mu);
          opt.cache->put(report.records[i]);
        }
      }
    } catch (...) {
      std::lock_guard lock(cache_mu);
      if (!failure) failure = std::current_exception();
      next = todo.size();
    }
  };
  const unsigned nthreads = std::min<unsigned>(scan_threads(opt), std::max<std::size_t>(1, todo.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  for (std::int64_t lo = 4; lo <= D_max; lo *= 2) report.blocks.push_back({lo, lo * 2, 0, 0, 0});
  for (const ScanRecord& r : report.records) {
    const bool failing = r.verdict != "Satisfied";
    if (failing) {
      report.failing.push_back(r.D);
      report.largest_failing = r.D;
    }
    for (BlockFraction& b : report.blocks) {
      if (r.D >= b.lo && r.D < b.hi) {
        ++b.fields;
        if (failing) ++b.failing;
        if (!(r.margin > 0)) ++b.cusp_failing;
      }
    }
  }
  return report;
}

}  // namespace ggl
