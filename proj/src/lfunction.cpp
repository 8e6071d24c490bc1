#include "ggl/lfunction.hpp"

#include "ggl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace ggl {

namespace {

constexpr long double kUnit = std::numeric_limits<long double>::epsilon() / 2;

int jacobi(std::int64_t a, std::int64_t n) {
  a %= n;
  if (a < 0) a += n;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

constexpr std::size_t kBlock = 128;

// Compensated accumulator (branch-free TwoSum).
struct CompensatedSum {
  long double sum = 0;
  long double comp = 0;
  void add(long double x) {
    const long double t = sum + x;
    const long double bb = t - sum;
    comp += (sum - (t - bb)) + (x - bb);
    sum = t;
  }
  long double value() const { return sum + comp; }
};

// (Delta^j f)(x) for f = n^{-s}, s in {1, 2}.
long double forward_difference(int s, int j, long double x) {
  long double v = 1.0L / x;
  long double h = 1.0L / x;
  for (int i = 1; i <= j; ++i) {
    v *= static_cast<long double>(i) / (x + i);
    h += 1.0L / (x + i);
  }
  return s == 1 ? v : v * h;
}

// Repeated prefix-sum tables of one period of chi, with rounding bounds.
// Level j stores G_j and mu_j; g_j = G_j - mu_j is formed on the fly.
class LevelTables {
 public:
  explicit LevelTables(const CharacterTable& chi) : q_(chi.period()), G_(static_cast<std::size_t>(q_)) {
    for (std::int64_t r = 1; r <= q_; ++r) G_[static_cast<std::size_t>(r - 1)] = chi(r);
    bound_.push_back(1);
    delta_.push_back(0);
    mu_.push_back(0);
    mu_err_.push_back(0);
  }

  int computed() const { return static_cast<int>(bound_.size()) - 1; }
  long double mu(int j) const { return mu_[static_cast<std::size_t>(j)]; }
  long double mu_err(int j) const { return mu_err_[static_cast<std::size_t>(j)]; }
  // Certified bound on max |g_j| for the exact table.
  long double bound(int j) const { return bound_[static_cast<std::size_t>(j)]; }
  long double delta(int j) const { return delta_[static_cast<std::size_t>(j)]; }

  void extend() {
    const long double qd = static_cast<long double>(q_);
    const long double mu_prev = mu_.back();
    const long double prev_bound = bound_.back();
    const long double prev_delta = delta_.back();

    // Plain sums inside short blocks, compensated carries across blocks.
    CompensatedSum base_acc, mean;
    long double base = 0;
    long double gmax = -std::numeric_limits<long double>::infinity();
    long double gmin = std::numeric_limits<long double>::infinity();
    const std::size_t n = G_.size();
    for (std::size_t lo = 0; lo < n; lo += kBlock) {
      const std::size_t hi = std::min(n, lo + kBlock);
      long double local = 0;
      long double block = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        local += G_[i] - mu_prev;
        const long double v = base + local;
        G_[i] = v;
        block += v;
        gmax = v > gmax ? v : gmax;  // cmov; std::max branches here
        gmin = v < gmin ? v : gmin;
      }
      base_acc.add(local);
      base = base_acc.value();
      mean.add(block);
    }
    const long double mu = mean.value() / qd;
    const long double max_G = std::max(std::fabs(gmax), std::fabs(gmin));

    // Rounded g_{j-1} differs from the exact one by at most delta_{j-1}
    // plus the rounding of the subtraction, which is folded into prev_delta.
    const long double len = std::min<long double>(kBlock, qd);
    const long double sum_err = 4 * kUnit * max_G + (len * len + 4 * qd * qd * kUnit) * kUnit * prev_bound;
    const long double e_G = qd * prev_delta + sum_err;
    const long double e_mu = e_G + (kBlock + 8) * kUnit * max_G;
    const long double delta = e_G + e_mu + kUnit * (max_G + std::fabs(mu));
    const long double bound = std::max(gmax - mu, mu - gmin) * (1 + 4 * kUnit) + delta;

    mu_.push_back(mu);
    mu_err_.push_back(e_mu);
    bound_.push_back(bound);
    delta_.push_back(delta * (1 + 16 * kUnit));
  }

 private:
  std::int64_t q_;
  std::vector<long double> G_;
  std::vector<long double> bound_, delta_, mu_, mu_err_;
};

struct TailResult {
  long double value = 0;
  long double remainder = 0;
  long double rounding = 0;
};

TailResult tail(const LevelTables& lv, int s, int k, long double x) {
  TailResult out;
  CompensatedSum acc;
  long double abs_sum = 0;
  for (int j = 1; j <= k; ++j) {
    const long double d = forward_difference(s, j - 1, x);
    const long double term = lv.mu(j) * d;
    acc.add(term);
    abs_sum += std::fabs(term);
    out.rounding += lv.mu_err(j) * d;
    // relative error of the product formula
    out.rounding += std::fabs(term) * (4 * j + 8) * kUnit;
  }
  out.value = acc.value();
  out.rounding += 3 * kUnit * abs_sum;
  out.remainder = lv.bound(k) * forward_difference(s, k - 1, x) * (1 + 64 * kUnit);
  return out;
}

// Partial sums and level tables shared between s = 1 and s = 2.
class PartialSumEngine {
 public:
  PartialSumEngine(const CharacterTable& chi, bool want1, bool want2, const LOptions& opt)
      : chi_(chi), q_(chi.period()), want_{want1, want2}, opt_(opt), lv_(chi) {
    const int warmup = std::min(opt.max_levels, 6);
    while (lv_.computed() < warmup) lv_.extend();
  }

  LValue evaluate(int s, long double tol) {
    const long double target = tol / 2;
    std::int64_t best_M = 0;
    int best_k = 0;
    long double best_cost = std::numeric_limits<long double>::infinity();
    // Relative costs of one partial-sum period and one level pass.
    const long double term_cost = want_[0] && want_[1] ? 0.45L : 0.35L;
    for (std::int64_t M = 1; static_cast<std::uint64_t>(M * q_) <= opt_.term_budget;
         M = M < 4 ? M + 1 : M + M / 2) {
      const long double extra = term_cost * static_cast<long double>(std::max<std::int64_t>(0, M - summed_ / q_));
      if (extra >= best_cost) break;
      const int k = levels_needed(s, static_cast<long double>(M * q_ + 1), target / 4);
      if (k == 0) continue;
      const long double cost = extra + std::max(0, k - lv_.computed());
      if (cost < best_cost) {
        best_cost = cost;
        best_M = M;
        best_k = k;
      }
    }
    if (best_M == 0) {
      best_M = 1;
      best_k = 1;
    }

    for (std::int64_t M = best_M;; M *= 2) {
      const std::int64_t N = M * q_;
      if (static_cast<std::uint64_t>(N) > opt_.term_budget) {
        throw LValueBudgetError("L(" + std::to_string(s) + ", chi_" + std::to_string(chi_.conductor()) +
                                "): tolerance " + std::to_string(static_cast<double>(tol)) +
                                " not reached within " + std::to_string(opt_.term_budget) + " terms");
      }
      extend_partial(std::max(N, summed_));
      // Partial sums may already run past N when shared; use the furthest multiple of q.
      const std::int64_t Nused = summed_;
      const long double x = static_cast<long double>(Nused + 1);
      const int si = s - 1;
      const long double partial_round = kUnit * ((kBlock + 4) * abs_[si] + 2 * std::fabs(partial_[si].value())) +
                                        4 * static_cast<long double>(Nused) * kUnit * kUnit * abs_[si];

      long double prev = std::numeric_limits<long double>::infinity();
      for (int k = std::max(1, M == best_M ? best_k : 1); k <= opt_.max_levels; ++k) {
        while (lv_.computed() < k) lv_.extend();
        const TailResult t = tail(lv_, s, k, x);
        const long double err = t.remainder + t.rounding + partial_round;
        if (err <= tol) {
          LValue out;
          out.value = partial_[si].value() + t.value;
          out.error = err + 2 * kUnit * std::fabs(out.value);
          out.terms = static_cast<std::uint64_t>(Nused);
          out.levels = k;
          out.method = "partial-sums";
          return out;
        }
        // Once the remainder grows again a larger M is needed.
        if (err > prev && k > best_k) break;
        prev = err;
      }
    }
  }

 private:
  // Smallest k whose modelled remainder plus rounding is within target, or 0.
  // Levels beyond the computed ones are extrapolated geometrically.
  int levels_needed(int s, long double x, long double target) const {
    const int c = lv_.computed();
    const long double rho = lv_.bound(c) / lv_.bound(c - 1);
    const long double rho_d = lv_.delta(c) / lv_.delta(c - 1);
    long double b = 0, dl = 0;
    long double v = 1.0L / x;  // Delta^{j-1}(1/n) at x
    long double h = 1.0L / x;
    long double rounding = 0;
    for (int k = 1; k <= opt_.max_levels; ++k) {
      if (k > 1) {
        v *= static_cast<long double>(k - 1) / (x + (k - 1));
        h += 1.0L / (x + (k - 1));
      }
      b = k <= c ? lv_.bound(k) : b * rho;
      dl = k <= c ? lv_.delta(k) : dl * rho_d;
      const long double diff = s == 1 ? v : v * h;
      rounding += dl * diff;
      if (b * diff + rounding <= target) return k;
    }
    return 0;
  }

  // Plain sums over short blocks, compensated across blocks. Accumulators
  // are scalars so they stay in x87 registers.
  void extend_partial(std::int64_t N) {
    const std::int8_t* values = chi_.values().data();
    std::int64_t r = summed_ % q_;
    std::int64_t n = summed_ + 1;
    while (n <= N) {
      const std::int64_t stop = std::min<std::int64_t>(N, n + static_cast<std::int64_t>(kBlock) - 1);
      long double b1 = 0, a1 = 0, b2 = 0, a2 = 0;
      for (; n <= stop; ++n) {
        if (++r == q_) r = 0;
        const long double c = values[r];
        const long double inv = 1.0L / static_cast<long double>(n);
        const long double inv2 = inv * inv;
        a1 += inv;
        b1 += c * inv;
        a2 += inv2;
        b2 += c * inv2;
      }
      partial_[0].add(b1);
      partial_[1].add(b2);
      abs_[0] += a1;
      abs_[1] += a2;
    }
    summed_ = N;
  }

  const CharacterTable& chi_;
  std::int64_t q_;
  bool want_[2];
  LOptions opt_;
  LevelTables lv_;
  CompensatedSum partial_[2];
  long double abs_[2] = {0, 0};
  std::int64_t summed_ = 0;
};

LValue class_number_route(std::int64_t d) {
  const std::int64_t h = imaginary_class_number(d);
  const long double pi = std::numbers::pi_v<long double>;
  LValue out;
  out.value = 2 * pi * static_cast<long double>(h) / (roots_of_unity(d) * std::sqrt(static_cast<long double>(-d)));
  out.error = 8 * kUnit * out.value;
  out.method = "class-number";
  return out;
}

void check_tol(long double tol) {
  if (!(tol > 0)) throw DomainError("L_value: tolerance must be positive");
}

}  // namespace

int kronecker_chi(std::int64_t d, std::int64_t n) {
  if (n < 0) throw DomainError("kronecker_chi: n must be nonnegative");
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (d % 2 == 0) return 0;
    const std::int64_t r = ((d % 8) + 8) % 8;
    if (v % 2 == 1 && (r == 3 || r == 5)) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

CharacterTable::CharacterTable(std::int64_t d) : d_(d) {
  if (!is_fundamental_discriminant(d)) {
    throw DomainError("not a fundamental discriminant: " + std::to_string(d));
  }
  const auto q = static_cast<std::size_t>(d < 0 ? -d : d);
  constexpr std::int8_t unset = 2;
  values_.assign(q, unset);
  values_[0] = 0;
  if (q > 1) values_[1] = 1;
  std::vector<std::uint32_t> primes;
  for (std::size_t i = 2; i < q; ++i) {
    if (values_[i] == unset) {
      primes.push_back(static_cast<std::uint32_t>(i));
      values_[i] = static_cast<std::int8_t>(kronecker_chi(d, static_cast<std::int64_t>(i)));
    }
    for (std::uint32_t p : primes) {
      const std::size_t ip = i * p;
      if (ip >= q) break;
      values_[ip] = static_cast<std::int8_t>(values_[i] * values_[p]);
      if (i % p == 0) break;
    }
  }
}

long double zeta2_constant() { return std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6; }

long double zeta4_constant() {
  const long double p2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;
  return p2 * p2 / 90;
}

int roots_of_unity(std::int64_t d) {
  if (d == -3) return 6;
  if (d == -4) return 4;
  return 2;
}

SpfTable::SpfTable(std::int64_t limit) : spf_(static_cast<std::size_t>(std::max<std::int64_t>(limit, 2)) + 1, 0) {
  const auto n = spf_.size();
  for (std::size_t i = 2; i < n; ++i) {
    if (spf_[i] != 0) continue;
    for (std::size_t j = i; j < n; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

std::vector<std::pair<std::int64_t, int>> SpfTable::factor(std::int64_t n) const {
  std::vector<std::pair<std::int64_t, int>> out;
  while (n > 1) {
    const std::int64_t p = spf(n);
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

std::shared_ptr<const SpfTable> spf_table(std::int64_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const SpfTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->limit() < limit) {
    const std::int64_t grow = table ? 2 * table->limit() : 1 << 16;
    table = std::make_shared<const SpfTable>(std::max(limit, grow));
  }
  return table;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n <= 0) throw DomainError("divisors of a nonpositive number");
  constexpr std::int64_t kSieveLimit = 1 << 24;
  const auto fac = n <= kSieveLimit ? spf_table(n)->factor(n) : factorize(n);
  std::vector<std::int64_t> out{1};
  for (auto [p, e] : fac) {
    const std::size_t len = out.size();
    std::int64_t pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t t = 0; t < len; ++t) out.push_back(out[t] * pk);
    }
  }
  return out;
}

std::int64_t imaginary_class_number(std::int64_t d) {
  if (d >= 0 || !is_fundamental_discriminant(d)) {
    throw DomainError("imaginary_class_number needs a negative fundamental discriminant, got " + std::to_string(d));
  }
  const std::int64_t n = -d;
  std::int64_t h = 0;
  // Reduced forms (a, b, c): |b| <= a <= c, b >= 0 when |b| = a or a = c.
  for (std::int64_t b = n % 2; 3 * b * b <= n; b += 2) {
    const std::int64_t m = (b * b + n) / 4;
    for (std::int64_t a : divisors(m)) {
      if (a < std::max<std::int64_t>(b, 1) || a * a > m) continue;
      const std::int64_t c = m / a;
      h += (b == 0 || b == a || a == c) ? 1 : 2;
    }
  }
  return h;
}

LValue L_value(const CharacterTable& chi, int s, long double tol, const LOptions& opt) {
  if (s != 1 && s != 2) throw DomainError("L_value: s must be 1 or 2");
  check_tol(tol);
  const std::int64_t d = chi.conductor();
  if (s == 1 && d < 0 && opt.method == LMethod::Auto) return class_number_route(d);
  PartialSumEngine engine(chi, s == 1, s == 2, opt);
  return engine.evaluate(s, tol);
}

LValuePair L_values_1_2(const CharacterTable& chi, long double tol, const LOptions& opt) {
  check_tol(tol);
  const std::int64_t d = chi.conductor();
  const bool closed = d < 0 && opt.method == LMethod::Auto;
  PartialSumEngine engine(chi, !closed, true, opt);
  LValuePair out;
  out.s1 = closed ? class_number_route(d) : engine.evaluate(1, tol);
  out.s2 = engine.evaluate(2, tol);
  return out;
}

LValue L_value(const LValueRequest& req, const LOptions& opt) {
  if (req.s == 1 && req.conductor < 0 && opt.method == LMethod::Auto &&
      is_fundamental_discriminant(req.conductor)) {
    check_tol(req.tol);
    return class_number_route(req.conductor);
  }
  const CharacterTable chi(req.conductor);
  return L_value(chi, req.s, req.tol, opt);
}

}  // namespace ggl
