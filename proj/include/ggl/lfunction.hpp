#pragma once

// Dirichlet L-values of quadratic characters with certified error bounds.
//
// The partial-sum route evaluates sum_{n<=N} chi(n) n^{-s} with N a multiple
// of the period q and bounds the tail by repeated summation by parts: with
// G_1(n) = sum_{N<m<=n} chi(m) (periodic, since chi sums to zero over a
// period), mu_1 its mean, g_1 = G_1 - mu_1, and so on,
//
//   sum_{n>N} chi(n) f(n) = sum_{j=1..k} mu_j (Delta^{j-1} f)(N+1)
//                           + sum_{n>N} g_k(n) (Delta^k f)(n),
//
// where (Delta F)(n) = F(n) - F(n+1). For f = n^{-s} the differences
// Delta^k f keep a fixed sign, so the remainder is at most
// max|g_k| * |Delta^{k-1} f(N+1)|.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ggl {

/// Kronecker symbol (d/n) for n >= 0.
int kronecker_chi(std::int64_t d, std::int64_t n);

/// Values of chi_d on one period [0, |d|).
class CharacterTable {
 public:
  explicit CharacterTable(std::int64_t d);

  std::int64_t conductor() const { return d_; }
  std::int64_t period() const { return static_cast<std::int64_t>(values_.size()); }
  int operator()(std::int64_t n) const { return values_[static_cast<std::size_t>(n % period())]; }
  const std::vector<std::int8_t>& values() const { return values_; }

 private:
  std::int64_t d_;
  std::vector<std::int8_t> values_;
};

class LValueBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LValueRequest {
  int s = 1;                      // 1 or 2
  std::int64_t conductor = 5;     // fundamental discriminant, either sign
  long double tol = 1e-12L;
};

enum class LMethod {
  Auto,         // class number formula for s = 1 and odd characters, partial sums otherwise
  PartialSums,  // always the certified partial-sum route
};

struct LOptions {
  LMethod method = LMethod::Auto;
  std::uint64_t term_budget = 1ULL << 31;
  int max_levels = 64;
};

struct LValue {
  long double value = 0;
  long double error = 0;  // certified bound on |value - L(s, chi)|
  std::uint64_t terms = 0;
  int levels = 0;
  std::string method;
};

LValue L_value(const LValueRequest& req, const LOptions& opt = {});
LValue L_value(const CharacterTable& chi, int s, long double tol, const LOptions& opt = {});

struct LValuePair {
  LValue s1, s2;
};

/// L(1, chi) and L(2, chi) sharing one pass over the character.
LValuePair L_values_1_2(const CharacterTable& chi, long double tol, const LOptions& opt = {});

/// pi^2 / 6 in working precision.
long double zeta2_constant();
/// pi^4 / 90 in working precision.
long double zeta4_constant();

/// Class number of the imaginary quadratic field of discriminant d < 0,
/// counted as reduced positive definite forms.
std::int64_t imaginary_class_number(std::int64_t d);

/// Number of roots of unity in Q(sqrt(d)), d < 0.
int roots_of_unity(std::int64_t d);

/// Smallest-prime-factor table shared across threads; grows on demand.
class SpfTable {
 public:
  explicit SpfTable(std::int64_t limit);
  std::int64_t limit() const { return static_cast<std::int64_t>(spf_.size()) - 1; }
  std::uint32_t spf(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }
  std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) const;

 private:
  std::vector<std::uint32_t> spf_;
};

std::shared_ptr<const SpfTable> spf_table(std::int64_t limit);

/// All positive divisors of n, unsorted.
std::vector<std::int64_t> divisors(std::int64_t n);

}  // namespace ggl
