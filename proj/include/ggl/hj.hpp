#pragma once

// Hirzebruch-Jung (minus) continued fractions: p/q = b1 - 1/(b2 - 1/(...)).

#include "ggl/arith.hpp"
#include "ggl/quad.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ggl {

/// Digits b_i >= 2 of p/q. Requires p > q >= 1 and gcd(p, q) = 1.
std::vector<std::int64_t> hj_expand(std::int64_t p, std::int64_t q);

/// Exact value of a finite expansion.
Rational hj_value(const std::vector<std::int64_t>& digits);

struct PeriodicExpansion {
  std::vector<std::int64_t> digits;  // one period, starting at w
  std::vector<QuadSurd> orbit;       // w_0 = w, w_1, ..., w_{r-1}
};

/// Purely periodic expansion of a reduced surd (w > 1, 0 < w' < 1). A
/// non-reduced input raises DomainError naming the reducing transformation.
PeriodicExpansion periodic_hj(const QuadSurd& w);

/// Integer shift and number of steps w -> 1/(b - w) after which w becomes reduced.
struct Reduction {
  std::int64_t shift = 0;
  int steps = 0;
  QuadSurd reduced;
};
Reduction reduce_surd(const QuadSurd& w);

/// Lexicographically least rotation of a cyclic word.
std::vector<std::int64_t> canonical_rotation(const std::vector<std::int64_t>& word);

std::string join_digits(const std::vector<std::int64_t>& digits, const char* sep = " ");

}  // namespace ggl
