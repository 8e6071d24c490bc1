#include "ggl/hj.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ggl {

std::vector<std::int64_t> hj_expand(std::int64_t p, std::int64_t q) {
  if (q < 1 || p <= q) {
    throw DomainError("hj_expand: need p > q >= 1, got (" + std::to_string(p) + ", " + std::to_string(q) + ")");
  }
  if (std::gcd(p, q) != 1) {
    throw DomainError("hj_expand: gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
  std::vector<std::int64_t> out;
  while (q > 0) {
    const std::int64_t b = (p + q - 1) / q;
    out.push_back(b);
    const std::int64_t r = b * q - p;
    p = q;
    q = r;
  }
  return out;
}

Rational hj_value(const std::vector<std::int64_t>& digits) {
  if (digits.empty()) throw DomainError("hj_value: empty expansion");
  Rational x = digits.back();
  for (auto it = digits.rbegin() + 1; it != digits.rend(); ++it) {
    if (x == 0) throw DomainError("hj_value: division by zero in expansion");
    x = Rational(*it) - 1 / x;
  }
  return x;
}

Reduction reduce_surd(const QuadSurd& w) {
  Reduction out;
  QuadSurd cur = w;
  // Push the value above 1 first; the minus expansion then reaches the
  // reduced cycle after finitely many steps.
  const std::int64_t fl = floor_surd(cur.P, 1, cur.Q, cur.D);
  if (fl < 1) {
    out.shift = 1 - fl;
    cur = QuadSurd(cur.P + out.shift * cur.Q, cur.Q, cur.D);
  }
  constexpr int kMaxSteps = 1 << 20;
  while (!cur.is_reduced()) {
    if (++out.steps > kMaxSteps) throw VerificationError("reduce_surd: no reduced surd reached");
    cur = cur.next();
  }
  out.reduced = cur;
  return out;
}

PeriodicExpansion periodic_hj(const QuadSurd& w) {
  if (!w.is_reduced()) {
    const Reduction r = reduce_surd(w);
    std::ostringstream os;
    os << "periodic_hj: " << w.str() << " is not reduced (need w > 1 and 0 < w' < 1); ";
    if (r.shift != 0) os << "add " << r.shift << ", then ";
    os << "apply w -> 1/(b - w) " << r.steps << " time(s) to reach the reduced surd " << r.reduced.str();
    throw DomainError(os.str());
  }
  PeriodicExpansion out;
  QuadSurd cur = w;
  do {
    out.orbit.push_back(cur);
    out.digits.push_back(cur.digit());
    cur = cur.next();
  } while (!(cur == w));

  // w must be the fixed point of x -> b_0 - 1/(b_1 - 1/(... - 1/x)).
  const QuadElem x = w.value();
  QuadElem y = x;
  for (auto it = out.digits.rbegin(); it != out.digits.rend(); ++it) {
    y = QuadElem(w.D, Rational(*it)) - QuadElem(w.D, Rational(1)) / y;
  }
  if (!(y == x)) throw VerificationError("periodic_hj: cycle does not reproduce " + w.str());
  return out;
}

std::vector<std::int64_t> canonical_rotation(const std::vector<std::int64_t>& word) {
  std::vector<std::int64_t> best = word;
  std::vector<std::int64_t> rot = word;
  for (std::size_t i = 1; i < word.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

std::string join_digits(const std::vector<std::int64_t>& digits, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(digits[i]);
  }
  return s;
}

}  // namespace ggl
