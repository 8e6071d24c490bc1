#include "ggl/quad.hpp"

#include <cmath>

namespace ggl {

QuadElem::QuadElem(std::int64_t D, Rational x, Rational y) : D_(D), x_(std::move(x)), y_(std::move(y)) {
  if (D <= 1 || is_square(D)) throw DomainError("QuadElem needs a non-square D > 1, got " + std::to_string(D));
}

QuadElem QuadElem::half(std::int64_t D, const BigInt& a, const BigInt& b) {
  return {D, Rational(a, 2), Rational(b, 2)};
}

bool QuadElem::is_integral() const {
  const Rational t = trace();
  const Rational n = norm();
  return denominator(t) == 1 && denominator(n) == 1;
}

bool QuadElem::is_unit() const {
  if (!is_integral()) return false;
  const Rational n = norm();
  return n == 1 || n == -1;
}

int QuadElem::sign(int j) const { return sign_quadratic(x_, j == 0 ? y_ : -y_, D_); }

long double QuadElem::embedding(int j) const {
  const long double r = std::sqrt(static_cast<long double>(D_));
  const long double y = to_long_double(y_);
  return to_long_double(x_) + (j == 0 ? y : -y) * r;
}

void QuadElem::check_same_field(const QuadElem& o) const {
  if (o.D_ != D_) throw DomainError("QuadElem arithmetic across different fields");
}

QuadElem& QuadElem::operator+=(const QuadElem& o) {
  check_same_field(o);
  x_ += o.x_;
  y_ += o.y_;
  return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& o) {
  check_same_field(o);
  x_ -= o.x_;
  y_ -= o.y_;
  return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& o) {
  check_same_field(o);
  Rational nx = x_ * o.x_ + y_ * o.y_ * D_;
  Rational ny = x_ * o.y_ + y_ * o.x_;
  x_ = std::move(nx);
  y_ = std::move(ny);
  return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& o) {
  check_same_field(o);
  const Rational n = o.norm();
  if (n == 0) throw DomainError("QuadElem division by zero");
  *this *= o.conj();
  x_ /= n;
  y_ /= n;
  return *this;
}

QuadElem& QuadElem::operator*=(const Rational& r) {
  x_ *= r;
  y_ *= r;
  return *this;
}

std::string QuadElem::str() const {
  const Rational a = 2 * x_;
  const Rational b = 2 * y_;
  const std::string root = "sqrt(" + std::to_string(D_) + ")";
  if (y_ == 0) return to_string(x_);
  if (x_ == 0) {
    const Rational ay = abs(y_);
    return (y_.sign() < 0 ? "-" : "") + (ay == 1 ? "" : to_string(ay) + "*") + root;
  }
  if (denominator(a) == 1 && denominator(b) == 1 && (denominator(x_) != 1 || denominator(y_) != 1)) {
    const BigInt& na = numerator(a);
    const BigInt& nb = numerator(b);
    std::string s = "(" + na.str() + (nb.sign() < 0 ? " - " : " + ");
    const BigInt ab = abs(nb);
    s += (ab == 1 ? "" : ab.str() + "*") + root + ")/2";
    return s;
  }
  std::string s = to_string(x_) + (y_.sign() < 0 ? " - " : " + ");
  const Rational ay = abs(y_);
  s += (ay == 1 ? "" : to_string(ay) + "*") + root;
  return s;
}

QuadSurd::QuadSurd(std::int64_t p, std::int64_t q, std::int64_t d) : P(p), Q(q), D(d) {
  if (d <= 1 || is_square(d)) throw DomainError("QuadSurd needs a non-square D > 1");
  if (q == 0) throw DomainError("QuadSurd with Q = 0");
  if ((d - p * p) % q != 0) {
    throw DomainError("QuadSurd (" + std::to_string(p) + " + sqrt(" + std::to_string(d) + "))/" +
                      std::to_string(q) + ": Q must divide D - P^2");
  }
}

QuadElem QuadSurd::value() const { return {D, Rational(P, Q), Rational(1, Q)}; }

long double QuadSurd::approx() const {
  return (static_cast<long double>(P) + std::sqrt(static_cast<long double>(D))) / static_cast<long double>(Q);
}

long double QuadSurd::conj_approx() const {
  return (static_cast<long double>(P) - std::sqrt(static_cast<long double>(D))) / static_cast<long double>(Q);
}

bool QuadSurd::is_reduced() const {
  const int sq = Q > 0 ? 1 : -1;
  const bool gt_one = sign_plus_sqrt(BigInt(P - Q), 1, D) * sq > 0;
  const bool conj_pos = sign_plus_sqrt(BigInt(P), -1, D) * sq > 0;
  const bool conj_lt_one = sign_plus_sqrt(BigInt(P - Q), -1, D) * sq < 0;
  return gt_one && conj_pos && conj_lt_one;
}

std::int64_t QuadSurd::digit() const { return floor_surd(P, 1, Q, D) + 1; }

QuadSurd QuadSurd::next() const {
  const std::int64_t b = digit();
  const std::int64_t p = b * Q - P;
  return {p, (p * p - D) / Q, D};
}

std::string QuadSurd::str() const {
  return "(" + std::to_string(P) + " + sqrt(" + std::to_string(D) + "))/" + std::to_string(Q);
}

}  // namespace ggl
