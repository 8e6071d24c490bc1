#pragma once

#include "ggl/arith.hpp"

#include <cstdint>
#include <string>

namespace ggl {

/// Element x + y*sqrt(D) of the real quadratic field of discriminant D,
/// with exact rational coordinates.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(std::int64_t D, Rational x, Rational y = 0);

  /// (a + b*sqrt(D)) / 2, the usual shape of an algebraic integer.
  static QuadElem half(std::int64_t D, const BigInt& a, const BigInt& b);

  std::int64_t D() const { return D_; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  QuadElem conj() const { return {D_, x_, -y_}; }
  Rational norm() const { return x_ * x_ - y_ * y_ * D_; }
  Rational trace() const { return 2 * x_; }
  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }

  /// In the ring of integers: trace and norm are integers.
  bool is_integral() const;
  bool is_unit() const;

  /// Exact sign of the j-th real embedding (j = 0: sqrt(D) > 0, j = 1: conjugate).
  int sign(int j) const;
  bool totally_positive() const { return sign(0) > 0 && sign(1) > 0; }
  long double embedding(int j) const;

  QuadElem operator-() const { return {D_, -x_, -y_}; }
  QuadElem& operator+=(const QuadElem& o);
  QuadElem& operator-=(const QuadElem& o);
  QuadElem& operator*=(const QuadElem& o);
  QuadElem& operator/=(const QuadElem& o);
  QuadElem& operator*=(const Rational& r);

  friend QuadElem operator+(QuadElem a, const QuadElem& b) { return a += b; }
  friend QuadElem operator-(QuadElem a, const QuadElem& b) { return a -= b; }
  friend QuadElem operator*(QuadElem a, const QuadElem& b) { return a *= b; }
  friend QuadElem operator/(QuadElem a, const QuadElem& b) { return a /= b; }
  friend QuadElem operator*(QuadElem a, const Rational& r) { return a *= r; }
  friend QuadElem operator*(const Rational& r, QuadElem a) { return a *= r; }
  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.D_ == b.D_ && a.x_ == b.x_ && a.y_ == b.y_;
  }

  /// "(a + b*sqrt(D))/2" when half-integral, otherwise "x + y*sqrt(D)".
  std::string str() const;

 private:
  void check_same_field(const QuadElem& o) const;

  std::int64_t D_ = 5;
  Rational x_ = 0;
  Rational y_ = 0;
};

inline bool is_zero(const QuadElem& q) { return q.is_zero(); }
inline bool is_zero(const Rational& r) { return r == 0; }

/// Quadratic surd w = (P + sqrt(D)) / Q with Q | D - P^2.
struct QuadSurd {
  std::int64_t P = 0;
  std::int64_t Q = 1;
  std::int64_t D = 5;

  QuadSurd() = default;
  QuadSurd(std::int64_t p, std::int64_t q, std::int64_t d);

  QuadElem value() const;
  long double approx() const;
  long double conj_approx() const;

  /// w > 1 and 0 < w' < 1: the fixed points of the periodic minus continued fraction.
  bool is_reduced() const;

  /// One step of the minus continued fraction: w = b - 1/w_next.
  std::int64_t digit() const;
  QuadSurd next() const;

  std::string str() const;
  friend bool operator==(const QuadSurd&, const QuadSurd&) = default;
};

}  // namespace ggl
