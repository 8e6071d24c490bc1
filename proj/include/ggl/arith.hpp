#pragma once

// Integer and exact-rational helpers shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ggl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Bad input to an operation (violated precondition).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact check that should hold by construction did not.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two numerical routes disagree beyond their combined certified tolerance.
class NumericalAgreementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::int64_t isqrt(std::int64_t n);
bool is_square(std::int64_t n);
bool is_squarefree(std::int64_t n);

// Fundamental discriminant of a quadratic field (either sign): d != 1, d ≡ 1 mod 4
// squarefree, or d = 4m with m ≡ 2,3 mod 4 squarefree.
bool is_fundamental_discriminant(std::int64_t d);

// Signed squarefree kernel: x = kernel * square.
std::int64_t squarefree_kernel(std::int64_t x);

// Discriminant of Q(sqrt(m)) for a squarefree m != 0, 1 of either sign.
std::int64_t discriminant_of_squarefree(std::int64_t m);

// Discriminant of Q(sqrt(x)) for any non-square integer x.
std::int64_t field_discriminant(std::int64_t x);

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::int64_t divisor_sigma1(std::int64_t n);

// Sign of a + s*sqrt(D) for integer a, s in {-1, 0, 1}, D > 0 non-square.
int sign_plus_sqrt(const BigInt& a, int s, std::int64_t D);

// Sign of x + y*sqrt(D) for rationals x, y and D > 0 non-square.
int sign_quadratic(const Rational& x, const Rational& y, std::int64_t D);

// floor((P + s*sqrt(D)) / Q), exact.
std::int64_t floor_surd(std::int64_t P, int s, std::int64_t Q, std::int64_t D);

long double to_long_double(const Rational& r);
long double to_long_double(const BigInt& r);
std::string to_string(const Rational& r);

/// Exact parse of "p/q", an integer, or a decimal such as "0.05" or "-1.5".
Rational parse_rational(const std::string& token);

}  // namespace ggl
