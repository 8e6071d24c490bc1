#pragma once

// Resolution of the cyclic quotient singularity 1/n(1, q) and chartwise
// checks on exponent matrices z_k = prod_l u_l^{B_lk}.

#include "ggl/arith.hpp"
#include "ggl/wedge.hpp"

#include <array>
#include <cstdint>
#include <istream>
#include <vector>

namespace ggl {

/// B[l][k]: exponent of u_l in z_k. Entries are nonnegative rationals.
struct ExponentMatrix {
  Matrix<Rational> B;

  std::size_t size() const { return B.size(); }
  Rational row_sum(std::size_t l) const;
};

struct ChartAtlas {
  std::int64_t n = 0, q = 0;
  std::vector<std::int64_t> digits;           // Hirzebruch-Jung digits of n/q
  std::vector<std::array<Rational, 2>> rays;  // w_0 = (1,0), ..., w_{r+1} = (0,1)
  std::vector<ExponentMatrix> charts;         // chart k has rows w_k, w_{k+1}
};

/// Toric resolution in the lattice Z^2 + Z (1/n)(1, q).
ChartAtlas hj_resolve(std::int64_t n, std::int64_t q);

/// Per-chart wedge data; m is the expected dimension of every matrix.
std::vector<WedgeReport<Rational>> tangency_divisor(const std::vector<ExponentMatrix>& charts, int m);
WedgeReport<Rational> tangency_divisor(const ExponentMatrix& B);

struct TaiResult {
  Rational m_value;
  std::vector<Rational> row_sums;
  std::vector<bool> row_pass;
  bool all_pass = false;
};

/// m = min(1, sum S_i); checks sum_i B_li >= m for every row l.
TaiResult tai_check(const std::vector<Rational>& S, const ExponentMatrix& B);

/// Least age min(1, {k/n} + {kq/n}) over the nontrivial elements of the
/// cyclic group generated by 1/n(1, q).
Rational minimal_age(std::int64_t n, std::int64_t q);
Rational minimal_age(const std::vector<Rational>& S);

/// tai_check with m replaced by the least age of the group generated by S.
TaiResult tai_check_group(const std::vector<Rational>& S, const ExponentMatrix& B);

struct MetricExtension {
  std::vector<Rational> ord_G;  // ord_{u_j} G
  std::int64_t c = 0;           // min ord_{z_i} F
  std::vector<Rational> slack;  // 2 b c sum_i B_li - 2
  std::vector<bool> pass;
  bool all_pass = false;
};

MetricExtension metric_extension_at_elliptic(const std::vector<std::int64_t>& ordF, std::int64_t l,
                                             const Rational& b, const ExponentMatrix& B);

/// Rows of whitespace-separated rationals ("p/q" or integers), one blank
/// line between charts; '#' starts a comment.
std::vector<ExponentMatrix> parse_matrices(std::istream& in);

}  // namespace ggl
