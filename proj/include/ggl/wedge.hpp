#pragma once

// Exact wedge of the pulled-back foliation 1-forms on a toric chart
// z_k = prod_l u_l^{B_lk}. Coefficients are Rational or QuadElem.

#include "ggl/quad.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace ggl {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

/// Polynomial in u_1..u_m keyed by exponent vector.
template <typename T>
using Polynomial = std::map<std::vector<int>, T>;

template <typename T>
struct WedgeReport {
  T lambda{};                      // det B
  bool degenerate = false;         // det B = 0
  std::vector<int> multiplicity;   // pole-cleared forms: m - 1 on every axis
  std::vector<int> saturated;      // after clearing the common monomial of each form
  std::vector<bool> exceptional;   // u_l = 0 maps into the singular point
  bool lemma_holds = false;        // saturated = (m-1) on exceptional axes, 0 elsewhere
  Polynomial<T> wedge;             // saturated wedge coefficient of du_1 ^ ... ^ du_m
};

namespace detail {

inline int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace detail

template <typename T>
T determinant(const Matrix<T>& B, const T& zero, const T& one) {
  const std::size_t m = B.size();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  T det = zero;
  do {
    T term = one;
    for (std::size_t i = 0; i < m; ++i) term = term * B[i][static_cast<std::size_t>(perm[i])];
    if (detail::permutation_sign(perm) > 0) {
      det = det + term;
    } else {
      det = det - term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// B[l][k] is the exponent of u_l in z_k. Form k is
///   omega_k = sum_l B_lk (prod_{j != l} u_j) du_l = (prod u) dz_k / z_k,
/// saturated by removing u_j whenever B_jk = 0.
template <typename T, typename IsPositive>
WedgeReport<T> wedge_tangency(const Matrix<T>& B, const T& zero, const T& one, IsPositive is_positive) {
  const std::size_t m = B.size();
  for (const auto& row : B) {
    if (row.size() != m) throw DomainError("wedge_tangency: exponent matrix must be square");
  }
  if (m == 0) throw DomainError("wedge_tangency: empty matrix");
  WedgeReport<T> out;
  out.lambda = determinant(B, zero, one);
  out.degenerate = is_zero(out.lambda);
  out.multiplicity.assign(m, static_cast<int>(m) - 1);
  out.exceptional.assign(m, true);
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t k = 0; k < m; ++k)
      if (!is_positive(B[l][k])) out.exceptional[l] = false;

  // Leibniz expansion with monomial coefficients.
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    T coeff = one;
    std::vector<int> expo(m, 0);
    bool zero_term = false;
    for (std::size_t k = 0; k < m && !zero_term; ++k) {
      const auto l = static_cast<std::size_t>(perm[k]);
      if (is_zero(B[l][k])) {
        zero_term = true;
        break;
      }
      coeff = coeff * B[l][k];
      for (std::size_t j = 0; j < m; ++j)
        if (j != l && !is_zero(B[j][k])) ++expo[j];
    }
    if (zero_term) continue;
    if (detail::permutation_sign(perm) < 0) coeff = zero - coeff;
    auto [it, inserted] = out.wedge.try_emplace(expo, coeff);
    if (!inserted) {
      it->second = it->second + coeff;
      if (is_zero(it->second)) out.wedge.erase(it);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  out.saturated.assign(m, 0);
  if (!out.wedge.empty()) {
    for (std::size_t j = 0; j < m; ++j) {
      int lo = -1;
      for (const auto& [e, c] : out.wedge) lo = lo < 0 ? e[j] : std::min(lo, e[j]);
      out.saturated[j] = lo;
    }
  }
  out.lemma_holds = !out.degenerate && !out.wedge.empty();
  for (std::size_t j = 0; j < m && out.lemma_holds; ++j) {
    const int want = out.exceptional[j] ? static_cast<int>(m) - 1 : 0;
    if (out.saturated[j] != want) out.lemma_holds = false;
  }
  return out;
}

}  // namespace ggl
