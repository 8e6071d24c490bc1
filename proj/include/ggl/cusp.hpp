#pragma once

// Resolution cycle of the cusp of SL_2(O_K) (and of supplied modules)
// for real quadratic K.

#include "ggl/hj.hpp"
#include "ggl/quad.hpp"
#include "ggl/wedge.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ggl {

struct CuspCycle {
  std::int64_t D = 0;
  QuadSurd w;                        // N = Z + Z w, w reduced
  std::vector<std::int64_t> digits;  // one V-period
  // mu_{-1}, mu_0, ..., mu_r with mu_{-1} = w, mu_0 = 1 and
  // mu_{k-1} + mu_{k+1} = b_k mu_k.
  std::vector<QuadElem> rays;
  QuadElem eps_V;   // generator of V, totally positive, > 1
  int v_index = 1;  // [U_N^+ : V]

  const QuadElem& mu(int k) const { return rays[static_cast<std::size_t>(k + 1)]; }
  int length() const { return static_cast<int>(digits.size()); }
};

/// Reduced generator (P + sqrt D)/2 of O_K with sqrt D < P < sqrt D + 2.
QuadSurd cusp_generator(std::int64_t D);

/// Default cusp: N = O_K, V = totally positive units.
CuspCycle cusp_cycle(std::int64_t D);

/// Module N = Z + Z w for any surd w (reduced internally). V is either
/// given by a generator, checked against V N = N, or as the index in U_N^+.
CuspCycle cusp_cycle(const QuadSurd& w, const std::optional<QuadElem>& V_generator, int V_index = 1);

struct CuspChartReport {
  int k = 0;
  Matrix<QuadElem> M;  // rows (mu_k, mu_k'), (mu_{k+1}, mu_{k+1}') as elements of K
  QuadElem det;        // exact, in K
  WedgeReport<QuadElem> wedge;
  bool pass = false;
};

struct CuspTangencyReport {
  std::vector<CuspChartReport> charts;
  bool all_pass = false;
};

CuspTangencyReport verify_cusp_tangency(const CuspCycle& cycle);

/// Checks on a cycle: digits >= 2 with one >= 3, exact recurrence, total
/// positivity, and the V-shift mu_{r} eps_V = mu_0, mu_{r-1} eps_V = mu_{-1}.
void validate_cycle(const CuspCycle& cycle);

}  // namespace ggl
