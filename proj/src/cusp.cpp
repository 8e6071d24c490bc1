#include "ggl/cusp.hpp"

#include "ggl/field_invariants.hpp"

namespace ggl {

namespace {

QuadElem one(std::int64_t D) { return {D, Rational(1)}; }

bool in_module(const QuadElem& x, const QuadSurd& w) {
  // x = a + b w with a, b integers
  const Rational b = x.y() * w.Q;
  const Rational a = x.x() - b * Rational(w.P, w.Q);
  return denominator(a) == 1 && denominator(b) == 1;
}

CuspCycle build(const QuadSurd& w, const QuadElem& eps_period, const std::vector<std::int64_t>& period_digits,
                int repeats) {
  CuspCycle c;
  c.D = w.D;
  c.w = w;
  for (int i = 0; i < repeats; ++i) c.digits.insert(c.digits.end(), period_digits.begin(), period_digits.end());
  c.rays.push_back(w.value());
  c.rays.push_back(one(w.D));
  for (std::size_t k = 0; k < c.digits.size(); ++k) {
    const QuadElem next = c.rays[k + 1] * Rational(c.digits[k]) - c.rays[k];
    c.rays.push_back(next);
  }
  c.eps_V = one(w.D);
  for (int i = 0; i < repeats; ++i) c.eps_V *= eps_period;
  c.v_index = repeats;
  validate_cycle(c);
  return c;
}

// Totally positive unit that shifts the rays by one period of w.
QuadElem period_unit(const QuadSurd& w, const std::vector<std::int64_t>& digits) {
  // mu_r = eps^{-1} with mu_0 = 1
  QuadElem a = w.value(), b = one(w.D);
  for (std::int64_t d : digits) {
    QuadElem next = b * Rational(d) - a;
    a = std::move(b);
    b = std::move(next);
  }
  return one(w.D) / b;
}

}  // namespace

QuadSurd cusp_generator(std::int64_t D) {
  if (D <= 1 || !is_fundamental_discriminant(D)) {
    throw DomainError("cusp_generator: not a positive fundamental discriminant: " + std::to_string(D));
  }
  const std::int64_t s = isqrt(D);
  std::int64_t P = s + 1;
  if ((P - D) % 2 != 0) ++P;
  return {P, 2, D};
}

CuspCycle cusp_cycle(std::int64_t D) {
  const QuadSurd w = cusp_generator(D);
  const PeriodicExpansion e = periodic_hj(w);
  CuspCycle c = build(w, period_unit(w, e.digits), e.digits, 1);
  // The period unit must generate the totally positive units of O_K.
  const UnitResult u = fundamental_unit(D);
  QuadElem expected = u.eps.value(D);
  if (u.eps.norm == -1) expected *= expected;
  if (!(c.eps_V == expected)) {
    throw VerificationError("cusp_cycle(" + std::to_string(D) + "): period unit " + c.eps_V.str() +
                            " is not the generator " + expected.str() + " of U+");
  }
  return c;
}

CuspCycle cusp_cycle(const QuadSurd& w_in, const std::optional<QuadElem>& V_generator, int V_index) {
  const QuadSurd w = w_in.is_reduced() ? w_in : reduce_surd(w_in).reduced;
  // Z + Z w_k is the same lattice up to scaling, so the cycle is unchanged
  // by the reduction steps.
  const PeriodicExpansion e = periodic_hj(w);
  const QuadElem base = period_unit(w, e.digits);
  int repeats = V_index;
  if (V_generator) {
    const QuadElem& g = *V_generator;
    if (g.D() != w.D) throw DomainError("cusp_cycle: V generator lives in another field");
    if (!g.is_unit() || !g.totally_positive()) {
      throw DomainError("cusp_cycle: V generator " + g.str() + " is not a totally positive unit");
    }
    if (!in_module(g, w) || !in_module(g * w.value(), w) || !in_module(one(w.D) / g, w) ||
        !in_module(w.value() / g, w)) {
      throw DomainError("cusp_cycle: V N != N for generator " + g.str());
    }
    if (g == one(w.D)) throw DomainError("cusp_cycle: V must be infinite");
    const QuadElem gen = g.embedding(0) > 1 ? g : one(w.D) / g;
    repeats = 0;
    QuadElem p = one(w.D);
    while (!(p == gen)) {
      p *= base;
      if (++repeats > 4096 || p.embedding(0) > gen.embedding(0) * 2) {
        throw DomainError("cusp_cycle: V generator " + g.str() + " is not a power of " + base.str());
      }
    }
  }
  if (repeats < 1) throw DomainError("cusp_cycle: V index must be >= 1");
  return build(w, base, e.digits, repeats);
}

void validate_cycle(const CuspCycle& c) {
  const std::string tag = "cusp cycle for D=" + std::to_string(c.D) + ": ";
  if (c.digits.empty()) throw VerificationError(tag + "empty cycle");
  bool big = false;
  for (std::int64_t b : c.digits) {
    if (b < 2) throw VerificationError(tag + "digit below 2");
    if (b >= 3) big = true;
  }
  if (!big) throw VerificationError(tag + "all digits equal 2");
  const int r = c.length();
  if (static_cast<int>(c.rays.size()) != r + 2) throw VerificationError(tag + "ray count mismatch");
  for (int k = 0; k < r; ++k) {
    if (!(c.mu(k - 1) + c.mu(k + 1) == c.mu(k) * Rational(c.digits[static_cast<std::size_t>(k)]))) {
      throw VerificationError(tag + "recurrence fails at k=" + std::to_string(k));
    }
  }
  for (const QuadElem& m : c.rays) {
    if (!m.totally_positive()) throw VerificationError(tag + "ray " + m.str() + " not totally positive");
    if (!m.is_integral() && c.w.Q == 2) throw VerificationError(tag + "ray " + m.str() + " not integral");
  }
  if (!c.eps_V.is_unit() || !c.eps_V.totally_positive()) throw VerificationError(tag + "V generator not in U+");
  if (!(c.mu(r) * c.eps_V == c.mu(0)) || !(c.mu(r - 1) * c.eps_V == c.mu(-1))) {
    throw VerificationError(tag + "V generator does not shift the rays by one period");
  }
}

CuspTangencyReport verify_cusp_tangency(const CuspCycle& cycle) {
  CuspTangencyReport out;
  out.all_pass = true;
  const std::int64_t D = cycle.D;
  const QuadElem zero(D, Rational(0));
  for (int k = 0; k < cycle.length(); ++k) {
    CuspChartReport ch;
    ch.k = k;
    const QuadElem& a = cycle.mu(k);
    const QuadElem& b = cycle.mu(k + 1);
    ch.M = {{a, a.conj()}, {b, b.conj()}};
    ch.wedge = wedge_tangency(ch.M, zero, one(D), [](const QuadElem& x) { return x.sign(0) > 0; });
    ch.det = ch.wedge.lambda;
    ch.pass = !ch.wedge.degenerate && ch.wedge.lemma_holds && ch.wedge.saturated == std::vector<int>{1, 1};
    out.all_pass = out.all_pass && ch.pass;
    out.charts.push_back(std::move(ch));
  }
  return out;
}

}  // namespace ggl
