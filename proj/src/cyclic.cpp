#include "ggl/cyclic.hpp"

#include "ggl/hj.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ggl {

namespace {

bool positive(const Rational& x) { return x > 0; }

Rational frac(const Rational& x) {
  BigInt f = numerator(x) / denominator(x);
  if (x < 0 && f * denominator(x) != numerator(x)) f -= 1;
  return x - Rational(f);
}

void check_rotation(const std::vector<Rational>& S) {
  for (const Rational& s : S) {
    if (s < 0 || s >= 1) throw DomainError("rotation exponent outside [0, 1): " + to_string(s));
  }
}

}  // namespace

Rational ExponentMatrix::row_sum(std::size_t l) const {
  Rational s = 0;
  for (const Rational& x : B.at(l)) s += x;
  return s;
}

ChartAtlas hj_resolve(std::int64_t n, std::int64_t q) {
  if (q <= 0 || q >= n) throw DomainError("hj_resolve: need 0 < q < n");
  if (std::gcd(n, q) != 1) throw DomainError("hj_resolve: gcd(n, q) != 1");
  ChartAtlas atlas;
  atlas.n = n;
  atlas.q = q;
  atlas.digits = hj_expand(n, q);

  // v_0 = (0,1), v_1 = (1,q)/n, v_{k+1} = b_k v_k - v_{k-1}, ending at (1,0).
  std::vector<std::array<Rational, 2>> v;
  v.push_back({Rational(0), Rational(1)});
  v.push_back({Rational(1, n), Rational(q, n)});
  for (std::int64_t b : atlas.digits) {
    const auto& a = v[v.size() - 1];
    const auto& p = v[v.size() - 2];
    v.push_back({a[0] * b - p[0], a[1] * b - p[1]});
  }
  if (v.back() != std::array<Rational, 2>{Rational(1), Rational(0)}) {
    throw VerificationError("hj_resolve: ray chain does not end at (1, 0)");
  }
  atlas.rays.assign(v.rbegin(), v.rend());
  for (std::size_t k = 0; k + 1 < atlas.rays.size(); ++k) {
    ExponentMatrix m;
    m.B = {{atlas.rays[k][0], atlas.rays[k][1]}, {atlas.rays[k + 1][0], atlas.rays[k + 1][1]}};
    const Rational det = m.B[0][0] * m.B[1][1] - m.B[0][1] * m.B[1][0];
    if (det != Rational(1, n)) {
      throw VerificationError("hj_resolve: chart " + std::to_string(k) + " has determinant " + to_string(det));
    }
    for (const auto& row : m.B)
      for (const Rational& x : row)
        if (x < 0 || denominator(Rational(x * n)) != 1) throw VerificationError("hj_resolve: entry outside (1/n)Z>=0");
    atlas.charts.push_back(std::move(m));
  }
  return atlas;
}

WedgeReport<Rational> tangency_divisor(const ExponentMatrix& B) {
  return wedge_tangency(B.B, Rational(0), Rational(1), positive);
}

std::vector<WedgeReport<Rational>> tangency_divisor(const std::vector<ExponentMatrix>& charts, int m) {
  std::vector<WedgeReport<Rational>> out;
  for (std::size_t i = 0; i < charts.size(); ++i) {
    if (static_cast<int>(charts[i].size()) != m) {
      throw DomainError("tangency_divisor: chart " + std::to_string(i + 1) + " is " +
                        std::to_string(charts[i].size()) + "x" + std::to_string(charts[i].size()) + ", expected m=" +
                        std::to_string(m));
    }
    out.push_back(tangency_divisor(charts[i]));
  }
  return out;
}

namespace {

TaiResult rows_against(const Rational& m, const ExponentMatrix& B) {
  TaiResult out;
  out.m_value = m;
  out.all_pass = true;
  for (std::size_t l = 0; l < B.size(); ++l) {
    out.row_sums.push_back(B.row_sum(l));
    out.row_pass.push_back(out.row_sums.back() >= m);
    out.all_pass = out.all_pass && out.row_pass.back();
  }
  return out;
}

}  // namespace

TaiResult tai_check(const std::vector<Rational>& S, const ExponentMatrix& B) {
  check_rotation(S);
  Rational sum = 0;
  for (const Rational& s : S) sum += s;
  return rows_against(std::min(Rational(1), sum), B);
}

Rational minimal_age(const std::vector<Rational>& S) {
  check_rotation(S);
  BigInt order = 1;
  for (const Rational& s : S) order = boost::multiprecision::lcm(order, denominator(s));
  if (order == 1) throw DomainError("minimal_age: trivial rotation");
  Rational best = 1;
  for (BigInt k = 1; k < order; ++k) {
    Rational age = 0;
    for (const Rational& s : S) age += frac(Rational(s * Rational(k)));
    if (age == 0) continue;
    best = std::min(best, std::min(Rational(1), age));
  }
  return best;
}

Rational minimal_age(std::int64_t n, std::int64_t q) { return minimal_age({Rational(1, n), Rational(q % n, n)}); }

TaiResult tai_check_group(const std::vector<Rational>& S, const ExponentMatrix& B) {
  return rows_against(minimal_age(S), B);
}

MetricExtension metric_extension_at_elliptic(const std::vector<std::int64_t>& ordF, std::int64_t l,
                                             const Rational& b, const ExponentMatrix& B) {
  const std::size_t m = B.size();
  if (ordF.size() != m) throw DomainError("metric_extension_at_elliptic: ordF has the wrong length");
  if (l < 1) throw DomainError("metric_extension_at_elliptic: need l >= 1");
  if (b <= 0 || b > 1) throw DomainError("metric_extension_at_elliptic: need b in (0, 1]");
  for (std::int64_t o : ordF)
    if (o < 0) throw DomainError("metric_extension_at_elliptic: negative vanishing order");
  MetricExtension out;
  out.c = *std::min_element(ordF.begin(), ordF.end());
  out.all_pass = true;
  for (std::size_t j = 0; j < m; ++j) {
    Rational ord = 0;
    for (std::size_t i = 0; i < m; ++i) ord += Rational(ordF[i] + l) * B.B[j][i];
    out.ord_G.push_back(ord);
    const Rational lhs = 2 * b * Rational(out.c) * B.row_sum(j);
    out.slack.push_back(lhs - 2);
    out.pass.push_back(lhs > 2);
    out.all_pass = out.all_pass && out.pass.back();
  }
  return out;
}

std::vector<ExponentMatrix> parse_matrices(std::istream& in) {
  std::vector<ExponentMatrix> out;
  ExponentMatrix cur;
  std::string line;
  int lineno = 0;
  auto flush = [&] {
    if (cur.B.empty()) return;
    if (cur.B.size() != cur.B.front().size()) {
      throw DomainError("matrix ending at line " + std::to_string(lineno) + " is not square");
    }
    out.push_back(std::move(cur));
    cur = {};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Rational> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.push_back(parse_rational(tok));
      } catch (const DomainError& e) {
        throw DomainError("line " + std::to_string(lineno) + ": " + e.what());
      }
      if (row.back() < 0) throw DomainError("line " + std::to_string(lineno) + ": negative exponent " + tok);
    }
    if (row.empty()) {
      flush();
      continue;
    }
    if (!cur.B.empty() && row.size() != cur.B.front().size()) {
      throw DomainError("line " + std::to_string(lineno) + ": row length " + std::to_string(row.size()) +
                        " differs from " + std::to_string(cur.B.front().size()));
    }
    cur.B.push_back(std::move(row));
  }
  flush();
  return out;
}

}  // namespace ggl
