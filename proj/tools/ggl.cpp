// ggl: field reports, discriminant scans and resolution combinatorics.
// Exit codes: 0 success, 1 domain or verification failure, 2 usage.

#include "ggl/cyclic.hpp"
#include "ggl/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace ggl;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational epsilon_arg(const std::string& s, int n) {
  Rational e;
  try {
    e = parse_rational(s);
  } catch (const DomainError& ex) {
    throw UsageError(std::string("--epsilon: ") + ex.what());
  }
  if (e <= 0 || e * n >= 1) throw UsageError("--epsilon must lie in (0, 1/" + std::to_string(n) + ")");
  return e;
}

void check_tol(long double tol) {
  if (!(tol > 0) || tol < 1e-16L) throw UsageError("--tol must be in [1e-16, inf)");
}

int cmd_field(const std::string& input, const std::string& eps, long double tol, bool json, bool no_dual,
              const std::vector<std::string>& argv) {
  std::int64_t x = 0;
  try {
    std::size_t used = 0;
    x = std::stoll(input, &used);
    if (used != input.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw UsageError("field: '" + input + "' is not an integer");
  }
  FieldRequest req;
  try {
    req = resolve_field_input(x);
  } catch (const DomainError& e) {
    throw UsageError(std::string("field: ") + e.what());
  }
  req.epsilon = epsilon_arg(eps, req.n);
  check_tol(tol);
  req.tol = tol;
  req.dual_zeta = !no_dual;
  const FieldReport r = build_field_report(req);
  if (json) {
    std::cout << field_document(r, argv).to_json().dump(2) << "\n";
  } else {
    print_field_text(std::cout, r);
  }
  return 0;
}

int cmd_scan(std::int64_t dmax, const std::string& eps, long double tol, const std::string& out,
             const std::string& cache_path, const std::vector<std::string>& argv) {
  if (dmax < 5) throw UsageError("scan: --dmax must be at least 5");
  check_tol(tol);
  ScanOptions opt;
  opt.epsilon = epsilon_arg(eps, opt.n);
  opt.tol = tol;
  std::unique_ptr<FileScanCache> cache;
  if (!cache_path.empty()) {
    cache = std::make_unique<FileScanCache>(cache_path, opt);
    opt.cache = cache.get();
  }
  const auto t0 = std::chrono::steady_clock::now();
  const ScanReport rep = scan(dmax, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (out.empty()) {
    write_csv(std::cout, rep);
  } else {
    std::ofstream csv(out + ".csv", std::ios::binary);
    std::ofstream js(out + ".json", std::ios::binary);
    if (!csv || !js) throw CacheError(out + ": cannot open output files");
    write_csv(csv, rep);
    js << scan_document(rep, argv).to_json().dump(1) << "\n";
    if (!csv || !js) throw CacheError(out + ": write failed");
  }
  std::size_t errors = 0;
  for (const ScanRecord& r : rep.records) errors += r.verdict == "NumericalError";
  std::cerr << "scanned " << rep.records.size() << " fields up to " << dmax << " (epsilon " << to_string(opt.epsilon)
            << ") in " << fmt(secs) << " s; cache hits " << rep.cache_hits << "\n";
  std::cerr << "candidate exceptional: " << rep.failing.size() << ", largest failing D = " << rep.largest_failing
            << ", numerical errors: " << errors << "\n";
  for (const BlockFraction& b : rep.blocks) {
    if (b.fields == 0) continue;
    std::cerr << "  [" << b.lo << ", " << b.hi << "): " << b.failing << "/" << b.fields << " failing ("
              << b.cusp_failing << " below the cusp threshold)\n";
  }
  return 0;
}

int cmd_hj(std::int64_t n, std::int64_t q) {
  std::cout << join_digits(hj_expand(n, q)) << "\n";
  return 0;
}

int cmd_cusp(std::int64_t D, bool json) {
  if (!(D > 1 && is_fundamental_discriminant(D))) {
    throw DomainError("cusp: " + std::to_string(D) + " is not a real fundamental discriminant");
  }
  const CuspCycle c = cusp_cycle(D);
  const CuspTangencyReport t = verify_cusp_tangency(c);
  if (json) {
    std::cout << cusp_json(c, t).dump(2) << "\n";
    return t.all_pass ? 0 : 1;
  }
  std::cout << "cycle (" << join_digits(c.digits) << ")\n";
  std::cout << "w = " << c.w.str() << ", eps_V = " << c.eps_V.str() << "\n";
  for (const CuspChartReport& ch : t.charts) {
    std::cout << "chart " << ch.k << ": det=" << ch.det.str() << " mult=" << ch.wedge.saturated[0] << ","
              << ch.wedge.saturated[1] << (ch.pass ? " ok" : " FAIL") << "\n";
  }
  return t.all_pass ? 0 : 1;
}

int cmd_tangency(int m, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("tangency: cannot open " + path);
  const auto charts = parse_matrices(in);
  if (charts.empty()) throw DomainError("tangency: no matrices in " + path);
  const auto reports = tangency_divisor(charts, m);
  bool ok = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    int mult = -1;
    for (std::size_t j = 0; j < r.saturated.size(); ++j)
      if (r.exceptional[j]) mult = mult < 0 ? r.saturated[j] : std::min(mult, r.saturated[j]);
    std::cout << "chart " << i + 1 << ": mult=" << (mult < 0 ? std::string("-") : std::to_string(mult))
              << " λ=" << to_string(r.lambda) << " saturated=";
    for (std::size_t j = 0; j < r.saturated.size(); ++j) std::cout << (j ? "," : "") << r.saturated[j];
    std::cout << (r.lemma_holds ? " ok" : " FAIL") << "\n";
    ok = ok && r.lemma_holds;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants, thresholds and resolutions for Hilbert modular surfaces of real quadratic fields"};
  app.require_subcommand(1);
  std::vector<std::string> args(argv + 1, argv + argc);

  std::string field_input, eps = "1/100";
  long double tol = 1e-12L;
  bool json = false, no_dual = false;
  auto* field = app.add_subcommand("field", "full report for one field (D or squarefree m)");
  field->add_option("input", field_input, "fundamental discriminant D or squarefree m")->required();
  field->add_option("--epsilon", eps, "epsilon in (0, 1/n), rational or decimal")->capture_default_str();
  field->add_option("--tol", tol, "L-value tolerance");
  field->add_flag("--json", json, "JSON document");
  field->add_flag("--no-dual", no_dual, "skip the Euler-product evaluation of zeta_K(2)");

  std::int64_t dmax = 0;
  std::string out, cache;
  auto* scanc = app.add_subcommand("scan", "criterion scan over fundamental discriminants");
  scanc->add_option("--dmax", dmax, "largest discriminant")->required();
  scanc->add_option("--epsilon", eps, "epsilon in (0, 1/2)")->capture_default_str();
  scanc->add_option("--tol", tol, "L-value tolerance");
  scanc->add_option("--out", out, "write <out>.csv and <out>.json instead of CSV on stdout");
  scanc->add_option("--cache", cache, "resumable cache file");

  std::int64_t hn = 0, hq = 0;
  auto* hj = app.add_subcommand("hj", "Hirzebruch-Jung digits of n/q");
  hj->add_option("n", hn)->required();
  hj->add_option("q", hq)->required();

  std::int64_t cD = 0;
  bool cjson = false;
  auto* cusp = app.add_subcommand("cusp", "cusp resolution cycle of SL_2(O_K)");
  cusp->add_option("D", cD)->required();
  cusp->add_flag("--json", cjson);

  int tm = 0;
  std::string tfile;
  auto* tang = app.add_subcommand("tangency", "wedge multiplicities for exponent matrices");
  tang->add_option("--m", tm, "matrix dimension")->required()->check(CLI::Range(1, 8));
  tang->add_option("file", tfile, "matrix file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (*field) return cmd_field(field_input, eps, tol, json, no_dual, args);
    if (*scanc) return cmd_scan(dmax, eps, tol, out, cache, args);
    if (*hj) return cmd_hj(hn, hq);
    if (*cusp) return cmd_cusp(cD, cjson);
    if (*tang) return cmd_tangency(tm, tfile);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
