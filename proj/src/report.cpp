#include "ggl/report.hpp"

#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

namespace ggl {

using ojson = nlohmann::ordered_json;

namespace {

ojson num(long double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(fmt(x));
}

ojson rat(const Rational& r) { return to_string(r); }

ojson lvalue_json(const LValue& v) {
  return ojson{{"value", num(v.value)}, {"error", num(v.error)}, {"terms", v.terms}, {"method", v.method}};
}

std::string hexfloat(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%La", x);
  return buf;
}

long double from_hexfloat(const std::string& s) {
  char* end = nullptr;
  const long double v = std::strtold(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::invalid_argument("bad float '" + s + "'");
  return v;
}

const char* const kCacheHeader = "# ggl-scan-cache v1";

}  // namespace

std::string fmt(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10Lg", x);
  return buf;
}

std::string fmt_err(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2Lg", x);
  return buf;
}

FieldRequest resolve_field_input(std::int64_t x) {
  FieldRequest req;
  if (x > 1 && is_fundamental_discriminant(x)) {
    req.D = x;
  } else if (x > 1 && is_squarefree(x)) {
    req.D = fundamental_discriminant(x);
    req.m = x;
  } else {
    throw DomainError(std::to_string(x) + " is neither a fundamental discriminant > 1 nor a squarefree integer > 1");
  }
  return req;
}

FieldReport build_field_report(const FieldRequest& req) {
  const auto t0 = std::chrono::steady_clock::now();
  FieldReport r;
  r.request = req;
  InvariantOptions io;
  io.tol = req.tol;
  io.dual_zeta = req.dual_zeta;
  r.inv = compute_invariants(req.D, io);
  r.elliptic = elliptic_summary(r.inv);
  r.criterion = verdict(r.inv, req.n, req.epsilon, r.elliptic);
  std::vector<Rational> sums;
  for (const EllipticOrbit& o : r.criterion.elliptic) sums.push_back(o.S_sum);
  r.thresholds = thresholds(req.n, req.epsilon, sums);
  r.cusp = cusp_cycle(req.D);
  r.tangency = verify_cusp_tangency(r.cusp);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void print_field_text(std::ostream& os, const FieldReport& r) {
  const QuadraticFieldInvariants& inv = r.inv;
  os << "field D=" << inv.D;
  if (r.request.m != 0) os << " (m=" << r.request.m << ")";
  os << "\n";
  os << "  unit        eps = " << inv.eps.value(inv.D).str() << ", norm " << inv.eps.norm << ", period " << inv.cf_period
     << "\n";
  os << "  regulator   R = " << fmt(inv.R) << "\n";
  os << "  class       h = " << inv.h << ", h+ = " << inv.h_plus << "\n";
  os << "  L(1,chi)    " << fmt(inv.L1.value) << " +- " << fmt_err(inv.L1.error) << "\n";
  os << "  L(2,chi)    " << fmt(inv.L2.value) << " +- " << fmt_err(inv.L2.error) << "\n";
  os << "  hR          " << fmt(inv.hR) << "\n";
  os << "  zeta_K(2)   " << fmt(inv.zeta2.value) << " +- " << fmt_err(inv.zeta2.error);
  if (inv.zeta2.dual_checked) {
    os << "  (Euler product to " << inv.zeta2.euler_bound << ": " << fmt(inv.zeta2.euler_value) << " +- "
       << fmt_err(inv.zeta2.euler_error) << ")";
  }
  os << "\n";
  const Thresholds& t = r.thresholds;
  os << "thresholds n=" << t.n << " epsilon=" << to_string(t.epsilon) << "\n";
  os << "  b = " << to_string(t.b) << ", nu_cusp = " << to_string(t.nu_cusp) << " = " << fmt(to_long_double(t.nu_cusp))
     << "\n";
  os << "  nu_max = " << fmt(r.criterion.nu_max) << " +- " << fmt_err(r.criterion.nu_max_error) << "\n";
  os << "  leading coefficient at nu_cusp = " << fmt(r.criterion.rr_coefficient_at_required) << "\n";
  os << "elliptic traces (" << r.elliptic.traces.size() << ")\n";
  for (std::size_t i = 0; i < r.elliptic.traces.size(); ++i) {
    const TraceBound& tb = r.elliptic.traces[i];
    const EllipticOrbit& o = r.criterion.elliptic[i];
    os << "  s = " << tb.trace.str() << ": N(4-s^2) = " << tb.norm_4_minus_s2 << ", bound " << fmt(tb.bound)
       << (tb.exact ? " (exact)" : "") << (tb.unresolved ? " (R'h'/Rh unresolved)" : "");
    if (tb.cm) {
      os << ", subfields {" << tb.cm->subfield_discs[0] << ", " << tb.cm->subfield_discs[1] << ", "
         << tb.cm->subfield_discs[2] << "}, w' = " << tb.cm->w_prime;
    }
    os << "\n    m = " << to_string(o.m) << ", c = " << to_string(o.c) << ", nu = " << fmt(o.nu_required)
       << (o.feasible ? " feasible" : " infeasible") << "\n";
  }
  os << "  total bound " << fmt(r.elliptic.total_bound) << ", log(total)/log(D) = " << fmt(r.elliptic.log_ratio) << "\n";
  os << "cusp cycle (" << join_digits(r.cusp.digits) << "), w = " << r.cusp.w.str() << ", eps_V = " << r.cusp.eps_V.str()
     << "\n";
  os << "  tangency " << (r.tangency.all_pass ? "holds" : "FAILS") << " on " << r.tangency.charts.size() << " chart"
     << (r.tangency.charts.size() == 1 ? "" : "s") << "\n";
  os << "verdict " << to_string(r.criterion.verdict) << " (margin " << fmt(r.criterion.margin) << ")\n";
  if (!r.criterion.assumption.empty()) os << "  assumption: " << r.criterion.assumption << "\n";
}

ojson ReportDocument::to_json() const {
  ojson j;
  j["schema_version"] = schema_version;
  j["command"] = command;
  j["tolerances"] = tolerances;
  if (!parameters.is_null()) j["parameters"] = parameters;
  j["records"] = records;
  if (!summary.is_null()) j["summary"] = summary;
  if (!timings.is_null()) j["timings"] = timings;
  return j;
}

ReportDocument ReportDocument::from_json(const ojson& j) {
  ReportDocument d;
  d.schema_version = j.at("schema_version").get<int>();
  if (d.schema_version != kSchemaVersion) {
    throw DomainError("unsupported schema_version " + std::to_string(d.schema_version));
  }
  d.command = j.at("command").get<std::vector<std::string>>();
  d.tolerances = j.at("tolerances");
  d.records = j.at("records");
  if (j.contains("parameters")) d.parameters = j["parameters"];
  if (j.contains("summary")) d.summary = j["summary"];
  if (j.contains("timings")) d.timings = j["timings"];
  return d;
}

ojson cusp_json(const CuspCycle& c, const CuspTangencyReport& t) {
  ojson j;
  j["w"] = c.w.str();
  j["digits"] = c.digits;
  j["length"] = c.length();
  j["eps_V"] = c.eps_V.str();
  j["v_index"] = c.v_index;
  ojson rays = ojson::array();
  for (const QuadElem& mu : c.rays) rays.push_back(mu.str());
  j["rays"] = rays;
  ojson charts = ojson::array();
  for (const CuspChartReport& ch : t.charts) {
    charts.push_back({{"k", ch.k},
                      {"det", ch.det.str()},
                      {"multiplicity", ch.wedge.multiplicity},
                      {"saturated", ch.wedge.saturated},
                      {"pass", ch.pass}});
  }
  j["charts"] = charts;
  j["all_pass"] = t.all_pass;
  return j;
}

ojson field_record_json(const FieldReport& r) {
  const QuadraticFieldInvariants& inv = r.inv;
  ojson j;
  j["D"] = inv.D;
  j["m"] = r.request.m == 0 ? ojson(nullptr) : ojson(r.request.m);
  j["invariants"] = {
      {"exact", inv.exact},
      {"h", inv.h},
      {"h_plus", inv.h_plus},
      {"unit", {{"t", inv.eps.t.str()}, {"u", inv.eps.u.str()}, {"norm", inv.eps.norm}, {"value", inv.eps.value(inv.D).str()}}},
      {"R", num(inv.R)},
      {"cf_period", inv.cf_period},
      {"L1", lvalue_json(inv.L1)},
      {"L2", lvalue_json(inv.L2)},
      {"hR", num(inv.hR)},
      {"hR_error", num(inv.hR_error)},
      {"zeta2",
       {{"value", num(inv.zeta2.value)},
        {"error", num(inv.zeta2.error)},
        {"dual_checked", inv.zeta2.dual_checked},
        {"euler_value", inv.zeta2.dual_checked ? num(inv.zeta2.euler_value) : ojson(nullptr)},
        {"euler_error", inv.zeta2.dual_checked ? num(inv.zeta2.euler_error) : ojson(nullptr)},
        {"euler_bound", inv.zeta2.euler_bound}}}};

  const Thresholds& t = r.thresholds;
  ojson orb = ojson::array();
  for (std::size_t i = 0; i < t.m.size(); ++i) orb.push_back({{"m", rat(t.m[i])}, {"c", rat(t.c_elliptic[i])}});
  j["thresholds"] = {{"n", t.n},
                     {"epsilon", rat(t.epsilon)},
                     {"b", rat(t.b)},
                     {"nu_cusp", rat(t.nu_cusp)},
                     {"nu_cusp_value", num(to_long_double(t.nu_cusp))},
                     {"elliptic", orb}};

  const CriterionReport& c = r.criterion;
  ojson orbits = ojson::array();
  for (const EllipticOrbit& o : c.elliptic) {
    orbits.push_back({{"trace", o.trace},
                      {"S_sum", rat(o.S_sum)},
                      {"rotation_supplied", o.rotation_supplied},
                      {"m", rat(o.m)},
                      {"c", rat(o.c)},
                      {"nu_required", num(o.nu_required)},
                      {"coefficient", num(o.coefficient)},
                      {"margin", num(o.margin)},
                      {"feasible", o.feasible}});
  }
  j["criterion"] = {{"n", c.n},
                    {"epsilon", rat(c.epsilon)},
                    {"nu_max", num(c.nu_max)},
                    {"nu_max_error", num(c.nu_max_error)},
                    {"nu_required", num(c.nu_required)},
                    {"rr_coefficient_at_required", num(c.rr_coefficient_at_required)},
                    {"margin", num(c.margin)},
                    {"elliptic_feasible", c.elliptic_feasible},
                    {"orbits", orbits},
                    {"verdict", to_string(c.verdict)},
                    {"assumption", c.assumption.empty() ? ojson(nullptr) : ojson(c.assumption)}};

  ojson traces = ojson::array();
  for (const TraceBound& tb : r.elliptic.traces) {
    ojson angles = ojson::array();
    for (const Rational& a : tb.angles) angles.push_back(rat(a));
    ojson cm = nullptr;
    if (tb.cm) {
      cm = {{"subfield_discs", tb.cm->subfield_discs},
            {"d_Kprime", tb.cm->d_Kprime},
            {"w_prime", tb.cm->w_prime},
            {"hR_prime", num(tb.cm->hR_prime)},
            {"hR_prime_error", num(tb.cm->hR_prime_error)},
            {"N_rel_disc", tb.cm->N_rel_disc},
            {"N_U0_sq", tb.cm->N_U0_sq}};
    }
    traces.push_back({{"s", tb.trace.str()},
                      {"p", tb.trace.p},
                      {"q", tb.trace.q},
                      {"rational", tb.trace.rational},
                      {"norm_4_minus_s2", tb.norm_4_minus_s2},
                      {"bound", num(tb.bound)},
                      {"error", num(tb.error)},
                      {"exact", tb.exact},
                      {"unresolved", tb.unresolved},
                      {"angles", angles},
                      {"min_age", rat(tb.min_age)},
                      {"cm", cm}});
  }
  j["elliptic"] = {{"traces", traces},
                   {"total_bound", num(r.elliptic.total_bound)},
                   {"total_error", num(r.elliptic.total_error)},
                   {"all_exact", r.elliptic.all_exact},
                   {"any_unresolved", r.elliptic.any_unresolved},
                   {"log_ratio", num(r.elliptic.log_ratio)}};
  j["cusp"] = cusp_json(r.cusp, r.tangency);
  return j;
}

namespace {

ojson tolerance_json(long double tol) {
  return {{"l_value", num(tol)}, {"working_precision_bits", LDBL_MANT_DIG}};
}

}  // namespace

ReportDocument field_document(const FieldReport& r, const std::vector<std::string>& command) {
  ReportDocument d;
  d.command = command;
  d.tolerances = tolerance_json(r.request.tol);
  d.records = ojson::array({field_record_json(r)});
  d.timings = {{"total_seconds", r.seconds}};
  return d;
}

ojson scan_record_json(const ScanRecord& r) {
  ojson j;
  j["D"] = r.D;
  j["exact"] = r.exact;
  j["h"] = r.exact ? ojson(r.h) : ojson(nullptr);
  j["R"] = r.exact ? num(r.R) : ojson(nullptr);
  j["hR"] = num(r.hR);
  j["zeta2"] = num(r.zeta2);
  j["nu_max"] = num(r.nu_max);
  j["nu_required"] = num(r.nu_required);
  j["margin"] = num(r.margin);
  j["elliptic_total_bound"] = num(r.elliptic_total_bound);
  j["elliptic_nu_required"] = num(r.elliptic_nu_required);
  j["elliptic_feasible"] = r.elliptic_feasible;
  j["verdict"] = r.verdict;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

ReportDocument scan_document(const ScanReport& r, const std::vector<std::string>& command) {
  ReportDocument d;
  d.command = command;
  d.tolerances = tolerance_json(r.tol);
  d.parameters = {{"dmax", r.D_max}, {"n", r.n}, {"epsilon", rat(r.epsilon)}};
  d.records = ojson::array();
  ojson errors = ojson::array();
  for (const ScanRecord& rec : r.records) {
    d.records.push_back(scan_record_json(rec));
    if (rec.verdict == "NumericalError") errors.push_back(rec.D);
  }
  ojson blocks = ojson::array();
  for (const BlockFraction& b : r.blocks) {
    blocks.push_back({{"lo", b.lo},
                      {"hi", b.hi},
                      {"fields", b.fields},
                      {"failing", b.failing},
                      {"cusp_failing", b.cusp_failing},
                      {"fraction", b.fields ? num(static_cast<long double>(b.failing) / b.fields) : ojson(nullptr)}});
  }
  d.summary = {{"fields", r.records.size()},
               {"failing_count", r.failing.size()},
               {"largest_failing_D", r.largest_failing},
               {"numerical_errors", errors},
               {"blocks", blocks}};
  return d;
}

void write_csv(std::ostream& os, const ScanReport& r) {
  os << kCsvHeader << "\n";
  for (const ScanRecord& rec : r.records) {
    os << rec.D << ',' << (rec.exact ? std::to_string(rec.h) : "") << ',' << (rec.exact ? fmt(rec.R) : "") << ','
       << fmt(rec.hR) << ',' << fmt(rec.zeta2) << ',' << fmt(rec.nu_max) << ',' << fmt(rec.nu_required) << ','
       << fmt(rec.margin) << ',' << fmt(rec.elliptic_total_bound) << ',' << rec.verdict << "\n";
  }
}

ojson scan_record_to_cache(const ScanRecord& r) {
  return {{"D", r.D},
          {"exact", r.exact},
          {"h", r.h},
          {"R", hexfloat(r.R)},
          {"hR", hexfloat(r.hR)},
          {"zeta2", hexfloat(r.zeta2)},
          {"nu_max", hexfloat(r.nu_max)},
          {"nu_required", hexfloat(r.nu_required)},
          {"margin", hexfloat(r.margin)},
          {"elliptic_total_bound", hexfloat(r.elliptic_total_bound)},
          {"elliptic_nu_required", hexfloat(r.elliptic_nu_required)},
          {"elliptic_feasible", r.elliptic_feasible},
          {"verdict", r.verdict},
          {"error", r.error}};
}

ScanRecord scan_record_from_cache(const ojson& j) {
  ScanRecord r;
  r.D = j.at("D").get<std::int64_t>();
  r.exact = j.at("exact").get<bool>();
  r.h = j.at("h").get<std::int64_t>();
  r.R = from_hexfloat(j.at("R").get<std::string>());
  r.hR = from_hexfloat(j.at("hR").get<std::string>());
  r.zeta2 = from_hexfloat(j.at("zeta2").get<std::string>());
  r.nu_max = from_hexfloat(j.at("nu_max").get<std::string>());
  r.nu_required = from_hexfloat(j.at("nu_required").get<std::string>());
  r.margin = from_hexfloat(j.at("margin").get<std::string>());
  r.elliptic_total_bound = from_hexfloat(j.at("elliptic_total_bound").get<std::string>());
  r.elliptic_nu_required = from_hexfloat(j.at("elliptic_nu_required").get<std::string>());
  r.elliptic_feasible = j.at("elliptic_feasible").get<bool>();
  r.verdict = j.at("verdict").get<std::string>();
  r.error = j.at("error").get<std::string>();
  return r;
}

std::string FileScanCache::key_prefix(const ScanOptions& opt) {
  char tol[64];
  std::snprintf(tol, sizeof tol, "%.6Lg", opt.tol);
  return "v" + std::to_string(kSchemaVersion) + ";n=" + std::to_string(opt.n) + ";eps=" + to_string(opt.epsilon) +
         ";tol=" + tol + ";exact_every=" + std::to_string(opt.exact_every);
}

FileScanCache::FileScanCache(std::string path, const ScanOptions& opt) : path_(std::move(path)), prefix_(key_prefix(opt)) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const bool exists = fs::exists(path_, ec) && fs::file_size(path_, ec) > 0;
  if (exists) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw CacheError(path_ + ": cannot open cache for reading");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();
    std::size_t pos = 0, good_end = 0;
    bool header = false;
    while (pos < data.size()) {
      const std::size_t nl = data.find('\n', pos);
      if (nl == std::string::npos) break;  // torn final line
      const std::string line = data.substr(pos, nl - pos);
      pos = nl + 1;
      if (!header) {
        if (line != kCacheHeader) throw CacheError(path_ + ": not a ggl scan cache (header '" + line + "')");
        header = true;
        good_end = pos;
        continue;
      }
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) throw CacheError(path_ + ": corrupt line without key at byte " + std::to_string(good_end));
      const std::string k = line.substr(0, tab);
      try {
        entries_[k] = scan_record_from_cache(ojson::parse(line.substr(tab + 1)));
      } catch (const std::exception& e) {
        throw CacheError(path_ + ": corrupt entry for key '" + k + "': " + e.what());
      }
      good_end = pos;
    }
    if (!header) throw CacheError(path_ + ": missing cache header");
    if (good_end < data.size()) fs::resize_file(path_, good_end);
    out_.open(path_, std::ios::app | std::ios::binary);
  } else {
    out_.open(path_, std::ios::trunc | std::ios::binary);
    if (out_) out_ << kCacheHeader << "\n" << std::flush;
  }
  if (!out_) throw CacheError(path_ + ": cannot open cache for writing");
}

std::optional<ScanRecord> FileScanCache::find(std::int64_t D) {
  const auto it = entries_.find(key(D));
  if (it == entries_.end()) return std::nullopt;
  if (it->second.D != D) throw CacheError(path_ + ": corrupt entry for key '" + it->first + "': D mismatch");
  return it->second;
}

void FileScanCache::put(const ScanRecord& rec) {
  const std::string k = key(rec.D);
  out_ << k << '\t' << scan_record_to_cache(rec).dump() << '\n' << std::flush;
  if (!out_) throw CacheError(path_ + ": write failed for key '" + k + "'");
  entries_[k] = rec;
}

}  // namespace ggl
