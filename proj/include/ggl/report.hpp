#pragma once

// Report assembly and serialization (text, JSON, CSV) and the scan cache.

#include "ggl/criteria.hpp"
#include "ggl/cusp.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace ggl {

inline constexpr int kSchemaVersion = 1;

/// 10 significant digits.
std::string fmt(long double x);
/// Short form for error bars.
std::string fmt_err(long double x);

struct FieldRequest {
  std::int64_t D = 0;
  std::int64_t m = 0;  // squarefree part as given, 0 if D was given
  int n = 2;
  Rational epsilon{1, 100};
  long double tol = 1e-12L;
  bool dual_zeta = true;
};

/// Accepts a fundamental discriminant D > 1 or a squarefree m > 1.
/// Throws DomainError otherwise.
FieldRequest resolve_field_input(std::int64_t x);

struct FieldReport {
  FieldRequest request;
  QuadraticFieldInvariants inv;
  Thresholds thresholds;
  EllipticSummary elliptic;
  CriterionReport criterion;
  CuspCycle cusp;
  CuspTangencyReport tangency;
  double seconds = 0;
};

FieldReport build_field_report(const FieldRequest& req);

void print_field_text(std::ostream& os, const FieldReport& r);

struct ReportDocument {
  int schema_version = kSchemaVersion;
  std::vector<std::string> command;
  nlohmann::ordered_json tolerances;
  nlohmann::ordered_json parameters;
  nlohmann::ordered_json records;  // array sorted by D
  nlohmann::ordered_json summary;
  nlohmann::ordered_json timings;  // omitted when null

  nlohmann::ordered_json to_json() const;
  static ReportDocument from_json(const nlohmann::ordered_json& j);
};

nlohmann::ordered_json field_record_json(const FieldReport& r);
ReportDocument field_document(const FieldReport& r, const std::vector<std::string>& command);

nlohmann::ordered_json scan_record_json(const ScanRecord& r);
ReportDocument scan_document(const ScanReport& r, const std::vector<std::string>& command);

inline const char* const kCsvHeader = "D,h,R,hR,zeta2,nu_max,nu_required,margin,elliptic_total_bound,verdict";
void write_csv(std::ostream& os, const ScanReport& r);

nlohmann::ordered_json cusp_json(const CuspCycle& c, const CuspTangencyReport& t);

/// Single-file cache: a versioned header line, then one "key<TAB>json" line
/// per record, flushed as written. A torn last line is dropped on open.
class FileScanCache : public ScanCache {
 public:
  FileScanCache(std::string path, const ScanOptions& opt);

  std::optional<ScanRecord> find(std::int64_t D) override;
  void put(const ScanRecord& rec) override;
  std::size_t size() const { return entries_.size(); }
  const std::string& path() const { return path_; }

  static std::string key_prefix(const ScanOptions& opt);

 private:
  std::string key(std::int64_t D) const { return prefix_ + ";D=" + std::to_string(D); }

  std::string path_;
  std::string prefix_;
  std::map<std::string, ScanRecord> entries_;
  std::ofstream out_;
};

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::ordered_json scan_record_to_cache(const ScanRecord& r);
ScanRecord scan_record_from_cache(const nlohmann::ordered_json& j);

}  // namespace ggl
