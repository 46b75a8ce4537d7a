#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qsep/criteria.hpp"
#include "qsep/density.hpp"
#include "qsep/measures.hpp"
#include "qsep/optimizer.hpp"

namespace qsep {

// ---------------------------------------------------------------------------
// State files
//
// JSON schema (UTF-8, ".state.json" by convention):
//   { "dims": [d1, d2, ...],
//     "matrix": [ [ [re, im], ... ], ... ] }   // row-major, side x side
// The parsed matrix must pass validate_density.
// ---------------------------------------------------------------------------

DensityMatrix parse_state_file(const std::string& path);
DensityMatrix parse_state_text(const std::string& text);
void write_state_file(const std::string& path, const DensityMatrix& rho);
std::string state_to_json(const DensityMatrix& rho);

// "name" or "name(p1,p2,...)" -> {name, params}. Throws ParseError on
// malformed syntax; name validity is checked by the state registry.
std::pair<std::string, std::vector<double>> parse_builtin_spec(const std::string& spec);

// ---------------------------------------------------------------------------
// Input digests: FNV-1a 64-bit over a canonical byte stream.
// ---------------------------------------------------------------------------

class Digest {
 public:
  Digest& bytes(const void* p, std::size_t n);
  Digest& u64(std::uint64_t v);
  Digest& f64(double v);
  Digest& str(const std::string& s);
  Digest& doubles(const std::vector<double>& v);
  Digest& matrix(const ComplexMatrix& M);  // rows, cols, then row-major re/im
  std::string hex() const;                 // 16 lowercase hex chars

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

// ---------------------------------------------------------------------------
// Run reports
// ---------------------------------------------------------------------------

struct ScanRecord {
  std::string family;
  std::string criterion;
  ThresholdResult result;
};

// One reproduced quantity: published value vs computed value.
struct ReproLine {
  std::string id;
  double expected = 0.0;
  double computed = 0.0;
  double delta = 0.0;
  double tol = 0.0;
  bool pass = true;
  std::string note;  // non-empty for annotated warnings
};

struct RunReport {
  std::string command;   // argv echo
  std::string digest;    // content hash of state + params (hex)
  double wall_ms = 0.0;  // wall-clock duration
  std::vector<CriterionReport> criteria;
  std::vector<BoundReport> bounds;
  std::vector<ScanRecord> scans;
  std::optional<OptimizationResult> optimization;
  std::vector<ReproLine> repro;
};

bool operator==(const CriterionReport& a, const CriterionReport& b);
bool operator==(const BoundReport& a, const BoundReport& b);
bool operator==(const ThresholdResult& a, const ThresholdResult& b);
bool operator==(const ScanRecord& a, const ScanRecord& b);
bool operator==(const ParamPair& a, const ParamPair& b);
bool operator==(const OptimizationResult& a, const OptimizationResult& b);
bool operator==(const ReproLine& a, const ReproLine& b);
bool operator==(const RunReport& a, const RunReport& b);

// JSON carries full precision and round-trips exactly:
// report_from_json(report_to_json(r)) == r.
std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

// Human-readable tables; values shown with 6 significant digits.
void print_report(std::ostream& os, const RunReport& r);

// "%.6g" formatting used by all human-facing output.
std::string fmt6(double v);

// CSV scan output (pinned header).
std::string csv_header();
std::string csv_row(const std::string& family, double param, const CriterionReport& rep);

// CSV for reproduced quantities.
std::string repro_csv_header();
std::string repro_csv_row(const ReproLine& line);

}  // namespace qsep
