#include "qsep/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qsep/errors.hpp"

using nlohmann::json;

namespace qsep {

// ---------------------------------------------------------------------------
// State files
// ---------------------------------------------------------------------------

namespace {

json parse_json_or_fail(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Err::ParseError, origin + ": " + e.what());
  }
}

}  // namespace

DensityMatrix parse_state_text(const std::string& text) {
  json doc = parse_json_or_fail(text, "state file");
  if (!doc.is_object()) fail(Err::ParseError, "state file: top level must be an object");
  if (!doc.contains("dims") || !doc["dims"].is_array())
    fail(Err::ParseError, "state file: missing \"dims\" array");
  if (!doc.contains("matrix") || !doc["matrix"].is_array())
    fail(Err::ParseError, "state file: missing \"matrix\" array");

  std::vector<int> dims;
  for (std::size_t i = 0; i < doc["dims"].size(); ++i) {
    const json& d = doc["dims"][i];
    if (!d.is_number_integer())
      fail(Err::ParseError,
           "state file: dims[" + std::to_string(i) + "] must be an integer");
    dims.push_back(d.get<int>());
  }

  const json& rows = doc["matrix"];
  const std::size_t side = rows.size();
  ComplexMatrix M(static_cast<int>(side), static_cast<int>(side));
  for (std::size_t r = 0; r < side; ++r) {
    if (!rows[r].is_array() || rows[r].size() != side)
      fail(Err::ParseError, "state file: matrix row " + std::to_string(r) + " has " +
                                std::to_string(rows[r].is_array() ? rows[r].size() : 0) +
                                " entries, expected " + std::to_string(side));
    for (std::size_t c = 0; c < side; ++c) {
      const json& e = rows[r][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        fail(Err::ParseError, "state file: matrix entry (" + std::to_string(r) + "," +
                                  std::to_string(c) + ") must be a [re, im] pair");
      M.at(static_cast<int>(r), static_cast<int>(c)) =
          cplx(e[0].get<double>(), e[1].get<double>());
    }
  }

  return validate_density(dims, M);
}

DensityMatrix parse_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::ParseError, "cannot open state file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_text(buf.str());
}

std::string state_to_json(const DensityMatrix& rho) {
  json doc;
  doc["dims"] = rho.dims;
  json rows = json::array();
  for (int r = 0; r < rho.mat.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < rho.mat.cols; ++c) {
      const cplx& z = rho.mat.at(r, c);
      row.push_back(json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  return doc.dump();
}

void write_state_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::ParseError, "cannot open state file for writing: " + path);
  out << state_to_json(rho) << "\n";
}

std::pair<std::string, std::vector<double>> parse_builtin_spec(const std::string& spec) {
  std::string name = spec;
  std::vector<double> params;
  const std::size_t open = spec.find('(');
  if (open != std::string::npos) {
    if (spec.back() != ')')
      fail(Err::ParseError, "builtin spec missing closing parenthesis: " + spec);
    name = spec.substr(0, open);
    const std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    if (!inner.empty()) {
      std::stringstream ss(inner);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          std::size_t used = 0;
          double v = std::stod(tok, &used);
          while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
            ++used;
          if (used != tok.size()) throw std::invalid_argument(tok);
          params.push_back(v);
        } catch (const std::exception&) {
          fail(Err::ParseError, "bad numeric parameter '" + tok + "' in: " + spec);
        }
      }
    }
  }
  if (name.empty()) fail(Err::ParseError, "empty builtin name in: " + spec);
  return {name, params};
}

// ---------------------------------------------------------------------------
// Digests
// ---------------------------------------------------------------------------

Digest& Digest::bytes(const void* p, std::size_t n) {
  const auto* b = static_cast<const unsigned char*>(p);
  for (std::size_t i = 0; i < n; ++i) {
    h_ ^= b[i];
    h_ *= 0x100000001b3ULL;
  }
  return *this;
}

Digest& Digest::u64(std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  return bytes(b, 8);
}

Digest& Digest::f64(double v) {
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof v);
  std::memcpy(&bits, &v, sizeof bits);
  return u64(bits);
}

Digest& Digest::str(const std::string& s) {
  u64(s.size());
  return bytes(s.data(), s.size());
}

Digest& Digest::doubles(const std::vector<double>& v) {
  u64(v.size());
  for (double x : v) f64(x);
  return *this;
}

Digest& Digest::matrix(const ComplexMatrix& M) {
  u64(static_cast<std::uint64_t>(M.rows));
  u64(static_cast<std::uint64_t>(M.cols));
  for (const cplx& z : M.a) {
    f64(z.real());
    f64(z.imag());
  }
  return *this;
}

std::string Digest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// Equality (exact; JSON round-trips preserve every bit of a finite double)
// ---------------------------------------------------------------------------

bool operator==(const CriterionReport& a, const CriterionReport& b) {
  return a.criterion == b.criterion && a.lhs == b.lhs && a.rhs == b.rhs &&
         a.margin == b.margin && a.tau == b.tau && a.verdict == b.verdict;
}

bool operator==(const BoundReport& a, const BoundReport& b) {
  return a.measure == b.measure && a.bound == b.bound && a.params == b.params &&
         a.d == b.d && a.vacuous == b.vacuous;
}

bool operator==(const ThresholdResult& a, const ThresholdResult& b) {
  return a.threshold == b.threshold && a.bracket_lo == b.bracket_lo &&
         a.bracket_hi == b.bracket_hi && a.iterations == b.iterations &&
         a.margin_lo == b.margin_lo && a.margin_hi == b.margin_hi;
}

bool operator==(const ScanRecord& a, const ScanRecord& b) {
  return a.family == b.family && a.criterion == b.criterion && a.result == b.result;
}

bool operator==(const ParamPair& a, const ParamPair& b) {
  return a.mu == b.mu && a.nu == b.nu;
}

bool operator==(const OptimizationResult& a, const OptimizationResult& b) {
  return a.best == b.best && a.margin == b.margin && a.evaluations == b.evaluations &&
         a.trace == b.trace && a.budget_exhausted == b.budget_exhausted;
}

bool operator==(const ReproLine& a, const ReproLine& b) {
  return a.id == b.id && a.expected == b.expected && a.computed == b.computed &&
         a.delta == b.delta && a.tol == b.tol && a.pass == b.pass && a.note == b.note;
}

bool operator==(const RunReport& a, const RunReport& b) {
  return a.command == b.command && a.digest == b.digest && a.wall_ms == b.wall_ms &&
         a.criteria == b.criteria && a.bounds == b.bounds && a.scans == b.scans &&
         a.optimization == b.optimization && a.repro == b.repro;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace {

json to_js(const CriterionReport& r) {
  return json{{"criterion", r.criterion}, {"lhs", r.lhs},        {"rhs", r.rhs},
              {"margin", r.margin},       {"tau", r.tau},        {"verdict", verdict_name(r.verdict)}};
}

CriterionReport criterion_from_js(const json& j) {
  CriterionReport r;
  r.criterion = j.at("criterion").get<std::string>();
  r.lhs = j.at("lhs").get<double>();
  r.rhs = j.at("rhs").get<double>();
  r.margin = j.at("margin").get<double>();
  r.tau = j.at("tau").get<double>();
  const std::string v = j.at("verdict").get<std::string>();
  if (v == "ENTANGLED")
    r.verdict = Verdict::ENTANGLED;
  else if (v == "INCONCLUSIVE")
    r.verdict = Verdict::INCONCLUSIVE;
  else
    fail(Err::ParseError, "unknown verdict: " + v);
  return r;
}

json to_js(const BoundReport& r) {
  return json{{"measure", r.measure}, {"bound", r.bound},    {"mu", r.params.mu},
              {"nu", r.params.nu},    {"d", r.d},            {"vacuous", r.vacuous}};
}

BoundReport bound_from_js(const json& j) {
  BoundReport r;
  r.measure = j.at("measure").get<std::string>();
  r.bound = j.at("bound").get<double>();
  r.params.mu = j.at("mu").get<std::vector<double>>();
  r.params.nu = j.at("nu").get<std::vector<double>>();
  r.d = j.at("d").get<int>();
  r.vacuous = j.at("vacuous").get<bool>();
  return r;
}

json to_js(const ScanRecord& s) {
  return json{{"family", s.family},
              {"criterion", s.criterion},
              {"threshold", s.result.threshold},
              {"bracket_lo", s.result.bracket_lo},
              {"bracket_hi", s.result.bracket_hi},
              {"iterations", s.result.iterations},
              {"margin_lo", s.result.margin_lo},
              {"margin_hi", s.result.margin_hi}};
}

ScanRecord scan_from_js(const json& j) {
  ScanRecord s;
  s.family = j.at("family").get<std::string>();
  s.criterion = j.at("criterion").get<std::string>();
  s.result.threshold = j.at("threshold").get<double>();
  s.result.bracket_lo = j.at("bracket_lo").get<double>();
  s.result.bracket_hi = j.at("bracket_hi").get<double>();
  s.result.iterations = j.at("iterations").get<int>();
  s.result.margin_lo = j.at("margin_lo").get<double>();
  s.result.margin_hi = j.at("margin_hi").get<double>();
  return s;
}

json to_js(const OptimizationResult& o) {
  json trace = json::array();
  for (const auto& [ev, f] : o.trace) trace.push_back(json::array({ev, f}));
  return json{{"mu", o.best.mu},
              {"nu", o.best.nu},
              {"margin", o.margin},
              {"evaluations", o.evaluations},
              {"trace", std::move(trace)},
              {"budget_exhausted", o.budget_exhausted}};
}

OptimizationResult opt_from_js(const json& j) {
  OptimizationResult o;
  o.best.mu = j.at("mu").get<std::vector<double>>();
  o.best.nu = j.at("nu").get<std::vector<double>>();
  o.margin = j.at("margin").get<double>();
  o.evaluations = j.at("evaluations").get<long>();
  for (const json& e : j.at("trace"))
    o.trace.emplace_back(e.at(0).get<long>(), e.at(1).get<double>());
  o.budget_exhausted = j.at("budget_exhausted").get<bool>();
  return o;
}

json to_js(const ReproLine& l) {
  return json{{"id", l.id},   {"expected", l.expected}, {"computed", l.computed},
              {"delta", l.delta}, {"tol", l.tol},       {"pass", l.pass},
              {"note", l.note}};
}

ReproLine repro_from_js(const json& j) {
  ReproLine l;
  l.id = j.at("id").get<std::string>();
  l.expected = j.at("expected").get<double>();
  l.computed = j.at("computed").get<double>();
  l.delta = j.at("delta").get<double>();
  l.tol = j.at("tol").get<double>();
  l.pass = j.at("pass").get<bool>();
  l.note = j.at("note").get<std::string>();
  return l;
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  json doc;
  doc["command"] = r.command;
  doc["digest"] = r.digest;
  doc["wall_ms"] = r.wall_ms;
  doc["criteria"] = json::array();
  for (const auto& c : r.criteria) doc["criteria"].push_back(to_js(c));
  doc["bounds"] = json::array();
  for (const auto& b : r.bounds) doc["bounds"].push_back(to_js(b));
  doc["scans"] = json::array();
  for (const auto& s : r.scans) doc["scans"].push_back(to_js(s));
  if (r.optimization) doc["optimization"] = to_js(*r.optimization);
  doc["repro"] = json::array();
  for (const auto& l : r.repro) doc["repro"].push_back(to_js(l));
  return doc.dump(2);
}

RunReport report_from_json(const std::string& text) {
  json doc = parse_json_or_fail(text, "run report");
  RunReport r;
  r.command = doc.at("command").get<std::string>();
  r.digest = doc.at("digest").get<std::string>();
  r.wall_ms = doc.at("wall_ms").get<double>();
  for (const json& j : doc.at("criteria")) r.criteria.push_back(criterion_from_js(j));
  for (const json& j : doc.at("bounds")) r.bounds.push_back(bound_from_js(j));
  for (const json& j : doc.at("scans")) r.scans.push_back(scan_from_js(j));
  if (doc.contains("optimization")) r.optimization = opt_from_js(doc["optimization"]);
  for (const json& j : doc.at("repro")) r.repro.push_back(repro_from_js(j));
  return r;
}

// ---------------------------------------------------------------------------
// Human output
// ---------------------------------------------------------------------------

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::string(buf);
}

namespace {

void print_row(std::ostream& os, const std::vector<std::string>& cells,
               const std::vector<int>& w) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    os << cells[i];
    if (i + 1 < cells.size())
      os << std::string(static_cast<std::size_t>(
                            std::max(1, w[i] - static_cast<int>(cells[i].size()) + 2)),
                        ' ');
  }
  os << "\n";
}

void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<int> w(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      w[i] = std::max(w[i], static_cast<int>(row[i].size()));
  for (const auto& row : rows) print_row(os, row, w);
}

}  // namespace

void print_report(std::ostream& os, const RunReport& r) {
  if (!r.criteria.empty()) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"criterion", "lhs", "rhs", "margin", "verdict"});
    for (const auto& c : r.criteria)
      rows.push_back({c.criterion, fmt6(c.lhs), fmt6(c.rhs), fmt6(c.margin),
                      verdict_name(c.verdict)});
    print_table(os, rows);
  }
  if (!r.bounds.empty()) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"measure", "bound", "d", "vacuous"});
    for (const auto& b : r.bounds)
      rows.push_back({b.measure, fmt6(b.bound), std::to_string(b.d),
                      b.vacuous ? "yes" : "no"});
    print_table(os, rows);
  }
  if (!r.scans.empty()) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"family", "criterion", "threshold", "bracket", "iters", "margin(lo)",
                    "margin(hi)"});
    for (const auto& s : r.scans)
      rows.push_back({s.family, s.criterion, fmt6(s.result.threshold),
                      "[" + fmt6(s.result.bracket_lo) + ", " + fmt6(s.result.bracket_hi) + "]",
                      std::to_string(s.result.iterations), fmt6(s.result.margin_lo),
                      fmt6(s.result.margin_hi)});
    print_table(os, rows);
  }
  if (r.optimization) {
    const auto& o = *r.optimization;
    os << "best margin  " << fmt6(o.margin) << "\n";
    os << "mu          ";
    for (double v : o.best.mu) os << " " << fmt6(v);
    os << "\nnu          ";
    for (double v : o.best.nu) os << " " << fmt6(v);
    os << "\nevaluations  " << o.evaluations
       << (o.budget_exhausted ? "  (iteration budget exhausted)" : "") << "\n";
  }
  if (!r.repro.empty()) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"id", "paper", "computed", "|delta|", "tol", "status"});
    for (const auto& l : r.repro)
      rows.push_back({l.id, fmt6(l.expected), fmt6(l.computed), fmt6(l.delta), fmt6(l.tol),
                      l.pass ? "ok" : "DEVIATION"});
    print_table(os, rows);
    for (const auto& l : r.repro)
      if (!l.note.empty()) os << "note [" << l.id << "]: " << l.note << "\n";
  }
  os << "wall_ms " << fmt6(r.wall_ms) << "   digest " << r.digest << "\n";
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string csv_header() { return "family,param,criterion,lhs,rhs,margin,verdict"; }

std::string csv_row(const std::string& family, double param, const CriterionReport& rep) {
  std::ostringstream os;
  os << family << "," << fmt6(param) << "," << rep.criterion << "," << fmt6(rep.lhs) << ","
     << fmt6(rep.rhs) << "," << fmt6(rep.margin) << "," << verdict_name(rep.verdict);
  return os.str();
}

std::string repro_csv_header() { return "id,paper,computed,delta,tol,status,note"; }

std::string repro_csv_row(const ReproLine& line) {
  std::ostringstream os;
  os << line.id << "," << fmt6(line.expected) << "," << fmt6(line.computed) << ","
     << fmt6(line.delta) << "," << fmt6(line.tol) << ","
     << (line.pass ? "ok" : "DEVIATION") << ",\"" << line.note << "\"";
  return os.str();
}

}  // namespace qsep
