#pragma once

// Verification report structures plus deterministic JSON/CSV emission.
// Numbers are always written as %.16e (17 significant digits, lowercase
// e-notation) so byte-identical configs produce byte-identical bytes; the
// report deliberately has no timestamp field.

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "casq/complex_linalg.hpp"
#include "casq/version.hpp"

namespace casq {

enum class CheckStatus { pass, fail, info, skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::info: return "info";
    default: return "skip";
  }
}

struct CheckEntry {
  std::string id;         // unique within a report
  std::string statement;  // the verified identity, in plain math text
  CheckStatus status = CheckStatus::pass;
  double residual = 0.0;
  double tolerance = 0.0;
  std::vector<std::string> stamps;  // conventions the check depends on
  std::string note;                 // skip reason or info payload
};

struct VerificationReport {
  std::vector<CheckEntry> checks;
  std::vector<std::pair<std::string, std::string>> config_echo;

  int count(CheckStatus s) const {
    int n = 0;
    for (const auto& c : checks)
      if (c.status == s) ++n;
    return n;
  }
  int failed() const { return count(CheckStatus::fail); }
};

// ---------------------------------------------------------------------------
// deterministic JSON writer

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string json_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

// Minimal streaming writer; the caller controls field order, which is what
// makes the output reproducible.
class JsonWriter {
 public:
  void begin_object() {
    comma();
    out_ += '{';
    first_ = true;
  }
  void end_object() {
    out_ += '}';
    first_ = false;
  }
  void begin_array() {
    comma();
    out_ += '[';
    first_ = true;
  }
  void end_array() {
    out_ += ']';
    first_ = false;
  }
  void key(const std::string& k) {
    comma();
    out_ += '"' + json_escape(k) + "\":";
    first_ = true;  // value follows without comma
  }
  void value(const std::string& s) {
    comma();
    out_ += '"' + json_escape(s) + '"';
  }
  void value(const char* s) { value(std::string(s)); }
  void value(double x) {
    comma();
    out_ += json_number(x);
  }
  void value(int x) {
    comma();
    out_ += std::to_string(x);
  }
  void value(long x) {
    comma();
    out_ += std::to_string(x);
  }
  void value(bool b) {
    comma();
    out_ += b ? "true" : "false";
  }
  void value(const Complex& z) {
    begin_object();
    key("re");
    value(z.real());
    key("im");
    value(z.imag());
    end_object();
  }
  template <std::size_t N>
  void value(const SquareMatrix<N>& m) {  // row-major nested arrays
    begin_array();
    for (std::size_t i = 0; i < N; ++i) {
      begin_array();
      for (std::size_t j = 0; j < N; ++j) value(m(i, j));
      end_array();
    }
    end_array();
  }
  template <std::size_t N>
  void value(const Vector<N>& v) {
    begin_array();
    for (std::size_t i = 0; i < N; ++i) value(v[i]);
    end_array();
  }

  const std::string& str() const { return out_; }

 private:
  void comma() {
    if (!first_) out_ += ',';
    first_ = false;
  }
  std::string out_;
  bool first_ = true;
};

inline std::string report_to_json(const VerificationReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("schema");
  w.value(kReportSchema);
  w.key("version");
  w.value(kVersion);
  w.key("config");
  w.begin_object();
  for (const auto& [k, v] : r.config_echo) {
    w.key(k);
    w.value(v);
  }
  w.end_object();
  w.key("checks");
  w.begin_array();
  for (const auto& c : r.checks) {
    w.begin_object();
    w.key("id");
    w.value(c.id);
    w.key("statement");
    w.value(c.statement);
    w.key("status");
    w.value(to_string(c.status));
    w.key("residual");
    w.value(c.residual);
    w.key("tolerance");
    w.value(c.tolerance);
    if (!c.stamps.empty()) {
      w.key("stamps");
      w.begin_array();
      for (const auto& s : c.stamps) w.value(s);
      w.end_array();
    }
    if (!c.note.empty()) {
      w.key("note");
      w.value(c.note);
    }
    w.end_object();
  }
  w.end_array();
  w.key("summary");
  w.begin_object();
  w.key("pass");
  w.value(r.count(CheckStatus::pass));
  w.key("fail");
  w.value(r.count(CheckStatus::fail));
  w.key("info");
  w.value(r.count(CheckStatus::info));
  w.key("skip");
  w.value(r.count(CheckStatus::skip));
  w.end_object();
  w.end_object();
  return w.str();
}

// ---------------------------------------------------------------------------
// RFC-4180 CSV

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline std::string report_to_csv(const VerificationReport& r) {
  std::string out = "id,statement,status,residual,tolerance,note\n";
  for (const auto& c : r.checks) {
    out += csv_field(c.id) + ',' + csv_field(c.statement) + ',' + to_string(c.status) + ',' +
           json_number(c.residual) + ',' + json_number(c.tolerance) + ',' + csv_field(c.note) +
           '\n';
  }
  return out;
}

}  // namespace casq
