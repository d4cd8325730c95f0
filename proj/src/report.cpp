#include "halfline/report.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "halfline/core.hpp"
#include "halfline/series.hpp"

namespace halfline {
namespace cli {

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) x = 0;  // normalize signed zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt6(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) x = 0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string json_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size() + 2);
  for (unsigned char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

void JsonWriter::prefix() {
  if (expecting_value_) {
    expecting_value_ = false;
    return;  // value follows its key directly
  }
  if (!stack_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  prefix();
  out_ += '{';
  stack_.push_back('{');
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  assert(!stack_.empty() && stack_.back() == '{');
  stack_.pop_back();
  first_.pop_back();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  prefix();
  out_ += '[';
  stack_.push_back('[');
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  assert(!stack_.empty() && stack_.back() == '[');
  stack_.pop_back();
  first_.pop_back();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  assert(!stack_.empty() && stack_.back() == '{');
  if (!first_.back()) out_ += ',';
  first_.back() = false;
  out_ += '"';
  out_ += json_escape(name);
  out_ += "\":";
  expecting_value_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& text) {
  prefix();
  out_ += '"';
  out_ += json_escape(text);
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* text) { return value(std::string(text)); }

JsonWriter& JsonWriter::value(double x) {
  if (!std::isfinite(x)) return value(fmt17(x));  // quoted "inf"/"nan"
  prefix();
  out_ += fmt17(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool flag) {
  prefix();
  out_ += flag ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value_int(std::int64_t n) {
  prefix();
  out_ += std::to_string(n);
  return *this;
}

JsonWriter& JsonWriter::value_uint(std::uint64_t n) {
  prefix();
  out_ += std::to_string(n);
  return *this;
}

JsonWriter& JsonWriter::null_value() {
  prefix();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::kv(const std::string& name, const std::string& text) {
  return key(name).value(text);
}
JsonWriter& JsonWriter::kv(const std::string& name, const char* text) {
  return key(name).value(text);
}
JsonWriter& JsonWriter::kv(const std::string& name, double x) { return key(name).value(x); }
JsonWriter& JsonWriter::kv(const std::string& name, bool flag) { return key(name).value(flag); }
JsonWriter& JsonWriter::kv_int(const std::string& name, std::int64_t n) {
  return key(name).value_int(n);
}
JsonWriter& JsonWriter::kv_uint(const std::string& name, std::uint64_t n) {
  return key(name).value_uint(n);
}

std::string JsonWriter::str() const {
  assert(stack_.empty());
  return out_ + "\n";
}

namespace {

std::string csv_cell(const std::string& raw) {
  bool needs_quote = false;
  for (char c : raw) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      needs_quote = true;
      break;
    }
  }
  if (!needs_quote) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

void csv_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c) out += ',';
    out += csv_cell(cells[c]);
  }
  out += '\n';
}

}  // namespace

std::string csv_document(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  csv_row(out, header);
  for (const auto& row : rows) {
    if (row.size() != header.size())
      fail(Errc::kInvalidArgument, "csv row arity differs from header");
    csv_row(out, row);
  }
  return out;
}

std::string criteria_reports_json(const std::vector<criteria::CriterionReport>& reports) {
  JsonWriter w;
  w.begin_array();
  for (const auto& r : reports) {
    w.begin_object();
    w.kv("id", r.id);
    w.kv("inputs", r.inputs);
    w.kv("verdict", criteria::verdict_token(r.verdict));
    w.kv("condition_met", r.condition_met);
    w.kv("counterexample", r.counterexample);
    w.key("classification").begin_object();
    w.kv("verdict", series::verdict_token(r.classification.verdict));
    w.kv("basis", series::basis_token(r.classification.basis));
    w.kv("finite_support", r.classification.finite_support);
    if (r.classification.tail_model) {
      w.key("tail_model").begin_object();
      w.kv("s", r.classification.tail_model->s);
      w.kv("t", r.classification.tail_model->t);
      w.end_object();
    } else {
      w.key("tail_model").null_value();
    }
    w.key("partial_sums").begin_array();
    for (const auto& [n, sum] : r.classification.partial_sums) {
      w.begin_array().value_uint(n).value(sum).end_array();
    }
    w.end_array();
    w.end_object();
    w.kv("notes", r.notes);
    w.end_object();
  }
  w.end_array();
  return w.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::kConfigError, "cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) fail(Errc::kConfigError, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::kConfigError, "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(Errc::kConfigError, "read failed: " + path);
  return ss.str();
}

}  // namespace cli
}  // namespace halfline
