#pragma once

// Deterministic report emission: canonical float formatting, a small
// insertion-ordered JSON writer, and CSV assembly.  Every emitter is a pure
// function from data to document text so reruns with identical inputs produce
// byte-identical files; wall-clock metadata is kept in a separate document.

#include <cstdint>
#include <string>
#include <vector>

#include "halfline/criteria.hpp"

namespace halfline {
namespace cli {

// Shortest round-trip-safe decimal rendering (17 significant digits) used for
// every floating-point value that lands in a report.  Non-finite values render
// as "inf" / "-inf" / "nan".
std::string fmt17(double x);

// Compact human-facing rendering (6 significant digits) for diagnostics.
std::string fmt6(double x);

// Minimal JSON emitter.  Keys keep insertion order; numbers go through fmt17;
// non-finite doubles are emitted as quoted strings so the documents stay
// parseable.  The writer validates nesting with assertions only; callers are
// trusted to produce well-formed documents.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(const std::string& text);
  JsonWriter& value(const char* text);
  JsonWriter& value(double x);
  JsonWriter& value(bool flag);
  JsonWriter& value_int(std::int64_t n);
  JsonWriter& value_uint(std::uint64_t n);
  JsonWriter& null_value();

  // key() + value() conveniences
  JsonWriter& kv(const std::string& name, const std::string& text);
  JsonWriter& kv(const std::string& name, const char* text);
  JsonWriter& kv(const std::string& name, double x);
  JsonWriter& kv(const std::string& name, bool flag);
  JsonWriter& kv_int(const std::string& name, std::int64_t n);
  JsonWriter& kv_uint(const std::string& name, std::uint64_t n);

  // Finished document followed by a trailing newline.
  std::string str() const;

 private:
  void prefix();
  std::string out_;
  // Parallel stacks: container kind and whether an element was already written.
  std::vector<char> stack_;   // '{' or '['
  std::vector<bool> first_;
  bool expecting_value_ = false;  // a key was just written
};

std::string json_escape(const std::string& raw);

// CSV with RFC-4180 quoting (only applied when a cell needs it).  The header
// is emitted first; all rows must have the same arity as the header.
std::string csv_document(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

// Canonical JSON array of criterion reports, including the series evidence
// (verdict, basis, tail model, checkpointed partial sums) behind each one.
std::string criteria_reports_json(const std::vector<criteria::CriterionReport>& reports);

// Writes content to path, creating parent directories as needed; fails with
// Errc::kConfigError on I/O problems.
void write_text_file(const std::string& path, const std::string& content);

// Reads a whole file; fails with Errc::kConfigError if unreadable.
std::string read_text_file(const std::string& path);

}  // namespace cli
}  // namespace halfline
