#include "mhcount/csv.hpp"

#include <cstdio>

#include "mhcount/errors.hpp"

namespace mhcount {

namespace {

bool needs_quotes(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

std::string quoted(const std::string& s) {
  if (!needs_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvWriter::CsvWriter(std::ostream& out, const std::string& schema_name) : out_(out) {
  out_ << "# schema=" << schema_name << "/v1\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  if (columns.empty()) throw BadRange("csv: header must have at least one column");
  columns_ = columns.size();
  emit(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (columns_ == 0) throw BadRange("csv: header must come before rows");
  if (cells.size() != columns_) throw BadRange("csv: cell count differs from header");
  emit(cells);
}

void CsvWriter::emit(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << quoted(cells[i]);
  }
  out_ << '\n';
}

std::string CsvWriter::fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string CsvWriter::fmt(int64_t v) { return std::to_string(v); }

std::string CsvWriter::fmt(const bigint& v) { return v.str(); }

std::string CsvWriter::join(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ';';
    out += parts[i];
  }
  return out;
}

}  // namespace mhcount
