#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mhcount/arith.hpp"

namespace mhcount {

// Deterministic CSV emission: LF endings, one "# schema=<name>/v1" comment
// line, doubles at 12 significant digits so identical inputs give identical
// bytes.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& schema_name);

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

  static std::string fmt(double v);
  static std::string fmt(int64_t v);
  static std::string fmt(const bigint& v);
  // flags travel in one cell, ';'-separated, so the column count stays fixed
  static std::string join(const std::vector<std::string>& parts);

 private:
  std::ostream& out_;
  size_t columns_ = 0;

  void emit(const std::vector<std::string>& cells);
};

}  // namespace mhcount
