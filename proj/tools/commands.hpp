#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "config.hpp"

namespace mhtool {

struct GlobalOptions {
  int workers = 1;
  int64_t budget = mhcount::kDefaultBudget;
  std::optional<std::string> out;  // absent: stdout
  bool timing = false;             // elapsed cells print 0 unless set
};

int cmd_count(const ExperimentConfig& cfg, const GlobalOptions& opt);
int cmd_verify(const ExperimentConfig& cfg, const GlobalOptions& opt);
int cmd_scan_density(const ExperimentConfig& cfg, const GlobalOptions& opt);
int cmd_charsum(const ExperimentConfig& cfg, const GlobalOptions& opt);

}  // namespace mhtool
