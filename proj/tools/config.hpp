#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mhcount/arith.hpp"
#include "mhcount/counting.hpp"

namespace mhtool {

// configuration problems exit with code 2, unlike runtime failures (code 1)
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModulusPolicy {
  double Q = 0.0;
  int r = 1;
  mhcount::PrimeSelectionMode mode = mhcount::PrimeSelectionMode::CoprimeToKMinusOne;
};

struct ModulusConfig {
  std::optional<mhcount::FactoredModulus> explicit_q;
  std::optional<ModulusPolicy> policy;
};

struct GridConfig {
  int64_t u = 0;
  std::vector<int64_t> h_values;  // strictly increasing
};

struct VerifyConfig {
  std::vector<std::string> suites;
  bool perturb_postnikov = false;
};

struct ScanConfig {
  std::string reference;  // one of "n-4r/9", "n-r/3", "d(d+1)/2"
};

struct ExperimentConfig {
  std::optional<mhcount::HypersurfaceSpec> spec;
  std::optional<std::vector<mhcount::Box>> boxes;
  std::optional<GridConfig> grid;
  std::optional<ModulusConfig> modulus;
  std::optional<VerifyConfig> verify;
  std::optional<ScanConfig> scan;
  std::optional<nlohmann::json> charsum;  // op-specific keys checked per op
  std::optional<int64_t> budget;
  std::optional<int> workers;
  std::optional<std::string> out;
  bool timing = false;
  std::string strategy = "full-enumeration";
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_json(const nlohmann::json& doc);

// shared strictness helper: rejects keys outside `allowed`
void check_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed,
                const std::string& where);

mhcount::IntegerPolynomial parse_polynomial(const nlohmann::json& arr, const std::string& where);
mhcount::FactoredModulus parse_modulus_value(const nlohmann::json& obj, const std::string& where);

// typed accessors that fail with ConfigError
int64_t cfg_int(const nlohmann::json& j, const std::string& where);
double cfg_number(const nlohmann::json& j, const std::string& where);
std::string cfg_string(const nlohmann::json& j, const std::string& where);
std::vector<int64_t> cfg_int_list(const nlohmann::json& j, const std::string& where);

}  // namespace mhtool
