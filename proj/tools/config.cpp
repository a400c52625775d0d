#include "config.hpp"

#include <algorithm>
#include <fstream>

namespace mhtool {

using nlohmann::json;
using namespace mhcount;

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

int64_t cfg_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int64_t>();
}

double cfg_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

std::string cfg_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

std::vector<int64_t> cfg_int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<int64_t> out;
  for (const auto& e : j) out.push_back(cfg_int(e, where));
  return out;
}

namespace {

int64_t get_int(const json& j, const std::string& where) { return cfg_int(j, where); }

double get_number(const json& j, const std::string& where) { return cfg_number(j, where); }

std::vector<int64_t> get_int_list(const json& j, const std::string& where) {
  return cfg_int_list(j, where);
}

HypersurfaceSpec parse_spec(const json& obj) {
  check_keys(obj, {"f", "k", "a", "m"}, "spec");
  if (!obj.contains("f") || !obj.contains("k"))
    throw ConfigError("spec: needs 'f' and 'k'");
  HypersurfaceSpec spec;
  if (!obj["f"].is_array()) throw ConfigError("spec.f: expected an array of arrays");
  for (const auto& coeffs : obj["f"])
    spec.f_list.push_back(parse_polynomial(coeffs, "spec.f"));
  spec.k_list = get_int_list(obj["k"], "spec.k");
  if (obj.contains("a")) spec.a = bigint(get_int(obj["a"], "spec.a"));
  if (obj.contains("m")) spec.m = get_int(obj["m"], "spec.m");
  try {
    spec.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("spec: ") + e.what());
  }
  return spec;
}

Box parse_box(const json& obj, size_t n) {
  check_keys(obj, {"u", "u_list", "h"}, "boxes[]");
  if (!obj.contains("h")) throw ConfigError("boxes[]: needs 'h'");
  Box box;
  box.h = get_int(obj["h"], "boxes[].h");
  if (obj.contains("u_list")) {
    if (obj.contains("u")) throw ConfigError("boxes[]: 'u' and 'u_list' are exclusive");
    box.u_list = get_int_list(obj["u_list"], "boxes[].u_list");
  } else {
    const int64_t u = obj.contains("u") ? get_int(obj["u"], "boxes[].u") : 0;
    box.u_list.assign(n, u);
  }
  try {
    box.validate(n);
  } catch (const Error& e) {
    throw ConfigError(std::string("boxes[]: ") + e.what());
  }
  return box;
}

ModulusConfig parse_modulus(const json& obj) {
  check_keys(obj, {"square_free", "prime_power", "policy"}, "modulus");
  ModulusConfig mc;
  int forms = 0;
  if (obj.contains("square_free") || obj.contains("prime_power")) {
    ++forms;
    mc.explicit_q = parse_modulus_value(obj, "modulus");
  }
  if (obj.contains("policy")) {
    ++forms;
    const json& p = obj["policy"];
    check_keys(p, {"Q", "r", "mode"}, "modulus.policy");
    if (!p.contains("Q") || !p.contains("r"))
      throw ConfigError("modulus.policy: needs 'Q' and 'r'");
    ModulusPolicy policy;
    policy.Q = get_number(p["Q"], "modulus.policy.Q");
    policy.r = static_cast<int>(get_int(p["r"], "modulus.policy.r"));
    if (policy.r < 1) throw ConfigError("modulus.policy.r: must be >= 1");
    if (p.contains("mode")) {
      const std::string mode = p["mode"].get<std::string>();
      if (mode == "coprime-to-k-minus-one")
        policy.mode = PrimeSelectionMode::CoprimeToKMinusOne;
      else if (mode == "three-mod-two-k")
        policy.mode = PrimeSelectionMode::ThreeModTwoK;
      else
        throw ConfigError("modulus.policy.mode: unknown mode '" + mode + "'");
    }
    mc.policy = policy;
  }
  if (forms != 1)
    throw ConfigError("modulus: exactly one of square_free/prime_power or policy");
  return mc;
}

GridConfig parse_grid(const json& obj) {
  check_keys(obj, {"u", "h_values"}, "grid");
  if (!obj.contains("h_values")) throw ConfigError("grid: needs 'h_values'");
  GridConfig grid;
  if (obj.contains("u")) grid.u = get_int(obj["u"], "grid.u");
  grid.h_values = get_int_list(obj["h_values"], "grid.h_values");
  if (grid.h_values.empty()) throw ConfigError("grid.h_values: must be nonempty");
  for (size_t i = 0; i < grid.h_values.size(); ++i) {
    if (grid.h_values[i] < 0) throw ConfigError("grid.h_values: must be >= 0");
    if (i && grid.h_values[i] <= grid.h_values[i - 1])
      throw ConfigError("grid.h_values: must be strictly increasing");
  }
  return grid;
}

VerifyConfig parse_verify(const json& obj) {
  check_keys(obj, {"suites", "perturb_postnikov"}, "verify");
  VerifyConfig vc;
  if (obj.contains("suites")) {
    if (!obj["suites"].is_array()) throw ConfigError("verify.suites: expected an array");
    for (const auto& s : obj["suites"]) {
      if (!s.is_string()) throw ConfigError("verify.suites: expected strings");
      vc.suites.push_back(s.get<std::string>());
    }
    // an explicitly empty selection is a usage error; omitting the key runs everything
    if (vc.suites.empty()) throw ConfigError("verify.suites: empty selection");
  }
  if (obj.contains("perturb_postnikov")) {
    if (!obj["perturb_postnikov"].is_boolean())
      throw ConfigError("verify.perturb_postnikov: expected a boolean");
    vc.perturb_postnikov = obj["perturb_postnikov"].get<bool>();
  }
  return vc;
}

ScanConfig parse_scan(const json& obj) {
  check_keys(obj, {"reference"}, "scan");
  ScanConfig sc;
  if (!obj.contains("reference")) throw ConfigError("scan: needs 'reference'");
  sc.reference = obj["reference"].get<std::string>();
  if (sc.reference != "n-4r/9" && sc.reference != "n-r/3" && sc.reference != "d(d+1)/2")
    throw ConfigError("scan.reference: must be n-4r/9, n-r/3 or d(d+1)/2");
  return sc;
}

}  // namespace

IntegerPolynomial parse_polynomial(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ConfigError(where + ": expected a coefficient array");
  std::vector<bigint> coeffs;
  for (const auto& c : arr) coeffs.push_back(bigint(get_int(c, where)));
  return IntegerPolynomial(std::move(coeffs));
}

FactoredModulus parse_modulus_value(const json& obj, const std::string& where) {
  const bool sf = obj.contains("square_free");
  const bool pp = obj.contains("prime_power");
  if (sf == pp)
    throw ConfigError(where + ": exactly one of 'square_free' or 'prime_power'");
  try {
    if (sf) return FactoredModulus::square_free(get_int_list(obj["square_free"], where));
    const auto pr = get_int_list(obj["prime_power"], where);
    if (pr.size() != 2) throw ConfigError(where + ".prime_power: expected [p, r]");
    return FactoredModulus::prime_power(pr[0], static_cast<int>(pr[1]));
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

ExperimentConfig parse_config_json(const json& doc) {
  check_keys(doc,
             {"spec", "boxes", "grid", "modulus", "verify", "scan", "charsum", "budget",
              "workers", "out", "timing", "strategy"},
             "config");
  ExperimentConfig cfg;
  if (doc.contains("spec")) cfg.spec = parse_spec(doc["spec"]);
  if (doc.contains("boxes")) {
    if (!cfg.spec) throw ConfigError("boxes: requires 'spec'");
    if (!doc["boxes"].is_array()) throw ConfigError("boxes: expected an array");
    std::vector<Box> boxes;
    for (const auto& b : doc["boxes"]) boxes.push_back(parse_box(b, cfg.spec->dimension()));
    cfg.boxes = std::move(boxes);
  }
  if (doc.contains("grid")) cfg.grid = parse_grid(doc["grid"]);
  if (doc.contains("modulus")) cfg.modulus = parse_modulus(doc["modulus"]);
  if (doc.contains("verify")) cfg.verify = parse_verify(doc["verify"]);
  if (doc.contains("scan")) cfg.scan = parse_scan(doc["scan"]);
  if (doc.contains("charsum")) {
    if (!doc["charsum"].is_object()) throw ConfigError("charsum: expected an object");
    cfg.charsum = doc["charsum"];
  }
  if (doc.contains("budget")) {
    cfg.budget = get_int(doc["budget"], "budget");
    if (*cfg.budget <= 0) throw ConfigError("budget: must be positive");
  }
  if (doc.contains("workers")) {
    cfg.workers = static_cast<int>(get_int(doc["workers"], "workers"));
    if (*cfg.workers < 0) throw ConfigError("workers: must be >= 0");
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) throw ConfigError("out: expected a string");
    cfg.out = doc["out"].get<std::string>();
  }
  if (doc.contains("timing")) {
    if (!doc["timing"].is_boolean()) throw ConfigError("timing: expected a boolean");
    cfg.timing = doc["timing"].get<bool>();
  }
  if (doc.contains("strategy")) {
    cfg.strategy = doc["strategy"].get<std::string>();
    if (cfg.strategy != "full-enumeration" && cfg.strategy != "solve-last")
      throw ConfigError("strategy: must be full-enumeration or solve-last");
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config_json(doc);
}

}  // namespace mhtool
