#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace uls {

struct InequalityCase {
  std::string name;
  std::string statement;  // the inequality under test, in plain notation
  std::string sampler;
  std::string criterion;  // declared before sampling
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  std::size_t count = 0;
  bool has_fit = false;
  double slope = 0.0;
  double r2 = 0.0;
  bool pass = false;
  nlohmann::json details;

  nlohmann::json to_json() const;
};

// Registry names in a fixed order.
const std::vector<std::string>& verify_registry();
int default_trials(const std::string& name);

// trials <= 0 selects the case default. Throws UnknownCase.
InequalityCase run_case(const std::string& name, int trials, std::uint64_t seed);

struct VerifySummary {
  std::vector<InequalityCase> cases;
  bool all_pass = false;
  nlohmann::json to_json() const;
};

VerifySummary run_all(std::uint64_t seed);

}  // namespace uls
