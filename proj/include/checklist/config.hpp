#pragma once

// Run configuration: a flat INI file with sections, overridable key by key
// from the command line ("section.key=value").

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "checklist/baselines.hpp"
#include "checklist/feature_select.hpp"
#include "checklist/ingest.hpp"

namespace checklist {

inline const std::vector<std::string> kAllMethods{"mip", "ilp-mean", "lr", "mlp",
                                                  "dummy", "unit", "sets"};

struct RunConfig {
  std::filesystem::path data_dir;
  std::filesystem::path output_dir = "out";

  FoldSpec folds;
  double test_fraction = 0.2;

  int k_features = 10;
  bool allow_negated_features = false;

  std::vector<double> lambda_grid{1.0};
  std::optional<double> eps_n;  // unset: min(1, lambda) / (4 d)
  std::optional<double> eps_m;
  double time_budget = 60.0;
  std::uint64_t node_budget = 0;
  int max_rules = 0;
  int candidate_cap = 0;
  int threads = 1;

  TrainHyper lr;
  MlpHyper mlp;
  double sets_tau = 0.1;
  UnitWeightingConfig unit;

  std::vector<std::string> methods = kAllMethods;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Sets one field from its "section.key" name. Unknown keys and unparseable
/// values are configuration errors.
void set_config_value(RunConfig& config, const std::string& key,
                      const std::string& value);

RunConfig parse_config(std::string_view ini_text);
RunConfig load_config(const std::filesystem::path& path);

/// INI text that parses back to the same configuration.
std::string to_ini(const RunConfig& config);
nlohmann::json to_json(const RunConfig& config);

}  // namespace checklist
