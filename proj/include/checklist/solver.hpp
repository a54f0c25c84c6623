#pragma once

// Exact checklist learning. Thresholds are discretized to data-induced
// candidates (a concept column depends on t only through the split it
// induces), and the weighted misclassification objective is minimized by a
// depth-first branch-and-bound over (skip feature | threshold candidate)
// decisions, one outer pass per M.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "checklist/core_model.hpp"

namespace checklist {

/// Per-feature strictly increasing candidate thresholds.
struct CandidateSet {
  std::vector<std::vector<double>> thresholds;

  Index features() const { return static_cast<Index>(thresholds.size()); }
  Index size(Index j) const {
    return static_cast<Index>(thresholds[static_cast<std::size_t>(j)].size());
  }
  void validate_against(const FeatureMatrix& X) const;
};

/// Midpoints between consecutive distinct values plus max + 1 (an all-zero
/// rule). Every threshold t >= min(column) induces the concept column of
/// exactly one candidate.
std::vector<double> candidate_thresholds(const Eigen::Ref<const Eigen::VectorXd>& column);

/// Candidates for every column. A positive cap keeps at most that many
/// candidates per feature (evenly spaced over the sorted list, the all-zero
/// sentinel always kept); 0 keeps all.
CandidateSet make_candidates(const FeatureMatrix& X, Index cap = 0);

struct SolverConfig {
  ObjectiveWeights weights;
  int max_rules = 0;  // 0: d
  int m_min = 1;
  int m_max = 0;      // 0: max_rules
  double time_budget = 60.0;     // seconds
  std::uint64_t node_budget = 0; // 0: unlimited
  int threads = 1;
  std::uint64_t seed = 0;
  /// Branching order over features; empty means 0..d-1.
  std::vector<Index> feature_order;
  /// Big-M constants for the exported model; empty / 0 selects defaults
  /// (A_j = range_j + 2, B = d + 1).
  Eigen::VectorXd big_a;
  double big_b = 0.0;
  /// Improve the greedy incumbent by single-rule moves before searching.
  bool polish_incumbent = true;
};

/// Resolved copy of a config for a problem with d features.
struct ResolvedConfig {
  ObjectiveWeights weights;
  int max_rules = 0;
  int m_min = 1;
  int m_max = 1;
  std::vector<Index> order;
};

ResolvedConfig resolve(const SolverConfig& config, Index d);

struct SolveResult {
  Checklist best;
  std::vector<Index> candidate_index;  // per rule, index into its feature's candidates
  EvalCounts counts;
  double objective = 0.0;
  double lower_bound = 0.0;
  bool certified_optimal = false;
  std::uint64_t nodes_explored = 0;
  double wall_time = 0.0;
};

/// Partial assignment: chosen (feature, candidate) pairs and per-patient
/// satisfied-rule counts.
struct SearchState {
  Index next_feature = 0;
  std::vector<std::pair<Index, Index>> chosen;
  std::vector<int> counts;

  static SearchState from_choices(const CandidateSet& candidates,
                                  const FeatureMatrix& X,
                                  std::vector<std::pair<Index, Index>> chosen,
                                  Index next_feature);
};

/// eps_n |chosen| + eps_m M + #{pos : count + remaining < M}
///   + lambda #{neg : count >= M}.
/// Never exceeds the objective of a completion that adds at most
/// `remaining` rules.
double bound_partial(const SearchState& state, const Labels& y, int m_required,
                     const ObjectiveWeights& weights, Index remaining);

SolveResult solve_checklist(const FeatureMatrix& X, const Labels& y,
                            const CandidateSet& candidates,
                            const SolverConfig& config);

/// Same contract with each feature's candidate set = {fixed_t_j}.
SolveResult solve_fixed_thresholds(const FeatureMatrix& X, const Labels& y,
                                   const std::vector<double>& fixed_t,
                                   const SolverConfig& config);

struct OracleCaps {
  Index max_features = 6;
  Index max_candidates_per_feature = 8;
};

/// Exhaustive enumeration of every (feature subset, threshold) choice and
/// every M through the plain checklist evaluator. Refuses instances beyond the caps.
SolveResult brute_force_oracle(const FeatureMatrix& X, const Labels& y,
                               const CandidateSet& candidates,
                               const SolverConfig& config,
                               const OracleCaps& caps = {});

/// Big-M model in CPLEX LP text format.
std::string export_mip_form(const FeatureMatrix& X, const Labels& y,
                            const std::optional<CandidateSet>& candidates,
                            const SolverConfig& config);

nlohmann::json to_json(const SolveResult& result,
                       const std::vector<std::string>& names);

}  // namespace checklist
