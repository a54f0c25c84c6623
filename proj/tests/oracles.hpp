#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "checklist/solver.hpp"

namespace testutil {

/// Exhaustive minimum objective over completions of features [next, d): each
/// remaining feature is skipped or takes one candidate. Completions with
/// fewer than M rules are infeasible (infinity).
inline double min_completion(const checklist::FeatureMatrix& X, const checklist::Labels& y,
                             const checklist::CandidateSet& cs,
                             std::vector<std::pair<checklist::Index, checklist::Index>> chosen,
                             checklist::Index next, int M,
                             const checklist::ObjectiveWeights& w) {
  using checklist::Index;
  if (next == X.cols()) {
    if (static_cast<int>(chosen.size()) < M) return std::numeric_limits<double>::infinity();
    checklist::Checklist c;
    for (auto [j, k] : chosen)
      c.rules.push_back({j, cs.thresholds[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]});
    c.m_required = M;
    return checklist::objective_value(checklist::evaluate_counts(c, X, y), c.n_rules(), M, w);
  }
  double best = min_completion(X, y, cs, chosen, next + 1, M, w);
  for (Index k = 0; k < cs.size(next); ++k) {
    auto more = chosen;
    more.emplace_back(next, k);
    best = std::min(best, min_completion(X, y, cs, more, next + 1, M, w));
  }
  return best;
}

}  // namespace testutil
