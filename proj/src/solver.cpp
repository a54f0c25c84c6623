#include "checklist/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace checklist {

namespace {

using Word = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

Index word_count(Index n) { return (n + 63) / 64; }

Index popcount_and(const Word* a, const Word* b, Index words) {
  Index c = 0;
  for (Index w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

// Concept columns and label masks as packed bitsets, laid out by branching
// level. A "counter" of height K is K bitsets G_1..G_K where bit i of G_k is
// set iff patient i satisfies at least k of the chosen rules.
struct Problem {
  Index n = 0;
  Index words = 0;
  Index levels = 0;
  Index n_pos = 0;
  Index n_neg = 0;
  std::vector<Word> pos_mask;
  std::vector<Word> neg_mask;
  std::vector<Index> n_cands;             // per level
  std::vector<std::vector<Word>> columns; // per level, n_cands * words
  ResolvedConfig cfg;

  const Word* column(Index level, Index cand) const {
    return columns[static_cast<std::size_t>(level)].data() + cand * words;
  }
};

Problem build_problem(const FeatureMatrix& X, const Labels& y,
                      const CandidateSet& candidates, ResolvedConfig cfg) {
  Problem p;
  p.n = X.rows();
  p.words = word_count(p.n);
  p.levels = X.cols();
  p.cfg = std::move(cfg);
  p.pos_mask.assign(static_cast<std::size_t>(p.words), 0);
  p.neg_mask.assign(static_cast<std::size_t>(p.words), 0);
  for (Index i = 0; i < p.n; ++i) {
    auto& mask = y.y(i) == 1 ? p.pos_mask : p.neg_mask;
    mask[static_cast<std::size_t>(i / 64)] |= Word{1} << (i % 64);
  }
  p.n_pos = static_cast<Index>(y.pos.size());
  p.n_neg = static_cast<Index>(y.neg.size());
  for (Index l = 0; l < p.levels; ++l) {
    const Index j = p.cfg.order[static_cast<std::size_t>(l)];
    const auto& ts = candidates.thresholds[static_cast<std::size_t>(j)];
    std::vector<Word> cols(ts.size() * static_cast<std::size_t>(p.words), 0);
    for (std::size_t c = 0; c < ts.size(); ++c) {
      Word* col = cols.data() + c * static_cast<std::size_t>(p.words);
      for (Index i = 0; i < p.n; ++i)
        if (X.values(i, j) > ts[c]) col[i / 64] |= Word{1} << (i % 64);
    }
    p.n_cands.push_back(static_cast<Index>(ts.size()));
    p.columns.push_back(std::move(cols));
  }
  return p;
}

// child_k = parent_k | (parent_{k-1} & col), parent_0 = all ones.
void counter_add(const Word* parent, const Word* col, Word* child, int K,
                 Index words) {
  for (Index w = 0; w < words; ++w) {
    Word below = col[w];
    for (int k = 0; k < K; ++k) {
      const Word pk = parent[k * words + w];
      child[k * words + w] = pk | below;
      below = pk & col[w];
    }
  }
}

// Objective of the counter state for required count M, assuming positives
// may still gain `rem` rules. rem = 0 gives the exact completed objective.
double counter_bound(const Problem& p, const Word* G, int N, int M, Index rem) {
  const Index t = M - rem;
  const Index lp =
      t >= 1 ? p.n_pos - popcount_and(G + (t - 1) * p.words, p.pos_mask.data(), p.words)
             : 0;
  const Index ln = popcount_and(G + (M - 1) * p.words, p.neg_mask.data(), p.words);
  return objective_value(lp, ln, N, M, p.cfg.weights);
}

// Key of a complete assignment: M, then one branch per level (0 = skip,
// c + 1 = candidate c). Results are ordered by (objective, key).
using Key = std::vector<int>;

struct Solution {
  double objective = kInf;
  Key key;
};

bool better(double obj, const Key& key, const Solution& inc) {
  return obj < inc.objective || (obj == inc.objective && key < inc.key);
}

// Greedy construction followed by single-rule improvement moves.
class Heuristic {
 public:
  explicit Heuristic(const Problem& p) : p_(p) {
    K_ = p.cfg.m_max;
    base_.assign(static_cast<std::size_t>(K_ * p.words), 0);
    scratch_.assign(base_.size(), 0);
  }

  Solution run(bool polish) {
    std::vector<Index> assign(static_cast<std::size_t>(p_.levels), -1);
    int n_chosen = 0;
    double current = kInf;
    while (n_chosen < p_.cfg.max_rules) {
      build_counter(assign, -1);
      Move best;
      for (Index l = 0; l < p_.levels; ++l) {
        if (assign[static_cast<std::size_t>(l)] >= 0) continue;
        for (Index c = 0; c < p_.n_cands[static_cast<std::size_t>(l)]; ++c) {
          auto [obj, M] = eval_with(p_.column(l, c), n_chosen + 1, true);
          if (obj < best.objective) best = {obj, l, c, M};
        }
      }
      if (best.level < 0) break;
      const bool must_grow = n_chosen < p_.cfg.m_min;
      if (!(best.objective < current) && !must_grow) break;
      assign[static_cast<std::size_t>(best.level)] = best.cand;
      ++n_chosen;
      current = n_chosen >= p_.cfg.m_min ? best.objective : kInf;
    }

    int M = 0;
    std::tie(current, M) = evaluate(assign, n_chosen);
    if (polish) {
      for (int iter = 0; iter < 100 * static_cast<int>(p_.levels); ++iter) {
        Move best;
        best.objective = current;
        for (Index l = 0; l < p_.levels; ++l) {
          const Index cur = assign[static_cast<std::size_t>(l)];
          const int n_base = n_chosen - (cur >= 0 ? 1 : 0);
          build_counter(assign, l);
          if (cur >= 0 && n_base >= 1) {
            auto [obj, m] = eval_with(nullptr, n_base, false);
            if (obj < best.objective) best = {obj, l, -1, m};
          }
          if (n_base + 1 > p_.cfg.max_rules) continue;
          for (Index c = 0; c < p_.n_cands[static_cast<std::size_t>(l)]; ++c) {
            if (c == cur) continue;
            auto [obj, m] = eval_with(p_.column(l, c), n_base + 1, false);
            if (obj < best.objective) best = {obj, l, c, m};
          }
        }
        if (best.level < 0) break;
        const Index old = assign[static_cast<std::size_t>(best.level)];
        if (old >= 0) --n_chosen;
        assign[static_cast<std::size_t>(best.level)] = best.cand;
        if (best.cand >= 0) ++n_chosen;
        current = best.objective;
        M = best.m;
      }
    }

    Solution s;
    if (!std::isfinite(current)) return s;
    s.objective = current;
    s.key.push_back(M);
    for (auto a : assign) s.key.push_back(static_cast<int>(a + 1));
    return s;
  }

 private:
  struct Move {
    double objective = kInf;
    Index level = -1;
    Index cand = -1;
    int m = 0;
  };

  void build_counter(const std::vector<Index>& assign, Index skip_level) {
    std::fill(base_.begin(), base_.end(), 0);
    for (Index l = 0; l < p_.levels; ++l) {
      const Index c = assign[static_cast<std::size_t>(l)];
      if (c < 0 || l == skip_level) continue;
      counter_add(base_.data(), p_.column(l, c), scratch_.data(), K_, p_.words);
      std::swap(base_, scratch_);
    }
  }

  // Best objective over valid M after optionally adding `col` to the current
  // counter. With `guide`, an N below m_min is scored at M = N so greedy
  // construction can make progress.
  std::pair<double, int> eval_with(const Word* col, int N, bool guide) {
    const Word* G = base_.data();
    if (col) {
      counter_add(base_.data(), col, scratch_.data(), K_, p_.words);
      G = scratch_.data();
    }
    const int lo = p_.cfg.m_min;
    const int hi = std::min(p_.cfg.m_max, N);
    double best = kInf;
    int best_m = 0;
    for (int M = lo; M <= hi; ++M) {
      const double obj = counter_bound(p_, G, N, M, 0);
      if (obj < best) {
        best = obj;
        best_m = M;
      }
    }
    if (best_m == 0 && guide && N >= 1 && N < lo) {
      // Surrogate score at M = N; only used to rank additions while the
      // rule count is still below m_min.
      return {counter_bound(p_, G, N, N, 0), N};
    }
    return {best, best_m};
  }

  std::pair<double, int> evaluate(const std::vector<Index>& assign, int N) {
    build_counter(assign, -1);
    return eval_with(nullptr, N, false);
  }

  const Problem& p_;
  int K_ = 1;
  std::vector<Word> base_;
  std::vector<Word> scratch_;
};

struct SharedSearch {
  const Problem& p;
  std::mutex mu;
  Solution incumbent;
  std::atomic<std::uint64_t> version{0};
  std::atomic<bool> aborted{false};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::size_t> next_task{0};
  std::vector<std::pair<int, Index>> tasks;  // (M, root branch)
  Clock::time_point deadline;
  std::uint64_t node_budget = 0;

  explicit SharedSearch(const Problem& prob) : p(prob) {}

  void offer(double obj, const Key& key) {
    std::lock_guard lock(mu);
    if (better(obj, key, incumbent)) {
      incumbent.objective = obj;
      incumbent.key = key;
      version.fetch_add(1, std::memory_order_release);
    }
  }
};

class Worker {
 public:
  explicit Worker(SharedSearch& shared) : s_(shared), p_(shared.p) {
    K_ = p_.cfg.m_max;
    frames_.assign(static_cast<std::size_t>((p_.levels + 1) * K_ * p_.words), 0);
    key_.assign(static_cast<std::size_t>(p_.levels + 1), 0);
  }

  void run() {
    while (true) {
      const std::size_t t = s_.next_task.fetch_add(1);
      if (t >= s_.tasks.size()) break;
      const auto [M, branch] = s_.tasks[t];
      run_task(M, branch);
    }
    s_.nodes.fetch_add(local_nodes_ % kFlush);
  }

  double lower_bound() const { return lb_; }

 private:
  static constexpr std::uint64_t kFlush = 1024;

  Word* frame(Index depth) {
    return frames_.data() + depth * K_ * p_.words;
  }

  void run_task(int M, Index branch) {
    M_ = M;
    key_[0] = M;
    Word* root = frame(0);
    std::fill(root, root + M_ * p_.words, 0);
    if (!enter(0, 0, root)) return;
    descend(0, 0, root, branch, branch + 1);
  }

  void tick() {
    ++local_nodes_;
    if (local_nodes_ % kFlush != 0) return;
    const auto total = s_.nodes.fetch_add(kFlush) + kFlush;
    if ((s_.node_budget && total >= s_.node_budget) ||
        Clock::now() >= s_.deadline)
      s_.aborted.store(true, std::memory_order_relaxed);
  }

  void refresh() {
    const auto v = s_.version.load(std::memory_order_acquire);
    if (v == seen_version_) return;
    std::lock_guard lock(s_.mu);
    inc_obj_ = s_.incumbent.objective;
    inc_key_ = s_.incumbent.key;
    seen_version_ = s_.version.load(std::memory_order_relaxed);
  }

  // True when the node at `depth` survives the budget and can still beat
  // the incumbent.
  bool enter(Index depth, int N, const Word* G) {
    tick();
    const Index rem = std::min<Index>(p_.levels - depth, p_.cfg.max_rules - N);
    if (N + rem < M_) return false;
    const double b = counter_bound(p_, G, N, M_, rem);
    if (s_.aborted.load(std::memory_order_relaxed)) {
      lb_ = std::min(lb_, b);
      return false;
    }
    refresh();
    if (b > inc_obj_) return false;
    if (b == inc_obj_ && prefix_after(depth)) return false;
    if (rem == 0) {
      Key key(key_.begin(), key_.begin() + depth + 1);
      key.resize(static_cast<std::size_t>(p_.levels + 1), 0);
      if (better(b, key, Solution{inc_obj_, inc_key_})) s_.offer(b, key);
      return false;
    }
    return true;
  }

  // Key prefix [0, depth] strictly greater than the incumbent's.
  bool prefix_after(Index depth) const {
    for (Index k = 0; k <= depth; ++k) {
      const int a = key_[static_cast<std::size_t>(k)];
      const int b = inc_key_[static_cast<std::size_t>(k)];
      if (a != b) return a > b;
    }
    return false;
  }

  void dfs(Index depth, int N, const Word* G) {
    if (!enter(depth, N, G)) return;
    descend(depth, N, G, 0, p_.n_cands[static_cast<std::size_t>(depth)] + 1);
  }

  void descend(Index depth, int N, const Word* G, Index first, Index last) {
    for (Index b = first; b < last; ++b) {
      key_[static_cast<std::size_t>(depth + 1)] = static_cast<int>(b);
      if (b == 0) {
        dfs(depth + 1, N, G);
      } else {
        Word* child = frame(depth + 1);
        counter_add(G, p_.column(depth, b - 1), child, M_, p_.words);
        dfs(depth + 1, N + 1, child);
      }
    }
  }

  SharedSearch& s_;
  const Problem& p_;
  int K_ = 1;
  int M_ = 1;
  std::vector<Word> frames_;
  std::vector<int> key_;
  std::uint64_t local_nodes_ = 0;
  std::uint64_t seen_version_ = std::numeric_limits<std::uint64_t>::max();
  double inc_obj_ = kInf;
  Key inc_key_;
  double lb_ = kInf;
};

SolveResult finish(const FeatureMatrix& X, const Labels& y,
                   const CandidateSet& candidates, const Problem& p,
                   const Solution& sol) {
  SolveResult r;
  r.objective = sol.objective;
  require(!sol.key.empty(), ErrorKind::data, "solver found no feasible checklist");
  r.best.m_required = sol.key[0];
  std::vector<std::pair<Index, Index>> rules;
  for (Index l = 0; l < p.levels; ++l) {
    const int b = sol.key[static_cast<std::size_t>(l + 1)];
    if (b == 0) continue;
    rules.emplace_back(p.cfg.order[static_cast<std::size_t>(l)], b - 1);
  }
  std::sort(rules.begin(), rules.end());
  for (auto [j, c] : rules) {
    r.best.rules.push_back(
        {j, candidates.thresholds[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)], false});
    r.candidate_index.push_back(c);
  }
  r.counts = evaluate_counts(r.best, X, y);
  return r;
}

void check_inputs(const FeatureMatrix& X, const Labels& y,
                  const CandidateSet& candidates) {
  X.validate();
  require(X.rows() == y.size(), ErrorKind::structural,
          "feature matrix and labels disagree in row count");
  candidates.validate_against(X);
}

}  // namespace

void CandidateSet::validate_against(const FeatureMatrix& X) const {
  require(features() == X.cols(), ErrorKind::structural,
          "candidate set has " + std::to_string(features()) +
              " features but the matrix has " + std::to_string(X.cols()));
  for (const auto& ts : thresholds) {
    require(!ts.empty(), ErrorKind::structural,
            "every feature needs at least one candidate threshold");
    for (std::size_t c = 0; c < ts.size(); ++c) {
      require(std::isfinite(ts[c]), ErrorKind::structural,
              "candidate thresholds must be finite");
      require(c == 0 || ts[c - 1] < ts[c], ErrorKind::structural,
              "candidate thresholds must be strictly increasing");
    }
  }
}

std::vector<double> candidate_thresholds(
    const Eigen::Ref<const Eigen::VectorXd>& column) {
  require(column.size() > 0, ErrorKind::structural,
          "cannot build candidates for an empty column");
  require(column.allFinite(), ErrorKind::data,
          "candidate thresholds require a finite column");
  std::vector<double> v(column.data(), column.data() + column.size());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double mid = v[k] + (v[k + 1] - v[k]) / 2.0;
    // Adjacent doubles can round the midpoint onto the upper value.
    out.push_back(mid < v[k + 1] ? mid : v[k]);
  }
  out.push_back(v.back() + 1.0);
  return out;
}

CandidateSet make_candidates(const FeatureMatrix& X, Index cap) {
  CandidateSet cs;
  for (Index j = 0; j < X.cols(); ++j) {
    auto ts = candidate_thresholds(X.values.col(j));
    if (cap > 0 && static_cast<Index>(ts.size()) > cap) {
      std::vector<double> kept;
      const auto inner = static_cast<double>(ts.size() - 1);
      const Index slots = cap - 1;
      for (Index s = 0; s < slots; ++s) {
        const auto idx = static_cast<std::size_t>(
            std::floor((static_cast<double>(s) + 0.5) * inner / static_cast<double>(slots)));
        if (kept.empty() || kept.back() < ts[idx]) kept.push_back(ts[idx]);
      }
      kept.push_back(ts.back());
      ts = std::move(kept);
    }
    cs.thresholds.push_back(std::move(ts));
  }
  return cs;
}

ResolvedConfig resolve(const SolverConfig& config, Index d) {
  config.weights.validate();
  ResolvedConfig r;
  r.weights = config.weights;
  r.max_rules = config.max_rules > 0
                    ? static_cast<int>(std::min<Index>(config.max_rules, d))
                    : static_cast<int>(d);
  r.m_min = config.m_min;
  r.m_max = config.m_max > 0 ? std::min(config.m_max, r.max_rules) : r.max_rules;
  require(r.m_min >= 1 && r.m_min <= r.m_max, ErrorKind::config,
          "M range [" + std::to_string(config.m_min) + ", " +
              std::to_string(config.m_max) + "] is empty for at most " +
              std::to_string(r.max_rules) + " rules");
  require(config.time_budget > 0.0, ErrorKind::config, "time_budget must be > 0");
  if (config.feature_order.empty()) {
    r.order.resize(static_cast<std::size_t>(d));
    std::iota(r.order.begin(), r.order.end(), Index{0});
  } else {
    r.order = config.feature_order;
    auto sorted = r.order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Index> ident(static_cast<std::size_t>(d));
    std::iota(ident.begin(), ident.end(), Index{0});
    require(sorted == ident, ErrorKind::config,
            "feature_order must be a permutation of all feature indices");
  }
  return r;
}

SearchState SearchState::from_choices(const CandidateSet& candidates,
                                      const FeatureMatrix& X,
                                      std::vector<std::pair<Index, Index>> chosen,
                                      Index next_feature) {
  SearchState s;
  s.next_feature = next_feature;
  s.counts.assign(static_cast<std::size_t>(X.rows()), 0);
  for (auto [j, c] : chosen) {
    const double t = candidates.thresholds[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    for (Index i = 0; i < X.rows(); ++i)
      if (X.values(i, j) > t) ++s.counts[static_cast<std::size_t>(i)];
  }
  s.chosen = std::move(chosen);
  return s;
}

double bound_partial(const SearchState& state, const Labels& y, int m_required,
                     const ObjectiveWeights& weights, Index remaining) {
  require(static_cast<Index>(state.counts.size()) == y.size(),
          ErrorKind::structural, "search state and labels disagree in size");
  Index lp = 0;
  Index ln = 0;
  for (auto i : y.pos)
    if (state.counts[static_cast<std::size_t>(i)] + remaining < m_required) ++lp;
  for (auto i : y.neg)
    if (state.counts[static_cast<std::size_t>(i)] >= m_required) ++ln;
  return objective_value(lp, ln, static_cast<int>(state.chosen.size()),
                         m_required, weights);
}

SolveResult solve_checklist(const FeatureMatrix& X, const Labels& y,
                            const CandidateSet& candidates,
                            const SolverConfig& config) {
  const auto start = Clock::now();
  check_inputs(X, y, candidates);
  const Problem p = build_problem(X, y, candidates, resolve(config, X.cols()));

  SharedSearch shared(p);
  shared.incumbent = Heuristic(p).run(config.polish_incumbent);
  shared.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(config.time_budget));
  shared.node_budget = config.node_budget;
  for (int M = p.cfg.m_min; M <= p.cfg.m_max; ++M)
    for (Index b = 0; b <= p.n_cands[0]; ++b) shared.tasks.emplace_back(M, b);

  const int threads = std::max(1, config.threads);
  std::vector<Worker> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) workers.emplace_back(shared);
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t)
      pool.emplace_back([&workers, t] { workers[static_cast<std::size_t>(t)].run(); });
    workers[0].run();
  }

  SolveResult r = finish(X, y, candidates, p, shared.incumbent);
  double lb = r.objective;
  for (const auto& w : workers) lb = std::min(lb, w.lower_bound());
  r.lower_bound = lb;
  r.certified_optimal = lb == r.objective;
  r.nodes_explored = shared.nodes.load();
  r.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

SolveResult solve_fixed_thresholds(const FeatureMatrix& X, const Labels& y,
                                   const std::vector<double>& fixed_t,
                                   const SolverConfig& config) {
  require(static_cast<Index>(fixed_t.size()) == X.cols(), ErrorKind::structural,
          "need one fixed threshold per feature");
  CandidateSet cs;
  for (double t : fixed_t) {
    require(std::isfinite(t), ErrorKind::structural,
            "fixed thresholds must be finite");
    cs.thresholds.push_back({t});
  }
  return solve_checklist(X, y, cs, config);
}

SolveResult brute_force_oracle(const FeatureMatrix& X, const Labels& y,
                               const CandidateSet& candidates,
                               const SolverConfig& config,
                               const OracleCaps& caps) {
  const auto start = Clock::now();
  check_inputs(X, y, candidates);
  const Index d = X.cols();
  require(d <= caps.max_features, ErrorKind::refusal,
          "oracle refuses " + std::to_string(d) + " features (cap " +
              std::to_string(caps.max_features) + ")");
  for (Index j = 0; j < d; ++j)
    require(candidates.size(j) <= caps.max_candidates_per_feature,
            ErrorKind::refusal,
            "oracle refuses " + std::to_string(candidates.size(j)) +
                " candidates on feature " + std::to_string(j) + " (cap " +
                std::to_string(caps.max_candidates_per_feature) + ")");
  const ResolvedConfig cfg = resolve(config, d);

  // Mixed-radix counter: digit j = 0 skips feature j, digit c + 1 picks
  // candidate c.
  std::vector<Index> digit(static_cast<std::size_t>(d), 0);
  SolveResult best;
  best.objective = kInf;
  std::uint64_t visited = 0;
  while (true) {
    Checklist c;
    for (Index j = 0; j < d; ++j) {
      const Index g = digit[static_cast<std::size_t>(j)];
      if (g > 0)
        c.rules.push_back({j, candidates.thresholds[static_cast<std::size_t>(j)][static_cast<std::size_t>(g - 1)], false});
    }
    const int N = c.n_rules();
    if (N >= 1 && N <= cfg.max_rules) {
      for (int M = cfg.m_min; M <= std::min(cfg.m_max, N); ++M) {
        c.m_required = M;
        const auto counts = evaluate_counts(c, X, y);
        const double obj = objective_value(counts, N, M, cfg.weights);
        ++visited;
        if (obj < best.objective) {
          best.objective = obj;
          best.best = c;
          best.counts = counts;
          best.candidate_index.clear();
          for (Index j = 0; j < d; ++j)
            if (digit[static_cast<std::size_t>(j)] > 0)
              best.candidate_index.push_back(digit[static_cast<std::size_t>(j)] - 1);
        }
      }
    }
    Index j = 0;
    while (j < d) {
      auto& g = digit[static_cast<std::size_t>(j)];
      if (++g <= candidates.size(j)) break;
      g = 0;
      ++j;
    }
    if (j == d) break;
  }
  require(std::isfinite(best.objective), ErrorKind::data,
          "oracle found no feasible checklist");
  best.lower_bound = best.objective;
  best.certified_optimal = true;
  best.nodes_explored = visited;
  best.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return best;
}

nlohmann::json to_json(const SolveResult& result,
                       const std::vector<std::string>& names) {
  return {{"objective", result.objective},
          {"lower_bound", result.lower_bound},
          {"certified_optimal", result.certified_optimal},
          {"checklist", to_json(result.best, names)},
          {"checklist_text", to_text(result.best, names)},
          {"l_plus", result.counts.l_plus},
          {"l_minus", result.counts.l_minus},
          {"nodes_explored", result.nodes_explored},
          {"wall_time_s", result.wall_time}};
}

}  // namespace checklist
