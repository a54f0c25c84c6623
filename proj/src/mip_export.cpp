// Big-M mixed-integer model in CPLEX LP format, for cross-checking the
// combinatorial solver against an external MIP solver.
//
// Variables: w_j (rule on feature j), t_j (threshold), C_i_j (patient i
// satisfies the rule on j), z_i (patient i misclassified), M.
// C_i_j <= w_j folds the rule weight into the concept so that w^T C_i is the
// linear sum of C_i_j. Strict inequalities use a margin delta_j.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "checklist/solver.hpp"

namespace checklist {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Appends " + c name" / " - c name", dropping unit coefficients.
void term(std::ostringstream& out, double coef, const std::string& name,
          bool& first) {
  if (coef == 0.0) return;
  const double mag = std::abs(coef);
  if (first) {
    out << (coef < 0 ? " -" : " ");
  } else {
    out << (coef < 0 ? " - " : " + ");
  }
  if (first && coef < 0) out << ' ';
  if (mag != 1.0) out << num(mag) << ' ';
  out << name;
  first = false;
}

std::string cvar(Index i, Index j) {
  return "C_" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

std::string export_mip_form(const FeatureMatrix& X, const Labels& y,
                            const std::optional<CandidateSet>& candidates,
                            const SolverConfig& config) {
  X.validate();
  require(X.rows() == y.size(), ErrorKind::structural,
          "feature matrix and labels disagree in row count");
  if (candidates) candidates->validate_against(X);
  const Index n = X.rows();
  const Index d = X.cols();
  const ResolvedConfig cfg = resolve(config, d);
  const double big_b = config.big_b > 0.0 ? config.big_b : static_cast<double>(d + 1);
  require(big_b >= static_cast<double>(d + 1), ErrorKind::config,
          "big_b must be at least d + 1");

  std::vector<double> t_lo(static_cast<std::size_t>(d)), t_hi(t_lo.size()),
      big_a(t_lo.size()), delta(t_lo.size());
  for (Index j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const double lo = X.values.col(j).minCoeff();
    const double hi = X.values.col(j).maxCoeff();
    const double range = hi - lo;
    if (candidates) {
      t_lo[sj] = candidates->thresholds[sj].front();
      t_hi[sj] = candidates->thresholds[sj].back();
    } else {
      t_lo[sj] = lo;
      t_hi[sj] = hi + 1.0;
    }
    delta[sj] = range > 0.0 ? 1e-6 * range : 1e-6;
    const double needed = std::max({range, hi - t_lo[sj], t_hi[sj] - lo}) + delta[sj];
    if (config.big_a.size() > 0) {
      require(config.big_a.size() == d, ErrorKind::config,
              "big_a needs one entry per feature");
      big_a[sj] = config.big_a(j);
      require(big_a[sj] >= range, ErrorKind::config,
              "big_a for feature " + std::to_string(j) +
                  " is below the feature range");
    } else {
      big_a[sj] = std::max(range + 2.0, std::ceil(needed));
    }
  }

  std::ostringstream out;
  out << "\\ Checklist MIP: " << n << " patients, " << d << " features\n";
  out << "\\ lambda = " << num(cfg.weights.lambda) << ", eps_N = "
      << num(cfg.weights.eps_n) << ", eps_M = " << num(cfg.weights.eps_m)
      << ", B = " << num(big_b) << "\n";
  out << "Minimize\n obj:";
  {
    bool first = true;
    for (auto i : y.pos) term(out, 1.0, "z_" + std::to_string(i), first);
    for (auto i : y.neg) term(out, cfg.weights.lambda, "z_" + std::to_string(i), first);
    for (Index j = 0; j < d; ++j) term(out, cfg.weights.eps_n, "w_" + std::to_string(j), first);
    term(out, cfg.weights.eps_m, "M", first);
    if (first) out << " 0 M";
    out << '\n';
  }

  out << "Subject To\n";
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      const double x = X.values(i, j);
      const std::string c = cvar(i, j);
      const std::string t = "t_" + std::to_string(j);
      // C = 0 forces x <= t.
      out << " up_" << i << '_' << j << ": " << num(big_a[sj]) << ' ' << c
          << " + " << t << " >= " << num(x) << '\n';
      // C = 1 forces x >= t + delta.
      out << " dn_" << i << '_' << j << ": " << num(big_a[sj]) << ' ' << c
          << " + " << t << " <= " << num(x + big_a[sj] - delta[sj]) << '\n';
      out << " use_" << i << '_' << j << ": " << c << " - w_" << j
          << " <= 0\n";
    }
  }
  for (Index i = 0; i < n; ++i) {
    const bool positive = y.y(i) == 1;
    out << (positive ? " pos_" : " neg_") << i << ": " << num(big_b) << " z_" << i;
    for (Index j = 0; j < d; ++j) out << (positive ? " + " : " - ") << cvar(i, j);
    out << (positive ? " - M >= 0\n" : " + M >= 1\n");
  }
  out << " m_le_n: M";
  for (Index j = 0; j < d; ++j) out << " - w_" << j;
  out << " <= 0\n";
  if (cfg.max_rules < d) {
    out << " n_cap:";
    bool first = true;
    for (Index j = 0; j < d; ++j) term(out, 1.0, "w_" + std::to_string(j), first);
    out << " <= " << cfg.max_rules << '\n';
  }

  out << "Bounds\n";
  for (Index j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    out << ' ' << num(t_lo[sj]) << " <= t_" << j << " <= " << num(t_hi[sj]) << '\n';
  }
  out << ' ' << cfg.m_min << " <= M <= " << cfg.m_max << '\n';

  out << "Binaries\n";
  for (Index j = 0; j < d; ++j) out << " w_" << j << '\n';
  for (Index i = 0; i < n; ++i) out << " z_" << i << '\n';
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) out << ' ' << cvar(i, j) << '\n';
  out << "Generals\n M\nEnd\n";
  return out.str();
}

}  // namespace checklist
