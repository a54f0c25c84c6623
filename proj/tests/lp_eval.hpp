#pragma once

// Minimal reader for the LP files written by export_mip_form, used to plug a
// known assignment into every row and bound.

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

struct LpRow {
  std::string name;
  std::map<std::string, double> coef;
  std::string op;
  double rhs = 0.0;
};

struct LpModel {
  std::map<std::string, double> objective;
  std::vector<LpRow> rows;
  std::map<std::string, std::pair<double, double>> bounds;
  std::vector<std::string> binaries, generals;
};

inline void parse_terms(std::istringstream& in, std::map<std::string, double>& coef,
                        std::string* op, double* rhs) {
  double sign = 1.0;
  double pending = 1.0;
  std::string tok;
  while (in >> tok) {
    if (tok == "+") { sign = 1.0; continue; }
    if (tok == "-") { sign = -1.0; continue; }
    if (tok == "<=" || tok == ">=" || tok == "=") {
      if (op) *op = tok;
      in >> *rhs;
      return;
    }
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end && *end == '\0') {
      pending = v;
      continue;
    }
    coef[tok] += sign * pending;
    sign = 1.0;
    pending = 1.0;
  }
}

inline LpModel parse_lp(const std::string& text) {
  LpModel m;
  std::istringstream lines(text);
  std::string line, section;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line[0] != ' ') {
      section = line;
      continue;
    }
    std::istringstream in(line);
    if (section == "Minimize") {
      std::string name;
      in >> name;
      parse_terms(in, m.objective, nullptr, nullptr);
    } else if (section == "Subject To") {
      LpRow r;
      in >> r.name;
      r.name.pop_back();
      parse_terms(in, r.coef, &r.op, &r.rhs);
      m.rows.push_back(std::move(r));
    } else if (section == "Bounds") {
      double lo, hi;
      std::string le1, var, le2;
      in >> lo >> le1 >> var >> le2 >> hi;
      m.bounds[var] = {lo, hi};
    } else if (section == "Binaries") {
      std::string v;
      in >> v;
      m.binaries.push_back(v);
    } else if (section == "Generals") {
      std::string v;
      in >> v;
      m.generals.push_back(v);
    }
  }
  return m;
}

/// Names of the rows the assignment violates (tolerance 1e-9).
inline std::vector<std::string> violations(const LpModel& m,
                                           const std::map<std::string, double>& x) {
  std::vector<std::string> bad;
  auto value = [&](const std::string& v) {
    auto it = x.find(v);
    return it == x.end() ? 0.0 : it->second;
  };
  for (const auto& r : m.rows) {
    double lhs = 0.0;
    for (const auto& [v, c] : r.coef) lhs += c * value(v);
    const bool ok = r.op == "<=" ? lhs <= r.rhs + 1e-9
                  : r.op == ">=" ? lhs >= r.rhs - 1e-9
                                 : std::abs(lhs - r.rhs) <= 1e-9;
    if (!ok) bad.push_back(r.name);
  }
  for (const auto& [v, b] : m.bounds)
    if (value(v) < b.first - 1e-9 || value(v) > b.second + 1e-9) bad.push_back("bound:" + v);
  return bad;
}

inline double objective(const LpModel& m, const std::map<std::string, double>& x) {
  double s = 0.0;
  for (const auto& [v, c] : m.objective) {
    auto it = x.find(v);
    if (it != x.end()) s += c * it->second;
  }
  return s;
}

}  // namespace testutil
