#include "checklist/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "checklist/io.hpp"

namespace checklist {

namespace {

double ratio(Index a, Index b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

void check_binary(const Eigen::VectorXi& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i)
    require(v(i) == 0 || v(i) == 1, ErrorKind::structural,
            std::string(what) + " must contain only 0 and 1");
}

}  // namespace

MetricSet classification_metrics(const Eigen::VectorXi& y,
                                 const Eigen::VectorXi& y_hat) {
  require(y.size() > 0, ErrorKind::structural, "metrics need at least one example");
  require(y.size() == y_hat.size(), ErrorKind::structural,
          "labels and predictions differ in length");
  check_binary(y, "labels");
  check_binary(y_hat, "predictions");
  Index tp = 0, fp = 0, tn = 0, fn = 0;
  for (Index i = 0; i < y.size(); ++i) {
    if (y(i) == 1) (y_hat(i) == 1 ? tp : fn)++;
    else (y_hat(i) == 1 ? fp : tn)++;
  }
  MetricSet m;
  m.accuracy = ratio(tp + tn, y.size());
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  m.specificity = ratio(tn, tn + fp);
  return m;
}

std::vector<OperatingPoint> operating_points(const Eigen::VectorXd& scores,
                                             const Eigen::VectorXi& y) {
  require(scores.size() == y.size() && y.size() > 0, ErrorKind::structural,
          "scores and labels differ in length");
  require(scores.allFinite(), ErrorKind::structural, "scores must be finite");
  check_binary(y, "labels");
  const Index P = y.sum();
  require(P > 0 && P < y.size(), ErrorKind::data,
          "operating points are undefined when only one class is present");
  std::vector<Index> idx(static_cast<std::size_t>(y.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Index a, Index b) { return scores(a) > scores(b); });
  std::vector<OperatingPoint> out;
  Index tp = 0, fp = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    (y(idx[k]) == 1 ? tp : fp)++;
    const bool last_of_score =
        k + 1 == idx.size() || scores(idx[k + 1]) != scores(idx[k]);
    if (!last_of_score) continue;
    out.push_back({scores(idx[k]), ratio(tp, tp + fp), ratio(tp, P)});
  }
  return out;
}

TargetedMetric precision_at_recall(const Eigen::VectorXd& scores,
                                   const Eigen::VectorXi& y,
                                   double target_recall) {
  require(target_recall > 0.0 && target_recall < 1.0, ErrorKind::config,
          "target recall must lie in (0, 1)");
  TargetedMetric out;
  const OperatingPoint* best = nullptr;
  const auto points = operating_points(scores, y);
  for (const auto& p : points) {
    if (p.recall < target_recall) continue;
    if (!best || p.recall < best->recall ||
        (p.recall == best->recall && p.precision > best->precision))
      best = &p;
  }
  if (best) out = {best->precision, true};
  return out;
}

TargetedMetric recall_at_precision(const Eigen::VectorXd& scores,
                                   const Eigen::VectorXi& y,
                                   double target_precision) {
  require(target_precision > 0.0 && target_precision < 1.0, ErrorKind::config,
          "target precision must lie in (0, 1)");
  TargetedMetric out;
  const OperatingPoint* best = nullptr;
  const auto points = operating_points(scores, y);
  for (const auto& p : points) {
    if (p.precision < target_precision) continue;
    if (!best || p.precision < best->precision ||
        (p.precision == best->precision && p.recall > best->recall))
      best = &p;
  }
  if (best) out = {best->recall, true};
  return out;
}

MeanStd mean_std(const std::vector<double>& values) {
  require(!values.empty(), ErrorKind::structural, "mean of an empty list");
  // Shifted by the first value so that equal inputs give an exact mean.
  const double base = values.front();
  double shift = 0.0;
  for (double v : values) shift += v - base;
  MeanStd r;
  r.mean = base + shift / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(values.size()));
  return r;
}

FoldAggregate aggregate_folds(const std::vector<MetricSet>& per_fold) {
  require(!per_fold.empty(), ErrorKind::structural, "no folds to aggregate");
  auto collect = [&](auto getter) {
    std::vector<double> v;
    for (const auto& m : per_fold) v.push_back(getter(m));
    // Sorting makes the floating-point sums independent of fold order.
    std::sort(v.begin(), v.end());
    return mean_std(v);
  };
  FoldAggregate a;
  a.accuracy = collect([](const MetricSet& m) { return m.accuracy; });
  a.precision = collect([](const MetricSet& m) { return m.precision; });
  a.recall = collect([](const MetricSet& m) { return m.recall; });
  a.specificity = collect([](const MetricSet& m) { return m.specificity; });
  const bool has_size = std::all_of(per_fold.begin(), per_fold.end(), [](const MetricSet& m) {
    return m.n_rules.has_value() && m.m_required.has_value();
  });
  if (has_size) {
    a.n_rules = collect([](const MetricSet& m) { return static_cast<double>(*m.n_rules); });
    a.m_required = collect([](const MetricSet& m) { return static_cast<double>(*m.m_required); });
  }
  return a;
}

nlohmann::json to_json(const MetricSet& m) {
  nlohmann::json j{{"accuracy", m.accuracy},
                   {"precision", m.precision},
                   {"recall", m.recall},
                   {"specificity", m.specificity}};
  j["n_rules"] = m.n_rules ? nlohmann::json(*m.n_rules) : nlohmann::json(nullptr);
  j["m_required"] = m.m_required ? nlohmann::json(*m.m_required) : nlohmann::json(nullptr);
  return j;
}

MetricSet metric_set_from_json(const nlohmann::json& j) {
  MetricSet m;
  m.accuracy = j.at("accuracy").get<double>();
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.specificity = j.at("specificity").get<double>();
  if (j.contains("n_rules") && !j["n_rules"].is_null()) m.n_rules = j["n_rules"].get<int>();
  if (j.contains("m_required") && !j["m_required"].is_null())
    m.m_required = j["m_required"].get<int>();
  return m;
}

nlohmann::json to_json(const FoldAggregate& a) {
  auto ms = [](const MeanStd& v) { return nlohmann::json{{"mean", v.mean}, {"std", v.std}}; };
  nlohmann::json j{{"accuracy", ms(a.accuracy)},
                   {"precision", ms(a.precision)},
                   {"recall", ms(a.recall)},
                   {"specificity", ms(a.specificity)}};
  j["n_rules"] = a.n_rules ? ms(*a.n_rules) : nlohmann::json(nullptr);
  j["m_required"] = a.m_required ? ms(*a.m_required) : nlohmann::json(nullptr);
  return j;
}

std::vector<ThresholdRow> threshold_comparison(
    const std::vector<std::string>& features,
    const std::map<std::string, double>& mip_thresholds,
    const std::map<std::string, double>& sets_phi,
    const std::map<std::string, double>& column_means,
    const std::map<std::string, std::pair<double, double>>& column_ranges) {
  auto known = [&](const auto& m, const char* what) {
    for (const auto& [name, v] : m) {
      (void)v;
      require(std::find(features.begin(), features.end(), name) != features.end(),
              ErrorKind::structural,
              std::string(what) + " refers to unknown feature '" + name + "'");
    }
  };
  known(mip_thresholds, "MIP checklist");
  known(sets_phi, "SETS thresholds");
  known(column_means, "column means");
  known(column_ranges, "column ranges");

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  std::vector<ThresholdRow> rows;
  for (const auto& f : features) {
    auto range = column_ranges.find(f);
    require(range != column_ranges.end(), ErrorKind::structural,
            "no range for feature '" + f + "'");
    const auto [lo, hi] = range->second;
    auto norm = [&](const std::map<std::string, double>& m, bool& clipped) {
      auto it = m.find(f);
      if (it == m.end()) return kNaN;
      double v = hi > lo ? (it->second - lo) / (hi - lo) : 0.0;
      if (v < -0.1 || v > 1.1) {
        clipped = true;
        v = std::clamp(v, -0.1, 1.1);
      }
      return v;
    };
    ThresholdRow r;
    r.feature = f;
    r.mip = norm(mip_thresholds, r.mip_clipped);
    r.sets = norm(sets_phi, r.sets_clipped);
    r.mean = norm(column_means, r.mean_clipped);
    rows.push_back(r);
  }
  return rows;
}

std::string threshold_csv(const std::vector<ThresholdRow>& rows) {
  std::ostringstream out;
  out << "feature_name,mip_t_norm,sets_t_norm,mean_norm,clipped\n";
  for (const auto& r : rows) {
    std::string flags;
    if (r.mip_clipped) flags += "mip;";
    if (r.sets_clipped) flags += "sets;";
    if (r.mean_clipped) flags += "mean;";
    if (!flags.empty()) flags.pop_back();
    out << r.feature << ',' << io::format_double(r.mip) << ','
        << io::format_double(r.sets) << ',' << io::format_double(r.mean) << ','
        << flags << '\n';
  }
  return out.str();
}

std::string threshold_svg(const std::vector<ThresholdRow>& rows) {
  const int left = 60, top = 30, plot_h = 300, step = 70;
  const int width = left + step * static_cast<int>(std::max<std::size_t>(rows.size(), 1)) + 150;
  const int height = top + plot_h + 120;
  auto ypos = [&](double v) { return top + plot_h * (1.1 - v) / 1.2; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double y = ypos(g);
    out << "<line x1=\"" << left << "\" x2=\"" << width - 150 << "\" y1=\"" << y
        << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">" << io::format_fixed(g, 2) << "</text>\n";
  }
  out << "<text x=\"" << left << "\" y=\"18\">normalized threshold (feature min = 0, max = 1)</text>\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    const double x = left + step * (static_cast<double>(k) + 0.5);
    auto marker = [&](double v, bool clipped, const char* shape, const char* color) {
      if (std::isnan(v)) return;
      const double y = ypos(v);
      const char* stroke = clipped ? "red" : color;
      if (std::string(shape) == "circle") {
        out << "<circle cx=\"" << x - 12 << "\" cy=\"" << y << "\" r=\"5\" fill=\""
            << color << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
      } else if (std::string(shape) == "square") {
        out << "<rect x=\"" << x - 5 << "\" y=\"" << y - 5
            << "\" width=\"10\" height=\"10\" fill=\"" << color << "\" stroke=\""
            << stroke << "\" stroke-width=\"2\"/>\n";
      } else {
        out << "<polygon points=\"" << x + 12 << ',' << y - 6 << ' ' << x + 18 << ','
            << y << ' ' << x + 12 << ',' << y + 6 << ' ' << x + 6 << ',' << y
            << "\" fill=\"" << color << "\" stroke=\"" << stroke
            << "\" stroke-width=\"2\"/>\n";
      }
    };
    marker(r.mip, r.mip_clipped, "circle", "#1f77b4");
    marker(r.sets, r.sets_clipped, "square", "#ff7f0e");
    marker(r.mean, r.mean_clipped, "diamond", "#2ca02c");
    out << "<text transform=\"translate(" << x << ',' << top + plot_h + 12
        << ") rotate(45)\">" << r.feature << "</text>\n";
  }
  const int lx = width - 140;
  out << "<circle cx=\"" << lx << "\" cy=\"40\" r=\"5\" fill=\"#1f77b4\"/><text x=\""
      << lx + 10 << "\" y=\"44\">MIP</text>\n";
  out << "<rect x=\"" << lx - 5 << "\" y=\"55\" width=\"10\" height=\"10\" fill=\"#ff7f0e\"/><text x=\""
      << lx + 10 << "\" y=\"64\">SETS</text>\n";
  out << "<polygon points=\"" << lx << ",74 " << lx + 6 << ",80 " << lx << ",86 "
      << lx - 6 << ",80\" fill=\"#2ca02c\"/><text x=\"" << lx + 10
      << "\" y=\"84\">mean</text>\n";
  out << "<text x=\"" << lx - 5 << "\" y=\"104\" fill=\"red\">red outline: clipped</text>\n";
  out << "</svg>\n";
  return out.str();
}

void export_threshold_comparison(
    const std::vector<std::string>& features,
    const std::map<std::string, double>& mip_thresholds,
    const std::map<std::string, double>& sets_phi,
    const std::map<std::string, double>& column_means,
    const std::map<std::string, std::pair<double, double>>& column_ranges,
    const std::filesystem::path& out_path) {
  const auto rows = threshold_comparison(features, mip_thresholds, sets_phi,
                                         column_means, column_ranges);
  auto csv = out_path;
  csv += ".csv";
  auto svg = out_path;
  svg += ".svg";
  io::write_file_atomic(csv, threshold_csv(rows));
  io::write_file_atomic(svg, threshold_svg(rows));
}

}  // namespace checklist
