#include "checklist/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "checklist/io.hpp"
#include "checklist/random.hpp"

namespace checklist {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::optional<double> parse_number(std::string_view cell) {
  cell = io::trim(cell);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

}  // namespace

FeatureMatrix SummaryTable::features() const {
  FeatureMatrix X;
  X.names = feature_names;
  X.values.resize(static_cast<Index>(rows.size()),
                  static_cast<Index>(feature_names.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    X.values.row(static_cast<Index>(i)) = rows[i].features.transpose();
  return X;
}

Labels SummaryTable::labels() const {
  Eigen::VectorXi y(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) y(static_cast<Index>(i)) = rows[i].label;
  return Labels(std::move(y));
}

std::vector<Index> SummaryTable::rows_for(
    const std::vector<std::string>& ids) const {
  std::unordered_map<std::string, Index> lookup;
  for (std::size_t i = 0; i < rows.size(); ++i)
    lookup.emplace(rows[i].patient_id, static_cast<Index>(i));
  std::vector<Index> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = lookup.find(id);
    require(it != lookup.end(), ErrorKind::data,
            "patient '" + id + "' is not present in the summary table");
    out.push_back(it->second);
  }
  return out;
}

void FoldSpec::validate() const {
  require(n_folds >= 1, ErrorKind::config, "n_folds must be >= 1");
  require(fold_size >= 1, ErrorKind::config, "fold_size must be >= 1");
  require(target_pos_fraction > 0.0 && target_pos_fraction < 1.0,
          ErrorKind::config, "target_pos_fraction must lie in (0, 1)");
}

PatientRecord parse_psv(std::string_view content, std::string patient_id) {
  PatientRecord rec;
  rec.patient_id = std::move(patient_id);

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    auto end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    auto line = io::trim(content.substr(start, end - start));
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  require(!lines.empty(), ErrorKind::format,
          "patient file '" + rec.patient_id + "' is empty");

  auto header = io::split(lines.front(), '|');
  for (auto& h : header) h = std::string(io::trim(h));
  auto label_it = std::find(header.begin(), header.end(), kSepsisLabelColumn);
  require(label_it != header.end(), ErrorKind::format,
          "patient file '" + rec.patient_id + "' has no " +
              std::string(kSepsisLabelColumn) + " column");
  const auto label_col = static_cast<std::size_t>(label_it - header.begin());

  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != label_col) rec.variable_names.push_back(header[c]);

  const auto T = static_cast<Index>(lines.size() - 1);
  const auto V = static_cast<Index>(rec.variable_names.size());
  rec.hourly_values.setConstant(T, V, kNaN);
  rec.sepsis_labels.assign(static_cast<std::size_t>(T), 0);
  require(T >= 1, ErrorKind::format,
          "patient file '" + rec.patient_id + "' has a header but no rows");

  for (Index t = 0; t < T; ++t) {
    auto cells = io::split(lines[static_cast<std::size_t>(t) + 1], '|');
    if (cells.size() != header.size()) ++rec.parse_warnings;
    Index v = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string_view cell =
          c < cells.size() ? std::string_view(cells[c]) : std::string_view("NaN");
      auto value = parse_number(cell);
      const bool is_nan_marker = io::trim(cell) == "NaN";
      if (!value && !is_nan_marker) ++rec.parse_warnings;
      if (c == label_col) {
        int label = 0;
        if (value && std::isfinite(*value)) label = *value > 0.5 ? 1 : 0;
        rec.sepsis_labels[static_cast<std::size_t>(t)] = label;
      } else {
        rec.hourly_values(t, v++) = value ? *value : kNaN;
      }
    }
  }
  return rec;
}

std::vector<std::string> summary_feature_names(
    const std::vector<std::string>& variable_names,
    const IngestOptions& options) {
  std::vector<std::string> out;
  for (const auto& v : variable_names) {
    if (contains(options.excluded_variables, v)) continue;
    if (contains(options.static_variables, v)) {
      out.push_back(v);
    } else {
      out.push_back(v + "_mean");
      out.push_back(v + "_sd");
      out.push_back(v + "_last");
    }
  }
  return out;
}

SummaryRow summarize_patient(const PatientRecord& record,
                             const IngestOptions& options) {
  SummaryRow row;
  row.patient_id = record.patient_id;
  row.label = record.sepsis_labels.empty()
                  ? 0
                  : *std::max_element(record.sepsis_labels.begin(),
                                      record.sepsis_labels.end());

  std::vector<double> feats;
  const Index T = record.hourly_values.rows();
  for (std::size_t v = 0; v < record.variable_names.size(); ++v) {
    const auto& name = record.variable_names[v];
    if (contains(options.excluded_variables, name)) continue;
    const auto col = record.hourly_values.col(static_cast<Index>(v));

    double sum = 0.0;
    Index count = 0;
    double last = kNaN;
    for (Index t = 0; t < T; ++t) {
      if (std::isnan(col(t))) continue;
      sum += col(t);
      ++count;
      last = col(t);
    }
    if (contains(options.static_variables, name)) {
      feats.push_back(last);
      continue;
    }
    if (count == 0) {
      feats.insert(feats.end(), {kNaN, kNaN, kNaN});
      continue;
    }
    const double mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (Index t = 0; t < T; ++t)
      if (!std::isnan(col(t))) ss += (col(t) - mean) * (col(t) - mean);
    feats.push_back(mean);
    feats.push_back(std::sqrt(ss / static_cast<double>(count)));
    feats.push_back(last);
  }
  row.features = Eigen::Map<Eigen::VectorXd>(feats.data(), static_cast<Index>(feats.size()));
  return row;
}

SummaryTable summarize_all(const std::vector<PatientRecord>& records,
                           const IngestOptions& options) {
  SummaryTable table;
  std::map<std::string, Index> column_of;
  std::vector<std::vector<std::string>> per_record_names;
  for (const auto& rec : records) {
    auto names = summary_feature_names(rec.variable_names, options);
    for (const auto& n : names) {
      if (column_of.emplace(n, static_cast<Index>(table.feature_names.size())).second)
        table.feature_names.push_back(n);
    }
    per_record_names.push_back(std::move(names));
  }
  const auto width = static_cast<Index>(table.feature_names.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    auto local = summarize_patient(records[r], options);
    SummaryRow row;
    row.patient_id = local.patient_id;
    row.label = local.label;
    row.features.setConstant(width, kNaN);
    const auto& names = per_record_names[r];
    for (std::size_t k = 0; k < names.size(); ++k)
      row.features(column_of.at(names[k])) = local.features(static_cast<Index>(k));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<std::vector<std::string>> build_folds(
    const std::vector<SummaryRow>& rows, const FoldSpec& spec) {
  spec.validate();
  std::vector<std::string> pos, neg;
  for (const auto& r : rows) (r.label == 1 ? pos : neg).push_back(r.patient_id);

  const auto n_pos = static_cast<std::size_t>(
      std::lround(static_cast<double>(spec.fold_size) * spec.target_pos_fraction));
  const std::size_t n_neg = static_cast<std::size_t>(spec.fold_size) - n_pos;
  const std::size_t neg_needed = n_neg * static_cast<std::size_t>(spec.n_folds);

  require(n_pos <= pos.size(), ErrorKind::config,
          "each fold needs " + std::to_string(n_pos) + " positives but only " +
              std::to_string(pos.size()) + " are available (shortfall " +
              std::to_string(n_pos - std::min(n_pos, pos.size())) + ")");
  require(neg_needed <= neg.size(), ErrorKind::config,
          std::to_string(spec.n_folds) + " folds need " +
              std::to_string(neg_needed) + " distinct negatives but only " +
              std::to_string(neg.size()) + " are available (shortfall " +
              std::to_string(neg_needed - std::min(neg_needed, neg.size())) + ")");

  auto rng = make_rng(spec.seed, "folds");
  std::shuffle(neg.begin(), neg.end(), rng);

  std::vector<std::vector<std::string>> folds;
  for (int k = 0; k < spec.n_folds; ++k) {
    auto pool = pos;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::string> fold(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_pos));
    auto begin = neg.begin() + static_cast<std::ptrdiff_t>(n_neg * static_cast<std::size_t>(k));
    fold.insert(fold.end(), begin, begin + static_cast<std::ptrdiff_t>(n_neg));
    std::sort(fold.begin(), fold.end());
    folds.push_back(std::move(fold));
  }
  return folds;
}

FoldSplit split_fold(const std::vector<std::string>& fold_ids,
                     const SummaryTable& table, int fold_id,
                     double test_fraction, std::uint64_t seed) {
  require(test_fraction > 0.0 && test_fraction < 1.0, ErrorKind::config,
          "test fraction must lie in (0, 1)");
  const auto rows = table.rows_for(fold_ids);
  std::vector<std::string> pos, neg;
  for (std::size_t k = 0; k < fold_ids.size(); ++k)
    (table.rows[static_cast<std::size_t>(rows[k])].label == 1 ? pos : neg)
        .push_back(fold_ids[k]);

  auto rng = make_rng(seed, "split:" + std::to_string(fold_id));
  FoldSplit split;
  split.fold_id = fold_id;
  for (auto* group : {&pos, &neg}) {
    std::shuffle(group->begin(), group->end(), rng);
    const auto n_test = static_cast<std::size_t>(
        std::lround(test_fraction * static_cast<double>(group->size())));
    split.test.insert(split.test.end(), group->begin(),
                      group->begin() + static_cast<std::ptrdiff_t>(n_test));
    split.train.insert(split.train.end(),
                       group->begin() + static_cast<std::ptrdiff_t>(n_test),
                       group->end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

ImputeResult impute_and_clean(const FeatureMatrix& X,
                              const std::optional<ImputeStats>& fitted) {
  ImputeResult out;
  if (!fitted) {
    std::vector<Index> keep;
    for (Index j = 0; j < X.cols(); ++j) {
      double sum = 0.0;
      Index count = 0;
      for (Index i = 0; i < X.rows(); ++i) {
        if (std::isnan(X.values(i, j))) continue;
        sum += X.values(i, j);
        ++count;
      }
      const auto& name = X.names[static_cast<std::size_t>(j)];
      if (count == 0) {
        out.stats.dropped_names.push_back(name);
        continue;
      }
      keep.push_back(j);
      out.stats.kept_names.push_back(name);
      out.stats.means.push_back(sum / static_cast<double>(count));
    }
    require(!keep.empty(), ErrorKind::data,
            "every feature is entirely missing in the training split");
    out.X = X.select_columns(keep);
  } else {
    require(static_cast<std::size_t>(X.cols()) ==
                fitted->kept_names.size() + fitted->dropped_names.size(),
            ErrorKind::structural,
            "imputation statistics do not match the feature matrix width");
    require(!fitted->kept_names.empty(), ErrorKind::data,
            "imputation statistics keep no features");
    std::vector<Index> keep;
    for (const auto& name : fitted->kept_names) {
      auto j = X.find(name);
      require(j.has_value(), ErrorKind::structural,
              "feature '" + name + "' missing at apply time");
      keep.push_back(*j);
    }
    out.stats = *fitted;
    out.X = X.select_columns(keep);
  }
  for (Index j = 0; j < out.X.cols(); ++j) {
    const double fill = out.stats.means[static_cast<std::size_t>(j)];
    for (Index i = 0; i < out.X.rows(); ++i)
      if (std::isnan(out.X.values(i, j))) out.X.values(i, j) = fill;
  }
  return out;
}

std::string summary_to_csv(const SummaryTable& table) {
  std::ostringstream out;
  out << "patient_id";
  for (const auto& n : table.feature_names) out << ',' << n;
  out << ",y\n";
  for (const auto& r : table.rows) {
    out << r.patient_id;
    for (Index j = 0; j < r.features.size(); ++j)
      out << ',' << io::format_double(r.features(j));
    out << ',' << r.label << '\n';
  }
  return out.str();
}

SummaryTable summary_from_csv(const std::filesystem::path& path) {
  auto rows = io::read_csv(path);
  require(!rows.empty(), ErrorKind::format,
          "summary table " + path.string() + " is empty");
  const auto& header = rows.front();
  require(header.size() >= 3 && header.front() == "patient_id" &&
              header.back() == "y",
          ErrorKind::format,
          "summary table header must start with patient_id and end with y");
  SummaryTable table;
  table.feature_names.assign(header.begin() + 1, header.end() - 1);
  const auto width = static_cast<Index>(table.feature_names.size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    require(cells.size() == header.size(), ErrorKind::format,
            "summary row " + std::to_string(r) + " has the wrong width");
    SummaryRow row;
    row.patient_id = cells.front();
    row.features.resize(width);
    for (Index j = 0; j < width; ++j) {
      auto v = parse_number(cells[static_cast<std::size_t>(j) + 1]);
      row.features(j) = v ? *v : kNaN;
    }
    auto label = parse_number(cells.back());
    require(label && (*label == 0.0 || *label == 1.0), ErrorKind::format,
            "summary row " + std::to_string(r) + " has a label outside {0,1}");
    row.label = static_cast<int>(*label);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string folds_to_csv(const std::vector<FoldSplit>& folds) {
  std::ostringstream out;
  out << "fold_id,patient_id,split\n";
  for (const auto& f : folds) {
    for (const auto& id : f.train) out << f.fold_id << ',' << id << ",train\n";
    for (const auto& id : f.test) out << f.fold_id << ',' << id << ",test\n";
  }
  return out.str();
}

std::vector<FoldSplit> folds_from_csv(const std::filesystem::path& path) {
  auto rows = io::read_csv(path);
  require(!rows.empty() && rows.front().size() == 3 &&
              rows.front()[0] == "fold_id",
          ErrorKind::format, "fold manifest " + path.string() + " is malformed");
  std::map<int, FoldSplit> by_id;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& c = rows[r];
    require(c.size() == 3, ErrorKind::format,
            "fold manifest row " + std::to_string(r) + " has the wrong width");
    const int id = std::stoi(c[0]);
    auto& f = by_id[id];
    f.fold_id = id;
    require(c[2] == "train" || c[2] == "test", ErrorKind::format,
            "fold manifest split must be train or test");
    (c[2] == "train" ? f.train : f.test).push_back(c[1]);
  }
  std::vector<FoldSplit> out;
  for (auto& [id, f] : by_id) out.push_back(std::move(f));
  return out;
}

}  // namespace checklist
