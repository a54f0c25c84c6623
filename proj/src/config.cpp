#include "checklist/config.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "checklist/io.hpp"

namespace checklist {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  const auto s = io::trim(text);
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end)
    fail(ErrorKind::config, "config key '" + key + "': cannot parse '" + text + "'");
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const auto s = std::string(io::trim(text));
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(ErrorKind::config, "config key '" + key + "': expected true or false, got '" + text + "'");
}

std::vector<std::string> parse_list(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& part : io::split(text, ',')) {
    const auto t = io::trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

struct Field {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field number_field(std::string key, T RunConfig::*member) {
  return {key,
          [key, member](RunConfig& c, const std::string& v) {
            c.*member = parse_number<T>(key, v);
          },
          [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return io::format_double(c.*member);
            else return std::to_string(c.*member);
          }};
}

template <typename Outer, typename T>
Field nested_field(std::string key, Outer RunConfig::*outer, T Outer::*member) {
  return {key,
          [key, outer, member](RunConfig& c, const std::string& v) {
            c.*outer.*member = parse_number<T>(key, v);
          },
          [outer, member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) return io::format_double(c.*outer.*member);
            else return std::to_string(c.*outer.*member);
          }};
}

Field optional_field(std::string key, std::optional<double> RunConfig::*member) {
  return {key,
          [key, member](RunConfig& c, const std::string& v) {
            if (io::trim(v).empty()) c.*member = std::nullopt;
            else c.*member = parse_number<double>(key, v);
          },
          [member](const RunConfig& c) {
            return (c.*member) ? io::format_double(*(c.*member)) : std::string();
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> all = [] {
    std::vector<Field> f;
    f.push_back({"data.data_dir",
                 [](RunConfig& c, const std::string& v) { c.data_dir = std::string(io::trim(v)); },
                 [](const RunConfig& c) { return c.data_dir.string(); }});
    f.push_back({"data.output_dir",
                 [](RunConfig& c, const std::string& v) { c.output_dir = std::string(io::trim(v)); },
                 [](const RunConfig& c) { return c.output_dir.string(); }});
    f.push_back(nested_field("folds.n_folds", &RunConfig::folds, &FoldSpec::n_folds));
    f.push_back(nested_field("folds.fold_size", &RunConfig::folds, &FoldSpec::fold_size));
    f.push_back(nested_field("folds.target_pos_fraction", &RunConfig::folds,
                             &FoldSpec::target_pos_fraction));
    f.push_back(number_field("folds.test_fraction", &RunConfig::test_fraction));
    f.push_back(number_field("features.k_features", &RunConfig::k_features));
    f.push_back({"features.allow_negated_features",
                 [](RunConfig& c, const std::string& v) {
                   c.allow_negated_features = parse_bool("features.allow_negated_features", v);
                 },
                 [](const RunConfig& c) {
                   return std::string(c.allow_negated_features ? "true" : "false");
                 }});
    f.push_back({"solver.lambda",
                 [](RunConfig& c, const std::string& v) {
                   c.lambda_grid.clear();
                   for (const auto& p : parse_list(v))
                     c.lambda_grid.push_back(parse_number<double>("solver.lambda", p));
                 },
                 [](const RunConfig& c) {
                   std::vector<std::string> parts;
                   for (double l : c.lambda_grid) parts.push_back(io::format_double(l));
                   return join(parts);
                 }});
    f.push_back(optional_field("solver.eps_n", &RunConfig::eps_n));
    f.push_back(optional_field("solver.eps_m", &RunConfig::eps_m));
    f.push_back(number_field("solver.time_budget", &RunConfig::time_budget));
    f.push_back(number_field("solver.node_budget", &RunConfig::node_budget));
    f.push_back(number_field("solver.max_rules", &RunConfig::max_rules));
    f.push_back(number_field("solver.candidate_cap", &RunConfig::candidate_cap));
    f.push_back(number_field("solver.threads", &RunConfig::threads));
    f.push_back(nested_field("lr.learning_rate", &RunConfig::lr, &TrainHyper::learning_rate));
    f.push_back(nested_field("lr.l2_strength", &RunConfig::lr, &TrainHyper::l2_strength));
    f.push_back(nested_field("lr.max_epochs", &RunConfig::lr, &TrainHyper::max_epochs));
    f.push_back(nested_field("lr.tolerance", &RunConfig::lr, &TrainHyper::tolerance));
    f.push_back(nested_field("mlp.hidden", &RunConfig::mlp, &MlpHyper::hidden));
    f.push_back(nested_field("mlp.learning_rate", &RunConfig::mlp, &MlpHyper::learning_rate));
    f.push_back(nested_field("mlp.momentum", &RunConfig::mlp, &MlpHyper::momentum));
    f.push_back(nested_field("mlp.epochs", &RunConfig::mlp, &MlpHyper::epochs));
    f.push_back(nested_field("mlp.batch_size", &RunConfig::mlp, &MlpHyper::batch_size));
    f.push_back(nested_field("mlp.l2", &RunConfig::mlp, &MlpHyper::l2));
    f.push_back(number_field("sets.tau", &RunConfig::sets_tau));
    f.push_back(nested_field("unit.beta", &RunConfig::unit, &UnitWeightingConfig::beta));
    f.push_back({"run.methods",
                 [](RunConfig& c, const std::string& v) { c.methods = parse_list(v); },
                 [](const RunConfig& c) { return join(c.methods); }});
    f.push_back({"run.seed",
                 [](RunConfig& c, const std::string& v) {
                   c.seed = parse_number<std::uint64_t>("run.seed", v);
                   c.folds.seed = c.seed;
                 },
                 [](const RunConfig& c) { return std::to_string(c.seed); }});
    return f;
  }();
  return all;
}

}  // namespace

void RunConfig::validate() const {
  folds.validate();
  require(test_fraction > 0.0 && test_fraction < 1.0, ErrorKind::config,
          "folds.test_fraction must lie in (0, 1)");
  require(k_features >= 1, ErrorKind::config, "features.k_features must be >= 1");
  require(!lambda_grid.empty(), ErrorKind::config, "solver.lambda must list at least one value");
  for (double l : lambda_grid)
    require(std::isfinite(l) && l >= 0.0, ErrorKind::config,
            "solver.lambda values must be finite and >= 0");
  for (const auto& e : {eps_n, eps_m})
    require(!e || (std::isfinite(*e) && *e >= 0.0), ErrorKind::config,
            "solver.eps_n / eps_m must be finite and >= 0");
  require(time_budget > 0.0, ErrorKind::config, "solver.time_budget must be > 0");
  require(max_rules >= 0, ErrorKind::config, "solver.max_rules must be >= 0");
  require(candidate_cap >= 0, ErrorKind::config, "solver.candidate_cap must be >= 0");
  require(threads >= 1, ErrorKind::config, "solver.threads must be >= 1");
  lr.validate();
  require(mlp.hidden >= 1 && mlp.epochs >= 1 && mlp.batch_size >= 1 &&
              mlp.learning_rate > 0.0 && mlp.l2 >= 0.0,
          ErrorKind::config, "invalid [mlp] hyperparameters");
  require(sets_tau > 0.0, ErrorKind::config, "sets.tau must be > 0");
  unit.validate();
  require(!methods.empty(), ErrorKind::config, "run.methods must list at least one method");
  for (const auto& m : methods)
    require(std::find(kAllMethods.begin(), kAllMethods.end(), m) != kAllMethods.end(),
            ErrorKind::config, "unknown method '" + m + "'");
}

void set_config_value(RunConfig& config, const std::string& key,
                      const std::string& value) {
  for (const auto& f : fields()) {
    if (f.key == key) {
      f.set(config, value);
      return;
    }
  }
  fail(ErrorKind::config, "unknown config key '" + key + "'");
}

RunConfig parse_config(std::string_view ini_text) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(ini_text)};
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorKind::config, std::string("malformed config: ") + e.what());
  }
  RunConfig config;
  for (const auto& [section, body] : tree) {
    require(!body.empty() || body.data().empty(), ErrorKind::config,
            "config key '" + section + "' must live inside a [section]");
    for (const auto& [key, value] : body)
      set_config_value(config, section + "." + key, value.data());
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  require(std::filesystem::exists(path), ErrorKind::config,
          "config file not found: " + path.string());
  return parse_config(io::read_file(path));
}

std::string to_ini(const RunConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const auto& f : fields()) {
    const auto dot = f.key.find('.');
    const auto sec = f.key.substr(0, dot);
    if (sec != section) {
      out << (section.empty() ? "" : "\n") << '[' << sec << "]\n";
      section = sec;
    }
    out << f.key.substr(dot + 1) << " = " << f.get(config) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const RunConfig& config) {
  // Execution-only settings are left out so that where and how wide a run
  // executes does not change its report.
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : fields())
    if (f.key != "solver.threads" && f.key != "data.output_dir") j[f.key] = f.get(config);
  return j;
}

}  // namespace checklist
