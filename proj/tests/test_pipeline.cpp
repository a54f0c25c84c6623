#include <sstream>

#include "doctest.h"

#include "checklist/config.hpp"
#include "checklist/io.hpp"
#include "checklist/pipeline.hpp"
#include "test_util.hpp"

using namespace checklist;
namespace fs = std::filesystem;

namespace {

RunConfig fixture_config(const fs::path& out) {
  auto c = load_config(fs::path(FIXTURE_DIR) / "run.ini");
  c.data_dir = fs::path(FIXTURE_DIR) / "patients";
  c.output_dir = out;
  return c;
}

// Copies the first `count` well-formed patient files into a fresh directory.
fs::path small_data_dir(const std::string& name, int count) {
  const auto dir = testutil::scratch(name);
  for (int i = 0; i < count; ++i) {
    char file[32];
    std::snprintf(file, sizeof file, "p%04d.psv", i);
    fs::copy_file(fs::path(FIXTURE_DIR) / "patients" / file, dir / file);
  }
  return dir;
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = io::read_file(e.path());
  return out;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("config parses sections and rejects unknown keys") {
  const auto c = parse_config(
      "[solver]\nlambda = 0.5, 2\ntime_budget = 5\n[features]\nk_features = 3\n"
      "[run]\nseed = 42\nmethods = mip,lr\n");
  CHECK(c.lambda_grid == std::vector<double>{0.5, 2.0});
  CHECK(c.time_budget == 5.0);
  CHECK(c.k_features == 3);
  CHECK(c.seed == 42);
  CHECK(c.folds.seed == 42);
  CHECK(c.methods == std::vector<std::string>{"mip", "lr"});
  CHECK_THROWS_KIND(parse_config("[solver]\nlamda = 1\n"), ErrorKind::config);
  CHECK_THROWS_KIND(parse_config("[solver]\ntime_budget = fast\n"), ErrorKind::config);
  CHECK_THROWS_KIND(parse_config("[solver\n"), ErrorKind::config);
  CHECK_THROWS_KIND(load_config("/nonexistent/run.ini"), ErrorKind::config);
}

TEST_CASE("config survives an ini round trip") {
  RunConfig c;
  c.lambda_grid = {0.25, 4};
  c.eps_n = 0.001;
  c.k_features = 7;
  c.allow_negated_features = true;
  c.mlp.hidden = 5;
  c.methods = {"sets", "dummy"};
  c.seed = 9;
  const auto text = to_ini(c);
  const auto back = parse_config(text);
  CHECK(to_ini(back) == text);
  CHECK(back.eps_n == 0.001);
  CHECK_FALSE(back.eps_m.has_value());
  CHECK(to_ini(parse_config(to_ini(RunConfig{}))) == to_ini(RunConfig{}));
}

TEST_CASE("config validation catches bad values") {
  RunConfig c;
  c.k_features = 0;
  CHECK_THROWS_KIND(c.validate(), ErrorKind::config);
  c = RunConfig{};
  c.lambda_grid.clear();
  CHECK_THROWS_KIND(c.validate(), ErrorKind::config);
  c = RunConfig{};
  c.methods = {"svm"};
  CHECK_THROWS_KIND(c.validate(), ErrorKind::config);
  c = RunConfig{};
  c.threads = 0;
  CHECK_THROWS_KIND(c.validate(), ErrorKind::config);
}

TEST_CASE("the config echo leaves out execution-only settings") {
  RunConfig a, b;
  b.threads = 8;
  b.output_dir = "/elsewhere";
  CHECK(to_json(a) == to_json(b));
  b.seed = 1;
  CHECK(to_json(a) != to_json(b));
}

TEST_CASE("error kinds map to exit codes") {
  CHECK(exit_code_for(Error(ErrorKind::config, "")) == kExitUsage);
  CHECK(exit_code_for(Error(ErrorKind::data, "")) == kExitData);
  CHECK(exit_code_for(Error(ErrorKind::format, "")) == kExitData);
}

TEST_CASE("ingest of three files writes three summary rows") {
  const auto data = small_data_dir("pipe_three_data", 3);
  const auto out = testutil::scratch("pipe_three_out");
  RunConfig c;
  c.data_dir = data;
  c.output_dir = out;
  c.folds.n_folds = 1;
  c.folds.fold_size = 2;
  c.folds.target_pos_fraction = 0.5;
  std::ostringstream log;
  try {
    cmd_ingest(c, log);
  } catch (const Error& e) {
    // Three patients may not support the fold spec; the summary comes first.
    CHECK(e.kind() == ErrorKind::data);
  }
  const auto summary = io::read_file(out / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 3);
}

TEST_CASE("ingest rejects a missing or empty data directory") {
  RunConfig c;
  c.output_dir = testutil::scratch("pipe_empty_out");
  std::ostringstream log;
  c.data_dir = testutil::scratch("pipe_empty_data");
  CHECK_THROWS_KIND(cmd_ingest(c, log), ErrorKind::config);
  c.data_dir = "/nonexistent/patients";
  CHECK_THROWS_KIND(cmd_ingest(c, log), ErrorKind::config);
}

TEST_CASE("train names the missing ingest artifact") {
  auto c = fixture_config(testutil::scratch("pipe_missing"));
  std::ostringstream log;
  try {
    cmd_train(c, "dummy", log);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
    CHECK(std::string(e.what()).find("summary.csv") != std::string::npos);
  }
}

TEST_CASE("full fixture pipeline") {
  const auto out = testutil::scratch("pipe_full");
  auto c = fixture_config(out);
  std::ostringstream log;
  REQUIRE(cmd_ingest(c, log) == kExitOk);
  CHECK(log.str().find("p9999.psv") != std::string::npos);
  const auto ingest_snapshot = snapshot(out);
  REQUIRE(cmd_ingest(c, log) == kExitOk);
  CHECK(snapshot(out) == ingest_snapshot);

  CHECK_THROWS_KIND(cmd_train(c, "svm", log), ErrorKind::config);
  CHECK_THROWS_KIND(cmd_report(c, log), ErrorKind::config);

  REQUIRE(cmd_train(c, "dummy", log) == kExitOk);
  REQUIRE(cmd_train(c, "mip", log) == kExitOk);
  REQUIRE(cmd_report(c, log) == kExitOk);

  const auto report = nlohmann::json::parse(io::read_file(out / "report.json"));
  REQUIRE(report.at("methods").size() == 2);
  const auto table = io::read_file(out / "table1.txt");
  CHECK(table.find("dummy") != std::string::npos);
  CHECK(table.find("mip") != std::string::npos);

  for (const auto& m : report["methods"]) {
    for (const auto& f : m["folds"]) {
      if (m["label"] == "dummy") {
        CHECK(f["test_metrics"]["precision"].get<double>() == 0.0);
      } else {
        CHECK(f["certificate"]["certified_optimal"].get<bool>());
        CHECK(f["certificate"]["objective"] == f["certificate"]["lower_bound"]);
      }
    }
  }

  const auto model = nlohmann::json::parse(io::read_file(out / "models" / "mip" / "fold_0.json"));
  CHECK(model.at("solver").at("wall_time_s").get<double>() < 1.0);
  CHECK(fs::exists(out / "features" / "fold_0.csv"));
  CHECK(fs::exists(out / "thresholds.csv"));
  CHECK(io::read_file(out / "table2.txt").find("needs both") != std::string::npos);

  const auto first = io::read_file(out / "report.json");
  REQUIRE(cmd_report(c, log) == kExitOk);
  CHECK(io::read_file(out / "report.json") == first);

  REQUIRE(cmd_train(c, "sets", log) == kExitOk);
  REQUIRE(cmd_train(c, "lr", log) == kExitOk);
  REQUIRE(cmd_report(c, log) == kExitOk);
  CHECK(fs::exists(out / "thresholds.svg"));
  const auto t2 = io::read_file(out / "table2.txt");
  CHECK(t2.find("lr precision at mip recall") != std::string::npos);
  const auto full = nlohmann::json::parse(io::read_file(out / "report.json"));
  CHECK(full.at("operating_points").at("folds").size() == 2);
  bool sets_marked = false;
  for (const auto& r : full.at("threshold_figure").at("rows")) sets_marked |= !r.at("sets").is_null();
  CHECK(sets_marked);

  const auto lp = out / "fold0.lp";
  REQUIRE(cmd_export_mip(c, 0, lp, log) == kExitOk);
  CHECK(io::read_file(lp).find("Subject To") != std::string::npos);
  CHECK_THROWS_KIND(cmd_export_mip(c, 99, lp, log), ErrorKind::config);
}

TEST_CASE("a lambda grid trains one label per value") {
  const auto out = testutil::scratch("pipe_grid");
  auto c = fixture_config(out);
  c.lambda_grid = {0.5, 2};
  std::ostringstream log;
  REQUIRE(cmd_ingest(c, log) == kExitOk);
  REQUIRE(cmd_train(c, "mip", log) == kExitOk);
  CHECK(fs::is_directory(out / "models" / "mip-lambda0.5"));
  CHECK(fs::is_directory(out / "models" / "mip-lambda2"));
}

TEST_CASE("an exhausted node budget returns the budget code and keeps the incumbent") {
  const auto out = testutil::scratch("pipe_budget");
  auto c = fixture_config(out);
  c.node_budget = 1;
  std::ostringstream log;
  REQUIRE(cmd_ingest(c, log) == kExitOk);
  CHECK(cmd_train(c, "mip", log) == kExitBudget);
  CHECK(fs::exists(out / "models" / "mip" / "fold_0.json"));
  CHECK(log.str().find("budget exhausted") != std::string::npos);
}

}
