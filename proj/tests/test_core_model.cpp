#include <random>

#include "doctest.h"

#include "checklist/core_model.hpp"
#include "test_util.hpp"

using namespace checklist;
using testutil::matrix;

TEST_SUITE("core_model") {

TEST_CASE("a value equal to the threshold is not satisfied") {
  Eigen::VectorXd row(1);
  row << 5.0;
  CHECK(apply_concepts(row, {{0, 5.0}}) == Eigen::VectorXi::Zero(1));
}

TEST_CASE("concepts compare strictly per rule") {
  Eigen::VectorXd row(2);
  row << 7.2, -1.0;
  const auto c = apply_concepts(row, {{0, 5.0}, {1, 0.0}});
  REQUIRE(c.size() == 2);
  CHECK(c(0) == 1);
  CHECK(c(1) == 0);
}

TEST_CASE("no rules give an empty concept vector") {
  Eigen::VectorXd row(1);
  row << 3.0;
  CHECK(apply_concepts(row, {}).size() == 0);
}

TEST_CASE("out-of-range rule feature is a structural error") {
  Eigen::VectorXd row(2);
  row << 1.0, 2.0;
  CHECK_THROWS_KIND(apply_concepts(row, {{2, 0.0}}), ErrorKind::structural);
}

TEST_CASE("predict counts satisfied rules against M") {
  Checklist c{{{0, 0.0}, {1, 0.0}, {2, 0.0}}, 2};
  Eigen::VectorXd row(3);
  row << 1.0, 1.0, -1.0;  // concepts [1, 1, 0]
  CHECK(predict(c, row) == 1);

  Checklist one{{{0, 0.0}}, 1};
  Eigen::VectorXd neg(1);
  neg << -1.0;
  CHECK(predict(one, neg) == 0);

  Checklist all{{{0, 0.0}, {1, 0.0}, {2, 0.0}}, 3};
  row << 1.0, 2.0, 3.0;
  CHECK(predict(all, row) == 1);
}

TEST_CASE("evaluate_counts on a small confusion") {
  // Predictions [1,0,0,1] for y = [1,1,0,0].
  const auto X = testutil::column({1.0, -1.0, -1.0, 1.0});
  const auto y = Labels::from({1, 1, 0, 0});
  const auto e = evaluate_counts(Checklist{{{0, 0.0}}, 1}, X, y);
  CHECK(e.l_plus == 1);
  CHECK(e.l_minus == 1);
  CHECK(e.tp == 1);
  CHECK(e.tn == 1);
  CHECK(e.fn == 1);
  CHECK(e.fp == 1);
}

TEST_CASE("perfect predictions have zero losses") {
  const auto X = testutil::column({1.0, 2.0, -1.0, -2.0});
  const auto y = Labels::from({1, 1, 0, 0});
  const auto e = evaluate_counts(Checklist{{{0, 0.0}}, 1}, X, y);
  CHECK(e.l_plus == 0);
  CHECK(e.l_minus == 0);
}

TEST_CASE("a rule below the column minimum predicts everyone positive") {
  const auto X = testutil::column({1.0, 2.0, 3.0, 4.0, 5.0});
  const auto y = Labels::from({1, 0, 1, 0, 0});
  const auto e = evaluate_counts(Checklist{{{0, 0.0}}, 1}, X, y);
  CHECK(e.l_plus == 0);
  CHECK(e.l_minus == 3);
}

TEST_CASE("evaluate_counts rejects mismatched sizes") {
  const auto X = testutil::column({1.0, 2.0});
  CHECK_THROWS_KIND(evaluate_counts(Checklist{{{0, 0.0}}, 1}, X, Labels::from({1})),
                    ErrorKind::structural);
}

TEST_CASE("objective examples") {
  CHECK(objective_value(2, 3, 5, 2, {1.0, 0.0, 0.0}) == 5.0);
  CHECK(objective_value(0, 0, 4, 2, {4.0, 0.01, 0.01}) == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(objective_value(1, 2, 7, 3, {0.5, 0.0, 0.0}) == 2.0);
}

TEST_CASE("default eps keeps the size penalty below one error") {
  for (double lambda : {0.25, 1.0, 4.0}) {
    for (Index d : {1, 4, 10}) {
      const auto w = ObjectiveWeights::with_default_eps(lambda, d);
      const double worst = objective_value(0, 0, static_cast<int>(d), static_cast<int>(d), w);
      CHECK(worst < std::min(1.0, lambda));
    }
  }
}

TEST_CASE("objective weights reject negative or non-finite values") {
  CHECK_THROWS_KIND((ObjectiveWeights{-1.0, 0.0, 0.0}.validate()), ErrorKind::config);
  CHECK_THROWS_KIND((ObjectiveWeights{1.0, std::nan(""), 0.0}.validate()), ErrorKind::config);
}

TEST_CASE("property: crossing the threshold flips the concept") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int k = 0; k < 200; ++k) {
    const double t = u(rng);
    const double delta = std::abs(u(rng)) + 1e-9;
    Eigen::VectorXd row(1);
    row << t + delta;
    CHECK(apply_concepts(row, {{0, t}})(0) == 1);
    row << t;
    CHECK(apply_concepts(row, {{0, t}})(0) == 0);
    row << t - delta;
    CHECK(apply_concepts(row, {{0, t}})(0) == 0);
  }
}

TEST_CASE("property: predict is non-increasing in M") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 100; ++k) {
    Eigen::VectorXd row(4);
    for (int j = 0; j < 4; ++j) row(j) = g(rng);
    Checklist c{{{0, g(rng)}, {1, g(rng)}, {2, g(rng)}, {3, g(rng)}}, 1};
    int previous = 1;
    for (int M = 1; M <= 4; ++M) {
      c.m_required = M;
      const int p = predict(c, row);
      CHECK(p <= previous);
      previous = p;
    }
  }
}

TEST_CASE("property: rules outside the column range add nothing or everything") {
  const auto inst = testutil::random_instance(5, 30, 2, 6);
  const auto& X = inst.X;
  for (Index i = 0; i < X.rows(); ++i) {
    const auto row = X.values.row(i);
    const auto base = apply_concepts(row, {{0, 2.5}}).sum();
    CHECK(apply_concepts(row, {{0, 2.5}, {1, X.values.col(1).maxCoeff()}}).sum() == base);
    CHECK(apply_concepts(row, {{0, 2.5}, {1, X.values.col(1).minCoeff() - 1.0}}).sum() == base + 1);
  }
}

TEST_CASE("property: confusion cells partition the classes") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = testutil::random_instance(seed, 25, 3, 5);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> t(0, 4);
    Checklist c{{{0, t(rng) + 0.5}, {2, t(rng) + 0.5}}, 1 + static_cast<int>(seed % 2)};
    const auto e = evaluate_counts(c, inst.X, inst.y);
    CHECK(e.l_plus + e.tp == static_cast<Index>(inst.y.pos.size()));
    CHECK(e.l_minus + e.tn == static_cast<Index>(inst.y.neg.size()));
    CHECK(e.l_plus == e.fn);
    CHECK(e.l_minus == e.fp);
    // Independent count from row-by-row comparisons.
    Index lp = 0, lm = 0;
    for (Index i = 0; i < inst.X.rows(); ++i) {
      int s = (inst.X.values(i, 0) > c.rules[0].threshold) + (inst.X.values(i, 2) > c.rules[1].threshold);
      const int yhat = s >= c.m_required;
      if (inst.y.y(i) == 1 && yhat == 0) ++lp;
      if (inst.y.y(i) == 0 && yhat == 1) ++lm;
    }
    CHECK(e.l_plus == lp);
    CHECK(e.l_minus == lm);
  }
}

TEST_CASE("checklist validation") {
  CHECK_NOTHROW((Checklist{{{0, 1.0}, {1, 2.0}}, 2}.validate(2)));
  CHECK_THROWS_KIND((Checklist{{{0, 1.0}}, 0}.validate(1)), ErrorKind::structural);
  CHECK_THROWS_KIND((Checklist{{{0, 1.0}}, 2}.validate(1)), ErrorKind::structural);
  CHECK_THROWS_KIND((Checklist{{{0, 1.0}, {0, 2.0}}, 1}.validate(2)), ErrorKind::structural);
  CHECK_THROWS_KIND((Checklist{{{3, 1.0}}, 1}.validate(2)), ErrorKind::structural);
}

TEST_CASE("labels partition indices") {
  const auto y = Labels::from({1, 0, 0, 1, 1});
  CHECK(y.pos == std::vector<Index>{0, 3, 4});
  CHECK(y.neg == std::vector<Index>{1, 2});
  CHECK_THROWS_KIND(Labels::from({0, 2}), ErrorKind::data);
}

TEST_CASE("feature matrix validation") {
  auto X = matrix({{1.0, 2.0}});
  CHECK_NOTHROW(X.validate());
  X.names = {"a", "a"};
  CHECK_THROWS_KIND(X.validate(), ErrorKind::structural);
  auto Y = matrix({{1.0, std::nan("")}});
  CHECK_THROWS(Y.validate());
}

TEST_CASE("text and json serialization") {
  Checklist c{{{0, 2.5}, {1, 37.75}}, 1};
  const std::vector<std::string> names{"HR_mean", "Temp_last"};
  const auto text = to_text(c, names);
  CHECK(text.find("HR_mean > 2.5") != std::string::npos);
  CHECK(text.find("Temp_last > 37.75") != std::string::npos);
  CHECK(text.find("1 of 2 required") != std::string::npos);
  CHECK(checklist_from_json(to_json(c, names), names) == c);

  Checklist neg{{{1, -3.0, true}}, 1};
  CHECK(checklist_from_json(to_json(neg, names), names) == neg);
  CHECK_THROWS_KIND(checklist_from_json(to_json(c, names), {"other"}), ErrorKind::structural);
}

TEST_CASE("negated columns express upper-bound rules") {
  const auto X = testutil::column({1.0, 5.0});
  const auto N = with_negated_features(X);
  REQUIRE(N.cols() == 2);
  CHECK(N.names[1] == "neg(x)");
  // neg(x) > -3 holds exactly when x < 3.
  CHECK(predict_all(Checklist{{{1, -3.0}}, 1}, N) == (Eigen::VectorXi(2) << 1, 0).finished());
}

}
