#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "checklist/core_model.hpp"
#include "checklist/error.hpp"

namespace testutil {

using checklist::ErrorKind;
using checklist::FeatureMatrix;
using checklist::Index;
using checklist::Labels;

inline std::vector<std::string> default_names(Index d) {
  std::vector<std::string> names;
  for (Index j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
  return names;
}

inline FeatureMatrix matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Index>(rows.size());
  const auto d = static_cast<Index>(rows.begin()->size());
  Eigen::MatrixXd v(n, d);
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double x : r) v(i, j++) = x;
    ++i;
  }
  return FeatureMatrix(v, default_names(d));
}

inline FeatureMatrix column(std::initializer_list<double> values) {
  Eigen::MatrixXd v(static_cast<Index>(values.size()), 1);
  Index i = 0;
  for (double x : values) v(i++, 0) = x;
  return FeatureMatrix(v, {"x"});
}

/// Random instance with integer features drawn from [0, levels) so candidate
/// lists stay short.
struct Instance {
  FeatureMatrix X;
  Labels y;
};

inline Instance random_instance(std::uint64_t seed, Index n, Index d, int levels) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(0, levels - 1);
  std::bernoulli_distribution coin(0.45);
  Eigen::MatrixXd v(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) v(i, j) = value(rng);
  std::vector<int> y(static_cast<std::size_t>(n));
  for (auto& yi : y) yi = coin(rng) ? 1 : 0;
  y[0] = 1;
  y[1] = 0;
  return {FeatureMatrix(v, default_names(d)), Labels::from(y)};
}

inline std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::path(SCRATCH_DIR) / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testutil

#define CHECK_THROWS_KIND(expr, expected_kind)                   \
  do {                                                           \
    bool thrown_ = false;                                        \
    try {                                                        \
      (void)(expr);                                              \
    } catch (const checklist::Error& e_) {                       \
      thrown_ = true;                                            \
      CHECK(e_.kind() == (expected_kind));                       \
    }                                                            \
    CHECK_MESSAGE(thrown_, "expected an error of the given kind"); \
  } while (0)
