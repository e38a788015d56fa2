#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcsvm/error.hpp"
#include "bcsvm/model_io.hpp"
#include "bcsvm/solver.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace bcsvm;

namespace {

Sample point1d(double x, Label y, std::size_t id) { return {SparseVector({{1, x}}), y, id}; }

SparseVector at(double x) { return SparseVector({{1, x}}); }

SolverConfig linear_cfg(double C, double tol = 1e-6) {
  SolverConfig cfg;
  cfg.kernel = KernelSpec::linear();
  cfg.C = C;
  cfg.tol = tol;
  return cfg;
}

}  // namespace

TEST_CASE("two points in 1-D: alpha = 1/2, f(x) = x") {
  const Dataset ds({point1d(-1.0, Label::negative, 0), point1d(1.0, Label::positive, 1)});
  const auto cfg = linear_cfg(10.0);
  const auto sol = solve_smo(ds, cfg);
  CHECK(sol.converged);
  CHECK(sol.alpha[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sol.alpha[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sol.model.bias() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sol.model.sv_count() == 2);
  CHECK(decision_value(sol.model, at(0.25)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(decision_value(sol.model, at(-3.0)) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(testing::kkt_violations(ds, cfg, sol).empty());
}

TEST_CASE("XOR with rbf: all four points are support vectors") {
  const auto ds = testing::xor_fixture();
  SolverConfig cfg;
  cfg.kernel = KernelSpec::rbf(1.0);
  cfg.C = 10.0;
  cfg.tol = 1e-8;
  const auto sol = solve_smo(ds, cfg);
  CHECK(sol.model.sv_count() == 4);
  CHECK(accuracy(sol.model, ds) == 1.0);

  const auto oracle = testing::brute_force_dual(ds, cfg.kernel, cfg.C);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(oracle.alpha[i] > 0.0);
    CHECK(sol.alpha[i] == doctest::Approx(oracle.alpha[i]).epsilon(1e-6));
  }
  CHECK(sol.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
  CHECK(testing::kkt_violations(ds, cfg, sol).empty());
}

TEST_CASE("smo matches the brute-force dual on tiny problems") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 3 + seed % 4;
    const auto ds = testing::tiny_random(n, 2, seed);
    SolverConfig cfg;
    cfg.kernel = KernelSpec::rbf(1.5);
    cfg.C = 1.0 + static_cast<double>(seed % 3);
    cfg.tol = 1e-6;
    const auto sol = solve_smo(ds, cfg);
    const auto oracle = testing::brute_force_dual(ds, cfg.kernel, cfg.C);
    CAPTURE(seed);
    CHECK(sol.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
    CHECK(testing::dual_objective(ds, cfg.kernel, sol.alpha) == doctest::Approx(sol.objective).epsilon(1e-9));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK((sol.alpha[i] > kSupportThreshold) == (oracle.alpha[i] > 0.0));
    }
    CHECK(testing::kkt_violations(ds, cfg, sol).empty());
  }
}

TEST_CASE("duplicating every sample leaves the decision function unchanged") {
  const auto ds = testing::separable_fixture(80, 2, 31, 0.1);
  std::vector<Sample> doubled;
  for (const auto& s : ds.samples()) {
    doubled.push_back(s);
    doubled.push_back(s);
  }
  const Dataset twice(std::move(doubled), ds.dim());
  const auto cfg = linear_cfg(100.0, 1e-10);
  const auto a = smo_train(ds, cfg);
  const auto b = smo_train(twice, cfg);
  Xoshiro256 rng(3);
  for (int k = 0; k < 200; ++k) {
    const SparseVector probe({{1, 2.0 * rng.uniform01() - 1.0}, {2, 2.0 * rng.uniform01() - 1.0}});
    CHECK(std::abs(decision_value(a, probe) - decision_value(b, probe)) <= 1e-6);
  }
}

TEST_CASE("hard-margin fixture: SVs sit on the margin and are the closest points") {
  const auto ds = testing::separable_fixture(300, 3, 5, 0.05);
  const auto cfg = linear_cfg(1e4, 1e-6);
  const auto sol = solve_smo(ds, cfg);
  REQUIRE(sol.converged);
  CHECK(testing::kkt_violations(ds, cfg, sol).empty());
  double max_free_sv = 0.0;
  double min_other = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double f = decision_value(sol.model, ds[i].features);
    if (sol.alpha[i] > kSupportThreshold) {
      CHECK(sol.alpha[i] < cfg.C);
      CHECK(std::abs(f) >= 1.0 - cfg.tol);
      CHECK(std::abs(f) <= 1.0 + cfg.tol);
      max_free_sv = std::max(max_free_sv, std::abs(f));
    } else {
      min_other = std::min(min_other, std::abs(f));
    }
    CHECK(sol.decision[i] == doctest::Approx(f).epsilon(1e-9));
  }
  CHECK(min_other >= max_free_sv - cfg.tol);
  CHECK(accuracy(sol.model, ds) == 1.0);
}

TEST_CASE("decision_value, predict and the tie rule") {
  const SvmModel empty({}, {}, 0.75, KernelSpec::rbf(1.0));
  CHECK(decision_value(empty, at(3.0)) == 0.75);
  CHECK(predict(SvmModel({}, {}, 2.3, KernelSpec::linear()), at(1.0)) == Label::positive);
  CHECK(predict(SvmModel({}, {}, -0.1, KernelSpec::linear()), at(1.0)) == Label::negative);
  CHECK(predict(SvmModel({}, {}, 0.0, KernelSpec::linear()), at(1.0)) == Label::positive);
}

TEST_CASE("accuracy") {
  std::vector<Sample> pts;
  for (std::size_t i = 0; i < 10; ++i) {
    const double x = static_cast<double>(i) - 4.5;
    pts.push_back(point1d(x, x > 0 ? Label::positive : Label::negative, i));
  }
  const Dataset ds(pts);
  // f(x) = x classifies all ten correctly
  const SvmModel model({point1d(1.0, Label::positive, 0)}, {1.0}, 0.0, KernelSpec::linear());
  CHECK(accuracy(model, ds) == 1.0);
  for (auto& p : pts) p.label = p.label == Label::positive ? Label::negative : Label::positive;
  CHECK(accuracy(model, Dataset(pts)) == 0.0);
  CHECK_THROWS_AS((void)accuracy(model, Dataset()), ConfigError);
}

TEST_CASE("solver errors and non-convergence") {
  const Dataset one_class({point1d(1.0, Label::positive, 0), point1d(2.0, Label::positive, 1)});
  CHECK_THROWS_AS((void)smo_train(one_class, SolverConfig{}), TrainingError);

  SolverConfig bad;
  bad.C = 0.0;
  const Dataset ok({point1d(-1.0, Label::negative, 0), point1d(1.0, Label::positive, 1)});
  CHECK_THROWS_AS((void)smo_train(ok, bad), ConfigError);
  bad = SolverConfig{};
  bad.tol = -1.0;
  CHECK_THROWS_AS((void)smo_train(ok, bad), ConfigError);

  SolverConfig capped;
  capped.kernel = KernelSpec::rbf(0.5);
  capped.max_iter = 3;
  const auto blobs = testing::noisy_blobs(100, 2);
  const auto sol = solve_smo(blobs, capped);
  CHECK_FALSE(sol.converged);
  CHECK(sol.iterations == 3);
  CHECK(testing::kkt_violations(blobs, capped, sol).empty());
}

TEST_CASE("soft margin invariants on noisy data") {
  const auto ds = testing::noisy_blobs(300, 21);
  for (const double C : {0.1, 1.0, 10.0}) {
    SolverConfig cfg;
    cfg.kernel = KernelSpec::rbf(0.5);
    cfg.C = C;
    const auto sol = solve_smo(ds, cfg);
    CAPTURE(C);
    CHECK(sol.converged);
    CHECK(testing::kkt_violations(ds, cfg, sol).empty());
    const auto coef = sol.model.coefficients();
    for (const double c : coef) {
      CHECK(c != 0.0);
      CHECK(std::abs(c) <= C);
    }
    // the decision values the solver reports match a direct evaluation of the model
    for (std::size_t i = 0; i < ds.size(); i += 7) {
      CHECK(sol.decision[i] == doctest::Approx(decision_value(sol.model, ds[i].features)).epsilon(1e-9));
    }
  }
}

TEST_CASE("model JSON round-trips exactly") {
  const auto ds = testing::noisy_blobs(150, 8);
  SolverConfig cfg;
  cfg.kernel = KernelSpec::rbf(0.37);
  cfg.C = 3.3;
  const auto model = smo_train(ds, cfg);
  const auto back = model_from_json(nlohmann::json::parse(model_to_json(model).dump()));
  CHECK(back.bias() == model.bias());
  CHECK(back.kernel() == model.kernel());
  CHECK(back.cost() == model.cost());
  REQUIRE(back.sv_count() == model.sv_count());
  for (std::size_t i = 0; i < model.sv_count(); ++i) {
    CHECK(back.coefficients()[i] == model.coefficients()[i]);
    CHECK(back.support_vectors()[i] == model.support_vectors()[i]);
  }
  for (const auto& s : ds.samples()) {
    CHECK(decision_value(back, s.features) == decision_value(model, s.features));
  }
  CHECK_THROWS_AS((void)model_from_json(nlohmann::json::parse(R"({"format":"other"})")), ParseError);
  CHECK_THROWS_AS((void)model_from_json(nlohmann::json::parse(R"({"format":"bcsvm-model","version":1})")), ParseError);
}

TEST_CASE("regression: direct training on the adult-like benchmark data") {
  // Frozen self-baseline; any change to the solver's arithmetic or stopping rule shows up here.
  const auto train = testing::adult_like(1500, 1, 21);
  const auto test = testing::adult_like(1500, 1, 22);
  SolverConfig cfg;
  cfg.kernel = KernelSpec::rbf(0.0078125);
  cfg.C = 32.0;
  const auto sol = solve_smo(train, cfg);
  CHECK(sol.converged);
  CHECK(sol.model.sv_count() == 565);
  CHECK(accuracy(sol.model, test) == 1288.0 / 1500.0);
  CHECK(testing::kkt_violations(train, cfg, sol).empty());
}
