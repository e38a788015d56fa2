#include <doctest.h>

#include <cmath>

#include "bcsvm/error.hpp"
#include "bcsvm/kernel.hpp"
#include "bcsvm/solver.hpp"
#include "support/fixtures.hpp"

using namespace bcsvm;

TEST_CASE("kernel_eval reference values") {
  const SparseVector a({{1, 2.0}});
  const SparseVector b({{1, 3.0}});
  CHECK(kernel_eval(KernelSpec::linear(), a, b) == 6.0);

  const SparseVector one({{1, 1.0}});
  const SparseVector three({{1, 3.0}});
  // |a-b|^2 = 4, so exp(-0.5 * 4)
  CHECK(kernel_eval(KernelSpec::rbf(0.5), one, three) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(kernel_eval(KernelSpec::rbf(0.5), one, three) == doctest::Approx(0.135335).epsilon(1e-6));

  const SparseVector messy({{2, 0.1}, {5, -3.3}, {9, 1e-3}});
  CHECK(kernel_eval(KernelSpec::rbf(7.0), messy, messy) == 1.0);

  // (gamma <a,b> + coef0)^degree = (0.5*6 + 1)^3
  CHECK(kernel_eval(KernelSpec::polynomial(0.5, 3, 1.0), a, b) == doctest::Approx(64.0));
}

TEST_CASE("kernel spec validation") {
  CHECK_NOTHROW(KernelSpec::linear().validate());
  CHECK_THROWS_AS(KernelSpec::rbf(0.0).validate(), ConfigError);
  CHECK_THROWS_AS(KernelSpec::rbf(-1.0).validate(), ConfigError);
  CHECK_THROWS_AS(KernelSpec::polynomial(1.0, 0, 0.0).validate(), ConfigError);
  CHECK(kernel_kind_from_string("gaussian") == KernelKind::rbf);
  CHECK_THROWS_AS((void)kernel_kind_from_string("sigmoid"), ConfigError);
}

TEST_CASE("property: kernels are symmetric and rbf lies in (0, 1]") {
  Xoshiro256 rng(5);
  const KernelSpec specs[] = {KernelSpec::linear(), KernelSpec::rbf(0.3), KernelSpec::polynomial(0.7, 2, 0.5)};
  auto random_vector = [&] {
    std::vector<FeatureEntry> e;
    std::uint32_t idx = 0;
    const auto nnz = rng.below(8);
    for (std::uint64_t k = 0; k < nnz; ++k) {
      idx += 1 + static_cast<std::uint32_t>(rng.below(4));
      e.push_back({idx, testing::normal(rng)});
    }
    return SparseVector(std::move(e));
  };
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_vector();
    const auto b = random_vector();
    for (const auto& spec : specs) {
      CHECK(kernel_eval(spec, a, b) == kernel_eval(spec, b, a));
    }
    const double r = kernel_eval(KernelSpec::rbf(0.3), a, b);
    CHECK(r > 0.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("LRU cache hits, misses and eviction order") {
  const auto ds = testing::noisy_blobs(50, 1);
  const std::size_t row_bytes = ds.size() * sizeof(double);

  SUBCASE("second get is a hit") {
    KernelMatrix km(ds, KernelSpec::rbf(0.5), KernelCache::unbounded);
    (void)km.row(3);
    CHECK(km.cache().stats().misses == 1);
    (void)km.row(3);
    CHECK(km.cache().stats().hits == 1);
    CHECK(km.cache().stats().misses == 1);
  }
  SUBCASE("one-row capacity: i, j, i recomputes i") {
    KernelMatrix km(ds, KernelSpec::rbf(0.5), row_bytes);
    const auto first = km.row(1);
    (void)km.row(2);
    CHECK(km.cache().stats().evictions == 1);
    const auto again = km.row(1);
    CHECK(km.cache().stats().misses == 3);
    CHECK(km.cache().stats().hits == 0);
    CHECK(*first == *again);
    CHECK(km.cache().used_bytes() <= km.cache().capacity_bytes());
  }
  SUBCASE("least recently used goes first") {
    KernelMatrix km(ds, KernelSpec::rbf(0.5), 2 * row_bytes);
    (void)km.row(1);
    (void)km.row(2);
    (void)km.row(1);  // 2 is now least recent
    (void)km.row(3);  // evicts 2
    (void)km.row(1);
    CHECK(km.cache().stats().hits == 2);
    (void)km.row(2);
    CHECK(km.cache().stats().misses == 4);
  }
  SUBCASE("capacity 0 never stores") {
    KernelMatrix km(ds, KernelSpec::rbf(0.5), 0);
    (void)km.row(1);
    (void)km.row(1);
    CHECK(km.cache().stats().hits == 0);
    CHECK(km.cache().used_bytes() == 0);
  }
  SUBCASE("changing the active set drops rows") {
    KernelMatrix km(ds, KernelSpec::rbf(0.5), KernelCache::unbounded);
    (void)km.row(0);
    km.set_active({0, 5, 7});
    const auto r = km.row(0);
    CHECK(r->size() == 3);
    CHECK((*r)[1] == km.eval(0, 5));
    CHECK(km.cache().stats().misses == 2);
  }
}

TEST_CASE("property: cached rows equal fresh evaluations and byte budget holds") {
  const auto ds = testing::adult_like(120, 3, 4);
  const KernelSpec spec = KernelSpec::rbf(0.1);
  const std::size_t row_bytes = ds.size() * sizeof(double);
  Xoshiro256 rng(8);
  for (const std::size_t rows : {0, 1, 3, 17}) {
    KernelMatrix km(ds, spec, rows * row_bytes + row_bytes / 2);
    for (int step = 0; step < 300; ++step) {
      const auto i = static_cast<std::size_t>(rng.below(ds.size()));
      const auto row = km.row(i);
      CHECK(km.cache().used_bytes() <= km.cache().capacity_bytes());
      CHECK(km.cache().resident_rows() <= rows);
      const auto j = static_cast<std::size_t>(rng.below(ds.size()));
      CHECK((*row)[j] == kernel_eval(spec, ds[i].features, ds[j].features));
    }
  }
}

TEST_CASE("cache size does not change the trained model") {
  const auto ds = testing::noisy_blobs(200, 12);
  SolverConfig cfg;
  cfg.kernel = KernelSpec::rbf(0.5);
  cfg.C = 2.0;
  cfg.cache_mb = 0;
  const auto none = solve_smo(ds, cfg);
  cfg.cache_mb = 1;
  const auto small = solve_smo(ds, cfg);
  cfg.cache_mb = KernelCache::unbounded;
  const auto full = solve_smo(ds, cfg);
  CHECK(none.alpha == full.alpha);
  CHECK(small.alpha == full.alpha);
  CHECK(none.model.bias() == full.model.bias());
  CHECK(none.iterations == full.iterations);
  CHECK(full.cache_stats.hits > 0);
  CHECK(none.cache_stats.hits == 0);
}
