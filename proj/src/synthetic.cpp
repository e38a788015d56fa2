#include "bcsvm/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

namespace bcsvm::synthetic {

double normal(Xoshiro256& rng) {
  double u1 = rng.uniform01();
  while (u1 <= 0.0) {
    u1 = rng.uniform01();
  }
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

namespace {

SparseVector dense_to_sparse(const std::vector<double>& x) {
  std::vector<FeatureEntry> entries;
  for (std::size_t d = 0; d < x.size(); ++d) {
    entries.push_back({static_cast<std::uint32_t>(d + 1), x[d]});
  }
  return SparseVector(std::move(entries));
}

}  // namespace

Dataset separable_fixture(std::size_t n, std::size_t dim, std::uint64_t seed, double gap) {
  Xoshiro256 rng(seed);
  std::vector<double> w(dim);
  double norm = 0.0;
  for (auto& v : w) {
    v = normal(rng);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  for (auto& v : w) {
    v /= norm;
  }
  const double offset = 0.3 * (2.0 * rng.uniform01() - 1.0);

  std::vector<Sample> samples;
  std::size_t positives = 0;
  while (samples.size() < n) {
    std::vector<double> x(dim);
    double score = offset;
    for (std::size_t d = 0; d < dim; ++d) {
      x[d] = 2.0 * rng.uniform01() - 1.0;
      score += w[d] * x[d];
    }
    if (std::abs(score) < gap) {
      continue;
    }
    // keep both classes at least a quarter of the data
    const bool pos = score > 0.0;
    const std::size_t negatives = samples.size() - positives;
    if ((pos && positives >= 3 * n / 4) || (!pos && negatives >= 3 * n / 4)) {
      continue;
    }
    positives += pos ? 1 : 0;
    samples.push_back({dense_to_sparse(x), pos ? Label::positive : Label::negative, samples.size()});
  }
  return Dataset(std::move(samples), dim);
}

Dataset noisy_blobs(std::size_t n, std::uint64_t seed, double positive_share, double separation) {
  Xoshiro256 rng(seed);
  const auto n_pos = static_cast<std::size_t>(std::llround(positive_share * static_cast<double>(n)));
  std::vector<Sample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i < n_pos;
    const double cx = pos ? separation / 2.0 : -separation / 2.0;
    std::vector<double> x = {cx + normal(rng), normal(rng)};
    samples.push_back({dense_to_sparse(x), pos ? Label::positive : Label::negative, i});
  }
  // interleave classes so file order carries no label information
  std::vector<Sample> shuffled = samples;
  fisher_yates(std::span<Sample>(shuffled), rng);
  for (std::size_t i = 0; i < shuffled.size(); ++i) {
    shuffled[i].id = i;
  }
  return Dataset(std::move(shuffled), 2);
}

Dataset xor_fixture() {
  auto point = [](double a, double b, Label y, std::size_t id) {
    std::vector<FeatureEntry> e;
    if (a != 0.0) {
      e.push_back({1, a});
    }
    if (b != 0.0) {
      e.push_back({2, b});
    }
    return Sample{SparseVector(std::move(e)), y, id};
  };
  return Dataset({point(0, 0, Label::negative, 0), point(1, 1, Label::negative, 1), point(0, 1, Label::positive, 2),
                  point(1, 0, Label::positive, 3)},
                 2);
}

Dataset adult_like(std::size_t n, std::uint64_t model_seed, std::uint64_t sample_seed) {
  // attribute cardinalities, 123 one-hot features in total
  constexpr std::array<std::size_t, 14> kCard = {5, 8, 5, 16, 5, 7, 14, 6, 5, 2, 2, 3, 4, 41};
  static_assert(std::accumulate(kCard.begin(), kCard.end(), std::size_t{0}) == 123);

  Xoshiro256 model_rng(model_seed);
  std::vector<std::vector<double>> value_prob(kCard.size());
  std::vector<std::vector<double>> weight(kCard.size());
  for (std::size_t a = 0; a < kCard.size(); ++a) {
    double total = 0.0;
    for (std::size_t v = 0; v < kCard[a]; ++v) {
      // skewed category frequencies
      const double p = std::exp(1.2 * normal(model_rng));
      value_prob[a].push_back(p);
      total += p;
      weight[a].push_back((a < 6 ? 0.9 : 0.45) * normal(model_rng));
    }
    for (auto& p : value_prob[a]) {
      p /= total;
    }
  }
  // a handful of pairwise interactions make the boundary non-linear
  struct Interaction {
    std::size_t a, va, b, vb;
    double w;
  };
  std::vector<Interaction> interactions;
  for (int k = 0; k < 12; ++k) {
    const auto a = static_cast<std::size_t>(model_rng.below(kCard.size()));
    auto b = static_cast<std::size_t>(model_rng.below(kCard.size()));
    if (b == a) {
      b = (a + 1) % kCard.size();
    }
    interactions.push_back({a, static_cast<std::size_t>(model_rng.below(kCard[a])), b,
                            static_cast<std::size_t>(model_rng.below(kCard[b])), 1.5 * normal(model_rng)});
  }

  auto draw = [&](Xoshiro256& rng, std::vector<std::size_t>& row) {
    double score = 0.0;
    for (std::size_t a = 0; a < kCard.size(); ++a) {
      double u = rng.uniform01();
      std::size_t v = 0;
      while (v + 1 < kCard[a] && u >= value_prob[a][v]) {
        u -= value_prob[a][v];
        ++v;
      }
      row[a] = v;
      score += weight[a][v];
    }
    for (const auto& it : interactions) {
      if (row[it.a] == it.va && row[it.b] == it.vb) {
        score += it.w;
      }
    }
    // logistic label noise
    const double u = std::max(rng.uniform01(), 1e-12);
    return score + 0.6 * std::log(u / (1.0 - u));
  };

  // threshold belongs to the model so train and test draws share it: 76th percentile of a reference draw
  Xoshiro256 ref_rng(model_seed ^ 0x5eedULL);
  std::vector<double> reference(4000);
  std::vector<std::size_t> scratch(kCard.size());
  for (auto& r : reference) {
    r = draw(ref_rng, scratch);
  }
  std::sort(reference.begin(), reference.end());
  const double threshold = reference[reference.size() * 76 / 100];

  Xoshiro256 rng(sample_seed);
  std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(kCard.size()));
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = draw(rng, rows[i]);
  }

  std::vector<Sample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<FeatureEntry> entries;
    std::uint32_t base = 0;
    for (std::size_t a = 0; a < kCard.size(); ++a) {
      entries.push_back({static_cast<std::uint32_t>(base + rows[i][a] + 1), 1.0});
      base += static_cast<std::uint32_t>(kCard[a]);
    }
    samples.push_back({SparseVector(std::move(entries)), scores[i] > threshold ? Label::positive : Label::negative, i});
  }
  return Dataset(std::move(samples), 123);
}

Dataset tiny_random(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(dim);
    for (auto& v : x) {
      v = 2.0 * rng.uniform01() - 1.0;
    }
    // first two samples fix both classes; the rest are random
    Label y = i == 0 ? Label::positive : i == 1 ? Label::negative : (rng.below(2) ? Label::positive : Label::negative);
    samples.push_back({dense_to_sparse(x), y, i});
  }
  return Dataset(std::move(samples), dim);
}

}  // namespace bcsvm::synthetic
