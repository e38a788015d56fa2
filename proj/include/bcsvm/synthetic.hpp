#pragma once

#include <cstddef>
#include <cstdint>

#include "bcsvm/dataset.hpp"
#include "bcsvm/random.hpp"

namespace bcsvm::synthetic {

/// Standard normal draw (Box-Muller on xoshiro256** output), platform independent.
double normal(Xoshiro256& rng);

/// Points uniform in [-1,1]^dim labelled by a random hyperplane through the origin region, with
/// every point at least `gap` from it. Linearly separable by construction.
Dataset separable_fixture(std::size_t n, std::size_t dim, std::uint64_t seed, double gap = 0.05);

/// Two overlapping Gaussian blobs in 2-D; `positive_share` of the samples are positive.
Dataset noisy_blobs(std::size_t n, std::uint64_t seed, double positive_share = 0.3, double separation = 2.0);

/// {(0,0,-1), (1,1,-1), (0,1,+1), (1,0,+1)}
Dataset xor_fixture();

/**
 * Census-income-like sparse binary data: 14 categorical attributes one-hot encoded into 123
 * features (exactly 14 nonzeros per sample), about 24% positives, labels from a noisy latent
 * score with pairwise interactions. Train and test draws with the same `model_seed` share the
 * latent rule.
 */
Dataset adult_like(std::size_t n, std::uint64_t model_seed, std::uint64_t sample_seed);

/// Small random dataset with both classes (first sample positive, second negative).
Dataset tiny_random(std::size_t n, std::size_t dim, std::uint64_t seed);

}  // namespace bcsvm::synthetic
