#pragma once

#include "bcsvm/synthetic.hpp"

namespace bcsvm::testing {

using synthetic::adult_like;
using synthetic::noisy_blobs;
using synthetic::normal;
using synthetic::separable_fixture;
using synthetic::tiny_random;
using synthetic::xor_fixture;

}  // namespace bcsvm::testing
