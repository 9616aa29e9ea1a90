#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace leap {

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

// Stratified 80/20 partition: each class is shuffled by the seed alone, the
// first floor(0.2 * class_n) rows form the test side, the rest train.  The
// partition depends only on (labels, seed), so runs that share labels (for
// example the three leakage policies) get identical splits.
SplitIndices stratified_split(std::span<const std::uint8_t> labels, std::uint64_t seed,
                              double test_fraction = 0.2);

}  // namespace leap
