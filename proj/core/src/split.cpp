#include "leap/split.hpp"

#include <algorithm>
#include <cmath>

#include "leap/error.hpp"
#include "leap/rng.hpp"

namespace leap {

SplitIndices stratified_split(std::span<const std::uint8_t> labels, std::uint64_t seed,
                              double test_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i] ? 1 : 0].push_back(i);
  }
  if (by_class[0].size() < 2 || by_class[1].size() < 2) {
    throw DataError("stratified split requires at least 2 members per class");
  }

  SplitIndices split;
  Rng rng(Rng::derive(seed, 0x5b1d));
  for (auto& members : by_class) {
    rng.shuffle(members);
    const auto n_test = static_cast<std::size_t>(
        std::floor(test_fraction * static_cast<double>(members.size())));
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < n_test ? split.test : split.train).push_back(members[i]);
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace leap
