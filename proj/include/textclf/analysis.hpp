#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "textclf/corpus.hpp"
#include "textclf/features.hpp"
#include "textclf/linear_svm.hpp"

namespace textclf {

struct RankedFeature {
  std::string feature;
  double weight = 0.0;
};

// The `count` features with the largest positive weight in the class's
// one-vs-rest separator, strictly descending by weight; equal weights order
// lexicographically by feature string.  Only positive weights qualify, so
// fewer than `count` entries may come back.  With `most_negative`, the most
// negative weights are ranked instead (ascending, the strongest first).
std::vector<RankedFeature> top_features(const LinearModel& model,
                                        const Vocabulary& vocab, Label cls,
                                        std::size_t count, bool most_negative = false);

}  // namespace textclf
