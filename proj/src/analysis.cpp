#include "textclf/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace textclf {

std::vector<RankedFeature> top_features(const LinearModel& model,
                                        const Vocabulary& vocab, Label cls,
                                        std::size_t count, bool most_negative) {
  if (count == 0) throw std::invalid_argument("feature count must be positive");
  if (model.n_classes == 0 || model.weights.empty()) {
    throw std::invalid_argument("model is not trained");
  }
  if (model.dim != vocab.size()) {
    throw std::invalid_argument("model dimensionality does not match the vocabulary");
  }
  const int class_index = label_index(cls);
  if (class_index >= model.n_classes) {
    throw std::invalid_argument("model has no separator for this class");
  }

  const auto& w = model.weights[static_cast<std::size_t>(class_index)];
  std::vector<std::uint32_t> candidates;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (most_negative ? w[i] < 0.0 : w[i] > 0.0) {
      candidates.push_back(static_cast<std::uint32_t>(i));
    }
  }
  const auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (w[a] != w[b]) return most_negative ? w[a] < w[b] : w[a] > w[b];
    return vocab.feature(a) < vocab.feature(b);
  };
  if (candidates.size() > count) {
    std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(count),
                     candidates.end(), better);
    candidates.resize(count);
  }
  std::sort(candidates.begin(), candidates.end(), better);

  std::vector<RankedFeature> out;
  out.reserve(candidates.size());
  for (const std::uint32_t i : candidates) {
    out.push_back({vocab.feature(i), w[i]});
  }
  return out;
}

}  // namespace textclf
