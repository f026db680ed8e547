#include "textclf/features.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace textclf {

namespace {

void check_order(int value, int lo, int hi, const char* what) {
  if (value < lo || value > hi) {
    throw std::invalid_argument(std::string(what) + " order " + std::to_string(value) +
                                " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
}

std::optional<int> single_digit(std::string_view digits) {
  if (digits.size() != 1 || digits[0] < '0' || digits[0] > '9') return std::nullopt;
  return digits[0] - '0';
}

}  // namespace

FeatureSpaceSpec FeatureSpaceSpec::char_ngram(int n) {
  check_order(n, 2, 8, "char n-gram");
  return {FeatureFamily::CharNgram, n};
}

FeatureSpaceSpec FeatureSpaceSpec::word_ngram(int n) {
  check_order(n, 1, 3, "word n-gram");
  return {FeatureFamily::WordNgram, n};
}

FeatureSpaceSpec FeatureSpaceSpec::skip_bigram(int gap) {
  check_order(gap, 1, 3, "skip bigram");
  return {FeatureFamily::SkipBigram, gap};
}

FeatureSpaceSpec FeatureSpaceSpec::cluster_ngram(int n) {
  check_order(n, 1, 3, "cluster n-gram");
  return {FeatureFamily::ClusterNgram, n};
}

std::string FeatureSpaceSpec::name() const {
  switch (family) {
    case FeatureFamily::CharNgram:
      return "char" + std::to_string(order);
    case FeatureFamily::WordNgram:
      return "word" + std::to_string(order);
    case FeatureFamily::SkipBigram:
      return "skip" + std::to_string(order);
    case FeatureFamily::ClusterNgram:
      return "brown" + std::to_string(order);
  }
  return {};
}

std::optional<FeatureSpaceSpec> FeatureSpaceSpec::from_name(std::string_view name) {
  if (name.starts_with("char")) {
    if (const auto n = single_digit(name.substr(4)); n && *n >= 2 && *n <= 8) {
      return char_ngram(*n);
    }
  } else if (name.starts_with("word")) {
    if (const auto n = single_digit(name.substr(4)); n && *n >= 1 && *n <= 3) {
      return word_ngram(*n);
    }
  } else if (name.starts_with("skip")) {
    if (const auto n = single_digit(name.substr(4)); n && *n >= 1 && *n <= 3) {
      return skip_bigram(*n);
    }
  } else if (name.starts_with("brown")) {
    if (const auto n = single_digit(name.substr(5)); n && *n >= 1 && *n <= 3) {
      return cluster_ngram(*n);
    }
  }
  return std::nullopt;
}

bool FeatureSpaceSpec::needs_tokens() const { return family != FeatureFamily::CharNgram; }

bool FeatureSpaceSpec::needs_lexicon() const {
  return family == FeatureFamily::ClusterNgram;
}

std::vector<FeatureSpaceSpec> base_specs() {
  std::vector<FeatureSpaceSpec> specs;
  specs.reserve(16);
  for (int n = 2; n <= 8; ++n) specs.push_back(FeatureSpaceSpec::char_ngram(n));
  for (int n = 1; n <= 3; ++n) specs.push_back(FeatureSpaceSpec::word_ngram(n));
  for (int gap = 1; gap <= 3; ++gap) specs.push_back(FeatureSpaceSpec::skip_bigram(gap));
  for (int n = 1; n <= 3; ++n) specs.push_back(FeatureSpaceSpec::cluster_ngram(n));
  return specs;
}

std::vector<std::string> char_ngrams(std::string_view text, int n) {
  if (n < 1) throw std::invalid_argument("char n-gram order must be positive");
  std::vector<std::string> grams;
  const auto width = static_cast<std::size_t>(n);
  if (text.size() < width) return grams;
  grams.reserve(text.size() - width + 1);
  for (std::size_t i = 0; i + width <= text.size(); ++i) {
    grams.emplace_back(text.substr(i, width));
  }
  return grams;
}

std::vector<std::string> word_ngrams(std::span<const std::string> tokens, int n) {
  if (n < 1) throw std::invalid_argument("word n-gram order must be positive");
  std::vector<std::string> grams;
  const auto width = static_cast<std::size_t>(n);
  if (tokens.size() < width) return grams;
  grams.reserve(tokens.size() - width + 1);
  for (std::size_t i = 0; i + width <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (std::size_t j = 1; j < width; ++j) {
      gram += ' ';
      gram += tokens[i + j];
    }
    grams.push_back(std::move(gram));
  }
  return grams;
}

std::vector<std::string> skip_bigrams(std::span<const std::string> tokens, int gap) {
  if (gap < 1) throw std::invalid_argument("skip bigram gap must be positive");
  std::vector<std::string> grams;
  const auto stride = static_cast<std::size_t>(gap) + 1;
  if (tokens.size() <= stride) return grams;
  grams.reserve(tokens.size() - stride);
  for (std::size_t i = 0; i + stride < tokens.size(); ++i) {
    grams.push_back(tokens[i] + ' ' + tokens[i + stride]);
  }
  return grams;
}

std::vector<std::string> extract_features(const FeatureSpaceSpec& spec,
                                          std::string_view normalized,
                                          std::span<const std::string> tokens,
                                          const BrownLexicon* lexicon) {
  switch (spec.family) {
    case FeatureFamily::CharNgram:
      return char_ngrams(normalized, spec.order);
    case FeatureFamily::WordNgram:
      return word_ngrams(tokens, spec.order);
    case FeatureFamily::SkipBigram:
      return skip_bigrams(tokens, spec.order);
    case FeatureFamily::ClusterNgram:
      if (lexicon == nullptr) {
        throw std::invalid_argument("cluster features require a cluster lexicon");
      }
      return cluster_ngrams(tokens, *lexicon, spec.order);
  }
  throw std::invalid_argument("unknown feature family");
}

std::vector<std::string> document_features(const PreprocessedCorpus& pre,
                                           std::size_t doc_index,
                                           std::span<const FeatureSpaceSpec> specs,
                                           const BrownLexicon* lexicon) {
  if (doc_index >= pre.normalized.size()) {
    throw std::out_of_range("document index out of range");
  }
  const bool tagged = specs.size() > 1;
  std::vector<std::string> all;
  for (const auto& spec : specs) {
    auto features = extract_features(spec, pre.normalized[doc_index],
                                     pre.tokens[doc_index].tokens, lexicon);
    if (tagged) {
      const std::string prefix = spec.name() + ':';
      for (auto& feature : features) feature.insert(0, prefix);
    }
    all.insert(all.end(), std::make_move_iterator(features.begin()),
               std::make_move_iterator(features.end()));
  }
  return all;
}

Vocabulary::Vocabulary(std::vector<std::string> features,
                       std::vector<std::uint64_t> counts)
    : features_(std::move(features)), counts_(std::move(counts)) {
  if (features_.size() != counts_.size()) {
    throw std::invalid_argument("vocabulary feature/count size mismatch");
  }
  if (features_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("vocabulary too large for 32-bit feature indices");
  }
  for (std::size_t i = 1; i < features_.size(); ++i) {
    if (features_[i - 1] >= features_[i]) {
      throw std::invalid_argument("vocabulary features must be sorted and unique");
    }
  }
  rebuild_index();
}

// The index keys view into features_.  Moving the vector keeps every string
// object (and thus its character data) at the same address, so moves reuse
// the index; copies rebuild it.
Vocabulary::Vocabulary(const Vocabulary& other)
    : features_(other.features_), counts_(other.counts_) {
  rebuild_index();
}

Vocabulary::Vocabulary(Vocabulary&& other) noexcept
    : features_(std::move(other.features_)),
      counts_(std::move(other.counts_)),
      index_(std::move(other.index_)) {
  other.features_.clear();
  other.counts_.clear();
  other.index_.clear();
}

Vocabulary& Vocabulary::operator=(Vocabulary other) noexcept {
  features_.swap(other.features_);
  counts_.swap(other.counts_);
  index_.swap(other.index_);
  return *this;
}

void Vocabulary::rebuild_index() {
  index_.clear();
  index_.reserve(features_.size());
  for (std::size_t i = 0; i < features_.size(); ++i) {
    index_.emplace(std::string_view(features_[i]), static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> Vocabulary::lookup(std::string_view feature) const {
  const auto it = index_.find(feature);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::feature(std::uint32_t index) const {
  if (index >= features_.size()) throw std::out_of_range("feature index out of range");
  return features_[index];
}

std::uint64_t Vocabulary::training_count(std::uint32_t index) const {
  if (index >= counts_.size()) throw std::out_of_range("feature index out of range");
  return counts_[index];
}

void Vocabulary::dump(std::ostream& out) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    out << i << '\t' << features_[i] << '\t' << counts_[i] << '\n';
  }
}

Vocabulary build_vocabulary(const PreprocessedCorpus& pre,
                            std::span<const FeatureSpaceSpec> specs,
                            std::span<const std::size_t> doc_indices,
                            const BrownLexicon* lexicon) {
  if (specs.empty()) {
    throw std::invalid_argument("at least one feature space is required");
  }
  std::unordered_map<std::string, std::uint64_t, TransparentStringHash, std::equal_to<>>
      totals;
  for (const std::size_t doc : doc_indices) {
    for (auto& feature : document_features(pre, doc, specs, lexicon)) {
      ++totals[std::move(feature)];
    }
  }
  std::vector<std::string> features;
  features.reserve(totals.size());
  for (const auto& [feature, count] : totals) features.push_back(feature);
  std::sort(features.begin(), features.end());
  std::vector<std::uint64_t> counts;
  counts.reserve(features.size());
  for (const auto& feature : features) counts.push_back(totals.find(feature)->second);
  return Vocabulary(std::move(features), std::move(counts));
}

SparseVector vectorize(std::span<const std::string> features, const Vocabulary& vocab,
                       bool binary) {
  std::unordered_map<std::uint32_t, float> counts;
  for (const auto& feature : features) {
    if (const auto index = vocab.lookup(feature)) ++counts[*index];
  }
  SparseVector vec;
  vec.reserve(counts.size());
  for (const auto& [index, count] : counts) {
    vec.push_back({index, binary ? 1.0f : count});
  }
  std::sort(vec.begin(), vec.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return vec;
}

SparseVector vectorize_document(const PreprocessedCorpus& pre, std::size_t doc_index,
                                std::span<const FeatureSpaceSpec> specs,
                                const Vocabulary& vocab, const BrownLexicon* lexicon,
                                bool binary) {
  const auto features = document_features(pre, doc_index, specs, lexicon);
  return vectorize(features, vocab, binary);
}

}  // namespace textclf
