#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textclf/brown.hpp"
#include "textclf/preprocess.hpp"
#include "textclf/util.hpp"

namespace textclf {

// Families of surface features extracted from a normalized tweet.
enum class FeatureFamily {
  CharNgram,     // byte n-grams of the normalized string, spaces included
  WordNgram,     // token n-grams joined by a single space
  SkipBigram,    // token pairs (i, i+gap+1) joined by a single space
  ClusterNgram,  // cluster-path n-grams derived from a Brown lexicon
};

// One feature space: a family plus its order (n for n-grams, gap for skip
// bigrams).  Instances are created through the named factories, which
// validate the supported ranges.
struct FeatureSpaceSpec {
  FeatureFamily family;
  int order;

  static FeatureSpaceSpec char_ngram(int n);     // n in [2, 8]
  static FeatureSpaceSpec word_ngram(int n);     // n in [1, 3]
  static FeatureSpaceSpec skip_bigram(int gap);  // gap in [1, 3]
  static FeatureSpaceSpec cluster_ngram(int n);  // n in [1, 3]

  // Short identifier used in reports and config files: "char4", "word2",
  // "skip1", "brown3".
  std::string name() const;
  static std::optional<FeatureSpaceSpec> from_name(std::string_view name);

  bool needs_tokens() const;
  bool needs_lexicon() const;

  bool operator==(const FeatureSpaceSpec&) const = default;
};

// The sixteen base spaces in fixed report order: char2..char8, word1..word3,
// skip1..skip3, brown1..brown3.
std::vector<FeatureSpaceSpec> base_specs();

// Extraction primitives.  Each returns the multiset of feature strings in
// left-to-right order; duplicates are preserved so callers can count them.
std::vector<std::string> char_ngrams(std::string_view text, int n);
std::vector<std::string> word_ngrams(std::span<const std::string> tokens, int n);
std::vector<std::string> skip_bigrams(std::span<const std::string> tokens, int gap);

// Dispatches to the primitive for `spec`.  `lexicon` may be null unless the
// spec is a cluster space.
std::vector<std::string> extract_features(const FeatureSpaceSpec& spec,
                                          std::string_view normalized,
                                          std::span<const std::string> tokens,
                                          const BrownLexicon* lexicon);

// All features of one document across `specs`.  When more than one space is
// combined, each feature string is prefixed with "<spec name>:" so the
// spaces cannot collide.
std::vector<std::string> document_features(const PreprocessedCorpus& pre,
                                           std::size_t doc_index,
                                           std::span<const FeatureSpaceSpec> specs,
                                           const BrownLexicon* lexicon);

struct SparseEntry {
  std::uint32_t index;
  float value;

  bool operator==(const SparseEntry&) const = default;
};

// Sparse feature vector, entries sorted by ascending index.
using SparseVector = std::vector<SparseEntry>;

// Immutable feature-to-index mapping.  Indices follow the lexicographic
// order of the feature strings, so a vocabulary built from the same corpus
// slice is always identical.
class Vocabulary {
 public:
  Vocabulary() = default;
  // `features` must be sorted and unique; `counts` holds the training-corpus
  // occurrence totals aligned with `features`.
  Vocabulary(std::vector<std::string> features, std::vector<std::uint64_t> counts);

  Vocabulary(const Vocabulary& other);
  Vocabulary(Vocabulary&& other) noexcept;
  Vocabulary& operator=(Vocabulary other) noexcept;

  std::size_t size() const { return features_.size(); }
  std::optional<std::uint32_t> lookup(std::string_view feature) const;
  const std::string& feature(std::uint32_t index) const;
  std::uint64_t training_count(std::uint32_t index) const;

  // Writes one "index<TAB>feature<TAB>count" line per feature.
  void dump(std::ostream& out) const;

 private:
  void rebuild_index();

  std::vector<std::string> features_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string_view, std::uint32_t, TransparentStringHash,
                     std::equal_to<>>
      index_;
};

// Builds the vocabulary over the documents named by `doc_indices`.  The
// multi-space prefix rule of document_features applies.
Vocabulary build_vocabulary(const PreprocessedCorpus& pre,
                            std::span<const FeatureSpaceSpec> specs,
                            std::span<const std::size_t> doc_indices,
                            const BrownLexicon* lexicon);

// Counts the multiset against the vocabulary.  Features missing from the
// vocabulary are dropped.  With `binary` set, every present feature gets
// value 1 instead of its count.
SparseVector vectorize(std::span<const std::string> features, const Vocabulary& vocab,
                       bool binary = false);

// Extracts and vectorizes one document in a single call.
SparseVector vectorize_document(const PreprocessedCorpus& pre, std::size_t doc_index,
                                std::span<const FeatureSpaceSpec> specs,
                                const Vocabulary& vocab, const BrownLexicon* lexicon,
                                bool binary = false);

}  // namespace textclf
