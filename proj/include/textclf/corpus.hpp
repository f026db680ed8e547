#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace textclf {

// The three target classes, in fixed canonical order.
enum class Label : int { Hate = 0, Offensive = 1, Ok = 2 };

inline constexpr int kNumClasses = 3;

inline constexpr int label_index(Label l) { return static_cast<int>(l); }

Label label_from_index(int index);
const char* label_name(Label l);
// Accepts the canonical names ("hate", "offensive", "ok"), case-insensitive.
Label label_from_name(std::string_view name);

struct Document {
  std::string id;    // stable within a corpus
  std::string text;  // raw, as ingested
  Label label;
};

class EmptyCorpusError : public std::runtime_error {
 public:
  explicit EmptyCorpusError(const std::string& message) : std::runtime_error(message) {}
};

class InvalidLabelError : public std::runtime_error {
 public:
  InvalidLabelError(const std::string& message, std::size_t record)
      : std::runtime_error(message), record_(record) {}
  std::size_t record() const { return record_; }

 private:
  std::size_t record_;
};

class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  const Document& at(std::size_t i) const { return documents_[i]; }
  std::size_t size() const { return documents_.size(); }
  std::size_t class_count(Label l) const { return class_counts_[label_index(l)]; }
  const std::array<std::size_t, kNumClasses>& class_counts() const { return class_counts_; }

 private:
  std::vector<Document> documents_;
  std::array<std::size_t, kNumClasses> class_counts_{};
};

// Which columns hold the text and the label, and how the file's label values
// map onto the three classes. delimiter 0 means auto-detect from the header.
struct ColumnMapping {
  std::string text_column;
  std::string label_column;
  std::map<std::string, Label> label_map;
  char delimiter = 0;
};

// Reads a delimited file with a header row. Rows with empty or
// whitespace-only text are skipped; everything else must parse.
// Throws ParseError (bad row, with record number), InvalidLabelError
// (unmapped label value, with record number), EmptyCorpusError, or
// std::runtime_error (missing file / missing columns).
Corpus load_corpus(const std::string& path, const ColumnMapping& mapping);
Corpus parse_corpus(std::istream& in, const ColumnMapping& mapping, const std::string& origin);

struct FoldAssignment {
  int k = 0;
  std::vector<int> assignment;  // fold index per document, aligned with corpus order
  std::uint64_t seed = 0;

  std::vector<std::size_t> test_indices(int fold) const;
  std::vector<std::size_t> train_indices(int fold) const;
};

// Stratified folds: indices grouped by class, each group shuffled with a
// seed-derived stream, then dealt round-robin. Per-fold per-class counts
// differ from perfect stratification by at most one.
FoldAssignment stratified_folds(const Corpus& corpus, int k, std::uint64_t seed);
// Same construction over bare labels, for nested splits of a corpus slice.
FoldAssignment stratified_folds(std::span<const Label> labels, int k,
                                std::uint64_t seed);

// Largest class share; the accuracy of always predicting the modal class.
double majority_baseline(const Corpus& corpus);

}  // namespace textclf
