#include "textclf/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "textclf/csv.hpp"
#include "textclf/util.hpp"

namespace textclf {

Label label_from_index(int index) {
  if (index < 0 || index >= kNumClasses)
    throw std::out_of_range("label index out of range: " + std::to_string(index));
  return static_cast<Label>(index);
}

const char* label_name(Label l) {
  switch (l) {
    case Label::Hate: return "hate";
    case Label::Offensive: return "offensive";
    case Label::Ok: return "ok";
  }
  throw std::out_of_range("invalid label");
}

Label label_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "hate") return Label::Hate;
  if (lower == "offensive") return Label::Offensive;
  if (lower == "ok") return Label::Ok;
  throw std::invalid_argument("unknown class name: " + std::string(name));
}

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  for (const Document& d : documents_) ++class_counts_[label_index(d.label)];
}

namespace {

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

Corpus parse_corpus(std::istream& in, const ColumnMapping& mapping, const std::string& origin) {
  if (mapping.text_column.empty() || mapping.label_column.empty())
    throw std::runtime_error(origin + ": column mapping must name a text and a label column");
  if (mapping.label_map.size() != 3)
    throw std::runtime_error(origin + ": label map must have exactly 3 entries, has " +
                             std::to_string(mapping.label_map.size()));

  char delimiter = mapping.delimiter;
  if (delimiter == 0) {
    std::string first_line;
    const auto start = in.tellg();
    std::getline(in, first_line);
    delimiter = DelimitedReader::detect_delimiter(first_line);
    in.clear();
    in.seekg(start);
  }

  DelimitedReader reader(in, delimiter);
  DelimitedRecord record;
  if (!reader.next(record)) throw EmptyCorpusError(origin + ": file is empty");

  const std::vector<std::string>& header = record.fields;
  auto column_of = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw std::runtime_error(origin + ": no column named '" + name + "' in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t text_col = column_of(mapping.text_column);
  const std::size_t label_col = column_of(mapping.label_column);

  std::vector<Document> docs;
  std::size_t ordinal = 0;
  while (reader.next(record)) {
    if (record.fields.size() == 1 && record.fields[0].empty()) continue;  // blank line
    if (record.fields.size() != header.size())
      throw ParseError(origin + ": record " + std::to_string(record.record_number) +
                           ": expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(record.fields.size()),
                       record.record_number);
    const std::string& value = record.fields[label_col];
    const auto it = mapping.label_map.find(value);
    if (it == mapping.label_map.end())
      throw InvalidLabelError(origin + ": record " + std::to_string(record.record_number) +
                                  ": label value '" + value + "' is not mapped to a class",
                              record.record_number);
    std::string text = record.fields[text_col];
    if (is_blank(text)) {
      ++ordinal;
      continue;
    }
    docs.push_back(Document{std::to_string(ordinal), std::move(text), it->second});
    ++ordinal;
  }
  if (docs.empty()) throw EmptyCorpusError(origin + ": no usable rows");
  return Corpus(std::move(docs));
}

Corpus load_corpus(const std::string& path, const ColumnMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open data file: " + path);
  return parse_corpus(in, mapping, path);
}

std::vector<std::size_t> FoldAssignment::test_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldAssignment::train_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] != fold) out.push_back(i);
  return out;
}

FoldAssignment stratified_folds(std::span<const Label> labels, int k,
                                std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("fold count must be >= 2, got " + std::to_string(k));
  std::array<std::size_t, kNumClasses> counts{};
  for (const Label l : labels) ++counts[label_index(l)];
  for (int c = 0; c < kNumClasses; ++c) {
    const std::size_t n = counts[c];
    if (n > 0 && n < static_cast<std::size_t>(k))
      throw std::invalid_argument("class '" + std::string(label_name(label_from_index(c))) +
                                  "' has " + std::to_string(n) + " members, fewer than k=" +
                                  std::to_string(k));
  }

  FoldAssignment fa;
  fa.k = k;
  fa.seed = seed;
  fa.assignment.assign(labels.size(), -1);
  for (int c = 0; c < kNumClasses; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (label_index(labels[i]) == c) members.push_back(i);
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(c)));
    shuffle_inplace(members, rng);
    for (std::size_t j = 0; j < members.size(); ++j)
      fa.assignment[members[j]] = static_cast<int>(j % static_cast<std::size_t>(k));
  }
  return fa;
}

FoldAssignment stratified_folds(const Corpus& corpus, int k, std::uint64_t seed) {
  std::vector<Label> labels;
  labels.reserve(corpus.size());
  for (const Document& d : corpus.documents()) labels.push_back(d.label);
  return stratified_folds(std::span<const Label>(labels), k, seed);
}

double majority_baseline(const Corpus& corpus) {
  if (corpus.size() == 0) throw EmptyCorpusError("majority baseline of an empty corpus");
  const auto& counts = corpus.class_counts();
  const std::size_t top = *std::max_element(counts.begin(), counts.end());
  return static_cast<double>(top) / static_cast<double>(corpus.size());
}

}  // namespace textclf
