#pragma once

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textclf/util.hpp"

namespace textclf {

inline constexpr std::string_view kUnknownCluster = "<UNK>";
inline constexpr std::size_t kMaxClusterPathBits = 16;

// Word -> cluster bitstring lexicon in the TweetNLP format:
// one "bitstring<TAB>word<TAB>count" line per word.
class BrownLexicon {
 public:
  using PathMap =
      std::unordered_map<std::string, std::string, TransparentStringHash, std::equal_to<>>;

  BrownLexicon(PathMap word_to_path, std::size_t cluster_count);

  // nullptr when the token is not in the lexicon.
  const std::string* path_for(std::string_view token) const;
  std::size_t cluster_count() const { return cluster_count_; }
  std::size_t word_count() const { return word_to_path_.size(); }

 private:
  PathMap word_to_path_;
  std::size_t cluster_count_;
};

BrownLexicon load_clusters(const std::string& path);
BrownLexicon parse_clusters(std::istream& in, const std::string& origin);

// Even-length prefixes p in {2,4,...,16} capped at the path length, plus the
// full path; distinct strings, shortest first.
std::vector<std::string> cluster_path_prefixes(std::string_view path_bits);

// n=1: per token, all prefix features of its path ("<UNK>" alone for
// out-of-lexicon tokens). n=2,3: contiguous windows of full paths joined by
// single spaces, with "<UNK>" standing in for unknown tokens.
std::vector<std::string> cluster_ngrams(std::span<const std::string> tokens,
                                        const BrownLexicon& lexicon, int n);

}  // namespace textclf
