#include "textclf/brown.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "textclf/csv.hpp"

namespace textclf {

BrownLexicon::BrownLexicon(PathMap word_to_path, std::size_t cluster_count)
    : word_to_path_(std::move(word_to_path)), cluster_count_(cluster_count) {}

const std::string* BrownLexicon::path_for(std::string_view token) const {
  const auto it = word_to_path_.find(token);
  return it == word_to_path_.end() ? nullptr : &it->second;
}

namespace {

bool valid_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > kMaxClusterPathBits) return false;
  return std::all_of(bits.begin(), bits.end(), [](char c) { return c == '0' || c == '1'; });
}

}  // namespace

BrownLexicon parse_clusters(std::istream& in, const std::string& origin) {
  BrownLexicon::PathMap word_to_path;
  std::unordered_set<std::string> clusters;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab1 = line.find('\t');
    if (tab1 == std::string::npos)
      throw ParseError(origin + ": line " + std::to_string(line_number) +
                           ": expected 3 tab-separated columns",
                       line_number);
    const std::size_t tab2 = line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos)
      throw ParseError(origin + ": line " + std::to_string(line_number) +
                           ": expected 3 tab-separated columns",
                       line_number);
    std::string bits = line.substr(0, tab1);
    std::string word = line.substr(tab1 + 1, tab2 - tab1 - 1);
    if (!valid_bitstring(bits))
      throw ParseError(origin + ": line " + std::to_string(line_number) +
                           ": malformed cluster bitstring '" + bits + "'",
                       line_number);
    if (word.empty())
      throw ParseError(origin + ": line " + std::to_string(line_number) + ": empty word",
                       line_number);
    clusters.insert(bits);
    word_to_path[std::move(word)] = std::move(bits);
  }
  if (word_to_path.empty())
    throw std::runtime_error(origin + ": cluster file has no entries");
  return BrownLexicon(std::move(word_to_path), clusters.size());
}

BrownLexicon load_clusters(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open cluster file: " + path);
  return parse_clusters(in, path);
}

std::vector<std::string> cluster_path_prefixes(std::string_view path_bits) {
  std::vector<std::string> out;
  for (std::size_t p = 2; p <= kMaxClusterPathBits && p < path_bits.size(); p += 2)
    out.emplace_back(path_bits.substr(0, p));
  out.emplace_back(path_bits);  // full path; coincides with p = len when len is even
  return out;
}

std::vector<std::string> cluster_ngrams(std::span<const std::string> tokens,
                                        const BrownLexicon& lexicon, int n) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("cluster n-gram order must be in [1,3], got " +
                                std::to_string(n));
  std::vector<std::string> out;
  if (n == 1) {
    for (const std::string& tok : tokens) {
      const std::string* path = lexicon.path_for(tok);
      if (path == nullptr) {
        out.emplace_back(kUnknownCluster);
      } else {
        for (auto& prefix : cluster_path_prefixes(*path)) out.push_back(std::move(prefix));
      }
    }
    return out;
  }
  std::vector<std::string_view> paths;
  paths.reserve(tokens.size());
  for (const std::string& tok : tokens) {
    const std::string* path = lexicon.path_for(tok);
    paths.push_back(path == nullptr ? kUnknownCluster : std::string_view(*path));
  }
  const std::size_t width = static_cast<std::size_t>(n);
  if (paths.size() >= width) {
    for (std::size_t i = 0; i + width <= paths.size(); ++i) {
      std::string gram(paths[i]);
      for (std::size_t j = 1; j < width; ++j) {
        gram.push_back(' ');
        gram.append(paths[i + j]);
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

}  // namespace textclf
