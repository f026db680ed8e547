#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "textclf/corpus.hpp"

namespace textclf {

// Lowercases (ASCII), strips mentions, URLs and emoji, collapses whitespace
// runs to single spaces and trims. Total and idempotent; stripped spans are
// replaced by a space before collapsing so removal never splices the
// surrounding text into a new mention or URL.
//
// Patterns, fixed here:
//   mention:  '@' at start of a whitespace-delimited token, followed by one
//             or more of [a-z0-9_]
//   URL:      "http://" or "https://" anywhere, consumed to the next
//             whitespace; also whole tokens starting with "www."
//   emoji:    codepoints in U+1F300-1F5FF, U+1F600-1F64F, U+1F680-1F6FF,
//             U+1F900-1F9FF, variation selectors U+FE00-FE0F, and ZWJ U+200D
//
// Hashtags and the RT marker are retained verbatim.
std::string normalize(std::string_view text);

struct TokenSequence {
  std::vector<std::string> tokens;
  std::string source_id;
};

// Splits on whitespace; tokens are otherwise verbatim (punctuation attached).
TokenSequence tokenize(std::string_view text, std::string source_id = {});

// Normalized text and tokens for every document, computed once and shared.
struct PreprocessedCorpus {
  std::vector<std::string> normalized;   // aligned with corpus order
  std::vector<TokenSequence> tokens;
};

PreprocessedCorpus preprocess_corpus(const Corpus& corpus);

}  // namespace textclf
