#include "textclf/preprocess.hpp"

#include <cctype>

namespace textclf {

namespace {

bool is_space_byte(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_word_char(char c) {
  const unsigned char u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= '0' && u <= '9') || u == '_';
}

bool is_emoji_codepoint(char32_t cp) {
  return (cp >= 0x1F300 && cp <= 0x1F5FF) ||  // Misc Symbols and Pictographs
         (cp >= 0x1F600 && cp <= 0x1F64F) ||  // Emoticons
         (cp >= 0x1F680 && cp <= 0x1F6FF) ||  // Transport and Map Symbols
         (cp >= 0x1F900 && cp <= 0x1F9FF) ||  // Supplemental Symbols
         (cp >= 0xFE00 && cp <= 0xFE0F) ||    // variation selectors
         cp == 0x200D;                        // zero-width joiner
}

// Decodes one UTF-8 sequence at `pos`. Malformed bytes come back as single
// one-byte codepoints so they pass through untouched.
std::pair<char32_t, std::size_t> decode_utf8(std::string_view s, std::size_t pos) {
  const unsigned char b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {b0, 1};
  }
  if (pos + len > s.size()) return {b0, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char bi = static_cast<unsigned char>(s[pos + i]);
    if ((bi & 0xC0) != 0x80) return {b0, 1};
    cp = (cp << 6) | (bi & 0x3F);
  }
  return {cp, len};
}

bool starts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
  return s.substr(pos, prefix.size()) == prefix;
}

}  // namespace

std::string normalize(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (u >= 'A' && u <= 'Z') c = static_cast<char>(u - 'A' + 'a');
  }

  std::string stripped;
  stripped.reserve(lower.size());
  auto at_token_start = [&] {
    return stripped.empty() || is_space_byte(stripped.back());
  };
  std::size_t i = 0;
  const std::string_view sv(lower);
  while (i < sv.size()) {
    // URL: scheme anywhere, or a token-initial www.
    if (starts_with(sv, i, "http://") || starts_with(sv, i, "https://") ||
        (at_token_start() && starts_with(sv, i, "www."))) {
      while (i < sv.size() && !is_space_byte(sv[i])) ++i;
      stripped.push_back(' ');
      continue;
    }
    // mention
    if (sv[i] == '@' && at_token_start() && i + 1 < sv.size() && is_word_char(sv[i + 1])) {
      ++i;
      while (i < sv.size() && is_word_char(sv[i])) ++i;
      stripped.push_back(' ');
      continue;
    }
    const auto [cp, len] = decode_utf8(sv, i);
    if (is_emoji_codepoint(cp)) {
      stripped.push_back(' ');
      i += len;
      continue;
    }
    stripped.append(sv.substr(i, len));
    i += len;
  }

  std::string out;
  out.reserve(stripped.size());
  for (char c : stripped) {
    if (is_space_byte(c)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

TokenSequence tokenize(std::string_view text, std::string source_id) {
  TokenSequence seq;
  seq.source_id = std::move(source_id);
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space_byte(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space_byte(text[i])) ++i;
    if (i > start) seq.tokens.emplace_back(text.substr(start, i - start));
  }
  return seq;
}

PreprocessedCorpus preprocess_corpus(const Corpus& corpus) {
  PreprocessedCorpus pre;
  pre.normalized.reserve(corpus.size());
  pre.tokens.reserve(corpus.size());
  for (const Document& doc : corpus.documents()) {
    pre.normalized.push_back(normalize(doc.text));
    pre.tokens.push_back(tokenize(pre.normalized.back(), doc.id));
  }
  return pre;
}

}  // namespace textclf
