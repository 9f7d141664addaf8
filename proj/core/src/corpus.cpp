#include "gprobe/corpus.hpp"

#include <unordered_set>

#include "gprobe/error.hpp"
#include "gprobe/format.hpp"
#include "gprobe/stemmer.hpp"
#include "gprobe/unicode.hpp"

namespace gprobe {

std::string_view to_string(CorpusMode mode) noexcept {
  switch (mode) {
    case CorpusMode::Raw: return "raw";
    case CorpusMode::NoArticles: return "no-articles";
    case CorpusMode::Stemmed: return "stemmed";
  }
  return "raw";
}

std::optional<CorpusMode> parse_corpus_mode(std::string_view text) noexcept {
  if (text == "raw") return CorpusMode::Raw;
  if (text == "no-articles") return CorpusMode::NoArticles;
  if (text == "stemmed") return CorpusMode::Stemmed;
  return std::nullopt;
}

ArticleSet::ArticleSet(std::string language, std::set<std::string, std::less<>> tokens)
    : language_(std::move(language)), tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw ArgumentError("article set is empty");
  for (const auto& t : tokens_) {
    if (t.empty() || normalize_token(t) != t) {
      throw ArgumentError("article '" + t + "' must be non-empty lowercase NFC");
    }
  }
}

ArticleSet ArticleSet::swedish() { return ArticleSet("sv", {"en", "ett", "den", "det", "de"}); }

TokenStream tokenize(std::string_view text) {
  const std::u32string chars = to_u32(nfc(text));
  TokenStream stream;
  TokenSentence sentence;
  std::u32string token;

  auto flush_token = [&] {
    if (!token.empty()) {
      sentence.push_back(to_utf8(token));
      token.clear();
    }
  };
  auto flush_sentence = [&] {
    flush_token();
    if (!sentence.empty()) {
      stream.push_back(std::move(sentence));
      sentence.clear();
    }
  };

  for (std::size_t i = 0; i < chars.size(); ++i) {
    const char32_t c = chars[i];
    if (is_letter(c)) {
      token.push_back(to_lower(c));
      continue;
    }
    flush_token();
    if ((c == U'.' || c == U'!' || c == U'?') && (i + 1 == chars.size() || is_space(chars[i + 1]))) {
      flush_sentence();
    }
  }
  flush_sentence();
  return stream;
}

TokenStream remove_articles(const TokenStream& stream, const ArticleSet& articles,
                            std::size_t* removed) {
  TokenStream out;
  out.reserve(stream.size());
  std::size_t dropped = 0;
  for (const auto& sentence : stream) {
    TokenSentence kept;
    kept.reserve(sentence.size());
    for (const auto& token : sentence) {
      if (articles.contains(token)) {
        ++dropped;
      } else {
        kept.push_back(token);
      }
    }
    if (!kept.empty()) out.push_back(std::move(kept));
  }
  if (removed) *removed = dropped;
  return out;
}

TokenStream stem_stream(const TokenStream& stream) {
  TokenStream out = stream;
  for (auto& sentence : out) {
    for (auto& token : sentence) token = stem_swedish(token);
  }
  return out;
}

CorpusStats compute_stats(const TokenStream& stream, std::size_t removed_articles) {
  CorpusStats stats;
  std::unordered_set<std::string> types;
  stats.sentences = stream.size();
  for (const auto& sentence : stream) {
    stats.tokens += sentence.size();
    types.insert(sentence.begin(), sentence.end());
  }
  stats.types = types.size();
  stats.removed_articles = removed_articles;
  return stats;
}

CorpusVariant strip_corpus(std::string_view text, CorpusMode mode, const ArticleSet& articles) {
  CorpusVariant variant;
  variant.mode = mode;
  TokenStream tokens = tokenize(text);
  std::size_t removed = 0;
  switch (mode) {
    case CorpusMode::Raw:
      variant.sentences = std::move(tokens);
      break;
    case CorpusMode::NoArticles:
      variant.sentences = remove_articles(tokens, articles, &removed);
      break;
    case CorpusMode::Stemmed:
      variant.sentences = stem_stream(tokens);
      break;
  }
  variant.stats = compute_stats(variant.sentences, removed);
  return variant;
}

void write_corpus(std::ostream& out, const TokenStream& stream) {
  std::string line;
  for (const auto& sentence : stream) {
    line.clear();
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i) line.push_back(' ');
      line += sentence[i];
    }
    line.push_back('\n');
    out << line;
  }
}

TokenStream read_corpus(std::istream& in) {
  TokenStream stream;
  std::string line;
  while (read_line(in, line)) {
    TokenSentence sentence;
    for (std::string_view tok : split(line, ' ')) {
      if (!tok.empty()) sentence.emplace_back(tok);
    }
    if (!sentence.empty()) stream.push_back(std::move(sentence));
  }
  return stream;
}

}  // namespace gprobe
