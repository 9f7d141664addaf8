#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gprobe {

using TokenSentence = std::vector<std::string>;
using TokenStream = std::vector<TokenSentence>;

enum class CorpusMode { Raw, NoArticles, Stemmed };

std::string_view to_string(CorpusMode mode) noexcept;
std::optional<CorpusMode> parse_corpus_mode(std::string_view text) noexcept;

class ArticleSet {
 public:
  /// Throws ArgumentError if empty or if any token is not lowercase.
  ArticleSet(std::string language, std::set<std::string, std::less<>> tokens);

  /// {en, ett, den, det, de}
  static ArticleSet swedish();

  const std::string& language() const noexcept { return language_; }
  const std::set<std::string, std::less<>>& tokens() const noexcept { return tokens_; }
  bool contains(std::string_view token) const { return tokens_.find(token) != tokens_.end(); }

 private:
  std::string language_;
  std::set<std::string, std::less<>> tokens_;
};

/// Lowercased maximal runs of Unicode letters. Everything else separates
/// tokens; `.`, `!` or `?` followed by whitespace (or end of text) closes a
/// sentence. Never emits empty tokens or empty sentences.
TokenStream tokenize(std::string_view text);

/// Order-preserving filter; `removed` receives the number of dropped tokens.
TokenStream remove_articles(const TokenStream& stream, const ArticleSet& articles,
                            std::size_t* removed = nullptr);

TokenStream stem_stream(const TokenStream& stream);

struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t removed_articles = 0;
  std::size_t types = 0;
};

struct CorpusVariant {
  CorpusMode mode = CorpusMode::Raw;
  TokenStream sentences;
  CorpusStats stats;
};

/// Raw: tokenize. NoArticles: tokenize + remove_articles. Stemmed: tokenize +
/// Snowball Swedish on every token (articles kept).
CorpusVariant strip_corpus(std::string_view text, CorpusMode mode, const ArticleSet& articles);

CorpusStats compute_stats(const TokenStream& stream, std::size_t removed_articles);

/// One sentence per line, tokens separated by single spaces.
void write_corpus(std::ostream& out, const TokenStream& stream);
TokenStream read_corpus(std::istream& in);

}  // namespace gprobe
