#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "gprobe/error.hpp"

namespace gprobe {

/// One syntactic-word row of a CoNLL-U file. Multiword ranges (`3-4`) and
/// empty nodes (`5.1`) never become Tokens.
struct Token {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::map<std::string, std::string> feats;

  friend bool operator==(const Token&, const Token&) = default;
};

using Sentence = std::vector<Token>;

enum class ParseMode {
  Strict,   // first malformed row throws ParseError
  Lenient,  // malformed rows are skipped and reported
};

struct ParseIssue {
  std::size_t line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<Sentence> sentences;
  std::vector<ParseIssue> skipped;  // lenient mode only
  std::size_t rows = 0;             // syntactic-word rows accepted
};

/// Parses the FEATS column (`_` or `Name=Value|Name=Value`).
std::map<std::string, std::string> parse_feats(const std::string& column);

ParseResult parse_conllu(std::istream& in, ParseMode mode = ParseMode::Lenient);

}  // namespace gprobe
