#include "gprobe/conllu.hpp"

#include <string_view>

#include "gprobe/format.hpp"

namespace gprobe {
namespace {

constexpr std::size_t kColumns = 10;

// Throws ParseError for a malformed FEATS entry.
std::map<std::string, std::string> feats_or_throw(std::string_view column, std::size_t line) {
  std::map<std::string, std::string> feats;
  if (column == "_" || column.empty()) return feats;
  for (std::string_view entry : split(column, '|')) {
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError(line, "malformed FEATS entry '" + std::string(entry) + "'");
    }
    feats.emplace(std::string(entry.substr(0, eq)), std::string(entry.substr(eq + 1)));
  }
  return feats;
}

}  // namespace

std::map<std::string, std::string> parse_feats(const std::string& column) {
  return feats_or_throw(column, 0);
}

ParseResult parse_conllu(std::istream& in, ParseMode mode) {
  ParseResult result;
  Sentence current;
  std::string line;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (!current.empty()) {
      result.sentences.push_back(std::move(current));
      current.clear();
    }
  };

  while (read_line(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t") == std::string::npos) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;

    try {
      const auto cols = split(line, '\t');
      if (cols.size() != kColumns) {
        throw ParseError(line_no, "expected 10 tab-separated columns, found " +
                                      std::to_string(cols.size()));
      }
      const std::string_view id = cols[0];
      if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) {
        continue;  // multiword range or empty node
      }
      Token token;
      token.id = static_cast<int>(parse_int(id, line_no));
      if (cols[1].empty() || cols[2].empty()) {
        throw ParseError(line_no, "empty FORM or LEMMA");
      }
      if (mode == ParseMode::Strict &&
          token.id != static_cast<int>(current.size()) + 1) {
        throw ParseError(line_no, "token id " + std::to_string(token.id) +
                                      " is not consecutive");
      }
      token.form = std::string(cols[1]);
      token.lemma = std::string(cols[2]);
      token.upos = std::string(cols[3]);
      token.feats = feats_or_throw(cols[5], line_no);
      current.push_back(std::move(token));
      ++result.rows;
    } catch (const ParseError& e) {
      if (mode == ParseMode::Strict) throw;
      result.skipped.push_back({e.line(), e.what()});
    }
  }
  flush();
  return result;
}

}  // namespace gprobe
