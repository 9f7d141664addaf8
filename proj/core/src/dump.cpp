#include "gprobe/dump.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "gprobe/error.hpp"
#include "gprobe/format.hpp"

namespace gprobe {
namespace {

constexpr std::string_view kMagic = "#gpdump v1";

void check_record(const ContextualDump& dump, const ContextualRecord& r, std::size_t line) {
  if (std::find(dump.layers.begin(), dump.layers.end(), r.layer) == dump.layers.end()) {
    throw ParseError(line, "layer " + std::to_string(r.layer) + " is not in the declared layer set");
  }
  if (r.vector.size() != dump.dim) {
    throw ParseError(line, "vector has " + std::to_string(r.vector.size()) +
                               " components, file declares dim=" + std::to_string(dump.dim));
  }
  for (float v : r.vector) {
    if (!std::isfinite(v)) throw ParseError(line, "non-finite vector component");
  }
  if (r.token.find_first_of("\t\n") != std::string::npos ||
      r.lemma.find_first_of("\t\n") != std::string::npos) {
    throw ParseError(line, "token or lemma contains a tab or newline");
  }
}

std::string_view gender_field(const std::optional<Gender>& g) {
  return g ? to_string(*g) : std::string_view("none");
}

}  // namespace

ContextualDump read_dump(std::istream& in) {
  std::string line;
  if (!read_line(in, line) || !line.starts_with(kMagic)) {
    throw ParseError(1, "missing '#gpdump v1' header");
  }
  ContextualDump dump;
  bool have_dim = false;
  bool have_layers = false;
  for (std::string_view field : split(std::string_view(line).substr(kMagic.size()), ' ')) {
    if (field.empty()) continue;
    if (field.starts_with("dim=")) {
      const long long dim = parse_int(field.substr(4), 1);
      if (dim <= 0) throw ParseError(1, "dim must be positive");
      dump.dim = static_cast<std::size_t>(dim);
      have_dim = true;
    } else if (field.starts_with("layers=")) {
      for (std::string_view l : split(field.substr(7), ',')) {
        const long long layer = parse_int(l, 1);
        if (layer < 0) throw ParseError(1, "negative layer id");
        dump.layers.push_back(static_cast<int>(layer));
      }
      have_layers = true;
    } else {
      throw ParseError(1, "unknown header field '" + std::string(field) + "'");
    }
  }
  if (!have_dim || !have_layers) throw ParseError(1, "header needs dim= and layers=");

  std::set<std::tuple<std::size_t, std::size_t, int>> seen;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 7) throw ParseError(line_no, "expected 7 tab-separated columns");
    ContextualRecord r;
    const long long sid = parse_int(cols[0], line_no);
    const long long tix = parse_int(cols[1], line_no);
    if (sid < 0 || tix < 0) throw ParseError(line_no, "negative sentence or token index");
    r.sentence_id = static_cast<std::size_t>(sid);
    r.token_index = static_cast<std::size_t>(tix);
    r.token = std::string(cols[2]);
    r.lemma = std::string(cols[3]);
    if (cols[4] == "none") {
      r.gold_gender = std::nullopt;
    } else if (auto g = parse_gender(cols[4])) {
      r.gold_gender = *g;
    } else {
      throw ParseError(line_no, "gold_gender must be uter, neuter or none");
    }
    r.layer = static_cast<int>(parse_int(cols[5], line_no));
    r.vector = parse_float_list(cols[6], ',', line_no);
    check_record(dump, r, line_no);
    if (!seen.emplace(r.sentence_id, r.token_index, r.layer).second) {
      throw ParseError(line_no, "duplicate (sentence_id, token_index, layer)");
    }
    dump.records.push_back(std::move(r));
  }
  return dump;
}

void write_dump(std::ostream& out, const ContextualDump& dump) {
  if (dump.dim == 0 || dump.layers.empty()) throw ArgumentError("dump needs dim and layers");
  for (std::size_t i = 0; i < dump.records.size(); ++i) check_record(dump, dump.records[i], i + 2);

  out << kMagic << " dim=" << dump.dim << " layers=";
  for (std::size_t i = 0; i < dump.layers.size(); ++i) out << (i ? "," : "") << dump.layers[i];
  out << '\n';
  std::string row;
  for (const auto& r : dump.records) {
    row.clear();
    row += std::to_string(r.sentence_id);
    row += '\t';
    row += std::to_string(r.token_index);
    row += '\t';
    row += r.token;
    row += '\t';
    row += r.lemma;
    row += '\t';
    row += gender_field(r.gold_gender);
    row += '\t';
    row += std::to_string(r.layer);
    row += '\t';
    append_floats(row, r.vector, ',');
    row += '\n';
    out << row;
  }
}

}  // namespace gprobe
