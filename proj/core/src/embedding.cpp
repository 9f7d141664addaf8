#include "gprobe/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "gprobe/error.hpp"
#include "gprobe/format.hpp"
#include "gprobe/unicode.hpp"

namespace gprobe {

EmbeddingTable::EmbeddingTable(std::size_t dim, std::string source_tag)
    : dim_(dim), source_tag_(std::move(source_tag)) {
  if (dim_ == 0) throw ArgumentError("embedding dimension must be positive");
}

bool EmbeddingTable::add(std::string token, std::span<const float> vector) {
  if (token.empty() || token.find_first_of(" \t\n\r") != std::string::npos) {
    throw ArgumentError("token '" + token + "' is empty or contains whitespace");
  }
  if (vector.size() != dim_) {
    throw ArgumentError("vector for '" + token + "' has " + std::to_string(vector.size()) +
                        " components, expected " + std::to_string(dim_));
  }
  for (float v : vector) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite component in vector for '" + token + "'");
  }
  if (index_.contains(token)) return false;
  const std::size_t slot = tokens_.size();
  index_.emplace(token, slot);
  normalized_index_.try_emplace(normalize_token(token), slot);
  tokens_.push_back(std::move(token));
  data_.insert(data_.end(), vector.begin(), vector.end());
  return true;
}

std::optional<std::span<const float>> EmbeddingTable::lookup(std::string_view token) const {
  if (auto it = index_.find(std::string(token)); it != index_.end()) return vector_at(it->second);
  if (auto it = normalized_index_.find(normalize_token(token)); it != normalized_index_.end()) {
    return vector_at(it->second);
  }
  return std::nullopt;
}

bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
  if (a.dim_ != b.dim_ || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto it = b.index_.find(a.tokens_[i]);
    if (it == b.index_.end()) return false;
    auto va = a.vector_at(i);
    auto vb = b.vector_at(it->second);
    if (std::memcmp(va.data(), vb.data(), a.dim_ * sizeof(float)) != 0) return false;
  }
  return true;
}

bool filter_admits(const TokenFilter& filter, std::string_view token) {
  std::string key(token);
  return filter.contains(key) || filter.contains(normalize_token(key));
}

EmbeddingTable load_vec_text(std::istream& in, const TokenFilter* filter, VecLoadStats* stats,
                             std::string source_tag) {
  std::string line;
  if (!read_line(in, line)) throw ParseError(1, "empty vector file");
  const auto header = split(line, ' ');
  if (header.size() != 2) throw ParseError(1, "expected header '<count> <dim>'");
  const long long count = parse_int(header[0], 1);
  const long long dim = parse_int(header[1], 1);
  if (count < 0 || dim <= 0) throw ParseError(1, "invalid header values");

  EmbeddingTable table(static_cast<std::size_t>(dim), std::move(source_tag));
  VecLoadStats local;
  local.declared_count = static_cast<std::size_t>(count);
  std::vector<float> values(static_cast<std::size_t>(dim));
  std::size_t line_no = 1;

  while (read_line(in, line)) {
    ++line_no;
    // Some writers leave a trailing space on every row.
    while (!line.empty() && line.back() == ' ') line.pop_back();
    if (line.empty()) continue;
    const auto first_space = line.find(' ');
    if (first_space == std::string::npos || first_space == 0) {
      throw ParseError(line_no, "row has no vector components");
    }
    ++local.rows_read;
    std::string_view token(line.data(), first_space);
    if (filter && !filter_admits(*filter, token)) {
      ++local.filtered_out;
      continue;
    }
    const auto fields = split(std::string_view(line).substr(first_space + 1), ' ');
    if (fields.size() != values.size()) {
      throw ParseError(line_no, "row has " + std::to_string(fields.size()) +
                                    " components, expected " + std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) values[i] = parse_float(fields[i], line_no);
    if (!table.add(std::string(token), values)) ++local.duplicates;
  }
  if (stats) *stats = local;
  return table;
}

void save_vec_text(std::ostream& out, const EmbeddingTable& table) {
  if (table.empty()) throw ArgumentError("refusing to write an empty embedding table");
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& tokens = table.tokens();
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return tokens[a] < tokens[b]; });

  out << table.size() << ' ' << table.dim() << '\n';
  std::string row;
  for (std::size_t i : order) {
    row.assign(tokens[i]);
    row.push_back(' ');
    append_floats(row, table.vector_at(i), ' ');
    row.push_back('\n');
    out << row;
  }
}

EmbeddingTable restrict_to(const EmbeddingTable& table, const TokenFilter& filter) {
  EmbeddingTable out(table.dim(), table.source_tag());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (filter_admits(filter, table.tokens()[i])) out.add(table.tokens()[i], table.vector_at(i));
  }
  return out;
}

}  // namespace gprobe
