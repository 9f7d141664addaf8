#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace gprobe {

/// Token -> dense vector table with a fixed dimensionality. Components are
/// stored as 32-bit floats, which is what `.vec` files carry.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim, std::string source_tag = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const std::string& source_tag() const noexcept { return source_tag_; }

  /// Returns false (and stores nothing) if the token already exists.
  /// Throws ArgumentError on a wrong length, a non-finite component or a
  /// token that is empty or contains whitespace.
  bool add(std::string token, std::span<const float> vector);

  /// Exact match first, then lowercase+NFC match against normalized keys.
  std::optional<std::span<const float>> lookup(std::string_view token) const;
  bool contains(std::string_view token) const { return lookup(token).has_value(); }

  /// Insertion order.
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::span<const float> vector_at(std::size_t index) const {
    return {data_.data() + index * dim_, dim_};
  }

  /// Same tokens and bit-identical vectors, regardless of insertion order.
  friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b);

 private:
  std::size_t dim_;
  std::string source_tag_;
  std::vector<std::string> tokens_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::size_t> normalized_index_;
};

using TokenFilter = std::unordered_set<std::string>;

struct VecLoadStats {
  std::size_t declared_count = 0;
  std::size_t rows_read = 0;
  std::size_t duplicates = 0;
  std::size_t filtered_out = 0;
};

/// True when the filter admits `token` (exact or after normalization).
bool filter_admits(const TokenFilter& filter, std::string_view token);

/// Text `.vec` reader: header `<count> <dim>`, rows `<token> v1 .. vdim`.
/// Duplicate tokens keep the first row. Errors carry line numbers.
EmbeddingTable load_vec_text(std::istream& in, const TokenFilter* filter = nullptr,
                             VecLoadStats* stats = nullptr, std::string source_tag = {});

/// Writes rows sorted by token with 9 significant digits per component.
void save_vec_text(std::ostream& out, const EmbeddingTable& table);

/// The subset of `table` admitted by `filter`, in insertion order.
EmbeddingTable restrict_to(const EmbeddingTable& table, const TokenFilter& filter);

}  // namespace gprobe
