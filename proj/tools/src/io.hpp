#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gprobe/embedding.hpp"

namespace gprobe::cli {

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  bool strict = false;
  Metadata config;  // effective options after defaults and config file
  Metadata seeds;   // stage seeds, in order of first use

  /// derive_seed(seed, label), recorded as `seed.<label>`.
  std::uint64_t stage_seed(const std::string& label);
  /// config + seeds + extra.
  Metadata stamp(const Metadata& extra = {}) const;
  std::filesystem::path output(const std::string& name) const { return out_dir / name; }
};

std::ifstream open_input(const std::filesystem::path& path, std::string_view what);
std::string read_file(const std::filesystem::path& path, std::string_view what);
void write_file(const std::filesystem::path& path, std::string_view content);

/// `#key=value` lines.
std::string comment_block(const Metadata& meta);
/// `key=value` lines (sidecar `.meta` files).
std::string meta_block(const Metadata& meta);

/// Comma-separated list; blanks are trimmed and empty items dropped.
std::vector<std::string> split_list(std::string_view text);
std::string join(const std::vector<std::string>& items, std::string_view sep);

/// Fixed-width right-aligned cell.
std::string pad_left(std::string_view text, std::size_t width);

EmbeddingTable load_vectors(Context& ctx, const std::filesystem::path& path,
                            const TokenFilter* filter);

}  // namespace gprobe::cli
