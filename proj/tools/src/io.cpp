#include "io.hpp"

#include <sstream>

#include "gprobe/error.hpp"
#include "gprobe/random.hpp"

namespace gprobe::cli {

std::uint64_t Context::stage_seed(const std::string& label) {
  const std::uint64_t value = derive_seed(seed, label);
  const std::string key = "seed." + label;
  bool seen = false;
  for (const auto& [k, _] : seeds) seen = seen || k == key;
  if (!seen) seeds.emplace_back(key, std::to_string(value));
  return value;
}

Metadata Context::stamp(const Metadata& extra) const {
  Metadata all = config;
  all.insert(all.end(), seeds.begin(), seeds.end());
  all.insert(all.end(), extra.begin(), extra.end());
  return all;
}

std::ifstream open_input(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + std::string(what) + " '" + path.string() + "'");
  return in;
}

std::string read_file(const std::filesystem::path& path, std::string_view what) {
  auto in = open_input(path, what);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::string comment_block(const Metadata& meta) {
  std::string text;
  for (const auto& [k, v] : meta) text += '#' + k + '=' + v + '\n';
  return text;
}

std::string meta_block(const Metadata& meta) {
  std::string text;
  for (const auto& [k, v] : meta) text += k + '=' + v + '\n';
  return text;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.remove_suffix(1);
    if (!item.empty()) items.emplace_back(item);
    start = end + 1;
  }
  return items;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string text;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) text += sep;
    text += items[i];
  }
  return text;
}

std::string pad_left(std::string_view text, std::size_t width) {
  std::string cell(width > text.size() ? width - text.size() : 1, ' ');
  cell += text;
  return cell;
}

EmbeddingTable load_vectors(Context& ctx, const std::filesystem::path& path,
                            const TokenFilter* filter) {
  auto in = open_input(path, "vector file");
  VecLoadStats stats;
  EmbeddingTable table = load_vec_text(in, filter, &stats, path.filename().string());
  ctx.err << "vectors: " << path.string() << " rows=" << stats.rows_read << " kept=" << table.size()
          << " dim=" << table.dim() << '\n';
  if (table.empty()) throw DataError("no usable vectors in '" + path.string() + "'");
  return table;
}

}  // namespace gprobe::cli
