#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gprobe/corpus.hpp"
#include "gprobe/embedding.hpp"

namespace gprobe {

struct SgnsConfig {
  std::size_t dim = 300;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  std::size_t min_count = 5;
  double subsample = 1e-4;
  double learning_rate = 0.025;
  double min_learning_rate = 1e-5;
  std::size_t min_ngram = 3;
  std::size_t max_ngram = 6;
  std::size_t buckets = std::size_t{1} << 21;
  std::uint64_t seed = 0;
  std::size_t threads = 1;  // > 1 trades bit-exact reproducibility for speed

  void validate() const;
  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Frequency-filtered vocabulary, indexed by (frequency desc, token asc).
class Vocab {
 public:
  /// Throws DataError if the stream is empty or nothing reaches min_count.
  static Vocab build(const TokenStream& stream, std::size_t min_count);

  std::size_t size() const noexcept { return tokens_.size(); }
  const std::string& token(std::size_t index) const { return tokens_[index]; }
  std::uint64_t count(std::size_t index) const { return counts_[index]; }
  /// Sum of counts of retained tokens.
  std::uint64_t total() const noexcept { return total_; }
  /// Index or -1.
  std::int64_t find(std::string_view token) const;

  /// Unigram^0.75 negative-sampling probability of a vocabulary entry.
  double negative_probability(std::size_t index) const;
  /// Draws a vocabulary index given u in [0,1).
  std::size_t sample_negative(double u) const;

 private:
  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> cumulative_;
  std::uint64_t total_ = 0;
};

/// Boundary-marked character n-grams (`<token>`) with lengths in
/// [min_n, max_n], counted in code points, in left-to-right order.
std::vector<std::string> char_ngrams(std::string_view token, std::size_t min_n, std::size_t max_n);

/// 32-bit FNV-1a over the UTF-8 bytes, as used for n-gram buckets.
std::uint32_t ngram_hash(std::string_view text) noexcept;

/// Input rows are addressed by a global id: vocabulary words occupy
/// [0, vocab), hashed n-gram bucket b occupies vocab + b. Only rows that are
/// referenced get storage; every other row keeps its initial value, which is
/// a pure function of (seed, id).
template <class Real>
class SgnsParams {
 public:
  SgnsParams() = default;
  SgnsParams(std::size_t dim, std::size_t vocab_size, std::uint64_t seed);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t vocab_size() const noexcept { return vocab_size_; }

  /// Storage slot for a global input id, allocating (and initializing) on demand.
  std::size_t input_slot(std::uint64_t global_id);
  /// Slot or npos if never allocated.
  std::size_t find_input_slot(std::uint64_t global_id) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Real* input_row(std::size_t slot) { return input_.data() + slot * dim_; }
  const Real* input_row(std::size_t slot) const { return input_.data() + slot * dim_; }
  Real* output_row(std::size_t word) { return output_.data() + word * dim_; }
  const Real* output_row(std::size_t word) const { return output_.data() + word * dim_; }

  /// Initial value of component j of input row `global_id`.
  Real initial_value(std::uint64_t global_id, std::size_t j) const;

  std::size_t input_slots() const noexcept { return slot_ids_.size(); }

  friend bool operator==(const SgnsParams&, const SgnsParams&) = default;

 private:
  std::size_t dim_ = 0;
  std::size_t vocab_size_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Real> input_;
  std::vector<Real> output_;
  std::unordered_map<std::uint64_t, std::size_t> slots_;
  std::vector<std::uint64_t> slot_ids_;
};

extern template class SgnsParams<float>;
extern template class SgnsParams<double>;

/// Per-word list of input slots (own row first, then n-gram buckets).
struct SubwordTable {
  std::vector<std::vector<std::size_t>> slots;
};

/// Global input ids composing `token`: own row if in vocabulary, then the
/// buckets of its n-grams. An out-of-vocabulary token with no n-gram in range
/// falls back to the bucket of its whole `<token>` gram.
std::vector<std::uint64_t> subword_ids(std::string_view token, const Vocab& vocab,
                                       const SgnsConfig& config);

template <class Real>
SubwordTable build_subword_table(const Vocab& vocab, const SgnsConfig& config,
                                 SgnsParams<Real>& params);

/// One SGNS update for (center, context) with the given negatives. The
/// center vector is the mean of its subword rows; every row receives its
/// exact share of the gradient. Returns the loss before the update.
template <class Real>
double sgns_step(SgnsParams<Real>& params, std::span<const std::size_t> center_slots,
                 std::size_t context, std::span<const std::size_t> negatives, double lr);

struct SgnsTrainLog {
  std::vector<double> epoch_loss;      // mean per-pair loss of each epoch
  std::vector<double> progress_loss;   // mean loss within each 1% of work
  std::size_t pairs = 0;
};

class SgnsModel {
 public:
  SgnsModel(SgnsConfig config, Vocab vocab);

  const SgnsConfig& config() const noexcept { return config_; }
  const Vocab& vocab() const noexcept { return vocab_; }
  const SgnsParams<float>& params() const noexcept { return params_; }

  /// Mean of the token's own row (if any) and its n-gram rows.
  std::vector<float> word_vector(std::string_view token) const;

  /// Composed vectors for every vocabulary token.
  EmbeddingTable to_table(std::string source_tag = {}) const;

  /// Runs all epochs. Progress lines (one per 1% of tokens) go to `log_stream`.
  SgnsTrainLog train(const TokenStream& stream, std::ostream* log_stream = nullptr);

 private:
  SgnsConfig config_;
  Vocab vocab_;
  SgnsParams<float> params_;
  SubwordTable subwords_;
};

/// build_vocab + train + to_table.
EmbeddingTable train_embeddings(const TokenStream& stream, const SgnsConfig& config,
                                std::ostream* log_stream = nullptr, SgnsTrainLog* log = nullptr);

}  // namespace gprobe
