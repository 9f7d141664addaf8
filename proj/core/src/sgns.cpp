#include "gprobe/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gprobe/error.hpp"
#include "gprobe/format.hpp"
#include "gprobe/random.hpp"
#include "gprobe/unicode.hpp"

namespace gprobe {

void SgnsConfig::validate() const {
  if (dim == 0 || window == 0 || negatives == 0 || epochs == 0 || min_count == 0 || buckets == 0 ||
      threads == 0) {
    throw ArgumentError("SGNS counts must be positive");
  }
  if (min_ngram == 0 || min_ngram > max_ngram) {
    throw ArgumentError("n-gram range must satisfy 1 <= min <= max");
  }
  if (!(learning_rate > 0.0) || min_learning_rate < 0.0 || subsample < 0.0) {
    throw ArgumentError("invalid SGNS learning rate or subsampling threshold");
  }
}

std::vector<std::pair<std::string, std::string>> SgnsConfig::describe() const {
  return {{"dim", std::to_string(dim)},
          {"window", std::to_string(window)},
          {"negatives", std::to_string(negatives)},
          {"epochs", std::to_string(epochs)},
          {"min_count", std::to_string(min_count)},
          {"subsample", format_double(subsample)},
          {"learning_rate", format_double(learning_rate)},
          {"min_learning_rate", format_double(min_learning_rate)},
          {"min_ngram", std::to_string(min_ngram)},
          {"max_ngram", std::to_string(max_ngram)},
          {"buckets", std::to_string(buckets)},
          {"seed", std::to_string(seed)},
          {"threads", std::to_string(threads)}};
}

// ---------------------------------------------------------------------------
// Vocab

Vocab Vocab::build(const TokenStream& stream, std::size_t min_count) {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::size_t seen = 0;
  for (const auto& sentence : stream) {
    for (const auto& token : sentence) {
      ++counts[token];
      ++seen;
    }
  }
  if (seen == 0) throw DataError("cannot build a vocabulary from an empty corpus");

  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [token, count] : counts) {
    if (count >= min_count) kept.emplace_back(token, count);
  }
  if (kept.empty()) {
    throw DataError("no token reaches min_count=" + std::to_string(min_count));
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  Vocab vocab;
  double norm = 0.0;
  for (auto& [token, count] : kept) {
    vocab.index_.emplace(token, vocab.tokens_.size());
    vocab.tokens_.push_back(token);
    vocab.counts_.push_back(count);
    vocab.total_ += count;
    norm += std::pow(static_cast<double>(count), 0.75);
  }
  double running = 0.0;
  for (auto count : vocab.counts_) {
    running += std::pow(static_cast<double>(count), 0.75) / norm;
    vocab.cumulative_.push_back(running);
  }
  vocab.cumulative_.back() = 1.0;
  return vocab;
}

std::int64_t Vocab::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

double Vocab::negative_probability(std::size_t index) const {
  return index == 0 ? cumulative_[0] : cumulative_[index] - cumulative_[index - 1];
}

std::size_t Vocab::sample_negative(double u) const {
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

// ---------------------------------------------------------------------------
// Subwords

std::vector<std::string> char_ngrams(std::string_view token, std::size_t min_n, std::size_t max_n) {
  std::u32string marked = U"<" + to_u32(token) + U">";
  std::vector<std::string> grams;
  for (std::size_t start = 0; start < marked.size(); ++start) {
    for (std::size_t n = min_n; n <= max_n && start + n <= marked.size(); ++n) {
      grams.push_back(to_utf8(std::u32string_view(marked).substr(start, n)));
    }
  }
  return grams;
}

std::uint32_t ngram_hash(std::string_view text) noexcept {
  std::uint32_t h = 2166136261u;
  for (char c : text) {
    h ^= static_cast<std::uint32_t>(static_cast<std::int8_t>(c));
    h *= 16777619u;
  }
  return h;
}

std::vector<std::uint64_t> subword_ids(std::string_view token, const Vocab& vocab,
                                       const SgnsConfig& config) {
  std::vector<std::uint64_t> ids;
  const std::int64_t own = vocab.find(token);
  if (own >= 0) ids.push_back(static_cast<std::uint64_t>(own));
  for (const auto& gram : char_ngrams(token, config.min_ngram, config.max_ngram)) {
    ids.push_back(vocab.size() + ngram_hash(gram) % config.buckets);
  }
  if (ids.empty()) {
    const std::string whole = "<" + std::string(token) + ">";
    ids.push_back(vocab.size() + ngram_hash(whole) % config.buckets);
  }
  return ids;
}

// ---------------------------------------------------------------------------
// Parameters

template <class Real>
SgnsParams<Real>::SgnsParams(std::size_t dim, std::size_t vocab_size, std::uint64_t seed)
    : dim_(dim), vocab_size_(vocab_size), seed_(seed), output_(dim * vocab_size, Real(0)) {}

template <class Real>
Real SgnsParams<Real>::initial_value(std::uint64_t global_id, std::size_t j) const {
  const double u = counter_uniform(seed_, global_id * dim_ + j);
  const double bound = 1.0 / static_cast<double>(dim_);
  return static_cast<Real>(-bound + 2.0 * bound * u);
}

template <class Real>
std::size_t SgnsParams<Real>::input_slot(std::uint64_t global_id) {
  auto [it, inserted] = slots_.try_emplace(global_id, slot_ids_.size());
  if (inserted) {
    slot_ids_.push_back(global_id);
    for (std::size_t j = 0; j < dim_; ++j) input_.push_back(initial_value(global_id, j));
  }
  return it->second;
}

template <class Real>
std::size_t SgnsParams<Real>::find_input_slot(std::uint64_t global_id) const {
  auto it = slots_.find(global_id);
  return it == slots_.end() ? npos : it->second;
}

template class SgnsParams<float>;
template class SgnsParams<double>;

template <class Real>
SubwordTable build_subword_table(const Vocab& vocab, const SgnsConfig& config,
                                 SgnsParams<Real>& params) {
  SubwordTable table;
  table.slots.resize(vocab.size());
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    for (std::uint64_t id : subword_ids(vocab.token(w), vocab, config)) {
      table.slots[w].push_back(params.input_slot(id));
    }
  }
  return table;
}

template SubwordTable build_subword_table(const Vocab&, const SgnsConfig&, SgnsParams<float>&);
template SubwordTable build_subword_table(const Vocab&, const SgnsConfig&, SgnsParams<double>&);

namespace {

double log_sigmoid(double z) { return z >= 0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z)); }

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

template <class Real>
double sgns_step(SgnsParams<Real>& params, std::span<const std::size_t> center_slots,
                 std::size_t context, std::span<const std::size_t> negatives, double lr) {
  const std::size_t dim = params.dim();
  const auto k = static_cast<Real>(center_slots.size());
  std::vector<Real> center(dim, Real(0));
  for (std::size_t slot : center_slots) {
    const Real* row = params.input_row(slot);
    for (std::size_t j = 0; j < dim; ++j) center[j] += row[j];
  }
  for (auto& c : center) c /= k;

  std::vector<Real> grad(dim, Real(0));
  double loss = 0.0;
  auto update = [&](std::size_t target, double label) {
    Real* out = params.output_row(target);
    double score = 0.0;
    for (std::size_t j = 0; j < dim; ++j) score += static_cast<double>(out[j]) * center[j];
    loss -= label > 0.5 ? log_sigmoid(score) : log_sigmoid(-score);
    const auto coef = static_cast<Real>(logistic(score) - label);
    const auto step = static_cast<Real>(lr) * coef;
    for (std::size_t j = 0; j < dim; ++j) {
      grad[j] += coef * out[j];
      out[j] -= step * center[j];
    }
  };
  update(context, 1.0);
  for (std::size_t neg : negatives) update(neg, 0.0);

  const Real share = static_cast<Real>(lr) / k;
  for (std::size_t slot : center_slots) {
    Real* row = params.input_row(slot);
    for (std::size_t j = 0; j < dim; ++j) row[j] -= share * grad[j];
  }
  return loss;
}

template double sgns_step(SgnsParams<float>&, std::span<const std::size_t>, std::size_t,
                          std::span<const std::size_t>, double);
template double sgns_step(SgnsParams<double>&, std::span<const std::size_t>, std::size_t,
                          std::span<const std::size_t>, double);

// ---------------------------------------------------------------------------
// Model

SgnsModel::SgnsModel(SgnsConfig config, Vocab vocab)
    : config_(std::move(config)),
      vocab_(std::move(vocab)),
      params_(config_.dim, vocab_.size(), derive_seed(config_.seed, "sgns.init")) {
  config_.validate();
  subwords_ = build_subword_table(vocab_, config_, params_);
}

std::vector<float> SgnsModel::word_vector(std::string_view token) const {
  const std::size_t dim = config_.dim;
  std::vector<double> sum(dim, 0.0);
  const auto ids = subword_ids(token, vocab_, config_);
  for (std::uint64_t id : ids) {
    const std::size_t slot = params_.find_input_slot(id);
    for (std::size_t j = 0; j < dim; ++j) {
      sum[j] += slot == SgnsParams<float>::npos ? params_.initial_value(id, j)
                                                : params_.input_row(slot)[j];
    }
  }
  std::vector<float> out(dim);
  for (std::size_t j = 0; j < dim; ++j) out[j] = static_cast<float>(sum[j] / static_cast<double>(ids.size()));
  return out;
}

EmbeddingTable SgnsModel::to_table(std::string source_tag) const {
  EmbeddingTable table(config_.dim, std::move(source_tag));
  for (std::size_t w = 0; w < vocab_.size(); ++w) table.add(vocab_.token(w), word_vector(vocab_.token(w)));
  return table;
}

namespace {

struct WorkerTotals {
  std::vector<double> epoch_loss;
  std::vector<std::size_t> epoch_pairs;
};

}  // namespace

SgnsTrainLog SgnsModel::train(const TokenStream& stream, std::ostream* log_stream) {
  std::vector<std::vector<std::uint32_t>> sentences;
  std::vector<std::uint64_t> offsets;
  std::uint64_t ntokens = 0;
  for (const auto& sentence : stream) {
    std::vector<std::uint32_t> ids;
    for (const auto& token : sentence) {
      const std::int64_t id = vocab_.find(token);
      if (id >= 0) ids.push_back(static_cast<std::uint32_t>(id));
    }
    if (ids.empty()) continue;
    offsets.push_back(ntokens);
    ntokens += ids.size();
    sentences.push_back(std::move(ids));
  }
  if (ntokens == 0) throw DataError("corpus has no in-vocabulary tokens");

  const std::uint64_t sub_seed = derive_seed(config_.seed, "sgns.subsample");
  const std::uint64_t win_seed = derive_seed(config_.seed, "sgns.window");
  const std::uint64_t neg_seed = derive_seed(config_.seed, "sgns.negatives");
  const double total_work = static_cast<double>(ntokens) * static_cast<double>(config_.epochs);
  const double vocab_total = static_cast<double>(vocab_.total());

  std::vector<double> keep_probability(vocab_.size(), 1.0);
  if (config_.subsample > 0.0) {
    for (std::size_t w = 0; w < vocab_.size(); ++w) {
      const double f = static_cast<double>(vocab_.count(w)) / vocab_total;
      keep_probability[w] = std::min(1.0, std::sqrt(config_.subsample / f));
    }
  }

  std::atomic<std::uint64_t> processed{0};
  SgnsTrainLog log;
  std::size_t next_percent = 1;
  double chunk_loss = 0.0;
  std::size_t chunk_pairs = 0;

  auto current_lr = [&](std::uint64_t done) {
    const double progress = std::min(1.0, static_cast<double>(done) / total_work);
    return config_.min_learning_rate +
           (config_.learning_rate - config_.min_learning_rate) * (1.0 - progress);
  };

  auto run_sentence = [&](std::size_t s, std::size_t epoch, double lr, double& loss,
                          std::size_t& pairs) {
    const auto& ids = sentences[s];
    const std::uint64_t base = epoch * ntokens + offsets[s];
    std::vector<std::pair<std::uint32_t, std::uint64_t>> line;
    line.reserve(ids.size());
    for (std::size_t p = 0; p < ids.size(); ++p) {
      const std::uint64_t g = base + p;
      if (counter_uniform(sub_seed, g) < keep_probability[ids[p]]) line.emplace_back(ids[p], g);
    }
    std::vector<std::size_t> negs(config_.negatives);
    for (std::size_t i = 0; i < line.size(); ++i) {
      const auto [center, g] = line[i];
      const auto radius = 1 + static_cast<std::size_t>(counter_uniform(win_seed, g) *
                                                       static_cast<double>(config_.window));
      Rng neg_rng(mix64(neg_seed ^ mix64(g)));
      const std::size_t lo = i >= radius ? i - radius : 0;
      const std::size_t hi = std::min(line.size() - 1, i + radius);
      for (std::size_t c = lo; c <= hi; ++c) {
        if (c == i) continue;
        const std::size_t context = line[c].first;
        for (auto& n : negs) {
          do {
            n = vocab_.sample_negative(neg_rng.uniform());
          } while (n == context && vocab_.size() > 1);
        }
        loss += sgns_step(params_, subwords_.slots[center], context, negs, lr);
        ++pairs;
      }
    }
  };

  auto report = [&](std::uint64_t done, double lr) {
    const auto percent = static_cast<std::size_t>(100.0 * static_cast<double>(done) / total_work);
    if (percent < next_percent) return;
    const double mean = chunk_pairs ? chunk_loss / static_cast<double>(chunk_pairs) : 0.0;
    while (next_percent <= percent && next_percent <= 100) {
      log.progress_loss.push_back(mean);
      ++next_percent;
    }
    if (log_stream) {
      *log_stream << "sgns: " << percent << "% lr=" << format_fixed(lr, 6)
                  << " loss=" << format_fixed(mean, 6) << '\n';
    }
    chunk_loss = 0.0;
    chunk_pairs = 0;
  };

  if (config_.threads == 1) {
    for (std::size_t epoch = 0; epoch < config_.epochs; ++epoch) {
      double epoch_loss = 0.0;
      std::size_t epoch_pairs = 0;
      for (std::size_t s = 0; s < sentences.size(); ++s) {
        const double lr = current_lr(processed.load());
        double loss = 0.0;
        std::size_t pairs = 0;
        run_sentence(s, epoch, lr, loss, pairs);
        epoch_loss += loss;
        epoch_pairs += pairs;
        chunk_loss += loss;
        chunk_pairs += pairs;
        processed += sentences[s].size();
        report(processed.load(), lr);
      }
      log.epoch_loss.push_back(epoch_pairs ? epoch_loss / static_cast<double>(epoch_pairs) : 0.0);
      log.pairs += epoch_pairs;
    }
    return log;
  }

  // Hogwild: workers update shared rows without synchronization.
  const std::size_t workers = std::min(config_.threads, sentences.size());
  std::vector<WorkerTotals> totals(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        const std::size_t begin = sentences.size() * t / workers;
        const std::size_t end = sentences.size() * (t + 1) / workers;
        auto& mine = totals[t];
        mine.epoch_loss.assign(config_.epochs, 0.0);
        mine.epoch_pairs.assign(config_.epochs, 0);
        for (std::size_t epoch = 0; epoch < config_.epochs; ++epoch) {
          for (std::size_t s = begin; s < end; ++s) {
            const double lr = current_lr(processed.load(std::memory_order_relaxed));
            run_sentence(s, epoch, lr, mine.epoch_loss[epoch], mine.epoch_pairs[epoch]);
            processed.fetch_add(sentences[s].size(), std::memory_order_relaxed);
          }
        }
      });
    }
  }
  for (std::size_t epoch = 0; epoch < config_.epochs; ++epoch) {
    double loss = 0.0;
    std::size_t pairs = 0;
    for (const auto& w : totals) {
      loss += w.epoch_loss[epoch];
      pairs += w.epoch_pairs[epoch];
    }
    log.epoch_loss.push_back(pairs ? loss / static_cast<double>(pairs) : 0.0);
    log.pairs += pairs;
  }
  if (log_stream) *log_stream << "sgns: 100% (" << workers << " workers)\n";
  return log;
}

EmbeddingTable train_embeddings(const TokenStream& stream, const SgnsConfig& config,
                                std::ostream* log_stream, SgnsTrainLog* log) {
  config.validate();
  SgnsModel model(config, Vocab::build(stream, config.min_count));
  SgnsTrainLog result = model.train(stream, log_stream);
  if (log) *log = std::move(result);
  return model.to_table();
}

}  // namespace gprobe
