#include "gprobe/layer_probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gprobe/error.hpp"
#include "gprobe/format.hpp"
#include "gprobe/random.hpp"

namespace gprobe {

std::map<int, LayerDataset> build_layer_datasets(const ContextualDump& dump) {
  std::map<int, std::vector<const ContextualRecord*>> by_layer;
  for (int layer : dump.layers) by_layer[layer];
  for (const auto& r : dump.records) {
    if (r.gold_gender) by_layer[r.layer].push_back(&r);
  }

  std::map<int, LayerDataset> datasets;
  const std::vector<OccurrenceId>* reference = nullptr;
  for (auto& [layer, records] : by_layer) {
    std::sort(records.begin(), records.end(), [](const auto* a, const auto* b) {
      return std::tie(a->sentence_id, a->token_index) < std::tie(b->sentence_id, b->token_index);
    });
    LayerDataset ds;
    ds.layer = layer;
    ds.data.x.resize(static_cast<Eigen::Index>(dump.dim), static_cast<Eigen::Index>(records.size()));
    for (std::size_t j = 0; j < records.size(); ++j) {
      const auto* r = records[j];
      ds.occurrences.emplace_back(r->sentence_id, r->token_index);
      ds.lemmas.push_back(r->lemma);
      ds.data.y.push_back(label_of(*r->gold_gender));
      for (std::size_t i = 0; i < dump.dim; ++i) {
        ds.data.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r->vector[i];
      }
    }
    auto [it, _] = datasets.emplace(layer, std::move(ds));
    if (!reference) {
      reference = &it->second.occurrences;
    } else if (*reference != it->second.occurrences) {
      throw DataError("layer " + std::to_string(layer) +
                      " covers a different set of labeled occurrences than layer " +
                      std::to_string(datasets.begin()->first) + " (corrupt dump)");
    }
  }
  if (datasets.empty() || datasets.begin()->second.occurrences.empty()) {
    throw DataError("dump contains no labeled noun occurrences");
  }
  return datasets;
}

LayerSplit split_occurrences(const LayerDataset& reference, double test_fraction, std::uint64_t seed,
                             bool lemma_disjoint) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ArgumentError("test fraction must lie in (0,1)");
  }
  const std::size_t n = reference.occurrences.size();
  const auto test_size = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
  Rng rng(seed);
  LayerSplit split;

  if (!lemma_disjoint) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    split.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_size));
    split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(test_size), order.end());
  } else {
    std::map<std::string, std::vector<std::size_t>> by_lemma;
    for (std::size_t j = 0; j < n; ++j) by_lemma[reference.lemmas[j]].push_back(j);
    std::vector<const std::vector<std::size_t>*> groups;
    for (const auto& [_, cols] : by_lemma) groups.push_back(&cols);
    rng.shuffle(groups);
    for (const auto* g : groups) {
      auto& side = split.test.size() < test_size ? split.test : split.train;
      side.insert(side.end(), g->begin(), g->end());
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

LayerComparison layer_compare(const std::map<int, LayerDataset>& datasets, ProbeConfig config,
                              const LayerCompareOptions& options) {
  if (datasets.empty()) throw ArgumentError("no layers to compare");
  const LayerDataset& first = datasets.begin()->second;
  for (const auto& [layer, ds] : datasets) {
    if (ds.data.dim() != first.data.dim()) {
      throw ArgumentError("layer " + std::to_string(layer) + " has dimension " +
                          std::to_string(ds.data.dim()) + ", layer " + std::to_string(first.layer) +
                          " has " + std::to_string(first.data.dim()));
    }
    if (ds.occurrences != first.occurrences) {
      throw DataError("layers " + std::to_string(first.layer) + " and " + std::to_string(layer) +
                      " cover different occurrences");
    }
  }
  config.input_dim = first.data.dim();
  config.hidden_dim = 2 * config.input_dim;

  LayerComparison result;
  result.split = split_occurrences(first, options.test_fraction, options.split_seed,
                                   options.lemma_disjoint);
  if (result.split.test.empty() || result.split.train.empty()) {
    throw DataError("occurrence split left an empty train or test side");
  }
  result.metadata = config.describe();
  result.metadata.emplace_back("split_seed", std::to_string(options.split_seed));
  result.metadata.emplace_back("test_fraction", format_double(options.test_fraction));
  result.metadata.emplace_back("lemma_disjoint", options.lemma_disjoint ? "true" : "false");
  result.metadata.emplace_back("occurrences", std::to_string(first.occurrences.size()));

  for (const auto& [layer, ds] : datasets) {
    const LabeledSet train = ds.data.subset(result.split.train);
    const LabeledSet test = ds.data.subset(result.split.test);
    const TrainedProbe trained = train_probe(train, config);
    const Evaluation eval = evaluate(trained.model, test);
    result.layers.push_back({layer, eval.mean_loss, 100.0 * eval.accuracy, train.size(), test.size(),
                             trained.history.best_epoch});
  }
  return result;
}

std::string render_layer_tsv(const LayerComparison& comparison) {
  std::ostringstream out;
  for (const auto& [k, v] : comparison.metadata) out << '#' << k << '=' << v << '\n';
  out << "layer\tloss\taccuracy\ttrain_size\ttest_size\tbest_epoch\n";
  for (const auto& r : comparison.layers) {
    out << r.layer << '\t' << format_double(r.loss) << '\t' << format_double(r.accuracy) << '\t'
        << r.train_size << '\t' << r.test_size << '\t' << r.best_epoch << '\n';
  }
  return out.str();
}

std::string render_layer_text(const LayerComparison& comparison) {
  std::ostringstream out;
  out << "layer      loss  accuracy\n";
  for (const auto& r : comparison.layers) {
    std::string layer = std::to_string(r.layer);
    std::string loss = format_fixed(r.loss, 3);
    std::string acc = format_fixed(r.accuracy, 2);
    out << layer << std::string(5 > layer.size() ? 5 - layer.size() : 1, ' ')
        << std::string(10 > loss.size() ? 10 - loss.size() : 1, ' ') << loss
        << std::string(10 > acc.size() ? 10 - acc.size() : 1, ' ') << acc << '\n';
  }
  return out.str();
}

}  // namespace gprobe
