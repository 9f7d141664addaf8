#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gprobe/dump.hpp"
#include "gprobe/probe.hpp"

namespace gprobe {

/// (sentence_id, token_index) of a labeled noun occurrence.
using OccurrenceId = std::pair<std::size_t, std::size_t>;

/// Labeled occurrences of one layer. Columns of `data.x` follow `occurrences`,
/// which is sorted, so the same column index means the same occurrence in
/// every layer.
struct LayerDataset {
  int layer = 0;
  std::vector<OccurrenceId> occurrences;
  std::vector<std::string> lemmas;
  LabeledSet data;
};

/// Keeps records with a gold gender. Throws DataError if nothing is labeled
/// or if layers disagree on the set of occurrences.
std::map<int, LayerDataset> build_layer_datasets(const ContextualDump& dump);

struct LayerSplit {
  std::vector<std::size_t> train;  // column indices
  std::vector<std::size_t> test;
};

/// One split over occurrence columns shared by all layers. With
/// `lemma_disjoint`, whole lemmas go to one side (test takes lemmas until it
/// holds round(test_fraction * N) occurrences).
LayerSplit split_occurrences(const LayerDataset& reference, double test_fraction, std::uint64_t seed,
                             bool lemma_disjoint = false);

struct LayerResult {
  int layer = 0;
  double loss = 0.0;      // mean test BCE
  double accuracy = 0.0;  // percent
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::size_t best_epoch = 0;
};

struct LayerComparison {
  std::vector<LayerResult> layers;
  LayerSplit split;
  std::vector<std::pair<std::string, std::string>> metadata;
};

struct LayerCompareOptions {
  double test_fraction = 0.1;
  std::uint64_t split_seed = 0;
  bool lemma_disjoint = false;
};

/// Trains one probe per layer on the shared split. The config's input and
/// hidden sizes are replaced by (dim, 2 * dim).
LayerComparison layer_compare(const std::map<int, LayerDataset>& datasets, ProbeConfig config,
                              const LayerCompareOptions& options);

/// TSV with columns layer, loss, accuracy (plus sizes), preceded by metadata.
std::string render_layer_tsv(const LayerComparison& comparison);
std::string render_layer_text(const LayerComparison& comparison);

}  // namespace gprobe
