#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gprobe/sgns.hpp"
#include "io.hpp"

namespace gprobe::cli {

struct ProbeOptions {
  std::size_t hidden = 0;  // 0: twice the input dimension
  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  std::size_t patience = 10;
  std::size_t max_epochs = 500;
  double validation_fraction = 0.1;
  double test_fraction = 0.1;
};

struct ExtractOptions {
  std::string lang;
  std::vector<std::string> treebanks;
  std::string gender_map;  // Value=uter|neuter list; empty: language preset
};

struct TrainProbeOptions {
  std::string lang;
  std::string lexicon;
  std::string vectors;
  ProbeOptions probe;
};

struct EvaluateOptions {
  std::string lang;
  std::string model;
  std::string lexicon;
  std::string vectors;
};

struct TransferOptions {
  std::vector<std::string> langs;
  std::vector<std::string> lexicons;
  std::vector<std::string> vectors;
  ProbeOptions probe;
};

struct StripOptions {
  std::string input;
  std::vector<std::string> modes{"raw", "no-articles", "stemmed"};
  std::string article_lang = "sv";
  std::vector<std::string> articles{"de", "den", "det", "en", "ett"};
};

struct EmbedOptions {
  std::vector<std::string> corpora;
  std::string text;
  std::vector<std::string> variants{"raw", "no-articles", "stemmed"};
  std::string article_lang = "sv";
  std::vector<std::string> articles{"de", "den", "det", "en", "ett"};
  std::string lexicon;
  std::string lang;
  bool quiet = false;
  SgnsConfig sgns;
  ProbeOptions probe;
};

struct LayerOptions {
  std::string dump;
  bool lemma_disjoint = false;
  std::size_t seeds = 1;
  ProbeOptions probe;
};

struct ReportOptions {
  std::string in_dir;
};

void cmd_extract_nouns(Context& ctx, const ExtractOptions& opt);
void cmd_train_probe(Context& ctx, const TrainProbeOptions& opt);
void cmd_evaluate(Context& ctx, const EvaluateOptions& opt);
void cmd_transfer_matrix(Context& ctx, const TransferOptions& opt);
void cmd_strip_corpus(Context& ctx, const StripOptions& opt);
void cmd_train_embeddings(Context& ctx, const EmbedOptions& opt);
void cmd_layer_compare(Context& ctx, const LayerOptions& opt);
void cmd_report(Context& ctx, const ReportOptions& opt);

}  // namespace gprobe::cli
