#include "gprobe/cli.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <functional>
#include <sstream>

#include "commands.hpp"
#include "gprobe/error.hpp"
#include "io.hpp"

namespace gprobe::cli {
namespace {

constexpr const char* kVersion = "0.3.0";

// Unsectioned keys in a config file belong to the selected subcommand.
class SubcommandConfig : public CLI::ConfigINI {
 public:
  explicit SubcommandConfig(const std::string& section) : section_(section) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    for (auto& item : items) {
      if (item.parents.empty() && !section_.empty()) item.parents = {section_};
    }
    return items;
  }

 private:
  const std::string& section_;
};

struct Common {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool strict = false;
};

void add_common(CLI::App& sub, Common& common) {
  sub.add_option("--seed", common.seed, "Root seed; stage seeds are derived from it");
  sub.add_option("--out-dir", common.out_dir, "Directory for output artifacts");
  sub.add_flag("--strict", common.strict, "Abort on the first malformed input row (exit 2)");
  sub.fallthrough();
}

void add_probe_options(CLI::App& sub, ProbeOptions& p, const std::string& lr_flag = "--learning-rate") {
  sub.add_option("--hidden", p.hidden, "Hidden units (0: twice the input dimension)");
  sub.add_option(lr_flag, p.learning_rate, "Adam learning rate")->check(CLI::PositiveNumber);
  sub.add_option("--batch-size", p.batch_size)->check(CLI::PositiveNumber);
  sub.add_option("--patience", p.patience, "Epochs without validation improvement before stopping");
  sub.add_option("--max-epochs", p.max_epochs)->check(CLI::PositiveNumber);
  sub.add_option("--validation-fraction", p.validation_fraction)->check(CLI::Range(0.0, 1.0));
  sub.add_option("--test-fraction", p.test_fraction)->check(CLI::Range(0.0, 1.0));
}

// Effective configuration of the selected command: every option after
// defaults and config file. Output location and the config path itself are
// left out so artifacts do not depend on where they were written.
Metadata effective_config(const CLI::App& sub) {
  Metadata meta{{"tool", std::string("gprobe ") + kVersion}, {"command", sub.get_name()}};
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name == "out-dir") continue;
    std::string value;
    if (opt->get_expected_min() == 0) {
      value = opt->count() > 0 && opt->as<bool>() ? "true" : "false";
    } else if (opt->count() > 0) {
      const auto& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
    } else {
      value = opt->get_default_str();
    }
    meta.emplace_back(name, value);
  }
  return meta;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grammatical gender probing for word embeddings", "gprobe"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::string section;
  app.set_config("--config", "", "key=value file with option defaults; flags win");
  app.config_formatter(std::make_shared<SubcommandConfig>(section));

  Common common;
  ExtractOptions extract;
  TrainProbeOptions train;
  EvaluateOptions eval;
  TransferOptions transfer;
  StripOptions strip;
  EmbedOptions embed;
  LayerOptions layer;
  ReportOptions report;
  std::function<void(Context&)> action;

  auto* c = app.add_subcommand("extract-nouns", "Build a noun/gender lexicon from CoNLL-U treebanks");
  add_common(*c, common);
  c->add_option("--lang", extract.lang, "ISO 639-1 language code")->required();
  c->add_option("--treebank", extract.treebanks, "CoNLL-U file (repeatable)")->required()->delimiter(',');
  c->add_option("--gender-map", extract.gender_map, "Feature map, e.g. Com=uter,Neut=neuter");
  c->callback([&] { action = [&](Context& ctx) { cmd_extract_nouns(ctx, extract); }; });

  c = app.add_subcommand("train-probe", "Train a gender probe on one language");
  add_common(*c, common);
  c->add_option("--lang", train.lang)->required();
  c->add_option("--lexicon", train.lexicon, "Lexicon TSV")->required();
  c->add_option("--vectors", train.vectors, ".vec file")->required();
  add_probe_options(*c, train.probe);
  c->callback([&] { action = [&](Context& ctx) { cmd_train_probe(ctx, train); }; });

  c = app.add_subcommand("evaluate", "Score a saved probe on a lexicon");
  add_common(*c, common);
  c->add_option("--lang", eval.lang)->required();
  c->add_option("--model", eval.model, "Probe checkpoint")->required();
  c->add_option("--lexicon", eval.lexicon, "Lexicon TSV (e.g. a test split)")->required();
  c->add_option("--vectors", eval.vectors, ".vec file")->required();
  c->callback([&] { action = [&](Context& ctx) { cmd_evaluate(ctx, eval); }; });

  c = app.add_subcommand("transfer-matrix", "Cross-language probe transfer with chance correction");
  add_common(*c, common);
  c->add_option("--langs", transfer.langs, "Languages, comma separated")->required()->delimiter(',');
  c->add_option("--lexicons", transfer.lexicons, "One lexicon per language")->required()->delimiter(',');
  c->add_option("--vectors", transfer.vectors, "One aligned .vec per language")->required()->delimiter(',');
  add_probe_options(*c, transfer.probe);
  c->callback([&] { action = [&](Context& ctx) { cmd_transfer_matrix(ctx, transfer); }; });

  c = app.add_subcommand("strip-corpus", "Tokenize a text and write raw/no-articles/stemmed variants");
  add_common(*c, common);
  c->add_option("--input", strip.input, "Plain UTF-8 text")->required();
  c->add_option("--modes", strip.modes, "raw,no-articles,stemmed")->delimiter(',');
  c->add_option("--article-lang", strip.article_lang);
  c->add_option("--articles", strip.articles, "Article tokens removed in no-articles mode")->delimiter(',');
  c->callback([&] { action = [&](Context& ctx) { cmd_strip_corpus(ctx, strip); }; });

  c = app.add_subcommand("train-embeddings", "SGNS + subword training; optional probe comparison");
  add_common(*c, common);
  c->add_option("--corpus", embed.corpora, "Tokenized corpus (one sentence per line), repeatable")
      ->delimiter(',');
  c->add_option("--text", embed.text, "Plain text to strip into --variants before training");
  c->add_option("--variants", embed.variants)->delimiter(',');
  c->add_option("--article-lang", embed.article_lang);
  c->add_option("--articles", embed.articles)->delimiter(',');
  c->add_option("--lexicon", embed.lexicon, "Lexicon for the probe comparison");
  c->add_option("--lang", embed.lang);
  c->add_flag("--quiet", embed.quiet, "No progress lines");
  c->add_option("--dim", embed.sgns.dim)->check(CLI::PositiveNumber);
  c->add_option("--window", embed.sgns.window)->check(CLI::PositiveNumber);
  c->add_option("--negatives", embed.sgns.negatives)->check(CLI::PositiveNumber);
  c->add_option("--epochs", embed.sgns.epochs)->check(CLI::PositiveNumber);
  c->add_option("--min-count", embed.sgns.min_count)->check(CLI::PositiveNumber);
  c->add_option("--subsample", embed.sgns.subsample);
  c->add_option("--learning-rate", embed.sgns.learning_rate)->check(CLI::PositiveNumber);
  c->add_option("--min-learning-rate", embed.sgns.min_learning_rate);
  c->add_option("--min-ngram", embed.sgns.min_ngram);
  c->add_option("--max-ngram", embed.sgns.max_ngram);
  c->add_option("--buckets", embed.sgns.buckets)->check(CLI::PositiveNumber);
  c->add_option("--threads", embed.sgns.threads, "Worker threads (>1 is not bit-reproducible)")
      ->check(CLI::PositiveNumber);
  add_probe_options(*c, embed.probe, "--probe-learning-rate");
  c->callback([&] { action = [&](Context& ctx) { cmd_train_embeddings(ctx, embed); }; });

  c = app.add_subcommand("layer-compare", "Probe every layer of a gpdump file on one shared split");
  add_common(*c, common);
  c->add_option("--dump", layer.dump, "gpdump v1 file")->required();
  c->add_flag("--lemma-disjoint", layer.lemma_disjoint, "Keep all occurrences of a lemma on one side");
  c->add_option("--seeds", layer.seeds, "Number of split seeds")->check(CLI::PositiveNumber);
  add_probe_options(*c, layer.probe);
  c->callback([&] { action = [&](Context& ctx) { cmd_layer_compare(ctx, layer); }; });

  c = app.add_subcommand("report", "Merge run outputs into one markdown summary");
  add_common(*c, common);
  c->add_option("--in-dir", report.in_dir, "Run directory (default: --out-dir)");
  c->callback([&] { action = [&](Context& ctx) { cmd_report(ctx, report); }; });

  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->preparse_callback([&section, sub](std::size_t) { section = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUserError;
  }

  const CLI::App* selected = app.get_subcommands().front();
  Context ctx{out, err, common.seed, common.out_dir, common.strict, effective_config(*selected), {}};
  try {
    action(ctx);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "gprobe: error: " << e.what() << '\n';
    return common.strict ? kExitInternal : kExitUserError;
  } catch (const DataError& e) {
    err << "gprobe: error: " << e.what() << '\n';
    return kExitUserError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "gprobe: error: " << e.what() << '\n';
    return kExitUserError;
  } catch (const std::exception& e) {
    err << "gprobe: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"gprobe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gprobe::cli
