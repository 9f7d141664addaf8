#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>

#include "gprobe/conllu.hpp"
#include "gprobe/corpus.hpp"
#include "gprobe/dataset.hpp"
#include "gprobe/dump.hpp"
#include "gprobe/error.hpp"
#include "gprobe/format.hpp"
#include "gprobe/layer_probe.hpp"
#include "gprobe/lexicon.hpp"
#include "gprobe/probe.hpp"
#include "gprobe/stemmer.hpp"
#include "gprobe/transfer.hpp"

namespace gprobe::cli {
namespace {

constexpr std::size_t kMaxReportedIssues = 10;

ProbeConfig probe_config(const ProbeOptions& o, std::size_t input_dim, std::uint64_t seed) {
  ProbeConfig c = ProbeConfig::for_input(input_dim, seed);
  if (o.hidden != 0) c.hidden_dim = o.hidden;
  c.learning_rate = o.learning_rate;
  c.batch_size = o.batch_size;
  c.patience = o.patience;
  c.max_epochs = o.max_epochs;
  c.validation_fraction = o.validation_fraction;
  c.validate();
  return c;
}

Metadata prefixed(const std::string& prefix, const Metadata& meta) {
  Metadata out;
  for (const auto& [k, v] : meta) out.emplace_back(prefix + k, v);
  return out;
}

void append(Metadata& into, const Metadata& more) { into.insert(into.end(), more.begin(), more.end()); }

Metadata coverage_meta(const std::string& prefix, const CoverageStats& c) {
  return {{prefix + ".requested", std::to_string(c.requested)},
          {prefix + ".found", std::to_string(c.found)},
          {prefix + ".skip_rate", format_double(c.skip_rate())}};
}

GenderLexicon load_lexicon(const std::string& path, const std::string& lang) {
  auto in = open_input(path, "lexicon");
  return read_lexicon(in, lang);
}

TokenFilter lemma_filter(std::span<const NounRecord> records) {
  TokenFilter filter;
  for (const auto& r : records) filter.insert(r.lemma);
  return filter;
}

GenderFeatureMap parse_feature_map(const std::string& text) {
  GenderFeatureMap map;
  for (const auto& item : split_list(text)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("gender map entry '" + item + "' is not Value=uter|neuter");
    }
    const auto gender = parse_gender(std::string_view(item).substr(eq + 1));
    if (!gender) throw ArgumentError("gender map entry '" + item + "' has an unknown class");
    map[item.substr(0, eq)] = *gender;
  }
  if (map.empty()) throw ArgumentError("empty gender map");
  return map;
}

std::string describe_map(const GenderFeatureMap& map) {
  std::vector<std::string> items;
  for (const auto& [value, gender] : map) items.push_back(value + "=" + std::string(to_string(gender)));
  return join(items, ",");
}

std::string render_lexicon(const GenderLexicon& lexicon) {
  std::ostringstream out;
  write_lexicon(out, lexicon);
  return out.str();
}

ArticleSet make_articles(const std::string& lang, const std::vector<std::string>& tokens) {
  return ArticleSet(lang, std::set<std::string, std::less<>>(tokens.begin(), tokens.end()));
}

CorpusMode corpus_mode(const std::string& name) {
  auto mode = parse_corpus_mode(name);
  if (!mode) throw ArgumentError("unknown corpus mode '" + name + "' (raw, no-articles, stemmed)");
  return *mode;
}

std::size_t token_count(const TokenStream& stream) {
  std::size_t n = 0;
  for (const auto& s : stream) n += s.size();
  return n;
}

struct ProbeRun {
  ProbeData train;
  ProbeData test;
  ProbeConfig config;
  TrainedProbe trained;
  Evaluation eval;
};

ProbeRun run_probe(std::span<const NounRecord> train_nouns, std::span<const NounRecord> test_nouns,
                   const EmbeddingTable& table, const ProbeOptions& options, std::uint64_t seed) {
  ProbeRun run{build_probe_data(train_nouns, table), build_probe_data(test_nouns, table),
               probe_config(options, table.dim(), seed), {}, {}};
  run.trained = train_probe(run.train.set, run.config);
  run.eval = evaluate(run.trained.model, run.test.set);
  return run;
}

// Lemma lookup first; for stemmed tables, the stem of the lemma second.
struct KeyedNouns {
  std::vector<NounRecord> records;
  std::size_t lemma_hits = 0;
  std::size_t fallback_hits = 0;
};

KeyedNouns key_nouns(std::span<const NounRecord> nouns, const EmbeddingTable& table, bool stem_fallback) {
  KeyedNouns keyed;
  for (const auto& noun : nouns) {
    NounRecord r = noun;
    if (table.contains(r.lemma)) {
      ++keyed.lemma_hits;
    } else if (stem_fallback) {
      std::string stem = stem_swedish(r.lemma);
      if (table.contains(stem)) {
        r.lemma = std::move(stem);
        ++keyed.fallback_hits;
      }
    }
    keyed.records.push_back(std::move(r));
  }
  return keyed;
}

}  // namespace

void cmd_extract_nouns(Context& ctx, const ExtractOptions& opt) {
  const GenderFeatureMap feature_map =
      opt.gender_map.empty() ? default_feature_map(opt.lang) : parse_feature_map(opt.gender_map);

  std::vector<Sentence> sentences;
  std::size_t rows = 0;
  std::size_t skipped = 0;
  for (const auto& path : opt.treebanks) {
    auto in = open_input(path, "treebank");
    ParseResult parsed;
    try {
      parsed = parse_conllu(in, ctx.strict ? ParseMode::Strict : ParseMode::Lenient);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), "in '" + path + "': " + e.what());
    }
    for (std::size_t i = 0; i < parsed.skipped.size() && i < kMaxReportedIssues; ++i) {
      ctx.err << path << ": skipped row: " << parsed.skipped[i].message << '\n';
    }
    rows += parsed.rows;
    skipped += parsed.skipped.size();
    std::move(parsed.sentences.begin(), parsed.sentences.end(), std::back_inserter(sentences));
  }

  const Extraction ex = extract_nouns(sentences, feature_map, opt.lang);
  const GenderLexicon& lexicon = ex.lexicon;
  const Metadata extra = {
      {"feature_map", describe_map(feature_map)},
      {"rows", std::to_string(rows)},
      {"skipped_rows", std::to_string(skipped)},
      {"noun_tokens", std::to_string(ex.stats.noun_tokens)},
      {"matched_tokens", std::to_string(ex.stats.matched_tokens)},
      {"unmapped_tokens", std::to_string(ex.stats.unmapped_tokens)},
      {"conflicts", std::to_string(ex.stats.conflicts_dropped)},
      {"lemmas", std::to_string(lexicon.size())},
      {"p_uter", format_double(lexicon.distribution().p_uter)},
      {"p_neuter", format_double(lexicon.distribution().p_neuter)},
  };
  write_file(ctx.output("lexicon." + opt.lang + ".tsv"), render_lexicon(lexicon));
  write_file(ctx.output("lexicon." + opt.lang + ".meta"), meta_block(ctx.stamp(extra)));

  ctx.out << "lemmas=" << lexicon.size() << " uter=" << format_fixed(lexicon.distribution().p_uter, 3)
          << " neuter=" << format_fixed(lexicon.distribution().p_neuter, 3)
          << " conflicts=" << ex.stats.conflicts_dropped << " skipped_rows=" << skipped << '\n';
}

void cmd_train_probe(Context& ctx, const TrainProbeOptions& opt) {
  const GenderLexicon lexicon = load_lexicon(opt.lexicon, opt.lang);
  const DatasetSplit split =
      split_dataset(lexicon, opt.probe.test_fraction, ctx.stage_seed("split." + opt.lang));
  const TokenFilter filter = lemma_filter(lexicon.records());
  const EmbeddingTable table = load_vectors(ctx, opt.vectors, &filter);
  const ProbeRun run =
      run_probe(split.train, split.test, table, opt.probe, ctx.stage_seed("probe." + opt.lang));

  Metadata extra = prefixed("probe.", run.config.describe());
  append(extra, coverage_meta("coverage.train", run.train.coverage));
  append(extra, coverage_meta("coverage.test", run.test.coverage));
  extra.emplace_back("best_epoch", std::to_string(run.trained.history.best_epoch));
  extra.emplace_back("stop", std::string(to_string(run.trained.history.stop)));
  const Metadata meta = ctx.stamp(extra);

  const std::string stem = "probe." + opt.lang;
  {
    std::ostringstream out;
    save_checkpoint(out, run.trained.model, meta);
    write_file(ctx.output(stem + ".model"), out.str());
  }
  {
    std::ostringstream out;
    out << comment_block(meta);
    write_history(out, run.trained.history);
    write_file(ctx.output(stem + ".history.tsv"), out.str());
  }
  {
    std::ostringstream out;
    out << comment_block(meta);
    out << "language\taccuracy\tloss\ttest_size\tp_uter_train\tp_uter_test\n";
    out << opt.lang << '\t' << format_double(100.0 * run.eval.accuracy) << '\t'
        << format_double(run.eval.mean_loss) << '\t' << run.eval.count << '\t'
        << format_double(run.train.distribution.p_uter) << '\t'
        << format_double(run.test.distribution.p_uter) << '\n';
    write_file(ctx.output(stem + ".eval.tsv"), out.str());
  }
  write_file(ctx.output("split." + opt.lang + ".train.tsv"),
             render_lexicon(GenderLexicon(opt.lang, split.train)));
  write_file(ctx.output("split." + opt.lang + ".test.tsv"),
             render_lexicon(GenderLexicon(opt.lang, split.test)));
  write_file(ctx.output("split." + opt.lang + ".meta"),
             meta_block(ctx.stamp({{"train", std::to_string(split.train.size())},
                                   {"test", std::to_string(split.test.size())}})));

  ctx.out << "lang=" << opt.lang << " accuracy=" << format_fixed(100.0 * run.eval.accuracy, 2)
          << " loss=" << format_fixed(run.eval.mean_loss, 4) << " test=" << run.eval.count
          << " train=" << run.train.set.size() << " best_epoch=" << run.trained.history.best_epoch
          << " skipped_oov=" << run.train.coverage.missing() + run.test.coverage.missing() << '\n';
}

void cmd_evaluate(Context& ctx, const EvaluateOptions& opt) {
  ProbeModel model;
  {
    auto in = open_input(opt.model, "model");
    model = load_checkpoint(in);
  }
  const GenderLexicon lexicon = load_lexicon(opt.lexicon, opt.lang);
  const TokenFilter filter = lemma_filter(lexicon.records());
  const EmbeddingTable table = load_vectors(ctx, opt.vectors, &filter);
  if (table.dim() != model.input_dim()) {
    throw ArgumentError("vector dimension " + std::to_string(table.dim()) +
                        " does not match model input " + std::to_string(model.input_dim()));
  }
  const ProbeData data = build_probe_data(lexicon.records(), table);
  const Evaluation eval = evaluate(model, data.set);

  Metadata extra = coverage_meta("coverage", data.coverage);
  extra.emplace_back("p_uter", format_double(data.distribution.p_uter));
  std::ostringstream out;
  out << comment_block(ctx.stamp(extra));
  out << "language\taccuracy\tloss\tcount\n";
  out << opt.lang << '\t' << format_double(100.0 * eval.accuracy) << '\t' << format_double(eval.mean_loss)
      << '\t' << eval.count << '\n';
  write_file(ctx.output("evaluate." + opt.lang + ".tsv"), out.str());

  ctx.out << "lang=" << opt.lang << " accuracy=" << format_fixed(100.0 * eval.accuracy, 2)
          << " loss=" << format_fixed(eval.mean_loss, 4) << " count=" << eval.count
          << " skipped_oov=" << data.coverage.missing() << '\n';
}

void cmd_transfer_matrix(Context& ctx, const TransferOptions& opt) {
  const std::size_t n = opt.langs.size();
  if (n == 0) throw ArgumentError("transfer-matrix needs at least one language");
  if (opt.lexicons.size() != n || opt.vectors.size() != n) {
    throw ArgumentError("--langs, --lexicons and --vectors must list the same number of entries");
  }

  struct Side {
    DatasetSplit split;
    EmbeddingTable table{1};
  };
  std::vector<Side> sides;
  sides.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const GenderLexicon lexicon = load_lexicon(opt.lexicons[i], opt.langs[i]);
    const TokenFilter filter = lemma_filter(lexicon.records());
    Side side{split_dataset(lexicon, opt.probe.test_fraction, ctx.stage_seed("split." + opt.langs[i])),
              load_vectors(ctx, opt.vectors[i], &filter)};
    if (!sides.empty() && side.table.dim() != sides.front().table.dim()) {
      throw ArgumentError("vectors for '" + opt.langs[i] + "' have dimension " +
                          std::to_string(side.table.dim()) + " but '" + opt.langs.front() + "' has " +
                          std::to_string(sides.front().table.dim()) +
                          "; transfer needs one aligned space");
    }
    sides.push_back(std::move(side));
  }

  std::vector<ProbeRun> runs;
  runs.reserve(n);
  Metadata extra;
  for (std::size_t i = 0; i < n; ++i) {
    runs.push_back(run_probe(sides[i].split.train, sides[i].split.test, sides[i].table, opt.probe,
                             ctx.stage_seed("probe." + opt.langs[i])));
    ctx.err << "probe " << opt.langs[i] << ": best_epoch=" << runs.back().trained.history.best_epoch
            << " accuracy=" << format_fixed(100.0 * runs.back().eval.accuracy, 2) << '\n';
    append(extra, coverage_meta("coverage." + opt.langs[i] + ".train", runs.back().train.coverage));
    append(extra, coverage_meta("coverage." + opt.langs[i] + ".test", runs.back().test.coverage));
  }
  append(extra, prefixed("probe.", runs.front().config.describe()));

  std::vector<LanguageProbe> probes;
  for (std::size_t i = 0; i < n; ++i) {
    probes.push_back({opt.langs[i], &runs[i].trained.model, &runs[i].test.set,
                      runs[i].train.distribution, runs[i].test.distribution});
  }
  TransferReport report = transfer_matrix(probes);
  report.metadata = ctx.stamp(extra);

  write_file(ctx.output("transfer.tsv"), render_tsv(report));
  const std::string text = render_text(report);
  write_file(ctx.output("transfer.txt"), text);
  ctx.out << text;
}

void cmd_strip_corpus(Context& ctx, const StripOptions& opt) {
  const std::string text = read_file(opt.input, "corpus");
  const ArticleSet articles = make_articles(opt.article_lang, opt.articles);
  std::vector<CorpusMode> modes;
  for (const auto& name : opt.modes) modes.push_back(corpus_mode(name));
  if (modes.empty()) throw ArgumentError("no corpus mode selected");

  for (CorpusMode mode : modes) {
    const CorpusVariant variant = strip_corpus(text, mode, articles);
    const std::string name(to_string(mode));
    std::ostringstream out;
    write_corpus(out, variant.sentences);
    write_file(ctx.output("corpus." + name + ".txt"), out.str());
    const Metadata stats = {
        {"mode", name},
        {"articles", join(opt.articles, ",")},
        {"sentences", std::to_string(variant.stats.sentences)},
        {"tokens", std::to_string(variant.stats.tokens)},
        {"removed_articles", std::to_string(variant.stats.removed_articles)},
        {"types", std::to_string(variant.stats.types)},
    };
    write_file(ctx.output("corpus." + name + ".meta"), meta_block(ctx.stamp(stats)));
    ctx.out << "mode=" << name << " sentences=" << variant.stats.sentences
            << " tokens=" << variant.stats.tokens << " removed_articles=" << variant.stats.removed_articles
            << " types=" << variant.stats.types << '\n';
  }
}

void cmd_train_embeddings(Context& ctx, const EmbedOptions& opt) {
  struct Variant {
    std::string name;
    bool stemmed = false;
    TokenStream stream;
  };
  std::vector<Variant> variants;
  for (const auto& path : opt.corpora) {
    auto in = open_input(path, "corpus");
    std::string name = std::filesystem::path(path).stem().string();
    if (name.rfind("corpus.", 0) == 0) name.erase(0, 7);
    const auto mode = parse_corpus_mode(name);
    variants.push_back({name, mode == CorpusMode::Stemmed, read_corpus(in)});
  }
  if (!opt.text.empty()) {
    const std::string text = read_file(opt.text, "corpus");
    const ArticleSet articles = make_articles(opt.article_lang, opt.articles);
    for (const auto& name : opt.variants) {
      const CorpusMode mode = corpus_mode(name);
      variants.push_back({std::string(to_string(mode)), mode == CorpusMode::Stemmed,
                          strip_corpus(text, mode, articles).sentences});
    }
  }
  if (variants.empty()) throw ArgumentError("train-embeddings needs --corpus or --text");
  for (std::size_t i = 0; i < variants.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (variants[i].name == variants[j].name) {
        throw ArgumentError("corpus variant '" + variants[i].name + "' given twice");
      }
    }
  }

  SgnsConfig sgns = opt.sgns;
  sgns.seed = ctx.stage_seed("sgns");
  sgns.validate();

  std::optional<GenderLexicon> lexicon;
  std::optional<DatasetSplit> split;
  std::uint64_t probe_seed = 0;
  if (!opt.lexicon.empty()) {
    if (opt.lang.empty()) throw ArgumentError("--lexicon requires --lang");
    lexicon.emplace(load_lexicon(opt.lexicon, opt.lang));
    split.emplace(split_dataset(*lexicon, opt.probe.test_fraction, ctx.stage_seed("split." + opt.lang)));
    probe_seed = ctx.stage_seed("probe." + opt.lang);
  }

  std::ostringstream summary;
  summary << "variant\tvocab\ttokens\tpairs\tfinal_loss\n";
  std::ostringstream ablation;
  ablation << "variant\taccuracy\tloss\ttrain_size\ttest_size\tlemma_hits\tfallback_hits\tmissing\n";
  std::ostringstream ablation_text;
  ablation_text << "variant       accuracy      loss   hits\n";
  Metadata probe_meta;

  for (const auto& v : variants) {
    SgnsTrainLog log;
    const EmbeddingTable table = train_embeddings(v.stream, sgns, opt.quiet ? nullptr : &ctx.err, &log);
    const double final_loss = log.epoch_loss.empty() ? 0.0 : log.epoch_loss.back();

    std::vector<std::string> losses;
    for (double l : log.epoch_loss) losses.push_back(format_double(l));
    Metadata extra = prefixed("sgns.", sgns.describe());
    append(extra, {{"variant", v.name},
                   {"articles", join(opt.articles, ",")},
                   {"vocab", std::to_string(table.size())},
                   {"tokens", std::to_string(token_count(v.stream))},
                   {"pairs", std::to_string(log.pairs)},
                   {"epoch_loss", join(losses, ",")}});
    std::ostringstream vec;
    save_vec_text(vec, table);
    write_file(ctx.output("embeddings." + v.name + ".vec"), vec.str());
    write_file(ctx.output("embeddings." + v.name + ".meta"), meta_block(ctx.stamp(extra)));
    summary << v.name << '\t' << table.size() << '\t' << token_count(v.stream) << '\t' << log.pairs << '\t'
            << format_double(final_loss) << '\n';

    if (lexicon) {
      const KeyedNouns train = key_nouns(split->train, table, v.stemmed);
      const KeyedNouns test = key_nouns(split->test, table, v.stemmed);
      const ProbeRun run = run_probe(train.records, test.records, table, opt.probe, probe_seed);
      const std::size_t lemma_hits = train.lemma_hits + test.lemma_hits;
      const std::size_t fallback_hits = train.fallback_hits + test.fallback_hits;
      const std::size_t missing = run.train.coverage.missing() + run.test.coverage.missing();
      ablation << v.name << '\t' << format_double(100.0 * run.eval.accuracy) << '\t'
               << format_double(run.eval.mean_loss) << '\t' << run.train.set.size() << '\t'
               << run.test.set.size() << '\t' << lemma_hits << '\t' << fallback_hits << '\t' << missing
               << '\n';
      const std::string acc = format_fixed(100.0 * run.eval.accuracy, 2);
      const std::string loss = format_fixed(run.eval.mean_loss, 3);
      ablation_text << v.name << std::string(v.name.size() < 12 ? 12 - v.name.size() : 1, ' ')
                    << pad_left(acc, 9) << pad_left(loss, 10) << pad_left(std::to_string(lemma_hits + fallback_hits), 7)
                    << '\n';
      if (probe_meta.empty()) probe_meta = prefixed("probe.", run.config.describe());
    }
  }

  Metadata table_meta = prefixed("sgns.", sgns.describe());
  table_meta.emplace_back("articles", join(opt.articles, ","));
  write_file(ctx.output("embeddings.tsv"), comment_block(ctx.stamp(table_meta)) + summary.str());
  if (lexicon) {
    append(table_meta, probe_meta);
    table_meta.emplace_back("lookup", "lemma, then stem of lemma for stemmed variants");
    write_file(ctx.output("ablation.tsv"), comment_block(ctx.stamp(table_meta)) + ablation.str());
    write_file(ctx.output("ablation.txt"), ablation_text.str());
    ctx.out << ablation_text.str();
  } else {
    ctx.out << summary.str();
  }
}

void cmd_layer_compare(Context& ctx, const LayerOptions& opt) {
  if (opt.seeds == 0) throw ArgumentError("--seeds must be positive");
  ContextualDump dump;
  {
    auto in = open_input(opt.dump, "dump");
    dump = read_dump(in);
  }
  const auto datasets = build_layer_datasets(dump);
  const ProbeConfig config = probe_config(opt.probe, dump.dim, ctx.stage_seed("layer.probe"));

  std::vector<LayerComparison> runs;
  for (std::size_t k = 0; k < opt.seeds; ++k) {
    const std::string label = k == 0 ? "layer.split" : "layer.split." + std::to_string(k);
    LayerCompareOptions options;
    options.test_fraction = opt.probe.test_fraction;
    options.split_seed = ctx.stage_seed(label);
    options.lemma_disjoint = opt.lemma_disjoint;
    runs.push_back(layer_compare(datasets, config, options));
  }

  LayerComparison primary = runs.front();
  Metadata extra = {{"dump_records", std::to_string(dump.records.size())}};
  primary.metadata.insert(primary.metadata.begin(), ctx.config.begin(), ctx.config.end());
  primary.metadata.insert(primary.metadata.end(), ctx.seeds.begin(), ctx.seeds.end());
  append(primary.metadata, extra);
  write_file(ctx.output("layers.tsv"), render_layer_tsv(primary));
  const std::string text = render_layer_text(primary);
  write_file(ctx.output("layers.txt"), text);
  ctx.out << text;

  if (opt.seeds > 1) {
    std::size_t preserved = 0;
    std::ostringstream out;
    out << comment_block(ctx.stamp(extra));
    out << "split\tlayer\tloss\taccuracy\n";
    for (std::size_t k = 0; k < runs.size(); ++k) {
      const auto& layers = runs[k].layers;
      for (const auto& r : layers) {
        out << k << '\t' << r.layer << '\t' << format_double(r.loss) << '\t' << format_double(r.accuracy)
            << '\n';
      }
      if (layers.front().accuracy >= layers.back().accuracy && layers.front().loss <= layers.back().loss) {
        ++preserved;
      }
    }
    const std::string line = "ordering_preserved=" + std::to_string(preserved) + "/" +
                             std::to_string(runs.size()) + " (layer " +
                             std::to_string(runs.front().layers.front().layer) + " vs layer " +
                             std::to_string(runs.front().layers.back().layer) + ")";
    out << '#' << line << '\n';
    write_file(ctx.output("layers.seeds.tsv"), out.str());
    ctx.out << line << '\n';
  }
}

void cmd_report(Context& ctx, const ReportOptions& opt) {
  namespace fs = std::filesystem;
  const fs::path dir = opt.in_dir.empty() ? ctx.out_dir : fs::path(opt.in_dir);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError("no such directory '" + dir.string() + "'");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (entry.path().filename() == "report.md") continue;
    if (ext == ".meta" || ext == ".tsv" || ext == ".txt" || ext == ".model" || ext == ".vec") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw DataError("no run outputs found in '" + dir.string() + "'");
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  std::ostringstream inventory;
  std::ostringstream sections;
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    const std::string ext = path.extension().string();
    const std::string content = read_file(path, "artifact");
    const auto lines = static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n'));
    inventory << "| " << name << " | " << lines << " | " << content.size() << " |\n";

    // Data files are listed, not inlined.
    const bool is_data = ext == ".vec" || (ext == ".txt" && name.rfind("corpus.", 0) == 0) ||
                         content.rfind("lemma\tgender\tcount\n", 0) == 0;
    if (is_data) continue;
    std::string body;
    if (ext == ".model") {
      std::istringstream in(content);
      std::string line;
      while (read_line(in, line)) {
        if (!line.empty() && line.front() == '#') body += line + '\n';
      }
    } else {
      body = content;
    }
    sections << "\n## " << name << "\n\n```\n" << body;
    if (!body.empty() && body.back() != '\n') sections << '\n';
    sections << "```\n";
  }

  std::ostringstream report;
  report << "# gprobe report\n\n| artifact | lines | bytes |\n|---|---:|---:|\n" << inventory.str()
         << sections.str();
  write_file(ctx.output("report.md"), report.str());
  ctx.out << "report: " << ctx.output("report.md").string() << " (" << files.size() << " artifacts)\n";
}

}  // namespace gprobe::cli
