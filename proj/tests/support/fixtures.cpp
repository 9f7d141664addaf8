#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "gprobe/random.hpp"

namespace gprobe::testing {

namespace fs = std::filesystem;

fs::path data_dir() { return fs::path(GPROBE_TEST_DATA_DIR); }

fs::path fixture(const std::string& name) { return data_dir() / "fixtures" / name; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  const auto stamp = std::hash<std::string>{}(tag) ^ static_cast<std::size_t>(::getpid());
  for (;;) {
    path_ = fs::temp_directory_path() /
            (tag + "-" + std::to_string(stamp % 100000) + "-" + std::to_string(counter++));
    if (fs::create_directories(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string pseudo_word(std::uint64_t seed, std::size_t index, std::size_t syllables) {
  static const char* const kOnsets[] = {"b", "d", "f", "g", "h", "k", "l", "m", "n", "p", "r", "s", "t", "v"};
  static const char* const kVowels[] = {"a", "o", "u", "i", "y"};
  Rng rng(derive_seed(seed, "word." + std::to_string(index)));
  std::string word;
  for (std::size_t s = 0; s < syllables; ++s) {
    word += kOnsets[rng.below(std::size(kOnsets))];
    word += kVowels[rng.below(std::size(kVowels))];
  }
  return word;
}

GenderLexicon synthetic_lexicon(const std::string& language, std::size_t n, double p_uter,
                                std::uint64_t seed) {
  const auto uter = static_cast<std::size_t>(std::llround(p_uter * static_cast<double>(n)));
  std::set<std::string> seen;
  std::vector<NounRecord> records;
  for (std::size_t i = 0; records.size() < n; ++i) {
    std::string lemma = pseudo_word(seed, i, 4);
    if (!seen.insert(lemma).second) continue;
    const Gender g = records.size() < uter ? Gender::Uter : Gender::Neuter;
    records.push_back({lemma, g, language, 1 + i % 3});
  }
  return GenderLexicon(language, std::move(records));
}

EmbeddingTable synthetic_vectors(const GenderLexicon& lexicon, std::size_t dim, double signal,
                                 std::uint64_t seed) {
  EmbeddingTable table(dim, "synthetic");
  std::vector<float> v(dim);
  for (const auto& r : lexicon.records()) {
    Rng rng(derive_seed(seed, r.lemma));
    for (auto& x : v) x = static_cast<float>(rng.normal());
    v[0] += static_cast<float>(r.gender == Gender::Uter ? signal : -signal);
    table.add(r.lemma, v);
  }
  return table;
}

LabeledSet separable_2d(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const double angle = rng.uniform(0.0, 6.283185307179586);
  const double ux = std::cos(angle);
  const double uy = std::sin(angle);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  while (rows.size() < n) {
    const double x = rng.uniform(-3.0, 3.0);
    const double y = rng.uniform(-3.0, 3.0);
    const double side = x * ux + y * uy;
    if (std::abs(side) < 0.25) continue;  // margin
    rows.push_back({x, y});
    labels.push_back(side > 0 ? 1 : 0);
  }
  return LabeledSet::from_rows(rows, labels);
}

LabeledSet random_labeled(std::size_t n, std::size_t dim, double p_one, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& x : rows[i]) x = rng.normal();
    labels[i] = rng.uniform() < p_one ? 1 : 0;
  }
  labels[0] = 1;
  labels[1] = 0;
  return LabeledSet::from_rows(rows, labels);
}

ContextualDump synthetic_dump(const DumpShape& shape) {
  ContextualDump dump;
  dump.dim = shape.dim;
  dump.layers = shape.layers;

  std::vector<std::string> lemmas;
  std::vector<Gender> genders;
  std::vector<std::vector<double>> centers;
  Rng pool_rng(derive_seed(shape.seed, "pool"));
  for (std::size_t i = 0; i < shape.lemma_pool; ++i) {
    lemmas.push_back(pseudo_word(shape.seed, i, 3));
    genders.push_back(i % 4 == 3 ? Gender::Neuter : Gender::Uter);
    std::vector<double> c(shape.dim);
    for (auto& x : c) x = 0.5 * pool_rng.normal();
    centers.push_back(std::move(c));
  }

  Rng rng(derive_seed(shape.seed, "records"));
  for (std::size_t s = 0; s < shape.sentences; ++s) {
    std::vector<std::size_t> picks;
    for (std::size_t k = 0; k < shape.nouns_per_sentence; ++k) picks.push_back(rng.below(shape.lemma_pool));
    for (std::size_t li = 0; li < shape.layers.size(); ++li) {
      Rng noise(derive_seed(shape.seed, "noise." + std::to_string(s) + "." + std::to_string(li)));
      for (std::size_t k = 0; k <= picks.size(); ++k) {
        ContextualRecord r;
        r.sentence_id = s;
        r.token_index = k;
        r.layer = shape.layers[li];
        r.vector.resize(shape.dim);
        if (k == picks.size()) {
          r.token = "och";
          r.lemma = "och";
          for (auto& x : r.vector) x = static_cast<float>(noise.normal());
        } else {
          const std::size_t p = picks[k];
          r.token = lemmas[p];
          r.lemma = lemmas[p];
          r.gold_gender = genders[p];
          const double shift = genders[p] == Gender::Uter ? shape.signal[li] : -shape.signal[li];
          for (std::size_t j = 0; j < shape.dim; ++j) {
            r.vector[j] = static_cast<float>(centers[p][j] + noise.normal());
          }
          r.vector[0] += static_cast<float>(shift);
        }
        dump.records.push_back(std::move(r));
      }
    }
  }
  return dump;
}

ArticleCorpus two_article_corpus(std::size_t sentences, std::size_t nouns_per_class, std::uint64_t seed) {
  static const char* const kFillers[] = {"se", "har", "och", "med", "till", "från", "utan", "om",
                                          "vid", "mot", "hos", "efter", "under", "över", "bakom", "bredvid"};
  ArticleCorpus corpus;
  std::set<std::string> seen{"en", "ett"};
  for (const char* f : kFillers) seen.insert(f);
  for (std::size_t i = 0; corpus.class_a.size() + corpus.class_b.size() < 2 * nouns_per_class; ++i) {
    std::string w = pseudo_word(seed, i, 3);
    if (!seen.insert(w).second) continue;
    (corpus.class_a.size() <= corpus.class_b.size() ? corpus.class_a : corpus.class_b).push_back(w);
  }

  Rng rng(derive_seed(seed, "sentences"));
  std::string& text = corpus.text;
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t phrases = 3 + rng.below(3);
    for (std::size_t p = 0; p < phrases; ++p) {
      if (p) text += ' ';
      text += kFillers[rng.below(std::size(kFillers))];
      const bool a = rng.uniform() < 0.5;
      const auto& pool = a ? corpus.class_a : corpus.class_b;
      text += a ? " ett " : " en ";
      text += pool[rng.below(pool.size())];
    }
    text += ".\n";
  }
  return corpus;
}

GenderLexicon article_corpus_lexicon(const ArticleCorpus& corpus) {
  std::vector<NounRecord> records;
  for (const auto& w : corpus.class_a) records.push_back({w, Gender::Neuter, "sv", 1});
  for (const auto& w : corpus.class_b) records.push_back({w, Gender::Uter, "sv", 1});
  return GenderLexicon("sv", std::move(records));
}

}  // namespace gprobe::testing
