#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gprobe/dump.hpp"
#include "gprobe/embedding.hpp"
#include "gprobe/lexicon.hpp"
#include "gprobe/probe.hpp"

namespace gprobe::testing {

std::filesystem::path data_dir();
std::filesystem::path fixture(const std::string& name);

std::string slurp(const std::filesystem::path& path);
void spit(const std::filesystem::path& path, const std::string& content);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "gprobe");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Pronounceable lowercase pseudo-word; identical (seed, index) give identical words.
std::string pseudo_word(std::uint64_t seed, std::size_t index, std::size_t syllables = 3);

/// `n` distinct nouns with round(p_uter * n) uter entries.
GenderLexicon synthetic_lexicon(const std::string& language, std::size_t n, double p_uter,
                                std::uint64_t seed);

/// Noise vectors whose first component is shifted by +signal for uter and
/// -signal for neuter nouns. Same rule for every language, so tables built
/// with the same dim act like one aligned space.
EmbeddingTable synthetic_vectors(const GenderLexicon& lexicon, std::size_t dim, double signal,
                                 std::uint64_t seed);

/// Two Gaussian blobs in 2-D separated by a margin along a random direction.
LabeledSet separable_2d(std::size_t n, std::uint64_t seed);

/// Random labels and features with no relation between them.
LabeledSet random_labeled(std::size_t n, std::size_t dim, double p_one, std::uint64_t seed);

struct DumpShape {
  std::size_t sentences = 40;
  std::size_t nouns_per_sentence = 3;
  std::size_t dim = 16;
  std::vector<int> layers{0, 1, 2};
  std::vector<double> signal{2.0, 1.0, 0.5};  // class shift per layer
  std::size_t lemma_pool = 30;
  std::uint64_t seed = 7;
};

/// gpdump content: labeled nouns plus one unlabeled token per sentence.
ContextualDump synthetic_dump(const DumpShape& shape);

struct ArticleCorpus {
  std::string text;
  std::vector<std::string> class_a;  // preceded by `ett`
  std::vector<std::string> class_b;  // preceded by `en`
};

/// Sentences of article+noun phrases separated by shared filler words. The
/// noun class is visible only through the preceding article; noun spellings
/// are drawn from one syllable pool for both classes.
ArticleCorpus two_article_corpus(std::size_t sentences, std::size_t nouns_per_class,
                                 std::uint64_t seed);

/// Lexicon for a two_article_corpus: class A is Neuter (ett), class B Uter (en).
GenderLexicon article_corpus_lexicon(const ArticleCorpus& corpus);

}  // namespace gprobe::testing
