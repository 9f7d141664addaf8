#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gprobe/conllu.hpp"
#include "gprobe/gender.hpp"

namespace gprobe {

struct NounRecord {
  std::string lemma;  // lowercased, NFC
  Gender gender = Gender::Uter;
  std::string language;
  std::size_t occurrence_count = 0;

  friend bool operator==(const NounRecord&, const NounRecord&) = default;
};

/// Treebank `Gender=` value to binary class. Values absent from the map are
/// ignored during extraction.
using GenderFeatureMap = std::map<std::string, Gender, std::less<>>;

/// Presets: sv/da map Com to Uter; nl additionally folds Masc and Fem into
/// Uter. Every preset maps Neut to Neuter. Unknown languages get the union.
GenderFeatureMap default_feature_map(std::string_view language);

/// Deduplicated lemma -> gender mapping with its type-level class
/// distribution. Immutable once built.
class GenderLexicon {
 public:
  /// Throws ArgumentError on an empty record list, empty lemma or duplicate
  /// lemma. Records are stored sorted by lemma.
  GenderLexicon(std::string language, std::vector<NounRecord> records);

  const std::string& language() const noexcept { return language_; }
  std::size_t size() const noexcept { return records_.size(); }
  const std::vector<NounRecord>& records() const noexcept { return records_; }
  const ClassDistribution& distribution() const noexcept { return distribution_; }
  std::size_t uter_count() const noexcept { return uter_; }

  std::optional<Gender> find(std::string_view lemma) const;

  friend bool operator==(const GenderLexicon& a, const GenderLexicon& b) {
    return a.language_ == b.language_ && a.records_ == b.records_;
  }

 private:
  std::string language_;
  std::vector<NounRecord> records_;
  std::size_t uter_ = 0;
  ClassDistribution distribution_;
};

struct ExtractStats {
  std::size_t noun_tokens = 0;       // upos == NOUN
  std::size_t matched_tokens = 0;    // NOUN with a mapped Gender value
  std::size_t unmapped_tokens = 0;   // NOUN with Gender absent or unmapped
  std::size_t conflicts_dropped = 0; // lemmas whose votes tied
};

struct Extraction {
  GenderLexicon lexicon;
  ExtractStats stats;
};

/// Majority vote per normalized lemma; ties are dropped and counted.
/// Throws DataError when no noun survives.
Extraction extract_nouns(std::span<const Sentence> sentences, const GenderFeatureMap& feature_map,
                         const std::string& language);

struct DatasetSplit {
  std::vector<NounRecord> train;
  std::vector<NounRecord> test;
};

/// Plain random (unstratified) split; |test| = round(test_fraction * N).
DatasetSplit split_dataset(const GenderLexicon& lexicon, double test_fraction, std::uint64_t seed);

ClassDistribution distribution_of(std::span<const NounRecord> records);

/// Lexicon TSV: header `lemma\tgender\tcount`, rows sorted by lemma.
void write_lexicon(std::ostream& out, const GenderLexicon& lexicon);
GenderLexicon read_lexicon(std::istream& in, const std::string& language);

}  // namespace gprobe
