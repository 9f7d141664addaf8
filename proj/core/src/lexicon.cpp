#include "gprobe/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "gprobe/error.hpp"
#include "gprobe/format.hpp"
#include "gprobe/random.hpp"
#include "gprobe/unicode.hpp"

namespace gprobe {

std::string_view to_string(Gender g) noexcept { return g == Gender::Uter ? "uter" : "neuter"; }

std::optional<Gender> parse_gender(std::string_view text) noexcept {
  if (text == "uter") return Gender::Uter;
  if (text == "neuter") return Gender::Neuter;
  return std::nullopt;
}

ClassDistribution ClassDistribution::from_counts(std::size_t uter, std::size_t neuter) {
  const std::size_t total = uter + neuter;
  if (total == 0) throw ArgumentError("class distribution over zero items");
  ClassDistribution d;
  d.p_uter = static_cast<double>(uter) / static_cast<double>(total);
  d.p_neuter = static_cast<double>(neuter) / static_cast<double>(total);
  return d;
}

ClassDistribution ClassDistribution::from_p_uter(double p_uter) {
  ClassDistribution d{p_uter, 1.0 - p_uter};
  d.validate();
  return d;
}

void ClassDistribution::validate() const {
  if (!(p_uter >= 0.0 && p_uter <= 1.0 && p_neuter >= 0.0 && p_neuter <= 1.0) ||
      std::abs(p_uter + p_neuter - 1.0) > 1e-12) {
    throw ArgumentError("invalid class distribution (" + format_double(p_uter) + ", " +
                        format_double(p_neuter) + ")");
  }
}

GenderFeatureMap default_feature_map(std::string_view language) {
  GenderFeatureMap map{{"Com", Gender::Uter}, {"Neut", Gender::Neuter}};
  if (language != "sv" && language != "da") {
    map.emplace("Masc", Gender::Uter);
    map.emplace("Fem", Gender::Uter);
  }
  return map;
}

GenderLexicon::GenderLexicon(std::string language, std::vector<NounRecord> records)
    : language_(std::move(language)), records_(std::move(records)) {
  if (records_.empty()) throw ArgumentError("lexicon for '" + language_ + "' is empty");
  std::sort(records_.begin(), records_.end(),
            [](const NounRecord& a, const NounRecord& b) { return a.lemma < b.lemma; });
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].lemma.empty()) throw ArgumentError("empty lemma in lexicon");
    if (i > 0 && records_[i].lemma == records_[i - 1].lemma) {
      throw ArgumentError("duplicate lemma '" + records_[i].lemma + "' in lexicon");
    }
    records_[i].language = language_;
    if (records_[i].gender == Gender::Uter) ++uter_;
  }
  distribution_ = ClassDistribution::from_counts(uter_, records_.size() - uter_);
}

std::optional<Gender> GenderLexicon::find(std::string_view lemma) const {
  auto it = std::lower_bound(records_.begin(), records_.end(), lemma,
                             [](const NounRecord& r, std::string_view l) { return r.lemma < l; });
  if (it == records_.end() || it->lemma != lemma) return std::nullopt;
  return it->gender;
}

Extraction extract_nouns(std::span<const Sentence> sentences, const GenderFeatureMap& feature_map,
                         const std::string& language) {
  struct Votes {
    std::size_t uter = 0;
    std::size_t neuter = 0;
  };
  std::unordered_map<std::string, Votes> votes;
  ExtractStats stats;

  for (const Sentence& sentence : sentences) {
    for (const Token& token : sentence) {
      if (token.upos != "NOUN") continue;
      ++stats.noun_tokens;
      auto feat = token.feats.find("Gender");
      if (feat == token.feats.end()) {
        ++stats.unmapped_tokens;
        continue;
      }
      auto mapped = feature_map.find(feat->second);
      if (mapped == feature_map.end() || token.lemma == "_") {
        ++stats.unmapped_tokens;
        continue;
      }
      std::string lemma = normalize_token(token.lemma);
      if (lemma.empty()) {
        ++stats.unmapped_tokens;
        continue;
      }
      ++stats.matched_tokens;
      Votes& v = votes[lemma];
      (mapped->second == Gender::Uter ? v.uter : v.neuter) += 1;
    }
  }

  std::vector<NounRecord> records;
  records.reserve(votes.size());
  for (auto& [lemma, v] : votes) {
    if (v.uter == v.neuter) {
      ++stats.conflicts_dropped;
      continue;
    }
    records.push_back({lemma, v.uter > v.neuter ? Gender::Uter : Gender::Neuter, language,
                       v.uter + v.neuter});
  }
  if (records.empty()) {
    throw DataError("no gendered nouns extracted for '" + language +
                    "' (check the gender feature map and input file)");
  }
  return {GenderLexicon(language, std::move(records)), stats};
}

DatasetSplit split_dataset(const GenderLexicon& lexicon, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ArgumentError("test fraction must lie in (0,1), got " + format_double(test_fraction));
  }
  const auto& records = lexicon.records();
  const std::size_t n = records.size();
  const auto test_size = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<std::size_t> test_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_size));
  std::vector<std::size_t> train_idx(order.begin() + static_cast<std::ptrdiff_t>(test_size), order.end());
  std::sort(test_idx.begin(), test_idx.end());
  std::sort(train_idx.begin(), train_idx.end());

  DatasetSplit split;
  split.test.reserve(test_idx.size());
  split.train.reserve(train_idx.size());
  for (auto i : test_idx) split.test.push_back(records[i]);
  for (auto i : train_idx) split.train.push_back(records[i]);
  return split;
}

ClassDistribution distribution_of(std::span<const NounRecord> records) {
  std::size_t uter = 0;
  for (const auto& r : records) uter += r.gender == Gender::Uter ? 1 : 0;
  return ClassDistribution::from_counts(uter, records.size() - uter);
}

void write_lexicon(std::ostream& out, const GenderLexicon& lexicon) {
  out << "lemma\tgender\tcount\n";
  for (const auto& r : lexicon.records()) {
    out << r.lemma << '\t' << to_string(r.gender) << '\t' << r.occurrence_count << '\n';
  }
}

GenderLexicon read_lexicon(std::istream& in, const std::string& language) {
  std::string line;
  std::size_t line_no = 1;
  if (!read_line(in, line) || line != "lemma\tgender\tcount") {
    throw ParseError(1, "missing lexicon header 'lemma\\tgender\\tcount'");
  }
  std::vector<NounRecord> records;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 3) throw ParseError(line_no, "expected 3 columns");
    auto gender = parse_gender(cols[1]);
    if (!gender) throw ParseError(line_no, "unknown gender '" + std::string(cols[1]) + "'");
    const long long count = parse_int(cols[2], line_no);
    if (count < 0) throw ParseError(line_no, "negative count");
    records.push_back({std::string(cols[0]), *gender, language, static_cast<std::size_t>(count)});
  }
  return GenderLexicon(language, std::move(records));
}

}  // namespace gprobe
