#include "gprobe/dataset.hpp"

#include "gprobe/error.hpp"

namespace gprobe {

ProbeData build_probe_data(std::span<const NounRecord> nouns, const EmbeddingTable& table) {
  ProbeData data;
  data.coverage.requested = nouns.size();
  std::vector<const NounRecord*> kept;
  std::vector<std::span<const float>> vectors;
  for (const auto& noun : nouns) {
    if (auto v = table.lookup(noun.lemma)) {
      kept.push_back(&noun);
      vectors.push_back(*v);
    }
  }
  data.coverage.found = kept.size();
  if (kept.empty()) {
    throw DataError("none of " + std::to_string(nouns.size()) +
                    " nouns has a vector in the embedding table");
  }

  const auto dim = static_cast<Eigen::Index>(table.dim());
  data.set.x.resize(dim, static_cast<Eigen::Index>(kept.size()));
  data.set.y.reserve(kept.size());
  std::size_t uter = 0;
  for (std::size_t j = 0; j < kept.size(); ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      data.set.x(i, static_cast<Eigen::Index>(j)) = vectors[j][static_cast<std::size_t>(i)];
    }
    const int label = label_of(kept[j]->gender);
    data.set.y.push_back(label);
    uter += static_cast<std::size_t>(label);
    data.lemmas.push_back(kept[j]->lemma);
  }
  data.distribution = ClassDistribution::from_counts(uter, kept.size() - uter);
  return data;
}

}  // namespace gprobe
