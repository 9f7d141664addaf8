#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gprobe/embedding.hpp"
#include "gprobe/gender.hpp"
#include "gprobe/lexicon.hpp"
#include "gprobe/probe.hpp"

namespace gprobe {

struct CoverageStats {
  std::size_t requested = 0;
  std::size_t found = 0;

  std::size_t missing() const noexcept { return requested - found; }
  double skip_rate() const noexcept {
    return requested ? static_cast<double>(missing()) / static_cast<double>(requested) : 0.0;
  }
};

/// Nouns that have a vector, with their labels. Out-of-vocabulary nouns are
/// skipped and counted; the distribution covers the kept nouns only.
struct ProbeData {
  LabeledSet set;
  std::vector<std::string> lemmas;
  ClassDistribution distribution;
  CoverageStats coverage;
};

/// Throws DataError when no noun has a vector.
ProbeData build_probe_data(std::span<const NounRecord> nouns, const EmbeddingTable& table);

}  // namespace gprobe
