#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gprobe/gender.hpp"
#include "gprobe/probe.hpp"

namespace gprobe {

/// Expected accuracy (percent) of a guesser that draws labels from the
/// source training distribution, scored on the target test distribution:
/// 100 * (pu(s) pu(t) + pn(s) pn(t)).
double chance_baseline(const ClassDistribution& source, const ClassDistribution& target);

/// raw - baseline, in percent. Negative means worse than chance.
double corrected_accuracy(double raw_percent, double baseline_percent) noexcept;

using PercentMatrix = std::vector<std::vector<double>>;

/// Rows are source models, columns are target test sets.
struct TransferReport {
  std::vector<std::string> languages;
  PercentMatrix raw;
  PercentMatrix baselines;
  PercentMatrix corrected;
  std::vector<ClassDistribution> train_distributions;
  std::vector<ClassDistribution> test_distributions;
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Builds baselines and corrected cells from an existing raw matrix.
TransferReport report_from_raw(std::vector<std::string> languages, PercentMatrix raw,
                               std::vector<ClassDistribution> train_distributions,
                               std::vector<ClassDistribution> test_distributions);

struct LanguageProbe {
  std::string language;
  const ProbeModel* model = nullptr;
  const LabeledSet* test_set = nullptr;
  ClassDistribution train_distribution;
  ClassDistribution test_distribution;
};

/// raw[i][j] = 100 * accuracy of model i on test set j. All probes and test
/// sets must share one input dimension (aligned embedding space).
TransferReport transfer_matrix(std::span<const LanguageProbe> probes);

/// True when every corrected cell equals raw - baseline bit-exactly.
bool corrected_is_consistent(const TransferReport& report);

/// Metadata block, then `raw`, `baseline` and `corrected` TSV matrices.
std::string render_tsv(const TransferReport& report);
/// Aligned plain-text tables with two decimals.
std::string render_text(const TransferReport& report);

}  // namespace gprobe
