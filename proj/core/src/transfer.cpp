#include "gprobe/transfer.hpp"

#include <algorithm>
#include <sstream>

#include "gprobe/error.hpp"
#include "gprobe/format.hpp"

namespace gprobe {

double chance_baseline(const ClassDistribution& source, const ClassDistribution& target) {
  source.validate();
  target.validate();
  return 100.0 * (source.p_uter * target.p_uter + source.p_neuter * target.p_neuter);
}

double corrected_accuracy(double raw_percent, double baseline_percent) noexcept {
  return raw_percent - baseline_percent;
}

TransferReport report_from_raw(std::vector<std::string> languages, PercentMatrix raw,
                               std::vector<ClassDistribution> train_distributions,
                               std::vector<ClassDistribution> test_distributions) {
  const std::size_t n = languages.size();
  if (n == 0) throw ArgumentError("transfer report needs at least one language");
  if (raw.size() != n || train_distributions.size() != n || test_distributions.size() != n) {
    throw ArgumentError("transfer report inputs disagree on the number of languages");
  }
  TransferReport report;
  report.baselines.assign(n, std::vector<double>(n));
  report.corrected.assign(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].size() != n) throw ArgumentError("raw accuracy matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      report.baselines[i][j] = chance_baseline(train_distributions[i], test_distributions[j]);
      report.corrected[i][j] = corrected_accuracy(raw[i][j], report.baselines[i][j]);
    }
  }
  report.languages = std::move(languages);
  report.raw = std::move(raw);
  report.train_distributions = std::move(train_distributions);
  report.test_distributions = std::move(test_distributions);
  return report;
}

TransferReport transfer_matrix(std::span<const LanguageProbe> probes) {
  const std::size_t n = probes.size();
  if (n == 0) throw ArgumentError("transfer matrix needs at least one language");
  for (const auto& p : probes) {
    if (!p.model || !p.test_set) throw ArgumentError("language '" + p.language + "' lacks a model or test set");
  }
  std::vector<std::string> languages;
  std::vector<ClassDistribution> train_d;
  std::vector<ClassDistribution> test_d;
  PercentMatrix raw(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    languages.push_back(probes[i].language);
    train_d.push_back(probes[i].train_distribution);
    test_d.push_back(probes[i].test_distribution);
    for (std::size_t j = 0; j < n; ++j) {
      if (probes[i].model->input_dim() != probes[j].test_set->dim()) {
        throw ArgumentError("dimension mismatch: model '" + probes[i].language + "' expects " +
                            std::to_string(probes[i].model->input_dim()) + ", test set '" +
                            probes[j].language + "' has " +
                            std::to_string(probes[j].test_set->dim()));
      }
      raw[i][j] = 100.0 * evaluate(*probes[i].model, *probes[j].test_set).accuracy;
    }
  }
  return report_from_raw(std::move(languages), std::move(raw), std::move(train_d), std::move(test_d));
}

bool corrected_is_consistent(const TransferReport& report) {
  for (std::size_t i = 0; i < report.languages.size(); ++i) {
    for (std::size_t j = 0; j < report.languages.size(); ++j) {
      if (report.corrected[i][j] != report.raw[i][j] - report.baselines[i][j]) return false;
    }
  }
  return true;
}

namespace {

void write_metadata(std::ostream& out, const TransferReport& report) {
  for (const auto& [k, v] : report.metadata) out << '#' << k << '=' << v << '\n';
  for (std::size_t i = 0; i < report.languages.size(); ++i) {
    out << "#train_distribution." << report.languages[i] << '='
        << format_double(report.train_distributions[i].p_uter) << '/'
        << format_double(report.train_distributions[i].p_neuter) << '\n';
    out << "#test_distribution." << report.languages[i] << '='
        << format_double(report.test_distributions[i].p_uter) << '/'
        << format_double(report.test_distributions[i].p_neuter) << '\n';
  }
}

void write_tsv_matrix(std::ostream& out, std::string_view name, const TransferReport& report,
                      const PercentMatrix& m) {
  out << name;
  for (const auto& l : report.languages) out << '\t' << l;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << report.languages[i];
    for (double v : m[i]) out << '\t' << format_double(v);
    out << '\n';
  }
}

void write_text_matrix(std::ostream& out, std::string_view title, const TransferReport& report,
                       const PercentMatrix& m) {
  std::size_t width = 8;
  for (const auto& l : report.languages) width = std::max(width, l.size() + 2);
  for (const auto& row : m) {
    for (double v : row) width = std::max(width, format_fixed(v, 2).size() + 2);
  }
  auto pad = [&](const std::string& s) {
    return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
  };
  out << title << " (model rows, test set columns)\n";
  out << pad("");
  for (const auto& l : report.languages) {
    std::string upper = l;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    out << pad(upper);
  }
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::string upper = report.languages[i];
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    out << pad(upper);
    for (double v : m[i]) out << pad(format_fixed(v, 2));
    out << '\n';
  }
}

}  // namespace

std::string render_tsv(const TransferReport& report) {
  std::ostringstream out;
  write_metadata(out, report);
  write_tsv_matrix(out, "raw", report, report.raw);
  write_tsv_matrix(out, "baseline", report, report.baselines);
  write_tsv_matrix(out, "corrected", report, report.corrected);
  return out.str();
}

std::string render_text(const TransferReport& report) {
  std::ostringstream out;
  write_metadata(out, report);
  out << '\n';
  write_text_matrix(out, "Accuracy", report, report.raw);
  out << '\n';
  write_text_matrix(out, "Chance baseline", report, report.baselines);
  out << '\n';
  write_text_matrix(out, "Corrected accuracy", report, report.corrected);
  return out.str();
}

}  // namespace gprobe
