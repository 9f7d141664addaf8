#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gprobe {

/// Lower/upper clamp on output probabilities; caps per-sample BCE at ~27.6.
inline constexpr double kProbabilityClamp = 1e-12;

struct ProbeConfig {
  std::size_t input_dim = 300;
  std::size_t hidden_dim = 600;
  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  std::size_t patience = 10;
  std::size_t max_epochs = 500;
  double validation_fraction = 0.1;
  std::uint64_t seed = 0;

  /// hidden_dim = 2 * input_dim, everything else at defaults.
  static ProbeConfig for_input(std::size_t input_dim, std::uint64_t seed = 0);
  void validate() const;
  /// key=value pairs, used to stamp artifacts.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Feed-forward probe: p = sigmoid(w2 . tanh(w1 x + b1) + b2).
struct ProbeModel {
  Eigen::MatrixXd w1;     // hidden x input
  Eigen::VectorXd b1;     // hidden
  Eigen::RowVectorXd w2;  // 1 x hidden
  double b2 = 0.0;

  static ProbeModel zeros(std::size_t input_dim, std::size_t hidden_dim);
  /// Uniform in +-sqrt(6 / (fan_in + fan_out)) per layer, zero biases.
  static ProbeModel glorot(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed);

  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(w1.cols()); }
  std::size_t hidden_dim() const noexcept { return static_cast<std::size_t>(w1.rows()); }
  bool all_finite() const;

  friend bool operator==(const ProbeModel& a, const ProbeModel& b) {
    return a.w1 == b.w1 && a.b1 == b.b1 && a.w2 == b.w2 && a.b2 == b.b2;
  }
};

/// Same shapes as ProbeModel.
using ProbeGradients = ProbeModel;

/// Column-per-sample feature matrix with 0/1 labels (Uter = 1).
struct LabeledSet {
  Eigen::MatrixXd x;  // input_dim x n
  std::vector<int> y;

  std::size_t size() const noexcept { return y.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(x.rows()); }
  bool empty() const noexcept { return y.empty(); }

  static LabeledSet from_rows(const std::vector<std::vector<double>>& rows, std::vector<int> labels);
  LabeledSet subset(std::span<const std::size_t> indices) const;
  /// Share of the most frequent label.
  double majority_share() const;
};

/// Clamped logistic function.
double sigmoid(double z) noexcept;

double forward(const ProbeModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::VectorXd forward_batch(const ProbeModel& model, const Eigen::Ref<const Eigen::MatrixXd>& x);

double bce_loss(double p, int y) noexcept;

/// Analytic gradient of the mean batch BCE. The output-layer error term uses
/// the unclamped sigmoid, which is exact wherever the clamp is inactive.
ProbeGradients gradients(const ProbeModel& model, const LabeledSet& batch);

double mean_loss(const ProbeModel& model, const LabeledSet& data);

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double validation_loss = 0.0;
  double validation_accuracy = 0.0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

enum class StopReason { Patience, MaxEpochs };

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;  // 1-based, minimal validation loss
  StopReason stop = StopReason::MaxEpochs;
  std::size_t train_size = 0;
  std::size_t validation_size = 0;

  friend bool operator==(const TrainHistory&, const TrainHistory&) = default;
};

struct TrainedProbe {
  ProbeModel model;
  TrainHistory history;
};

/// Minibatch Adam (beta1 0.9, beta2 0.999, eps 1e-8) with early stopping on
/// a validation slice carved from `train_set` by the config seed. Returns the
/// parameters of the best validation epoch. Training starts from Glorot
/// hidden weights, a zero output row and an output bias at the log-odds of
/// the fit prior, so the untrained probe is the majority-class predictor.
///
/// Throws ArgumentError for empty/single-class/mis-shaped data and
/// NumericError if a loss or parameter becomes non-finite.
TrainedProbe train_probe(const LabeledSet& train_set, const ProbeConfig& config);

struct Evaluation {
  double accuracy = 0.0;  // [0,1]
  double mean_loss = 0.0;
  std::size_t count = 0;
};

/// Prediction is class 1 (Uter) when p >= 0.5.
Evaluation evaluate(const ProbeModel& model, const LabeledSet& test_set);

/// Model whose output probability is 1 - p for every input.
ProbeModel negate_output(const ProbeModel& model);

/// `#gpmodel v1 in=<d> hidden=<h>`, optional `#key=value` lines, then
/// `w1` rows, `b1`, `w2`, `b2` as tab-prefixed comma lists of shortest
/// round-trip decimals.
void save_checkpoint(std::ostream& out, const ProbeModel& model,
                     const std::vector<std::pair<std::string, std::string>>& metadata = {});
ProbeModel load_checkpoint(std::istream& in);

void write_history(std::ostream& out, const TrainHistory& history);
std::string_view to_string(StopReason reason) noexcept;

}  // namespace gprobe
