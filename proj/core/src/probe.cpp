#include "gprobe/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gprobe/error.hpp"
#include "gprobe/format.hpp"
#include "gprobe/random.hpp"

namespace gprobe {
namespace {

double logistic(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double clamp_probability(double p) noexcept {
  return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
}

void fill_uniform(Eigen::Ref<Eigen::MatrixXd> m, double limit, Rng& rng) {
  // Row-major fill order keeps the layout independent of Eigen's storage.
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.uniform(-limit, limit);
  }
}

void check_shape(const ProbeModel& model, std::size_t dim) {
  if (dim != model.input_dim()) {
    throw ArgumentError("input has dimension " + std::to_string(dim) + ", probe expects " +
                        std::to_string(model.input_dim()));
  }
}

struct AdamState {
  explicit AdamState(const ProbeModel& shape)
      : m(ProbeModel::zeros(shape.input_dim(), shape.hidden_dim())),
        v(ProbeModel::zeros(shape.input_dim(), shape.hidden_dim())) {}

  ProbeModel m;
  ProbeModel v;
  std::size_t t = 0;
};

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

template <class Param, class Grad, class Moment>
void adam_update(Param& theta, const Grad& g, Moment& m, Moment& v, double lr, double c1, double c2) {
  m = kBeta1 * m + (1.0 - kBeta1) * g;
  v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
  theta -= (lr * (m / c1).array() / ((v / c2).array().sqrt() + kAdamEps)).matrix();
}

void adam_step(ProbeModel& model, const ProbeGradients& g, AdamState& state, double lr) {
  ++state.t;
  const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(state.t));
  adam_update(model.w1, g.w1, state.m.w1, state.v.w1, lr, c1, c2);
  adam_update(model.b1, g.b1, state.m.b1, state.v.b1, lr, c1, c2);
  adam_update(model.w2, g.w2, state.m.w2, state.v.w2, lr, c1, c2);
  state.m.b2 = kBeta1 * state.m.b2 + (1.0 - kBeta1) * g.b2;
  state.v.b2 = kBeta2 * state.v.b2 + (1.0 - kBeta2) * g.b2 * g.b2;
  model.b2 -= lr * (state.m.b2 / c1) / (std::sqrt(state.v.b2 / c2) + kAdamEps);
}

}  // namespace

ProbeConfig ProbeConfig::for_input(std::size_t input_dim, std::uint64_t seed) {
  ProbeConfig c;
  c.input_dim = input_dim;
  c.hidden_dim = 2 * input_dim;
  c.seed = seed;
  return c;
}

void ProbeConfig::validate() const {
  if (input_dim == 0 || hidden_dim == 0) throw ArgumentError("probe dimensions must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ArgumentError("learning rate must be positive");
  }
  if (batch_size == 0 || patience == 0 || max_epochs == 0) {
    throw ArgumentError("batch size, patience and max epochs must be positive");
  }
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw ArgumentError("validation fraction must lie in (0,1)");
  }
}

std::vector<std::pair<std::string, std::string>> ProbeConfig::describe() const {
  return {{"input_dim", std::to_string(input_dim)},
          {"hidden_dim", std::to_string(hidden_dim)},
          {"learning_rate", format_double(learning_rate)},
          {"batch_size", std::to_string(batch_size)},
          {"patience", std::to_string(patience)},
          {"max_epochs", std::to_string(max_epochs)},
          {"validation_fraction", format_double(validation_fraction)},
          {"seed", std::to_string(seed)}};
}

ProbeModel ProbeModel::zeros(std::size_t input_dim, std::size_t hidden_dim) {
  const auto in = static_cast<Eigen::Index>(input_dim);
  const auto hid = static_cast<Eigen::Index>(hidden_dim);
  ProbeModel m;
  m.w1 = Eigen::MatrixXd::Zero(hid, in);
  m.b1 = Eigen::VectorXd::Zero(hid);
  m.w2 = Eigen::RowVectorXd::Zero(hid);
  m.b2 = 0.0;
  return m;
}

ProbeModel ProbeModel::glorot(std::size_t input_dim, std::size_t hidden_dim, std::uint64_t seed) {
  ProbeModel m = zeros(input_dim, hidden_dim);
  Rng rng(seed);
  fill_uniform(m.w1, std::sqrt(6.0 / static_cast<double>(input_dim + hidden_dim)), rng);
  fill_uniform(m.w2, std::sqrt(6.0 / static_cast<double>(hidden_dim + 1)), rng);
  return m;
}

bool ProbeModel::all_finite() const {
  return w1.allFinite() && b1.allFinite() && w2.allFinite() && std::isfinite(b2);
}

LabeledSet LabeledSet::from_rows(const std::vector<std::vector<double>>& rows,
                                 std::vector<int> labels) {
  if (rows.size() != labels.size()) throw ArgumentError("rows and labels differ in length");
  LabeledSet set;
  const std::size_t dim = rows.empty() ? 0 : rows.front().size();
  set.x.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != dim) throw ArgumentError("ragged feature rows");
    for (std::size_t i = 0; i < dim; ++i) {
      set.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[j][i];
    }
  }
  set.y = std::move(labels);
  return set;
}

LabeledSet LabeledSet::subset(std::span<const std::size_t> indices) const {
  LabeledSet out;
  out.x.resize(x.rows(), static_cast<Eigen::Index>(indices.size()));
  out.y.reserve(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    out.x.col(static_cast<Eigen::Index>(j)) = x.col(static_cast<Eigen::Index>(indices[j]));
    out.y.push_back(y[indices[j]]);
  }
  return out;
}

double LabeledSet::majority_share() const {
  if (y.empty()) return 0.0;
  const auto ones = static_cast<double>(std::count(y.begin(), y.end(), 1));
  const auto n = static_cast<double>(y.size());
  return std::max(ones, n - ones) / n;
}

double sigmoid(double z) noexcept { return clamp_probability(logistic(z)); }

double forward(const ProbeModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_shape(model, static_cast<std::size_t>(x.size()));
  const Eigen::VectorXd hidden = (model.w1 * x + model.b1).array().tanh().matrix();
  return sigmoid(model.w2.dot(hidden) + model.b2);
}

Eigen::VectorXd forward_batch(const ProbeModel& model, const Eigen::Ref<const Eigen::MatrixXd>& x) {
  check_shape(model, static_cast<std::size_t>(x.rows()));
  const Eigen::MatrixXd hidden = ((model.w1 * x).colwise() + model.b1).array().tanh().matrix();
  Eigen::VectorXd p = (model.w2 * hidden).transpose();
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = sigmoid(p(i) + model.b2);
  return p;
}

double bce_loss(double p, int y) noexcept {
  p = clamp_probability(p);
  return y == 1 ? -std::log(p) : -std::log(1.0 - p);
}

ProbeGradients gradients(const ProbeModel& model, const LabeledSet& batch) {
  if (batch.empty()) throw ArgumentError("gradient of an empty batch");
  check_shape(model, batch.dim());
  const auto n = static_cast<double>(batch.size());

  const Eigen::MatrixXd hidden =
      ((model.w1 * batch.x).colwise() + model.b1).array().tanh().matrix();
  Eigen::RowVectorXd z = model.w2 * hidden;
  Eigen::RowVectorXd dz(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    dz(i) = (logistic(z(i) + model.b2) - batch.y[static_cast<std::size_t>(i)]) / n;
  }

  ProbeGradients g;
  g.w2 = dz * hidden.transpose();
  g.b2 = dz.sum();
  const Eigen::MatrixXd d_pre =
      ((model.w2.transpose() * dz).array() * (1.0 - hidden.array().square())).matrix();
  g.w1 = d_pre * batch.x.transpose();
  g.b1 = d_pre.rowwise().sum();
  return g;
}

double mean_loss(const ProbeModel& model, const LabeledSet& data) {
  if (data.empty()) throw ArgumentError("loss over an empty set");
  const Eigen::VectorXd p = forward_batch(model, data.x);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += bce_loss(p(static_cast<Eigen::Index>(i)), data.y[i]);
  }
  return total / static_cast<double>(data.size());
}

Evaluation evaluate(const ProbeModel& model, const LabeledSet& test_set) {
  if (test_set.empty()) throw ArgumentError("evaluation on an empty test set");
  const Eigen::VectorXd p = forward_batch(model, test_set.x);
  std::size_t correct = 0;
  double loss = 0.0;
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    const double pi = p(static_cast<Eigen::Index>(i));
    const int predicted = pi >= 0.5 ? 1 : 0;
    correct += predicted == test_set.y[i] ? 1 : 0;
    loss += bce_loss(pi, test_set.y[i]);
  }
  const auto n = static_cast<double>(test_set.size());
  return {static_cast<double>(correct) / n, loss / n, test_set.size()};
}

ProbeModel negate_output(const ProbeModel& model) {
  ProbeModel out = model;
  out.w2 = -model.w2;
  out.b2 = -model.b2;
  return out;
}

TrainedProbe train_probe(const LabeledSet& train_set, const ProbeConfig& config) {
  config.validate();
  if (train_set.size() < 2) throw ArgumentError("training set needs at least two samples");
  if (train_set.dim() != config.input_dim) {
    throw ArgumentError("training vectors have dimension " + std::to_string(train_set.dim()) +
                        ", config expects " + std::to_string(config.input_dim));
  }
  for (int label : train_set.y) {
    if (label != 0 && label != 1) throw ArgumentError("labels must be 0 or 1");
  }
  const auto ones = static_cast<std::size_t>(std::count(train_set.y.begin(), train_set.y.end(), 1));
  if (ones == 0 || ones == train_set.size()) {
    throw ArgumentError("training set contains a single class; the probe would be meaningless");
  }
  if (!train_set.x.allFinite()) throw ArgumentError("training vectors contain non-finite values");

  // Validation slice.
  const std::size_t n = train_set.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng split_rng(derive_seed(config.seed, "probe.validation"));
  split_rng.shuffle(order);
  std::size_t val_n = static_cast<std::size_t>(
      std::llround(config.validation_fraction * static_cast<double>(n)));
  val_n = std::clamp<std::size_t>(val_n, 1, n - 1);
  std::vector<std::size_t> val_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(val_n));
  std::vector<std::size_t> fit_idx(order.begin() + static_cast<std::ptrdiff_t>(val_n), order.end());
  std::sort(val_idx.begin(), val_idx.end());
  std::sort(fit_idx.begin(), fit_idx.end());
  const LabeledSet validation = train_set.subset(val_idx);
  const LabeledSet fit = train_set.subset(fit_idx);

  ProbeModel model =
      ProbeModel::glorot(config.input_dim, config.hidden_dim, derive_seed(config.seed, "probe.init"));
  {
    // Output bias starts at the log-odds of the fit prior.
    const auto fit_ones = static_cast<double>(std::count(fit.y.begin(), fit.y.end(), 1));
    const double prior = std::clamp(fit_ones / static_cast<double>(fit.size()), 0.01, 0.99);
    model.b2 = std::log(prior / (1.0 - prior));
    model.w2.setZero();
  }
  ProbeModel best = model;
  AdamState adam(model);
  Rng batch_rng(derive_seed(config.seed, "probe.batches"));

  TrainHistory history;
  history.train_size = fit.size();
  history.validation_size = validation.size();
  double best_loss = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;

  std::vector<std::size_t> batch_order(fit.size());
  std::iota(batch_order.begin(), batch_order.end(), std::size_t{0});

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    batch_rng.shuffle(batch_order);
    for (std::size_t start = 0; start < batch_order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(start + config.batch_size, batch_order.size());
      const LabeledSet batch =
          fit.subset(std::span<const std::size_t>(batch_order.data() + start, stop - start));
      adam_step(model, gradients(model, batch), adam, config.learning_rate);
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = mean_loss(model, fit);
    const Evaluation val = evaluate(model, validation);
    record.validation_loss = val.mean_loss;
    record.validation_accuracy = val.accuracy;
    if (!model.all_finite() || !std::isfinite(record.train_loss) ||
        !std::isfinite(record.validation_loss)) {
      throw NumericError("non-finite loss or parameters at epoch " + std::to_string(epoch) +
                         " (train_loss=" + format_double(record.train_loss) +
                         ", validation_loss=" + format_double(record.validation_loss) + ")");
    }
    history.epochs.push_back(record);

    if (record.validation_loss < best_loss) {
      best_loss = record.validation_loss;
      best = model;
      history.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      history.stop = StopReason::Patience;
      return {std::move(best), std::move(history)};
    }
  }
  history.stop = StopReason::MaxEpochs;
  return {std::move(best), std::move(history)};
}

namespace {

void write_row(std::ostream& out, std::string_view tag, const double* values, Eigen::Index count) {
  std::string row(tag);
  row.push_back('\t');
  for (Eigen::Index i = 0; i < count; ++i) {
    if (i) row.push_back(',');
    row += format_double(values[i]);
  }
  row.push_back('\n');
  out << row;
}

std::vector<double> parse_row(const std::string& line, std::string_view tag, std::size_t expected,
                              std::size_t line_no) {
  const auto tab = line.find('\t');
  if (tab == std::string::npos || std::string_view(line).substr(0, tab) != tag) {
    throw ParseError(line_no, "expected '" + std::string(tag) + "' row");
  }
  std::vector<double> values;
  for (std::string_view f : split(std::string_view(line).substr(tab + 1), ',')) {
    values.push_back(parse_double(f, line_no));
  }
  if (values.size() != expected) {
    throw ParseError(line_no, "'" + std::string(tag) + "' row has " + std::to_string(values.size()) +
                                  " values, expected " + std::to_string(expected));
  }
  return values;
}

}  // namespace

void save_checkpoint(std::ostream& out, const ProbeModel& model,
                     const std::vector<std::pair<std::string, std::string>>& metadata) {
  out << "#gpmodel v1 in=" << model.input_dim() << " hidden=" << model.hidden_dim() << '\n';
  for (const auto& [key, value] : metadata) out << '#' << key << '=' << value << '\n';
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> w1 = model.w1;
  for (Eigen::Index r = 0; r < w1.rows(); ++r) write_row(out, "w1", w1.row(r).data(), w1.cols());
  write_row(out, "b1", model.b1.data(), model.b1.size());
  write_row(out, "w2", model.w2.data(), model.w2.size());
  write_row(out, "b2", &model.b2, 1);
}

ProbeModel load_checkpoint(std::istream& in) {
  std::string line;
  if (!read_line(in, line) || !line.starts_with("#gpmodel v1 ")) {
    throw ParseError(1, "missing '#gpmodel v1' header");
  }
  long long in_dim = -1;
  long long hidden = -1;
  for (std::string_view f : split(std::string_view(line).substr(12), ' ')) {
    if (f.starts_with("in=")) in_dim = parse_int(f.substr(3), 1);
    else if (f.starts_with("hidden=")) hidden = parse_int(f.substr(7), 1);
  }
  if (in_dim <= 0 || hidden <= 0) throw ParseError(1, "header needs positive in= and hidden=");

  ProbeModel model = ProbeModel::zeros(static_cast<std::size_t>(in_dim), static_cast<std::size_t>(hidden));
  std::size_t line_no = 1;
  auto next = [&]() -> const std::string& {
    do {
      if (!read_line(in, line)) throw ParseError(line_no + 1, "truncated checkpoint");
      ++line_no;
    } while (line.empty() || line.front() == '#');
    return line;
  };
  for (Eigen::Index r = 0; r < hidden; ++r) {
    const auto row = parse_row(next(), "w1", static_cast<std::size_t>(in_dim), line_no);
    for (Eigen::Index c = 0; c < in_dim; ++c) model.w1(r, c) = row[static_cast<std::size_t>(c)];
  }
  const auto b1 = parse_row(next(), "b1", static_cast<std::size_t>(hidden), line_no);
  const auto w2 = parse_row(next(), "w2", static_cast<std::size_t>(hidden), line_no);
  for (Eigen::Index i = 0; i < hidden; ++i) {
    model.b1(i) = b1[static_cast<std::size_t>(i)];
    model.w2(i) = w2[static_cast<std::size_t>(i)];
  }
  model.b2 = parse_row(next(), "b2", 1, line_no).front();
  return model;
}

std::string_view to_string(StopReason reason) noexcept {
  return reason == StopReason::Patience ? "patience" : "max_epochs";
}

void write_history(std::ostream& out, const TrainHistory& history) {
  out << "#best_epoch=" << history.best_epoch << '\n';
  out << "#stop=" << to_string(history.stop) << '\n';
  out << "#train_size=" << history.train_size << '\n';
  out << "#validation_size=" << history.validation_size << '\n';
  out << "epoch\ttrain_loss\tvalidation_loss\tvalidation_accuracy\n";
  for (const auto& e : history.epochs) {
    out << e.epoch << '\t' << format_double(e.train_loss) << '\t' << format_double(e.validation_loss)
        << '\t' << format_double(e.validation_accuracy) << '\n';
  }
}

}  // namespace gprobe
