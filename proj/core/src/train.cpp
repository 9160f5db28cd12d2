#include "aeinterp/train.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "aeinterp/error.hpp"
#include "aeinterp/random.hpp"

namespace aeinterp {

namespace {

constexpr std::uint64_t kShuffleStream = 0x9E3779B97F4A7C15ULL;

bool within_unit_interval(std::span<const double> xs) {
  constexpr double slack = 1e-12;
  for (double x : xs) {
    if (x < -slack || x > 1.0 + slack) return false;
  }
  return true;
}

double full_data_loss(const MlpModel& model, const Batch& inputs,
                      std::span<const double> targets) {
  const Batch out = forward_outputs(model, inputs);
  return mse_loss({out.data(), static_cast<std::size_t>(out.size())}, targets)
      .loss;
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs == 0) {
    throw Error(ErrorCode::kInvalidConfig, "epochs must be >= 1");
  }
  if (batch_size && *batch_size == 0) {
    throw Error(ErrorCode::kInvalidConfig, "batch size must be >= 1");
  }
  adam.validate();
}

std::pair<MlpModel, TrainReport> train(MlpModel model, const TimeSeries& series,
                                       const TrainConfig& config) {
  config.validate();
  validate_model(model);
  if (model.input_width != 1 || model.output_width() != 1) {
    throw Error(ErrorCode::kShapeMismatch,
                "training needs a scalar-in, scalar-out model");
  }

  TrainReport report;
  report.seed = config.seed;
  if (!within_unit_interval(series.times()) ||
      !within_unit_interval(series.values())) {
    report.warnings.emplace_back(
        "training series is not normalized to [0, 1]");
  }

  const auto n = series.size();
  const auto times = series.times();
  const auto values = series.values();
  Batch all_inputs(1, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    all_inputs(0, static_cast<Eigen::Index>(i)) = times[i];
  }

  const auto started = std::chrono::steady_clock::now();
  report.initial_loss = full_data_loss(model, all_inputs, values);

  const std::size_t batch = config.batch_size.value_or(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng shuffle_rng(config.seed ^ kShuffleStream);
  AdamState state = make_adam_state(model);
  const bool full_batch = batch >= n;

  report.loss_history.reserve(config.epochs);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (!full_batch && config.shuffle) {
      for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(order[i], order[shuffle_rng.below(i + 1)]);
      }
    }
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t begin = 0; begin < n; begin += batch) {
      const std::size_t end = std::min(n, begin + batch);
      const auto cols = static_cast<Eigen::Index>(end - begin);
      Batch inputs(1, cols);
      std::vector<double> targets(end - begin);
      for (std::size_t j = begin; j < end; ++j) {
        inputs(0, static_cast<Eigen::Index>(j - begin)) = times[order[j]];
        targets[j - begin] = values[order[j]];
      }
      auto fwd = forward(model, inputs);
      auto loss = mse_loss(
          {fwd.outputs.data(), static_cast<std::size_t>(fwd.outputs.size())},
          targets);
      const Batch out_grad =
          Eigen::Map<const Batch>(loss.gradient.data(), 1, cols);
      const auto grads = backward(model, fwd.cache, out_grad);
      adam_step(model, grads, state, config.adam);
      epoch_loss += loss.loss;
      ++batches;
    }
    epoch_loss /= static_cast<double>(batches);
    if (!std::isfinite(epoch_loss)) {
      throw Error(ErrorCode::kDiverged,
                  "training diverged at epoch " + std::to_string(epoch + 1),
                  epoch);
    }
    report.loss_history.push_back(epoch_loss);
  }

  report.final_loss = full_data_loss(model, all_inputs, values);
  if (!std::isfinite(report.final_loss)) {
    throw Error(ErrorCode::kDiverged, "training diverged after the last step",
                config.epochs);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return {std::move(model), std::move(report)};
}

}  // namespace aeinterp
