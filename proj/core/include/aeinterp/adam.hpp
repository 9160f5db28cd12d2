#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aeinterp/mlp.hpp"

namespace aeinterp {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;

  /// InvalidConfig unless lr > 0, 0 < beta1 < 1, 0 < beta2 < 1, eps > 0.
  void validate() const;
};

/// First and second moment accumulators, one block per parameter array
/// (layer weights, then layer bias, for each layer).
struct AdamState {
  std::vector<std::vector<double>> first_moment;
  std::vector<std::vector<double>> second_moment;
  std::uint64_t step = 0;
};

AdamState make_adam_state(const MlpModel& model);

/// The Adam recurrence over one flat block, for a step counter `t` that has
/// already been incremented (t >= 1):
///   m = b1 m + (1 - b1) g;  v = b2 v + (1 - b2) g^2
///   theta -= lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
void adam_update(std::span<double> params, std::span<const double> grads,
                 std::span<double> first_moment, std::span<double> second_moment,
                 std::uint64_t t, const AdamConfig& config);

/// Advances state.step by one and updates every parameter of `model`.
void adam_step(MlpModel& model, const MlpGradients& grads, AdamState& state,
               const AdamConfig& config);

}  // namespace aeinterp
