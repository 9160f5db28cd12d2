#include "aeinterp/adam.hpp"

#include <cmath>
#include <string>

#include "aeinterp/error.hpp"

namespace aeinterp {

void AdamConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::kInvalidConfig, "learning rate must be > 0");
  }
  if (!(beta1 > 0.0 && beta1 < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "beta1 must lie in (0, 1)");
  }
  if (!(beta2 > 0.0 && beta2 < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "beta2 must lie in (0, 1)");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidConfig, "epsilon must be > 0");
  }
}

AdamState make_adam_state(const MlpModel& model) {
  AdamState state;
  for (const auto& l : model.layers) {
    for (const auto n : {static_cast<std::size_t>(l.weights.size()),
                         static_cast<std::size_t>(l.bias.size())}) {
      state.first_moment.emplace_back(n, 0.0);
      state.second_moment.emplace_back(n, 0.0);
    }
  }
  return state;
}

void adam_update(std::span<double> params, std::span<const double> grads,
                 std::span<double> first_moment, std::span<double> second_moment,
                 std::uint64_t t, const AdamConfig& config) {
  if (grads.size() != params.size() || first_moment.size() != params.size() ||
      second_moment.size() != params.size()) {
    throw Error(ErrorCode::kShapeMismatch, "adam block sizes disagree");
  }
  const double td = static_cast<double>(t);
  const double correction1 = 1.0 - std::pow(config.beta1, td);
  const double correction2 = 1.0 - std::pow(config.beta2, td);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    first_moment[i] = config.beta1 * first_moment[i] + (1.0 - config.beta1) * g;
    second_moment[i] =
        config.beta2 * second_moment[i] + (1.0 - config.beta2) * g * g;
    const double m_hat = first_moment[i] / correction1;
    const double v_hat = second_moment[i] / correction2;
    params[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
  }
}

void adam_step(MlpModel& model, const MlpGradients& grads, AdamState& state,
               const AdamConfig& config) {
  const std::size_t depth = model.layers.size();
  if (grads.weights.size() != depth || grads.biases.size() != depth ||
      state.first_moment.size() != 2 * depth ||
      state.second_moment.size() != 2 * depth) {
    throw Error(ErrorCode::kShapeMismatch,
                "gradients or optimizer state do not match the model");
  }
  for (std::size_t i = 0; i < depth; ++i) {
    if (grads.weights[i].rows() != model.layers[i].weights.rows() ||
        grads.weights[i].cols() != model.layers[i].weights.cols() ||
        grads.biases[i].size() != model.layers[i].bias.size()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "gradient shape mismatch at layer " + std::to_string(i), i);
    }
  }
  ++state.step;
  for (std::size_t i = 0; i < depth; ++i) {
    auto& l = model.layers[i];
    adam_update({l.weights.data(), static_cast<std::size_t>(l.weights.size())},
                {grads.weights[i].data(),
                 static_cast<std::size_t>(grads.weights[i].size())},
                state.first_moment[2 * i], state.second_moment[2 * i],
                state.step, config);
    adam_update({l.bias.data(), static_cast<std::size_t>(l.bias.size())},
                {grads.biases[i].data(),
                 static_cast<std::size_t>(grads.biases[i].size())},
                state.first_moment[2 * i + 1], state.second_moment[2 * i + 1],
                state.step, config);
  }
}

}  // namespace aeinterp
