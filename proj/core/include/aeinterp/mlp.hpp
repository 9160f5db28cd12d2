#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aeinterp {

enum class Activation { kLinear, kRelu };

std::string_view to_string(Activation activation);
Activation activation_from_string(std::string_view name);

struct LayerSpec {
  std::size_t width = 1;
  Activation activation = Activation::kLinear;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// 1 linear, 128 relu, 64 relu, 32 relu, 64 relu, 128 relu, 1 linear.
std::vector<LayerSpec> default_architecture();

/// Parses the compact form "1L,128R,64R" (L = linear, R = relu).
std::vector<LayerSpec> parse_architecture(std::string_view text);
std::string format_architecture(std::span<const LayerSpec> layers);

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
/// Features x samples; one column per sample.
using Batch = Eigen::MatrixXd;

struct DenseLayer {
  Matrix weights;  // fan_out x fan_in
  Vector bias;     // fan_out
  Activation activation = Activation::kLinear;

  std::size_t fan_in() const { return static_cast<std::size_t>(weights.cols()); }
  std::size_t fan_out() const { return static_cast<std::size_t>(weights.rows()); }
};

struct MlpModel {
  std::size_t input_width = 1;
  std::vector<DenseLayer> layers;

  std::size_t output_width() const;
  std::size_t parameter_count() const;
  std::vector<LayerSpec> architecture() const;

  friend bool operator==(const MlpModel& a, const MlpModel& b);
};

/// Throws ShapeMismatch when layer dimensions do not chain and NonFinite on a
/// non-finite parameter.
void validate_model(const MlpModel& model);

/// Glorot-uniform weights on +-sqrt(6 / (fan_in + fan_out)) drawn row-major,
/// layer by layer, from Rng(seed); zero biases.
MlpModel build_mlp(std::size_t input_width, std::span<const LayerSpec> layers,
                   std::uint64_t seed);

/// Per-layer weights (row-major) then biases, layers in order.
std::vector<double> flatten_parameters(const MlpModel& model);
void assign_parameters(MlpModel& model, std::span<const double> flat);

struct ForwardCache {
  std::vector<Batch> inputs;          // activation entering each layer
  std::vector<Batch> preactivations;  // W x + b of each layer
};

struct ForwardResult {
  Batch outputs;
  ForwardCache cache;
};

ForwardResult forward(const MlpModel& model, const Batch& inputs);

/// Forward pass without retaining intermediate activations.
Batch forward_outputs(const MlpModel& model, const Batch& inputs);

struct LossResult {
  double loss = 0.0;
  std::vector<double> gradient;  // dL/dprediction
};

/// Mean squared error (1/n) sum (p - y)^2 and its gradient (2/n)(p - y).
LossResult mse_loss(std::span<const double> predictions,
                    std::span<const double> targets);

struct MlpGradients {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

/// Reverse-mode gradients for dL/doutputs = `output_gradient` (same shape as
/// the forward outputs). The relu derivative at exactly 0 is 0.
MlpGradients backward(const MlpModel& model, const ForwardCache& cache,
                      const Batch& output_gradient);

std::vector<double> flatten_gradients(const MlpGradients& grads);

/// Scalar-in, scalar-out evaluation at each time. Requires input and output
/// width 1.
std::vector<double> predict(const MlpModel& model, std::span<const double> times);

}  // namespace aeinterp
