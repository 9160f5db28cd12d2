#include "aeinterp/mlp.hpp"

#include <charconv>
#include <cmath>

#include "aeinterp/error.hpp"
#include "aeinterp/random.hpp"

namespace aeinterp {

std::string_view to_string(Activation activation) {
  switch (activation) {
    case Activation::kLinear: return "linear";
    case Activation::kRelu: return "relu";
  }
  return "linear";
}

Activation activation_from_string(std::string_view name) {
  if (name == "linear") return Activation::kLinear;
  if (name == "relu") return Activation::kRelu;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown activation '" + std::string(name) + "'");
}

std::vector<LayerSpec> default_architecture() {
  return {{1, Activation::kLinear},  {128, Activation::kRelu},
          {64, Activation::kRelu},   {32, Activation::kRelu},
          {64, Activation::kRelu},   {128, Activation::kRelu},
          {1, Activation::kLinear}};
}

std::vector<LayerSpec> parse_architecture(std::string_view text) {
  std::vector<LayerSpec> layers;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto token = text.substr(
        pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    if (token.size() < 2) {
      throw Error(ErrorCode::kInvalidConfig,
                  "bad layer token '" + std::string(token) + "'");
    }
    LayerSpec spec;
    const char tag = token.back();
    if (tag == 'L' || tag == 'l') {
      spec.activation = Activation::kLinear;
    } else if (tag == 'R' || tag == 'r') {
      spec.activation = Activation::kRelu;
    } else {
      throw Error(ErrorCode::kInvalidConfig,
                  "layer token '" + std::string(token) + "' must end in L or R");
    }
    const auto digits = token.substr(0, token.size() - 1);
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), spec.width);
    if (ec != std::errc() || ptr != digits.data() + digits.size() ||
        spec.width == 0) {
      throw Error(ErrorCode::kInvalidConfig,
                  "bad layer width in '" + std::string(token) + "'");
    }
    layers.push_back(spec);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return layers;
}

std::string format_architecture(std::span<const LayerSpec> layers) {
  std::string out;
  for (const auto& l : layers) {
    if (!out.empty()) out += ',';
    out += std::to_string(l.width);
    out += l.activation == Activation::kRelu ? 'R' : 'L';
  }
  return out;
}

std::size_t MlpModel::output_width() const {
  return layers.empty() ? input_width : layers.back().fan_out();
}

std::size_t MlpModel::parameter_count() const {
  std::size_t count = 0;
  for (const auto& l : layers) {
    count += static_cast<std::size_t>(l.weights.size() + l.bias.size());
  }
  return count;
}

std::vector<LayerSpec> MlpModel::architecture() const {
  std::vector<LayerSpec> specs;
  specs.reserve(layers.size());
  for (const auto& l : layers) specs.push_back({l.fan_out(), l.activation});
  return specs;
}

bool operator==(const MlpModel& a, const MlpModel& b) {
  if (a.input_width != b.input_width || a.layers.size() != b.layers.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.layers.size(); ++i) {
    const auto& la = a.layers[i];
    const auto& lb = b.layers[i];
    if (la.activation != lb.activation ||
        la.weights.rows() != lb.weights.rows() ||
        la.weights.cols() != lb.weights.cols() ||
        la.bias.size() != lb.bias.size() || la.weights != lb.weights ||
        la.bias != lb.bias) {
      return false;
    }
  }
  return true;
}

void validate_model(const MlpModel& model) {
  if (model.layers.empty()) {
    throw Error(ErrorCode::kEmptyArchitecture, "model has no layers");
  }
  std::size_t fan_in = model.input_width;
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    const auto& l = model.layers[i];
    if (l.fan_in() != fan_in || l.fan_out() == 0 ||
        static_cast<std::size_t>(l.bias.size()) != l.fan_out()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "layer " + std::to_string(i) + " does not chain", i);
    }
    if (!l.weights.allFinite() || !l.bias.allFinite()) {
      throw Error(ErrorCode::kNonFinite,
                  "layer " + std::to_string(i) + " has non-finite parameters", i);
    }
    fan_in = l.fan_out();
  }
}

MlpModel build_mlp(std::size_t input_width, std::span<const LayerSpec> layers,
                   std::uint64_t seed) {
  if (layers.empty()) {
    throw Error(ErrorCode::kEmptyArchitecture, "layer list is empty");
  }
  if (input_width == 0) {
    throw Error(ErrorCode::kInvalidConfig, "input width must be positive");
  }
  Rng rng(seed);
  MlpModel model;
  model.input_width = input_width;
  std::size_t fan_in = input_width;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& spec = layers[i];
    if (spec.width == 0) {
      throw Error(ErrorCode::kInvalidConfig, "layer width must be positive", i);
    }
    const auto rows = static_cast<Eigen::Index>(spec.width);
    const auto cols = static_cast<Eigen::Index>(fan_in);
    DenseLayer layer{Matrix(rows, cols), Vector::Zero(rows), spec.activation};
    const double limit =
        std::sqrt(6.0 / static_cast<double>(fan_in + spec.width));
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        layer.weights(r, c) = rng.uniform(-limit, limit);
      }
    }
    model.layers.push_back(std::move(layer));
    fan_in = spec.width;
  }
  return model;
}

std::vector<double> flatten_parameters(const MlpModel& model) {
  std::vector<double> flat;
  flat.reserve(model.parameter_count());
  for (const auto& l : model.layers) {
    flat.insert(flat.end(), l.weights.data(), l.weights.data() + l.weights.size());
    flat.insert(flat.end(), l.bias.data(), l.bias.data() + l.bias.size());
  }
  return flat;
}

void assign_parameters(MlpModel& model, std::span<const double> flat) {
  if (flat.size() != model.parameter_count()) {
    throw Error(ErrorCode::kCountMismatch,
                "expected " + std::to_string(model.parameter_count()) +
                    " parameters, got " + std::to_string(flat.size()));
  }
  std::size_t offset = 0;
  for (auto& l : model.layers) {
    const auto nw = static_cast<std::size_t>(l.weights.size());
    std::copy_n(flat.data() + offset, nw, l.weights.data());
    offset += nw;
    const auto nb = static_cast<std::size_t>(l.bias.size());
    std::copy_n(flat.data() + offset, nb, l.bias.data());
    offset += nb;
  }
}

namespace {

void check_input(const MlpModel& model, const Batch& inputs) {
  if (model.layers.empty()) {
    throw Error(ErrorCode::kEmptyArchitecture, "model has no layers");
  }
  if (static_cast<std::size_t>(inputs.rows()) != model.input_width) {
    throw Error(ErrorCode::kShapeMismatch,
                "input has " + std::to_string(inputs.rows()) +
                    " features, model expects " +
                    std::to_string(model.input_width));
  }
}

void apply_activation(Activation activation, Batch& z) {
  if (activation == Activation::kRelu) z = z.cwiseMax(0.0);
}

}  // namespace

ForwardResult forward(const MlpModel& model, const Batch& inputs) {
  check_input(model, inputs);
  ForwardResult result;
  auto& cache = result.cache;
  cache.inputs.reserve(model.layers.size());
  cache.preactivations.reserve(model.layers.size());
  Batch a = inputs;
  for (const auto& l : model.layers) {
    Batch z(l.weights.rows(), a.cols());
    z.noalias() = l.weights * a;
    z.colwise() += l.bias;
    cache.inputs.push_back(std::move(a));
    a = z;
    apply_activation(l.activation, a);
    cache.preactivations.push_back(std::move(z));
  }
  result.outputs = std::move(a);
  return result;
}

Batch forward_outputs(const MlpModel& model, const Batch& inputs) {
  check_input(model, inputs);
  Batch a = inputs;
  for (const auto& l : model.layers) {
    Batch z(l.weights.rows(), a.cols());
    z.noalias() = l.weights * a;
    z.colwise() += l.bias;
    apply_activation(l.activation, z);
    a = std::move(z);
  }
  return a;
}

LossResult mse_loss(std::span<const double> predictions,
                    std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "predictions and targets differ in length");
  }
  if (predictions.empty()) {
    throw Error(ErrorCode::kEmpty, "mse of an empty batch");
  }
  const double n = static_cast<double>(predictions.size());
  LossResult result;
  result.gradient.resize(predictions.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - targets[i];
    sum += d * d;
    result.gradient[i] = 2.0 * d / n;
  }
  result.loss = sum / n;
  return result;
}

MlpGradients backward(const MlpModel& model, const ForwardCache& cache,
                      const Batch& output_gradient) {
  const std::size_t depth = model.layers.size();
  if (cache.inputs.size() != depth || cache.preactivations.size() != depth) {
    throw Error(ErrorCode::kCacheMismatch,
                "cache holds " + std::to_string(cache.inputs.size()) +
                    " layers, model has " + std::to_string(depth));
  }
  for (std::size_t i = 0; i < depth; ++i) {
    const auto& l = model.layers[i];
    if (static_cast<std::size_t>(cache.inputs[i].rows()) != l.fan_in() ||
        static_cast<std::size_t>(cache.preactivations[i].rows()) != l.fan_out() ||
        cache.inputs[i].cols() != output_gradient.cols() ||
        cache.preactivations[i].cols() != output_gradient.cols()) {
      throw Error(ErrorCode::kCacheMismatch,
                  "cache does not match layer " + std::to_string(i), i);
    }
  }
  if (static_cast<std::size_t>(output_gradient.rows()) != model.output_width()) {
    throw Error(ErrorCode::kShapeMismatch,
                "output gradient has wrong feature count");
  }

  MlpGradients grads;
  grads.weights.resize(depth);
  grads.biases.resize(depth);
  Batch delta = output_gradient;
  for (std::size_t i = depth; i-- > 0;) {
    const auto& l = model.layers[i];
    if (l.activation == Activation::kRelu) {
      delta = delta.cwiseProduct(
          (cache.preactivations[i].array() > 0.0).cast<double>().matrix());
    }
    grads.weights[i].noalias() = delta * cache.inputs[i].transpose();
    grads.biases[i] = delta.rowwise().sum();
    if (i > 0) {
      Batch upstream(l.weights.cols(), delta.cols());
      upstream.noalias() = l.weights.transpose() * delta;
      delta = std::move(upstream);
    }
  }
  return grads;
}

std::vector<double> flatten_gradients(const MlpGradients& grads) {
  std::vector<double> flat;
  for (std::size_t i = 0; i < grads.weights.size(); ++i) {
    const auto& w = grads.weights[i];
    const auto& b = grads.biases[i];
    flat.insert(flat.end(), w.data(), w.data() + w.size());
    flat.insert(flat.end(), b.data(), b.data() + b.size());
  }
  return flat;
}

std::vector<double> predict(const MlpModel& model, std::span<const double> times) {
  if (model.input_width != 1 || model.output_width() != 1) {
    throw Error(ErrorCode::kShapeMismatch,
                "predict needs a scalar-in, scalar-out model");
  }
  if (times.empty()) return {};
  Batch inputs(1, static_cast<Eigen::Index>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    inputs(0, static_cast<Eigen::Index>(i)) = times[i];
  }
  const Batch out = forward_outputs(model, inputs);
  return std::vector<double>(out.data(), out.data() + out.size());
}

}  // namespace aeinterp
