#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aeinterp/adam.hpp"
#include "aeinterp/mlp.hpp"
#include "aeinterp/series.hpp"

namespace aeinterp {

struct TrainConfig {
  std::size_t epochs = 1000;
  /// nullopt trains full-batch (one Adam step per epoch).
  std::optional<std::size_t> batch_size;
  AdamConfig adam;
  std::uint64_t seed = 0;
  /// Reshuffle sample order each epoch when mini-batching.
  bool shuffle = true;

  void validate() const;
};

struct TrainReport {
  std::vector<double> loss_history;  // one mean batch loss per epoch
  double initial_loss = 0.0;         // full-data MSE before the first step
  double final_loss = 0.0;           // full-data MSE after the last step
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

/// Fits `model` to (time -> value) by minimizing MSE with Adam. No
/// regularization and no early stopping. Throws Diverged (index = epoch) if
/// an epoch loss is non-finite. Bit-reproducible for a given config.
std::pair<MlpModel, TrainReport> train(MlpModel model, const TimeSeries& series,
                                       const TrainConfig& config);

}  // namespace aeinterp
