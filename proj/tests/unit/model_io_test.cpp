#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "aeinterp/error.hpp"
#include "aeinterp/model_io.hpp"
#include "aeinterp/train.hpp"
#include "oracles.hpp"

namespace aeinterp {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected aeinterp::Error";
  return ErrorCode::kIo;
}

ModelBundle trained_mlp() {
  std::vector<double> t{0, 0.25, 0.5, 0.75, 1}, v{0.1, 0.9, 0.3, 1.0, 0.0};
  TrainConfig cfg;
  cfg.epochs = 5;
  auto [model, report] = train(build_mlp(1, default_architecture(), 0), TimeSeries(t, v), cfg);
  ModelBundle b{std::move(model), NormalizationParams(1594247088.289515, 1594247110.290019, 33, 112), {}};
  b.provenance.seed = 0;
  b.provenance.epochs = 5;
  b.provenance.final_loss = report.final_loss;
  b.provenance.grid_anchor = {{0.0, 0.25, 1.0}};
  return b;
}

std::vector<ModelBundle> every_kind() {
  std::vector<ModelBundle> out;
  out.push_back(trained_mlp());
  const TimeSeries s({0, 0.1, 0.45, 0.7, 1.0}, {0.3, 1.0 / 3.0, 0.9, 0.0, 0.125});
  out.push_back({fit_linear(s), std::nullopt, {}});
  out.push_back({fit_polynomial(s), NormalizationParams(0, 10, -1, 1), {}});
  out.push_back({fit_spline(s), std::nullopt, {}});
  return out;
}

TEST(ModelIo, DefaultMlpParameterCountField) {
  const auto text = save_model(trained_mlp());
  EXPECT_NE(text.find("\"parameter_count\": 21155"), std::string::npos);
  EXPECT_NE(text.find("\"format_version\": 1"), std::string::npos);
}

TEST(ModelIo, RoundTripIsBitExactForEveryKind) {
  for (const auto& b : every_kind()) {
    const auto text = save_model(b);
    const auto back = load_model(text);
    EXPECT_EQ(back, b) << model_kind(b.model);
    EXPECT_EQ(save_model(back), text) << model_kind(b.model);
  }
}

TEST(ModelIo, RandomParametersRoundTripProperty) {
  std::mt19937_64 rng(1);
  auto model = build_mlp(1, parse_architecture("5R,3R,1L"), 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> flat(model.parameter_count());
    for (auto& x : flat) {
      // Raw bit patterns cover subnormals and extreme exponents.
      std::uint64_t bits = rng();
      std::memcpy(&x, &bits, sizeof x);
      if (!std::isfinite(x)) x = 1.0 / 3.0;
    }
    assign_parameters(model, flat);
    const ModelBundle b{model, std::nullopt, {}};
    ASSERT_EQ(load_model(save_model(b)), b);
  }
}

TEST(ModelIo, SaveIsCanonical) {
  const auto b = trained_mlp();
  EXPECT_EQ(save_model(b), save_model(b));
}

TEST(ModelIo, TruncatedFileIsCorrupt) {
  const auto text = save_model(every_kind()[1]);
  EXPECT_EQ(code_of([&] { load_model(text.substr(0, text.size() / 2)); }), ErrorCode::kCorrupt);
  EXPECT_EQ(code_of([] { load_model(""); }), ErrorCode::kCorrupt);
  EXPECT_EQ(code_of([] { load_model("{\"format_version\": 1}"); }), ErrorCode::kCorrupt);
}

TEST(ModelIo, UnknownVersion) {
  auto text = save_model(every_kind()[1]);
  const auto pos = text.find("\"format_version\": 1");
  text.replace(pos, 19, "\"format_version\": 999");
  EXPECT_EQ(code_of([&] { load_model(text); }), ErrorCode::kUnknownVersion);
}

TEST(ModelIo, TamperedCountsAreDetected) {
  auto text = save_model(trained_mlp());
  auto pos = text.find("\"parameter_count\": 21155");
  auto tampered = text;
  tampered.replace(pos, 24, "\"parameter_count\": 21154");
  EXPECT_EQ(code_of([&] { load_model(tampered); }), ErrorCode::kCountMismatch);

  tampered = text;
  pos = tampered.find("\"width\": 128");
  tampered.replace(pos, 12, "\"width\": 127");
  EXPECT_EQ(code_of([&] { load_model(tampered); }), ErrorCode::kCountMismatch);

  auto spline_text = save_model(every_kind()[3]);
  pos = spline_text.find("\"knot_count\": 5");
  spline_text.replace(pos, 15, "\"knot_count\": 4");
  EXPECT_EQ(code_of([&] { load_model(spline_text); }), ErrorCode::kCountMismatch);
}

TEST(ModelIo, EvaluateBundleAppliesNormalization) {
  const TimeSeries raw({10, 20, 30}, {100, 300, 200});
  const auto [norm, params] = normalize(raw);
  const ModelBundle b{fit_spline(norm), params, {}};
  const auto out = evaluate_bundle(b, raw.times());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(out[i], raw.values()[i], 1e-12);
}

TEST(ModelIo, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "aeinterp_model_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "m.model.json";
  const auto b = every_kind()[2];
  save_model_file(b, path);
  EXPECT_EQ(load_model_file(path), b);
  EXPECT_EQ(code_of([&] { load_model_file(dir / "missing.json"); }), ErrorCode::kIo);
}

}  // namespace
}  // namespace aeinterp
