#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "aeinterp/csv.hpp"
#include "aeinterp/model_io.hpp"
#include "cli/commands.hpp"
#include "cli/manifest.hpp"

namespace fs = std::filesystem;

namespace aeinterp::cli {
namespace {

constexpr const char* kSmallArch = "1L,8R,8R,1L";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("aeinterp_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int invoke(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  fs::path write_csv(const std::string& name, std::vector<double> t, std::vector<double> v) {
    const auto path = dir_ / name;
    std::ofstream f(path);
    write_series_csv(f, TimeSeries(std::move(t), std::move(v)));
    return path;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  static std::size_t data_rows(const fs::path& p) {
    std::ifstream f(p);
    std::string line;
    std::size_t n = 0;
    while (std::getline(f, line)) {
      if (!line.empty() && line[0] != '#') ++n;
    }
    return n - 1;  // header
  }

  fs::path fixture() const { return fs::path(AEINTERP_TEST_DATA_DIR) / "message_log.csv"; }

  std::string train_small(const fs::path& out, const std::string& epochs = "20") {
    EXPECT_EQ(invoke({"train", fixture().string(), "-o", out.string(), "--epochs", epochs,
                      "--arch", kSmallArch}),
              0)
        << err_.str();
    return (out / "model.model.json").string();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}), 2);
  EXPECT_EQ(invoke({"frobnicate"}), 2);
  EXPECT_EQ(invoke({"train"}), 2);
  EXPECT_NE(err_.str().find("error: code=Usage"), std::string::npos);
  EXPECT_EQ(invoke({"--help"}), 0);
}

TEST_F(CliTest, ZeroEpochsRejected) {
  EXPECT_EQ(invoke({"train", fixture().string(), "-o", (dir_ / "t").string(), "--epochs", "0"}),
            1);
  EXPECT_NE(err_.str().find("error: code=InvalidConfig"), std::string::npos);
}

TEST_F(CliTest, MissingInputReportsIo) {
  EXPECT_EQ(invoke({"derivative", (dir_ / "nope.csv").string(), "-o", dir_.string()}), 1);
  EXPECT_NE(err_.str().find("code="), std::string::npos);
}

TEST_F(CliTest, TrainTwiceIsByteIdentical) {
  const auto a = train_small(dir_ / "a");
  const auto b = train_small(dir_ / "b");
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(dir_ / "a" / "loss.csv"), slurp(dir_ / "b" / "loss.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "a" / "manifest.json"));
  const auto bundle = load_model_file(a);
  ASSERT_TRUE(bundle.normalization.has_value());
  EXPECT_EQ(bundle.normalization->t_start, 1594247088.289515);
  EXPECT_EQ(bundle.normalization->v_max, 112.0);
}

TEST_F(CliTest, PredictRowCounts) {
  const auto model = train_small(dir_ / "m", "3");
  ASSERT_EQ(invoke({"predict", model, "-o", (dir_ / "p").string()}), 0) << err_.str();
  EXPECT_EQ(data_rows(dir_ / "p" / "interpolated.csv"), 10000u);
  ASSERT_EQ(invoke({"predict", model, "-o", (dir_ / "q").string(), "--points", "2"}), 0);
  EXPECT_EQ(data_rows(dir_ / "q" / "interpolated.csv"), 2u);
  EXPECT_EQ(invoke({"predict", model, "-o", (dir_ / "r").string(), "--points", "1"}), 1);
}

TEST_F(CliTest, ExtrapolatedRowCountIsReported) {
  const auto model = train_small(dir_ / "m", "2");
  for (const std::string points : {"2", "10000"}) {
    ASSERT_EQ(invoke({"predict", model, "-o", dir_.string(), "--points", points}), 0);
    const auto text = slurp(dir_ / "interpolated.csv");
    const auto pred = read_series_csv(dir_ / "interpolated.csv");
    std::size_t before = 0;
    while (before < pred.size() && pred.times()[before] < 1594247088.289515) ++before;
    EXPECT_GE(before, 1u);
    EXPECT_EQ(text.rfind("# extrapolated_rows=" + std::to_string(before), 0), 0u) << text.substr(0, 80);
  }
}

TEST_F(CliTest, PredictionsRenormalizeToModelOutputs) {
  const auto model_path = train_small(dir_ / "m", "3");
  ASSERT_EQ(invoke({"predict", model_path, "-o", dir_.string(), "--points", "257"}), 0);
  const auto pred = read_series_csv(dir_ / "interpolated.csv");
  const auto bundle = load_model_file(model_path);
  const auto& norm = *bundle.normalization;
  // Raw times near 1.6e9 carry ~1e-8 normalized rounding, so compare values
  // on the normalized grid the model was evaluated on.
  const auto xs = make_dense_grid(*bundle.provenance.grid_anchor, 257);
  const auto ys = normalize_values(pred.values(), norm);
  const auto model_ys = evaluate_model(bundle.model, xs);
  const auto raw_times = denormalize_times(xs, norm);
  ASSERT_EQ(pred.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_EQ(pred.times()[i], raw_times[i]);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(ys[i], model_ys[i], 1e-12) << i;
  }
}

TEST_F(CliTest, DerivativeExamples) {
  const auto in = write_csv("q.csv", {0, 1, 2}, {0, 1, 4});
  ASSERT_EQ(invoke({"derivative", in.string(), "-o", dir_.string()}), 0) << err_.str();
  EXPECT_EQ(slurp(dir_ / "derivative.csv"), "Time,diff\n1,1\n2,3\n");

  const auto flat = write_csv("c.csv", {0, 0.5, 2, 7}, {3, 3, 3, 3});
  ASSERT_EQ(invoke({"derivative", flat.string(), "-o", dir_.string()}), 0);
  EXPECT_EQ(slurp(dir_ / "derivative.csv"), "Time,diff\n0.5,0\n2,0\n7,0\n");
}

TEST_F(CliTest, DerivativeMatchesLibraryOnRandomInput) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(0.01, 2.0), val(-50, 50);
  std::vector<double> t{0.0}, v{val(rng)};
  for (int i = 1; i < 200; ++i) {
    t.push_back(t.back() + step(rng));
    v.push_back(val(rng));
  }
  const auto in = write_csv("r.csv", t, v);
  ASSERT_EQ(invoke({"derivative", in.string(), "-o", dir_.string()}), 0);
  std::ostringstream expected;
  const auto d = finite_diff_derivative(TimeSeries(t, v));
  write_columns_csv(expected, "Time", d.times, "diff", d.rates);
  EXPECT_EQ(slurp(dir_ / "derivative.csv"), expected.str());
}

TEST_F(CliTest, CompareSingleMethod) {
  const auto cfg = dir_ / "spec.cfg";
  std::ofstream(cfg) << "n_samples = 30\nseed = 3\n";
  ASSERT_EQ(invoke({"compare", "--synthetic", cfg.string(), "--methods", "neural", "--epochs",
                    "5", "--arch", kSmallArch, "--points", "300", "-o", dir_.string()}),
            0)
      << err_.str();
  EXPECT_EQ(data_rows(dir_ / "report.csv"), 1u);
  EXPECT_NE(slurp(dir_ / "report.csv").find("\nneural,"), std::string::npos);
  const auto svg = slurp(dir_ / "derivative_plot.svg");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("Time"), std::string::npos);
}

TEST_F(CliTest, CompareKeepsGoingWhenOneMethodFails) {
  const auto cfg = dir_ / "spec.cfg";
  std::ofstream(cfg) << "n_samples = 40\n";
  ASSERT_EQ(invoke({"compare", "--synthetic", cfg.string(), "--methods", "polynomial,spline",
                    "--points", "200", "-o", dir_.string()}),
            0);
  const auto report = slurp(dir_ / "report.csv");
  EXPECT_NE(report.find("TooManyPoints"), std::string::npos);
  EXPECT_NE(report.find("\nspline,"), std::string::npos);
}

TEST_F(CliTest, ReplayReproducesOutputs) {
  const auto model = train_small(dir_ / "m", "4");
  const auto first = slurp(model);
  const auto manifest = read_manifest(dir_ / "m" / "manifest.json");
  EXPECT_EQ(manifest.subcommand, "train");
  EXPECT_EQ(manifest.config.at("epochs"), "4");
  fs::remove(model);
  ASSERT_EQ(invoke({"replay", (dir_ / "m" / "manifest.json").string()}), 0) << err_.str();
  EXPECT_EQ(slurp(model), first);
}

TEST_F(CliTest, CorruptManifestRejected) {
  std::ofstream(dir_ / "bad.json") << "{\"subcommand\": 3}";
  EXPECT_EQ(invoke({"replay", (dir_ / "bad.json").string()}), 1);
  EXPECT_NE(err_.str().find("code=Corrupt"), std::string::npos);
}

}  // namespace
}  // namespace aeinterp::cli
