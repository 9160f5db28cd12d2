#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "aeinterp/compare.hpp"
#include "aeinterp/csv.hpp"
#include "aeinterp/error.hpp"
#include "aeinterp/model_io.hpp"
#include "aeinterp/synth.hpp"
#include "aeinterp/train.hpp"
#include "cli/svg.hpp"

namespace aeinterp::cli {

namespace fs = std::filesystem;

namespace {

std::string abs_path(const fs::path& p) { return fs::absolute(p).lexically_normal().string(); }

std::string batch_text(const std::optional<std::size_t>& batch) {
  return batch ? std::to_string(*batch) : std::string("full");
}

std::optional<std::size_t> parse_batch(const std::string& text) {
  if (text == "full") return std::nullopt;
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw Error(ErrorCode::kInvalidConfig, "--batch must be 'full' or a positive integer");
  }
  return value;
}

std::array<double, 4> parse_norm(const std::string& text) {
  std::array<double, 4> out{};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto comma = text.find(',', pos);
    const auto token = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out[i]);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() ||
        (i < 3 && comma == std::string::npos) || (i == 3 && comma != std::string::npos)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "--norm expects t_start,t_end,v_min,v_max");
    }
    pos = comma + 1;
  }
  return out;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

RunManifest finish(RunManifest m, const fs::path& out_dir) {
  m.finished_at = utc_timestamp();
  const auto path = out_dir / "manifest.json";
  m.outputs.push_back(abs_path(path));
  write_manifest(m, path);
  return m;
}

TrainConfig make_train_config(std::size_t epochs, std::uint64_t seed,
                              std::optional<std::size_t> batch, double lr) {
  TrainConfig config;
  config.epochs = epochs;
  config.seed = seed;
  config.batch_size = batch;
  config.adam.learning_rate = lr;
  config.validate();
  return config;
}

}  // namespace

RunManifest cmd_train(const TrainOptions& o, std::ostream& log) {
  RunManifest m;
  m.started_at = utc_timestamp();
  m.subcommand = "train";
  const auto config = make_train_config(o.epochs, o.seed, o.batch, o.learning_rate);
  const auto layers = parse_architecture(o.architecture);
  if (o.normalization && !o.already_normalized) {
    throw Error(ErrorCode::kInvalidConfig, "--norm requires --already-normalized");
  }

  const TimeSeries raw = read_series_csv(o.input);
  std::optional<NormalizationParams> params;
  std::optional<TimeSeries> normalized;
  if (o.already_normalized) {
    if (o.normalization) {
      const auto& n = *o.normalization;
      params.emplace(n[0], n[1], n[2], n[3]);
    }
  } else {
    auto [series, p] = normalize(raw);
    normalized.emplace(std::move(series));
    params.emplace(p);
  }
  const TimeSeries& fit = normalized ? *normalized : raw;

  auto model = build_mlp(1, layers, config.seed);
  auto [trained, report] = train(std::move(model), fit, config);
  for (const auto& w : report.warnings) log << "warning: " << w << '\n';

  ModelBundle bundle{std::move(trained), params, {}};
  bundle.provenance.seed = config.seed;
  bundle.provenance.epochs = config.epochs;
  bundle.provenance.final_loss = report.final_loss;
  const auto t = fit.times();
  if (t.size() >= 2) bundle.provenance.grid_anchor = {t[0], t[1], t.back()};

  prepare_dir(o.out_dir);
  const auto model_path = o.out_dir / "model.model.json";
  save_model_file(bundle, model_path);
  const auto loss_path = o.out_dir / "loss.csv";
  {
    auto out = open_output(loss_path);
    out << "epoch,loss\n";
    for (std::size_t i = 0; i < report.loss_history.size(); ++i) {
      out << (i + 1) << ',' << format_double(report.loss_history[i]) << '\n';
    }
  }
  log << "trained " << config.epochs << " epochs on " << fit.size()
      << " samples: initial loss " << report.initial_loss << ", final loss "
      << report.final_loss << " (" << report.wall_seconds << " s)\n";

  m.resolved_args = {"train", abs_path(o.input), "--out-dir", abs_path(o.out_dir),
                     "--epochs", std::to_string(o.epochs), "--seed", std::to_string(o.seed),
                     "--batch", batch_text(o.batch), "--lr", format_double(o.learning_rate),
                     "--arch", format_architecture(layers)};
  if (o.already_normalized) m.resolved_args.push_back("--already-normalized");
  if (o.normalization) {
    const auto& n = *o.normalization;
    m.resolved_args.push_back("--norm");
    m.resolved_args.push_back(format_double(n[0]) + "," + format_double(n[1]) + "," +
                              format_double(n[2]) + "," + format_double(n[3]));
  }
  m.config = {{"epochs", std::to_string(o.epochs)},
              {"seed", std::to_string(o.seed)},
              {"batch", batch_text(o.batch)},
              {"learning_rate", format_double(o.learning_rate)},
              {"beta1", format_double(config.adam.beta1)},
              {"beta2", format_double(config.adam.beta2)},
              {"epsilon", format_double(config.adam.epsilon)},
              {"architecture", format_architecture(layers)},
              {"already_normalized", o.already_normalized ? "true" : "false"}};
  m.inputs = {abs_path(o.input)};
  m.outputs = {abs_path(model_path), abs_path(loss_path)};
  return finish(std::move(m), o.out_dir);
}

RunManifest cmd_predict(const PredictOptions& o, std::ostream& log) {
  RunManifest m;
  m.started_at = utc_timestamp();
  m.subcommand = "predict";
  const auto bundle = load_model_file(o.model);
  if (!bundle.provenance.grid_anchor) {
    throw Error(ErrorCode::kInvalidConfig,
                "model file has no grid_anchor; cannot build the prediction grid");
  }
  const auto& anchor = *bundle.provenance.grid_anchor;
  auto grid = make_dense_grid(anchor, o.points);
  const auto extrapolated = static_cast<std::size_t>(
      std::lower_bound(grid.begin(), grid.end(), anchor[0]) - grid.begin());
  auto values = evaluate_model(bundle.model, grid);
  if (bundle.normalization) {
    grid = denormalize_times(grid, *bundle.normalization);
    values = denormalize_values(values, *bundle.normalization);
  }

  prepare_dir(o.out_dir);
  const auto path = o.out_dir / "interpolated.csv";
  {
    auto out = open_output(path);
    std::vector<std::string> comments = {"extrapolated_rows=" + std::to_string(extrapolated)};
    if (extrapolated > 0) {
      comments[0] += " (rows 1-" + std::to_string(extrapolated) +
                     " precede the first training time)";
    }
    write_columns_csv(out, "Time", grid, "Message", values, comments);
  }
  log << "wrote " << grid.size() << " interpolated rows to " << path.string() << '\n';

  m.resolved_args = {"predict", abs_path(o.model), "--out-dir", abs_path(o.out_dir),
                     "--points", std::to_string(o.points)};
  m.config = {{"points", std::to_string(o.points)},
              {"model_kind", std::string(model_kind(bundle.model))}};
  m.inputs = {abs_path(o.model)};
  m.outputs = {abs_path(path)};
  return finish(std::move(m), o.out_dir);
}

RunManifest cmd_derivative(const DerivativeOptions& o, std::ostream& log) {
  RunManifest m;
  m.started_at = utc_timestamp();
  m.subcommand = "derivative";
  const auto series = read_series_csv(o.input);
  const auto deriv = finite_diff_derivative(series);

  prepare_dir(o.out_dir);
  const auto path = o.out_dir / "derivative.csv";
  {
    auto out = open_output(path);
    write_columns_csv(out, "Time", deriv.times, "diff", deriv.rates);
  }
  log << "wrote " << deriv.rates.size() << " derivative rows to " << path.string() << '\n';

  m.resolved_args = {"derivative", abs_path(o.input), "--out-dir", abs_path(o.out_dir)};
  m.config = {{"scheme", "backward-difference"}};
  m.inputs = {abs_path(o.input)};
  m.outputs = {abs_path(path)};
  return finish(std::move(m), o.out_dir);
}

RunManifest cmd_compare(const CompareOptions& o, std::ostream& log) {
  RunManifest m;
  m.started_at = utc_timestamp();
  m.subcommand = "compare";

  ComparisonOptions options;
  options.grid_points = o.points;
  options.train = make_train_config(o.epochs, o.seed, o.batch, o.learning_rate);
  options.architecture = parse_architecture(o.architecture);
  options.normalize = !o.raw_coordinates;
  const auto methods = parse_methods(o.methods);

  ComparisonReport report;
  std::optional<TimeSeries> observed;
  std::string source;
  if (o.input) {
    observed.emplace(read_series_csv(*o.input));
    report = run_comparison(*observed, std::nullopt, methods, options);
    source = abs_path(*o.input);
    m.inputs = {source};
  } else {
    const SyntheticSpec spec = o.synthetic == "default"
                                   ? default_benchmark_spec()
                                   : load_synthetic_config(o.synthetic);
    observed.emplace(generate(spec).noisy);
    report = run_benchmark(spec, methods, options);
    source = o.synthetic == "default" ? std::string("default") : abs_path(o.synthetic);
    if (o.synthetic != "default") m.inputs = {source};
    m.config["synthetic_spec"] = format_synthetic_config(spec);
  }

  prepare_dir(o.out_dir);
  const auto csv_path = o.out_dir / "report.csv";
  const auto txt_path = o.out_dir / "report.txt";
  const auto svg_path = o.out_dir / "derivative_plot.svg";
  const auto plot_csv_path = o.out_dir / "derivative_plot.csv";
  {
    auto out = open_output(csv_path);
    write_report_csv(out, report);
  }
  {
    auto out = open_output(txt_path);
    write_report_text(out, report);
  }

  const auto original = finite_diff_derivative(*observed);
  const MethodRow* shown = report.find(Method::kNeural);
  if (shown == nullptr || shown->error) {
    shown = nullptr;
    for (const auto& row : report.rows) {
      if (!row.error) {
        shown = &row;
        break;
      }
    }
  }
  std::vector<ScatterSeries> plot;
  plot.push_back({"Derivative on Original Data", "#1f77b4", 3.0, original.times, original.rates});
  {
    auto out = open_output(plot_csv_path);
    out << "series,Time,diff\n";
    for (std::size_t i = 0; i < original.rates.size(); ++i) {
      out << "original," << format_double(original.times[i]) << ','
          << format_double(original.rates[i]) << '\n';
    }
    if (shown != nullptr) {
      const auto interp = finite_diff_derivative(shown->grid_times, shown->grid_values);
      for (std::size_t i = 0; i < interp.rates.size(); ++i) {
        out << "interpolated_" << to_string(shown->method) << ','
            << format_double(interp.times[i]) << ',' << format_double(interp.rates[i])
            << '\n';
      }
      plot.push_back({"Derivative on Interpolated Data (" +
                          std::string(to_string(shown->method)) + ")",
                      "red", 1.0, interp.times, interp.rates});
    }
  }
  {
    auto out = open_output(svg_path);
    write_scatter_svg(out, plot, "Finite-difference derivative: original vs interpolated",
                      "Time", "Message");
  }

  write_report_text(log, report);
  for (const auto& row : report.rows) {
    if (row.error) {
      log << "warning: method " << to_string(row.method) << " failed: " << *row.error << '\n';
    }
  }

  std::string method_list;
  for (const auto mth : methods) {
    if (!method_list.empty()) method_list += ',';
    method_list += to_string(mth);
  }
  m.resolved_args = {"compare", "--out-dir", abs_path(o.out_dir), "--methods", method_list,
                     "--points", std::to_string(o.points), "--epochs", std::to_string(o.epochs),
                     "--seed", std::to_string(o.seed), "--batch", batch_text(o.batch),
                     "--lr", format_double(o.learning_rate), "--arch",
                     format_architecture(options.architecture)};
  if (o.input) {
    m.resolved_args.insert(m.resolved_args.end(), {"--input", source});
  } else {
    m.resolved_args.insert(m.resolved_args.end(), {"--synthetic", source});
  }
  if (o.raw_coordinates) m.resolved_args.push_back("--raw-coordinates");
  m.config.insert({{"methods", method_list.empty() ? std::string("none") : method_list},
                   {"points", std::to_string(o.points)},
                   {"epochs", std::to_string(o.epochs)},
                   {"seed", std::to_string(o.seed)},
                   {"batch", batch_text(o.batch)},
                   {"learning_rate", format_double(o.learning_rate)},
                   {"architecture", format_architecture(options.architecture)},
                   {"coordinates", o.raw_coordinates ? "raw" : "normalized"}});
  m.outputs = {abs_path(csv_path), abs_path(txt_path), abs_path(svg_path),
               abs_path(plot_csv_path)};
  return finish(std::move(m), o.out_dir);
}

namespace {

void print_error(std::ostream& err, std::string_view code, const std::string& message,
                 std::optional<std::size_t> index = std::nullopt) {
  std::string escaped;
  for (char c : message) {
    if (c == '"' || c == '\\') escaped += '\\';
    escaped += (c == '\n') ? ' ' : c;
  }
  err << "error: code=" << code;
  if (index) err << " index=" << *index;
  err << " message=\"" << escaped << "\"\n";
}

void add_training_flags(CLI::App& cmd, std::size_t& epochs, std::uint64_t& seed,
                        std::string& batch, double& lr, std::string& arch) {
  cmd.add_option("--epochs", epochs, "training epochs")->capture_default_str();
  cmd.add_option("--seed", seed, "seed for weight init and shuffling")->capture_default_str();
  cmd.add_option("--batch", batch, "'full' or a mini-batch size")->capture_default_str();
  cmd.add_option("--lr", lr, "Adam learning rate")->capture_default_str();
  cmd.add_option("--arch", arch, "layer list, e.g. 1L,128R,1L")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neural-network interpolation and denoising of sensor time series"};
  app.require_subcommand(1);

  TrainOptions train_opts;
  std::string train_batch = "full";
  std::string train_norm;
  auto* train_cmd = app.add_subcommand("train", "normalize, train and save an MLP interpolator");
  train_cmd->add_option("input", train_opts.input, "Time,Message CSV")->required();
  train_cmd->add_option("-o,--out-dir", train_opts.out_dir, "output directory")->capture_default_str();
  add_training_flags(*train_cmd, train_opts.epochs, train_opts.seed, train_batch,
                     train_opts.learning_rate, train_opts.architecture);
  train_cmd->add_flag("--already-normalized", train_opts.already_normalized,
                      "input is already scaled to [0, 1]");
  train_cmd->add_option("--norm", train_norm,
                        "t_start,t_end,v_min,v_max for an already-normalized input");

  PredictOptions predict_opts;
  auto* predict_cmd = app.add_subcommand("predict", "evaluate a model on the dense grid");
  predict_cmd->add_option("model", predict_opts.model, ".model.json file")->required();
  predict_cmd->add_option("-o,--out-dir", predict_opts.out_dir, "output directory")->capture_default_str();
  predict_cmd->add_option("--points", predict_opts.points, "grid size")->capture_default_str();

  DerivativeOptions deriv_opts;
  auto* deriv_cmd = app.add_subcommand("derivative", "finite-difference derivative of a CSV");
  deriv_cmd->add_option("input", deriv_opts.input, "Time,Message CSV")->required();
  deriv_cmd->add_option("-o,--out-dir", deriv_opts.out_dir, "output directory")->capture_default_str();

  CompareOptions compare_opts;
  std::string compare_batch = "full";
  std::string compare_input;
  auto* compare_cmd = app.add_subcommand("compare", "benchmark interpolators against each other");
  compare_cmd->add_option("--synthetic", compare_opts.synthetic,
                          "'default' or a key = value spec file")->capture_default_str();
  compare_cmd->add_option("--input", compare_input, "Time,Message CSV instead of a synthetic spec");
  compare_cmd->add_option("--methods", compare_opts.methods, "comma-separated methods")->capture_default_str();
  compare_cmd->add_option("--points", compare_opts.points, "grid size")->capture_default_str();
  compare_cmd->add_option("-o,--out-dir", compare_opts.out_dir, "output directory")->capture_default_str();
  compare_cmd->add_flag("--raw-coordinates", compare_opts.raw_coordinates,
                        "fit in raw units instead of normalized");
  add_training_flags(*compare_cmd, compare_opts.epochs, compare_opts.seed, compare_batch,
                     compare_opts.learning_rate, compare_opts.architecture);

  std::string manifest_path;
  auto* replay_cmd = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", manifest_path, "manifest.json")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "Usage", e.what());
    return 2;
  }

  try {
    if (*train_cmd) {
      train_opts.batch = parse_batch(train_batch);
      if (!train_norm.empty()) train_opts.normalization = parse_norm(train_norm);
      cmd_train(train_opts, out);
    } else if (*predict_cmd) {
      cmd_predict(predict_opts, out);
    } else if (*deriv_cmd) {
      cmd_derivative(deriv_opts, out);
    } else if (*compare_cmd) {
      compare_opts.batch = parse_batch(compare_batch);
      if (!compare_input.empty()) compare_opts.input = compare_input;
      cmd_compare(compare_opts, out);
    } else if (*replay_cmd) {
      const auto manifest = read_manifest(manifest_path);
      if (manifest.subcommand == "replay") {
        throw Error(ErrorCode::kInvalidConfig, "cannot replay a replay");
      }
      return run(manifest.resolved_args, out, err);
    }
  } catch (const Error& e) {
    print_error(err, to_string(e.code()), e.what(), e.index());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "Internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace aeinterp::cli
