#include "aeinterp/model_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "aeinterp/error.hpp"

namespace aeinterp {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> flatten(const SplineModel& s) {
  std::vector<double> flat = s.knot_times;
  flat.insert(flat.end(), s.knot_values.begin(), s.knot_values.end());
  for (const auto& seg : s.segments) {
    flat.insert(flat.end(), {seg.a, seg.b, seg.c, seg.d});
  }
  return flat;
}

json architecture_json(const AnyModel& model) {
  return std::visit(
      Overloaded{
          [](const MlpModel& m) {
            json layers = json::array();
            for (const auto& spec : m.architecture()) {
              layers.push_back(
                  {{"width", spec.width},
                   {"activation", std::string(to_string(spec.activation))}});
            }
            return json{{"input_width", m.input_width}, {"layers", layers}};
          },
          [](const LinearModel&) { return json::object(); },
          [](const PolynomialModel& p) {
            return json{{"coefficient_count", p.coefficients.size()}};
          },
          [](const SplineModel& s) {
            return json{{"knot_count", s.knot_times.size()},
                        {"boundary", "natural"}};
          }},
      model);
}

std::vector<double> parameters_of(const AnyModel& model) {
  return std::visit(
      Overloaded{[](const MlpModel& m) { return flatten_parameters(m); },
                 [](const LinearModel& l) {
                   return std::vector<double>{l.beta0, l.beta1};
                 },
                 [](const PolynomialModel& p) { return p.coefficients; },
                 [](const SplineModel& s) { return flatten(s); }},
      model);
}

[[noreturn]] void corrupt(const std::string& why) {
  throw Error(ErrorCode::kCorrupt, "corrupt model file: " + why);
}

void check_count(std::size_t expected, std::size_t actual) {
  if (expected != actual) {
    throw Error(ErrorCode::kCountMismatch,
                "architecture implies " + std::to_string(expected) +
                    " parameters, file holds " + std::to_string(actual));
  }
}

AnyModel model_from_json(const std::string& kind, const json& arch,
                         const std::vector<double>& params) {
  if (kind == "mlp") {
    const auto input_width = arch.at("input_width").get<std::size_t>();
    std::vector<LayerSpec> specs;
    for (const auto& layer : arch.at("layers")) {
      specs.push_back({layer.at("width").get<std::size_t>(),
                       activation_from_string(
                           layer.at("activation").get<std::string>())});
    }
    if (specs.empty()) corrupt("mlp has no layers");
    std::size_t expected = 0;
    std::size_t fan_in = input_width;
    for (const auto& s : specs) {
      expected += (fan_in + 1) * s.width;
      fan_in = s.width;
    }
    check_count(expected, params.size());
    MlpModel model = build_mlp(input_width, specs, 0);
    assign_parameters(model, params);
    validate_model(model);
    return model;
  }
  if (kind == "linear") {
    check_count(2, params.size());
    return LinearModel{params[0], params[1]};
  }
  if (kind == "polynomial") {
    const auto k = arch.at("coefficient_count").get<std::size_t>();
    if (k == 0) corrupt("polynomial has no coefficients");
    check_count(k, params.size());
    return PolynomialModel{params};
  }
  if (kind == "spline") {
    const auto n = arch.at("knot_count").get<std::size_t>();
    if (n < 2) corrupt("spline needs at least 2 knots");
    check_count(2 * n + 4 * (n - 1), params.size());
    SplineModel s;
    s.knot_times.assign(params.begin(), params.begin() + n);
    s.knot_values.assign(params.begin() + n, params.begin() + 2 * n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto* p = params.data() + 2 * n + 4 * i;
      s.segments.push_back({p[0], p[1], p[2], p[3]});
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (!(s.knot_times[i] > s.knot_times[i - 1])) {
        corrupt("spline knots not strictly increasing");
      }
    }
    return s;
  }
  corrupt("unknown model kind '" + kind + "'");
}

}  // namespace

std::string_view model_kind(const AnyModel& model) {
  return std::visit(Overloaded{[](const MlpModel&) { return "mlp"; },
                               [](const LinearModel&) { return "linear"; },
                               [](const PolynomialModel&) { return "polynomial"; },
                               [](const SplineModel&) { return "spline"; }},
                    model);
}

std::size_t model_parameter_count(const AnyModel& model) {
  return parameters_of(model).size();
}

std::string save_model(const ModelBundle& bundle) {
  const auto params = parameters_of(bundle.model);
  for (double p : params) {
    if (!std::isfinite(p)) {
      throw Error(ErrorCode::kNonFinite, "cannot save non-finite parameters");
    }
  }
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["kind"] = std::string(model_kind(bundle.model));
  doc["architecture"] = architecture_json(bundle.model);
  doc["parameter_count"] = params.size();
  doc["parameters"] = params;
  if (bundle.normalization) {
    const auto& n = *bundle.normalization;
    doc["normalization"] = {{"t_start", n.t_start},
                            {"t_end", n.t_end},
                            {"v_min", n.v_min},
                            {"v_max", n.v_max}};
  } else {
    doc["normalization"] = nullptr;
  }
  json prov = json::object();
  const auto& p = bundle.provenance;
  prov["seed"] = p.seed ? json(*p.seed) : json(nullptr);
  prov["epochs"] = p.epochs ? json(*p.epochs) : json(nullptr);
  prov["final_loss"] = p.final_loss ? json(*p.final_loss) : json(nullptr);
  prov["grid_anchor"] = p.grid_anchor ? json(*p.grid_anchor) : json(nullptr);
  doc["provenance"] = prov;
  return doc.dump(2) + "\n";
}

void save_model_file(const ModelBundle& bundle,
                     const std::filesystem::path& path) {
  const auto text = save_model(bundle);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

ModelBundle load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    corrupt(e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("format_version")) {
      corrupt("missing format_version");
    }
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error(ErrorCode::kUnknownVersion,
                  "unsupported model format version " + std::to_string(version));
    }
    const auto kind = doc.at("kind").get<std::string>();
    const auto params = doc.at("parameters").get<std::vector<double>>();
    check_count(doc.at("parameter_count").get<std::size_t>(), params.size());

    ModelBundle bundle{model_from_json(kind, doc.at("architecture"), params),
                       std::nullopt, {}};
    if (const auto& n = doc.at("normalization"); !n.is_null()) {
      bundle.normalization.emplace(
          n.at("t_start").get<double>(), n.at("t_end").get<double>(),
          n.at("v_min").get<double>(), n.at("v_max").get<double>());
    }
    const auto& prov = doc.at("provenance");
    auto& p = bundle.provenance;
    if (!prov.at("seed").is_null()) p.seed = prov["seed"].get<std::uint64_t>();
    if (!prov.at("epochs").is_null()) p.epochs = prov["epochs"].get<std::size_t>();
    if (!prov.at("final_loss").is_null()) {
      p.final_loss = prov["final_loss"].get<double>();
    }
    if (!prov.at("grid_anchor").is_null()) {
      p.grid_anchor = prov["grid_anchor"].get<std::array<double, 3>>();
    }
    return bundle;
  } catch (const json::exception& e) {
    corrupt(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDegenerateSpan || e.code() == ErrorCode::kNonFinite ||
        e.code() == ErrorCode::kInvalidConfig ||
        e.code() == ErrorCode::kShapeMismatch) {
      corrupt(e.what());
    }
    throw;
  }
}

ModelBundle load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

std::vector<double> evaluate_model(const AnyModel& model,
                                   std::span<const double> times) {
  const auto each = [&](auto&& f) {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(f(t));
    return out;
  };
  return std::visit(
      Overloaded{
          [&](const MlpModel& m) { return predict(m, times); },
          [&](const LinearModel& l) {
            return each([&](double t) { return eval_linear(l, t); });
          },
          [&](const PolynomialModel& p) {
            return each([&](double t) { return eval_polynomial(p, t); });
          },
          [&](const SplineModel& s) {
            return each([&](double t) { return eval_spline(s, t); });
          }},
      model);
}

std::vector<double> evaluate_bundle(const ModelBundle& bundle,
                                    std::span<const double> raw_times) {
  if (!bundle.normalization) return evaluate_model(bundle.model, raw_times);
  const auto x = normalize_times(raw_times, *bundle.normalization);
  return denormalize_values(evaluate_model(bundle.model, x),
                            *bundle.normalization);
}

}  // namespace aeinterp
