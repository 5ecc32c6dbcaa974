// Copyright 2026 The pvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pvqc/harness.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "io_util.hpp"
#include "json.hpp"
#include "pvqc/errors.hpp"

namespace pvqc {

using nlohmann::json;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr) return kExitUsage;
  if (dynamic_cast<const ParseError*>(&e) != nullptr || dynamic_cast<const IoError*>(&e) != nullptr ||
      dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
    return kExitData;
  }
  return kExitInternal;
}

ReadoutConfig RunConfig::readout(int n_classes) const {
  ReadoutConfig r;
  r.n_classes = n_classes;
  r.mode = mode;
  r.normalization = normalization;
  r.noise = noise;
  return r;
}

void RunConfig::validate() const {
  if (layers < 1) throw ConfigError("layers must be >= 1");
  if (!(feature_max > 0.0)) throw ConfigError("feature_max must be positive");
  if (!(noise.phase_sigma >= 0.0)) throw ConfigError("noise.phase_sigma must be >= 0");
  if (noise.n_photons < 1) throw ConfigError("noise.n_photons must be >= 1");
  if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
    throw ConfigError("split.train_fraction must lie in (0, 1)");
  }
  try {
    ga.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig default_run_config(Task task) {
  RunConfig c;
  c.task = task;
  c.ga.migration_fraction = default_migration_fraction(task);
  return c;
}

namespace {

json to_json(const RunConfig& c) {
  json j;
  j["task"] = std::string(task_name(c.task));
  j["mode"] = std::string(readout_mode_name(c.mode));
  j["cost"] = std::string(cost_normalization_name(c.normalization));
  j["layers"] = c.layers;
  j["feature_max"] = c.feature_max;
  j["ga"] = {
      {"population_size", c.ga.population_size},
      {"generations", c.ga.n_generations},
      {"crossover_fraction", c.ga.crossover_fraction},
      {"migration_fraction", c.ga.migration_fraction},
      {"migration_interval", c.ga.migration_interval},
      {"islands", c.ga.n_islands},
      {"elite_count", c.ga.elite_count},
      {"tournament_size", c.ga.tournament_size},
      {"mutation_sigma", c.ga.mutation_sigma},
      {"seed", c.ga.rng_seed},
      {"threads", c.ga.n_threads},
      {"reevaluate_survivors", c.ga.reevaluate_survivors},
  };
  j["noise"] = {
      {"phase_sigma", c.noise.phase_sigma},
      {"n_photons", c.noise.n_photons},
      {"seed", c.noise.rng_seed},
  };
  j["split"] = {
      {"train_fraction", c.split.train_fraction},
      {"seed", c.split.rng_seed},
      {"stratified", c.split.stratified},
  };
  j["paths"] = {
      {"dataset", c.paths.dataset},       {"model", c.paths.model},
      {"history", c.paths.history},       {"train_split", c.paths.train_split},
      {"test_split", c.paths.test_split},
  };
  return j;
}

template <typename T>
void read_key(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": bad value for '" + key + "': " + e.what());
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

void overlay(RunConfig& c, const json& j, const std::string& src) {
  reject_unknown(j, {"task", "mode", "cost", "layers", "feature_max", "ga", "noise", "split", "paths"}, src);
  std::string text;
  if (j.contains("task")) {
    read_key(j, "task", text, src);
    c.task = parse_task(text);
  }
  if (j.contains("mode")) {
    read_key(j, "mode", text, src);
    c.mode = parse_readout_mode(text);
  }
  if (j.contains("cost")) {
    read_key(j, "cost", text, src);
    c.normalization = parse_cost_normalization(text);
  }
  read_key(j, "layers", c.layers, src);
  read_key(j, "feature_max", c.feature_max, src);
  if (j.contains("ga")) {
    const auto& g = j["ga"];
    const std::string where = src + ": ga";
    reject_unknown(g,
                   {"population_size", "generations", "crossover_fraction", "migration_fraction",
                    "migration_interval", "islands", "elite_count", "tournament_size", "mutation_sigma", "seed",
                    "threads", "reevaluate_survivors"},
                   where);
    read_key(g, "population_size", c.ga.population_size, where);
    read_key(g, "generations", c.ga.n_generations, where);
    read_key(g, "crossover_fraction", c.ga.crossover_fraction, where);
    read_key(g, "migration_fraction", c.ga.migration_fraction, where);
    read_key(g, "migration_interval", c.ga.migration_interval, where);
    read_key(g, "islands", c.ga.n_islands, where);
    read_key(g, "elite_count", c.ga.elite_count, where);
    read_key(g, "tournament_size", c.ga.tournament_size, where);
    read_key(g, "mutation_sigma", c.ga.mutation_sigma, where);
    read_key(g, "seed", c.ga.rng_seed, where);
    read_key(g, "threads", c.ga.n_threads, where);
    read_key(g, "reevaluate_survivors", c.ga.reevaluate_survivors, where);
  }
  if (j.contains("noise")) {
    const auto& n = j["noise"];
    const std::string where = src + ": noise";
    reject_unknown(n, {"phase_sigma", "n_photons", "seed"}, where);
    read_key(n, "phase_sigma", c.noise.phase_sigma, where);
    read_key(n, "n_photons", c.noise.n_photons, where);
    read_key(n, "seed", c.noise.rng_seed, where);
  }
  if (j.contains("split")) {
    const auto& s = j["split"];
    const std::string where = src + ": split";
    reject_unknown(s, {"train_fraction", "seed", "stratified"}, where);
    read_key(s, "train_fraction", c.split.train_fraction, where);
    read_key(s, "seed", c.split.rng_seed, where);
    read_key(s, "stratified", c.split.stratified, where);
  }
  if (j.contains("paths")) {
    const auto& p = j["paths"];
    const std::string where = src + ": paths";
    reject_unknown(p, {"dataset", "model", "history", "train_split", "test_split"}, where);
    read_key(p, "dataset", c.paths.dataset, where);
    read_key(p, "model", c.paths.model, where);
    read_key(p, "history", c.paths.history, where);
    read_key(p, "train_split", c.paths.train_split, where);
    read_key(p, "test_split", c.paths.test_split, where);
  }
}

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RunConfig load_run_config(const std::optional<std::filesystem::path>& file, std::optional<Task> task_override) {
  json doc = json::object();
  if (file) {
    try {
      doc = parse_json(read_text(*file), file->string());
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
    if (!doc.is_object()) throw ConfigError(file->string() + ": expected a JSON object");
  }
  Task task = Task::kSquare;
  if (task_override) {
    task = *task_override;
  } else if (doc.contains("task") && doc["task"].is_string()) {
    task = parse_task(doc["task"].get<std::string>());
  }
  RunConfig c = default_run_config(task);
  if (file) overlay(c, doc, file->string());
  c.task = task;
  return c;
}

std::string run_config_to_json(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

RunConfig run_config_from_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = parse_json(text, source);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  RunConfig c;
  overlay(c, doc, source);
  return c;
}

// ---- model file ----

Dataset ModelFile::prepare(const Dataset& raw) const {
  if (raw.feature_dim != feature_dim) {
    throw std::invalid_argument("dataset has " + std::to_string(raw.feature_dim) + " features but the model expects " +
                                std::to_string(feature_dim));
  }
  Dataset out = raw;
  if (scaling) {
    for (auto& s : out.samples) s.features = scaling->apply(s.features);
  }
  return out;
}

std::string serialize_model(const ModelFile& model) {
  json j;
  j["format"] = "pvqc-model";
  j["version"] = model.format_version;
  j["task"] = std::string(task_name(model.task));
  j["n_classes"] = model.n_classes;
  j["feature_dim"] = model.feature_dim;
  json layers = json::array();
  for (const auto& layer : model.layers) {
    json mzis = json::array();
    for (std::size_t k = 0; k < kNumMzis; ++k) {
      mzis.push_back({{"mzi", k + 1}, {"theta", layer.mzi(k).theta()}, {"phi", layer.mzi(k).phi()}});
    }
    layers.push_back(std::move(mzis));
  }
  j["layers"] = std::move(layers);
  if (model.scaling) {
    j["scaling"] = {{"min", model.scaling->min},
                    {"max", model.scaling->max},
                    {"target_max", model.scaling->target_max}};
  } else {
    j["scaling"] = nullptr;
  }
  j["config"] = to_json(model.config);
  json metrics = {{"best_cost", model.metrics.best_cost}, {"train_accuracy", model.metrics.train_accuracy}};
  metrics["test_accuracy"] = model.metrics.test_accuracy ? json(*model.metrics.test_accuracy) : json(nullptr);
  j["metrics"] = std::move(metrics);
  return j.dump(2) + "\n";
}

ModelFile parse_model(std::string_view text, const std::string& source) {
  const json j = parse_json(text, source);
  auto fail = [&](const std::string& what) { return ParseError(source, 0, what); };
  try {
    if (!j.is_object() || j.value("format", std::string()) != "pvqc-model") throw fail("not a pvqc model file");
    ModelFile m;
    m.format_version = j.at("version").get<int>();
    if (m.format_version != kModelFormatVersion) {
      throw fail("unsupported model version " + std::to_string(m.format_version));
    }
    m.task = parse_task(j.at("task").get<std::string>());
    m.n_classes = j.at("n_classes").get<int>();
    m.feature_dim = j.at("feature_dim").get<int>();
    if (m.n_classes < 1 || m.n_classes > kMaxClasses) throw fail("n_classes outside 1..4");
    if (m.feature_dim != 2 && m.feature_dim != 4) throw fail("feature_dim must be 2 or 4");
    for (const auto& layer : j.at("layers")) {
      if (!layer.is_array() || layer.size() != kNumMzis) throw fail("each layer needs 6 MZI entries");
      MeshParameters p;
      for (std::size_t k = 0; k < kNumMzis; ++k) {
        p.mzi(k) = MZIParams(layer[k].at("theta").get<double>(), layer[k].at("phi").get<double>());
      }
      m.layers.push_back(p);
    }
    if (m.layers.empty()) throw fail("model has no layers");
    if (!j.at("scaling").is_null()) {
      FeatureScaler s;
      s.min = j["scaling"].at("min").get<std::vector<double>>();
      s.max = j["scaling"].at("max").get<std::vector<double>>();
      s.target_max = j["scaling"].at("target_max").get<double>();
      if (s.min.size() != static_cast<std::size_t>(m.feature_dim) || s.max.size() != s.min.size()) {
        throw fail("scaling statistics do not match feature_dim");
      }
      m.scaling = std::move(s);
    }
    RunConfig c;
    overlay(c, j.at("config"), source + ": config");
    m.config = c;
    const auto& metrics = j.at("metrics");
    m.metrics.best_cost = metrics.at("best_cost").get<double>();
    m.metrics.train_accuracy = metrics.at("train_accuracy").get<double>();
    if (metrics.contains("test_accuracy") && !metrics["test_accuracy"].is_null()) {
      m.metrics.test_accuracy = metrics["test_accuracy"].get<double>();
    }
    return m;
  } catch (const json::exception& e) {
    throw fail(e.what());
  } catch (const ConfigError& e) {
    throw fail(e.what());
  }
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
  detail::write_file_atomic(path, serialize_model(model));
}

ModelFile load_model(const std::filesystem::path& path) { return parse_model(read_text(path), path.string()); }

// ---- commands ----

Dataset cmd_generate(Task task, std::size_t n_per_class, std::uint64_t seed, const std::filesystem::path& out_path,
                     std::ostream& log) {
  if (!is_synthetic(task)) throw ConfigError("generate: only square, circle and sine can be generated");
  Dataset ds = generate_synthetic(task, n_per_class, seed);
  write_dataset_csv(ds, out_path);
  const auto counts = ds.class_counts();
  log << "wrote " << ds.size() << " samples to " << out_path.string() << " (class 0: " << counts[0]
      << ", class 1: " << counts[1] << ")\n";
  return ds;
}

TrainOutcome cmd_train(const RunConfig& config, std::ostream& log) {
  config.validate();
  if (config.paths.dataset.empty()) throw ConfigError("train: no dataset path");
  const Dataset raw = read_any_dataset(config.paths.dataset);
  const int expected_dim = is_synthetic(config.task) ? 2 : 4;
  if (raw.feature_dim != expected_dim) {
    throw std::invalid_argument("train: task " + std::string(task_name(config.task)) + " expects " +
                                std::to_string(expected_dim) + " features, dataset has " +
                                std::to_string(raw.feature_dim));
  }
  const int n_classes = std::max(raw.n_classes, is_synthetic(config.task) ? 2 : 3);

  ModelFile model;
  model.task = config.task;
  model.n_classes = n_classes;
  model.feature_dim = raw.feature_dim;
  model.config = config;

  Dataset train_raw = raw;
  std::optional<Dataset> test_raw;
  if (!is_synthetic(config.task)) {
    auto [tr, te] = split(raw, config.split);
    train_raw = std::move(tr);
    test_raw = std::move(te);
    const auto rows = train_raw.feature_rows();
    model.scaling = FeatureScaler::fit(rows, config.feature_max);
    if (!config.paths.train_split.empty()) write_dataset_csv(train_raw, config.paths.train_split);
    if (!config.paths.test_split.empty()) write_dataset_csv(*test_raw, config.paths.test_split);
  }
  train_raw.n_classes = n_classes;

  const ReadoutConfig readout = config.readout(n_classes);
  const Dataset train_set = model.prepare(train_raw);
  TrainResult result = train(train_set, config.ga, readout, config.layers);

  model.layers = result.layers;
  model.metrics.best_cost = result.best_cost;
  model.metrics.train_accuracy = result.train_accuracy;
  if (test_raw) {
    Dataset test_set = model.prepare(*test_raw);
    test_set.n_classes = n_classes;
    model.metrics.test_accuracy = evaluate(test_set, model.layers, readout).accuracy;
  }

  if (!config.paths.model.empty()) save_model(model, config.paths.model);
  if (!config.paths.history.empty()) detail::write_file_atomic(config.paths.history, result.history.to_csv());

  log << std::setprecision(6) << "task " << task_name(config.task) << ": " << result.history.records.size()
      << " generations, best cost " << result.best_cost << ", train accuracy " << result.train_accuracy;
  if (model.metrics.test_accuracy) log << ", test accuracy " << *model.metrics.test_accuracy;
  log << "\n";
  return {std::move(model), std::move(result.history)};
}

std::string format_confusion_csv(const ConfusionMatrix& cm) {
  std::ostringstream out;
  out << "true_label";
  for (int p = 0; p < cm.n_classes(); ++p) out << ",pred_" << p;
  out << '\n';
  for (int t = 0; t < cm.n_classes(); ++t) {
    out << t;
    for (int p = 0; p < cm.n_classes(); ++p) out << ',' << cm.at(t, p);
    out << '\n';
  }
  return out.str();
}

std::string format_predictions_csv(const Dataset& raw, const EvaluationReport& report) {
  std::ostringstream out;
  for (int j = 0; j < raw.feature_dim; ++j) out << 'x' << (j + 1) << ',';
  out << "true_label,predicted_label\n";
  for (const auto& p : report.predictions) {
    for (double v : raw.samples[p.index].features) out << detail::format_decimal(v) << ',';
    out << p.true_label << ',' << p.predicted_label << '\n';
  }
  return out.str();
}

EvaluationReport cmd_evaluate(const EvaluateOptions& options, std::ostream& log) {
  const ModelFile model = load_model(options.model);
  Dataset raw = read_any_dataset(options.dataset);
  if (raw.feature_dim != model.feature_dim) {
    throw std::invalid_argument("evaluate: model expects " + std::to_string(model.feature_dim) +
                                " features but dataset has " + std::to_string(raw.feature_dim));
  }
  for (const auto& s : raw.samples) {
    if (s.label >= model.n_classes) {
      throw std::invalid_argument("evaluate: label " + std::to_string(s.label) + " outside the model's " +
                                  std::to_string(model.n_classes) + " classes");
    }
  }
  raw.n_classes = model.n_classes;
  ReadoutConfig readout = model.config.readout(model.n_classes);
  if (options.mode) readout.mode = *options.mode;
  if (options.noise_seed) readout.noise.rng_seed = *options.noise_seed;

  const EvaluationReport report = evaluate(model.prepare(raw), model.layers, readout);
  if (!options.confusion_out.empty()) {
    detail::write_file_atomic(options.confusion_out, format_confusion_csv(report.confusion));
  }
  if (!options.predictions_out.empty()) {
    detail::write_file_atomic(options.predictions_out, format_predictions_csv(raw, report));
  }
  log << std::setprecision(6) << "accuracy " << report.accuracy << " (" << report.confusion.trace() << "/"
      << report.confusion.total() << ")\n";
  return report;
}

std::string format_boundary_grid_csv(const ModelFile& model, std::size_t resolution) {
  if (model.feature_dim != 2) {
    throw std::invalid_argument("boundary-grid: model has " + std::to_string(model.feature_dim) +
                                " features; grids need a two-feature model");
  }
  if (resolution == 0) throw std::invalid_argument("boundary-grid: resolution must be >= 1");
  std::vector<ComplexMatrix4> unitaries;
  for (const auto& layer : model.layers) unitaries.push_back(compose_mesh(layer));
  const double step = (kPi / 2.0) / static_cast<double>(resolution);
  std::ostringstream out;
  out << "x1,x2,predicted_label\n";
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x1 = (static_cast<double>(i) + 0.5) * step;
    for (std::size_t k = 0; k < resolution; ++k) {
      const double x2 = (static_cast<double>(k) + 0.5) * step;
      const auto iv = multi_layer_forward(encode_2d({x1, x2}), std::span<const ComplexMatrix4>(unitaries));
      out << detail::format_decimal(x1) << ',' << detail::format_decimal(x2) << ','
          << predict_label(iv, model.n_classes) << '\n';
    }
  }
  return out.str();
}

void cmd_boundary_grid(const std::filesystem::path& model_path, std::size_t resolution,
                       const std::filesystem::path& out_path, std::ostream& log) {
  const ModelFile model = load_model(model_path);
  detail::write_file_atomic(out_path, format_boundary_grid_csv(model, resolution));
  log << "wrote " << resolution * resolution << " grid points to " << out_path.string() << "\n";
}

std::string format_current_plan_csv(std::span<const MeshParameters> layers, const CalibrationTable& table) {
  const auto currents = plan_currents(layers, table);
  std::ostringstream out;
  out << "layer,shifter,parameter,phase,current\n";
  std::size_t row = 0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto genes = layers[l].to_genes();
    for (std::size_t s = 0; s < kGenesPerMesh; ++s, ++row) {
      const std::string name = std::string(s % 2 == 0 ? "phi" : "theta") + std::to_string(s / 2 + 1);
      out << (l + 1) << ',' << (s + 1) << ',' << name << ',' << detail::format_decimal(genes[s]) << ','
          << detail::format_decimal(currents[row]) << '\n';
    }
  }
  return out.str();
}

void cmd_plan_currents(const std::filesystem::path& model_path, const std::filesystem::path& calibration_path,
                       const std::filesystem::path& out_path, std::ostream& log) {
  const ModelFile model = load_model(model_path);
  const CalibrationTable table = load_calibration(calibration_path);
  detail::write_file_atomic(out_path, format_current_plan_csv(model.layers, table));
  log << "wrote " << model.layers.size() * kGenesPerMesh << " shifter currents to " << out_path.string() << "\n";
}

}  // namespace pvqc
