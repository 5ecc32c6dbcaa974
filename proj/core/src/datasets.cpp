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

#include "pvqc/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "io_util.hpp"
#include "pvqc/random.hpp"
#include "pvqc/state.hpp"

namespace pvqc {

std::string_view task_name(Task task) {
  switch (task) {
    case Task::kSquare:
      return "square";
    case Task::kCircle:
      return "circle";
    case Task::kSine:
      return "sine";
    case Task::kIris:
      return "iris";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (Task t : {Task::kSquare, Task::kCircle, Task::kSine, Task::kIris}) {
    if (task_name(t) == name) return t;
  }
  throw ConfigError("unknown task '" + std::string(name) + "' (expected square, circle, sine or iris)");
}

bool is_synthetic(Task task) { return task != Task::kIris; }

double default_migration_fraction(Task task) { return task == Task::kCircle ? 0.7 : 0.5; }

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(n_classes, 0)), 0);
  for (const auto& s : samples) {
    if (s.label >= 0 && s.label < n_classes) ++counts[static_cast<std::size_t>(s.label)];
  }
  return counts;
}

std::vector<std::vector<double>> Dataset::feature_rows() const {
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) rows.push_back(s.features);
  return rows;
}

void Dataset::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].features.size() != static_cast<std::size_t>(feature_dim)) {
      throw std::logic_error("sample " + std::to_string(i) + " has the wrong feature count");
    }
    if (samples[i].label < 0 || samples[i].label >= n_classes) {
      throw std::logic_error("sample " + std::to_string(i) + " has label outside the class range");
    }
  }
  const auto counts = class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) throw std::logic_error("class " + std::to_string(c) + " has no samples");
  }
}

int square_label(double x1, double x2) {
  const double half_side = 0.5 * (kPi / 2.0) / std::sqrt(2.0);
  const double c = kPi / 4.0;
  return std::max(std::abs(x1 - c), std::abs(x2 - c)) <= half_side ? 1 : 0;
}

int circle_label(double x1, double x2) {
  const double r = (kPi / 2.0) / std::sqrt(2.0 * kPi);
  const double c = kPi / 4.0;
  const double dx = x1 - c;
  const double dy = x2 - c;
  return dx * dx + dy * dy <= r * r ? 1 : 0;
}

int sine_label(double x1, double x2) { return x2 > kPi / 4.0 + (kPi / 8.0) * std::sin(8.0 * x1) ? 1 : 0; }

int synthetic_label(Task task, double x1, double x2) {
  switch (task) {
    case Task::kSquare:
      return square_label(x1, x2);
    case Task::kCircle:
      return circle_label(x1, x2);
    case Task::kSine:
      return sine_label(x1, x2);
    case Task::kIris:
      break;
  }
  throw std::invalid_argument("iris has no synthetic boundary");
}

Dataset generate_synthetic(Task task, std::size_t n_per_class, std::uint64_t seed) {
  if (!is_synthetic(task)) throw std::invalid_argument("generate_synthetic: iris is not synthetic");
  if (n_per_class == 0) throw std::invalid_argument("generate_synthetic: n_per_class must be >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> coord(0.0, kPi / 2.0);
  auto draw = [&] {
    double v;
    do {
      v = coord(rng);
    } while (v <= 0.0);
    return v;
  };
  Dataset ds;
  ds.n_classes = 2;
  ds.feature_dim = 2;
  ds.boundary = task;
  ds.samples.reserve(2 * n_per_class);
  std::array<std::size_t, 2> have{};
  while (have[0] < n_per_class || have[1] < n_per_class) {
    const double x1 = draw();
    const double x2 = draw();
    const int label = synthetic_label(task, x1, x2);
    if (have[static_cast<std::size_t>(label)] >= n_per_class) continue;
    ++have[static_cast<std::size_t>(label)];
    ds.samples.push_back({{x1, x2}, label});
  }
  return ds;
}

Dataset generate_square(std::size_t n_per_class, std::uint64_t seed) {
  return generate_synthetic(Task::kSquare, n_per_class, seed);
}
Dataset generate_circle(std::size_t n_per_class, std::uint64_t seed) {
  return generate_synthetic(Task::kCircle, n_per_class, seed);
}
Dataset generate_sine(std::size_t n_per_class, std::uint64_t seed) {
  return generate_synthetic(Task::kSine, n_per_class, seed);
}

namespace {

constexpr int kMaxLabels = static_cast<int>(kNumModes);

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // Trailing blank lines are common at the end of the canonical file.
  while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

double parse_number(std::string_view field, const std::string& src, std::size_t line_no) {
  const auto text = detail::trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ParseError(src, line_no, "invalid number '" + std::string(text) + "'");
  }
  return v;
}

int parse_species(std::string_view field, const std::string& src, std::size_t line_no) {
  auto name = detail::trim(field);
  if (name.size() >= 2 && name.front() == '"' && name.back() == '"') name = name.substr(1, name.size() - 2);
  if (name.starts_with("Iris-")) name.remove_prefix(5);
  if (name == "setosa") return 0;
  if (name == "versicolor") return 1;
  if (name == "virginica") return 2;
  throw ParseError(src, line_no, "unknown class '" + std::string(field) + "'");
}

bool looks_like_header(std::string_view line) {
  const auto fields = detail::split_csv(line);
  return !fields.empty() && detail::trim(fields.back()) == "label";
}

Dataset parse_iris_lines(const std::vector<std::string>& lines, const std::string& src) {
  if (lines.empty()) throw ParseError(src, 0, "empty file");
  Dataset ds;
  ds.n_classes = 3;
  ds.feature_dim = 4;
  ds.boundary = Task::kIris;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = detail::split_csv(lines[i]);
    if (fields.size() != 5) {
      throw ParseError(src, line_no, "expected 5 columns, got " + std::to_string(fields.size()));
    }
    LabeledSample s;
    for (std::size_t j = 0; j < 4; ++j) s.features.push_back(parse_number(fields[j], src, line_no));
    s.label = parse_species(fields[4], src, line_no);
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

Dataset parse_header_lines(const std::vector<std::string>& lines, const std::string& src) {
  if (lines.empty()) throw ParseError(src, 0, "empty file");
  const auto header = detail::split_csv(lines.front());
  if (header.size() < 2 || detail::trim(header.back()) != "label") {
    throw ParseError(src, 1, "expected header x1,...,xD,label");
  }
  const std::size_t dim = header.size() - 1;
  for (std::size_t j = 0; j < dim; ++j) {
    if (detail::trim(header[j]) != "x" + std::to_string(j + 1)) {
      throw ParseError(src, 1, "expected column x" + std::to_string(j + 1) + ", got '" +
                                   std::string(detail::trim(header[j])) + "'");
    }
  }
  Dataset ds;
  ds.feature_dim = static_cast<int>(dim);
  int max_label = -1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = detail::split_csv(lines[i]);
    if (fields.size() != dim + 1) {
      throw ParseError(src, line_no,
                       "expected " + std::to_string(dim + 1) + " columns, got " + std::to_string(fields.size()));
    }
    LabeledSample s;
    for (std::size_t j = 0; j < dim; ++j) s.features.push_back(parse_number(fields[j], src, line_no));
    const auto label_text = detail::trim(fields[dim]);
    int label = -1;
    const auto [ptr, ec] = std::from_chars(label_text.data(), label_text.data() + label_text.size(), label);
    if (label_text.empty() || ec != std::errc() || ptr != label_text.data() + label_text.size() || label < 0 ||
        label >= kMaxLabels) {
      throw ParseError(src, line_no, "invalid label '" + std::string(label_text) + "'");
    }
    max_label = std::max(max_label, label);
    s.label = label;
    ds.samples.push_back(std::move(s));
  }
  if (ds.samples.empty()) throw ParseError(src, 0, "no data rows");
  ds.n_classes = max_label + 1;
  return ds;
}

}  // namespace

Dataset load_iris(const std::filesystem::path& path) { return parse_iris_lines(read_lines(path), path.string()); }

Dataset read_dataset_csv(const std::filesystem::path& path) {
  return parse_header_lines(read_lines(path), path.string());
}

Dataset read_any_dataset(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw ParseError(path.string(), 0, "empty file");
  if (looks_like_header(lines.front())) return parse_header_lines(lines, path.string());
  return parse_iris_lines(lines, path.string());
}

std::string format_dataset_csv(const Dataset& ds) {
  std::ostringstream out;
  for (int j = 0; j < ds.feature_dim; ++j) out << 'x' << (j + 1) << ',';
  out << "label\n";
  for (const auto& s : ds.samples) {
    for (double v : s.features) out << detail::format_decimal(v) << ',';
    out << s.label << '\n';
  }
  return out.str();
}

void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path) {
  detail::write_file_atomic(path, format_dataset_csv(ds));
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(const Dataset& ds,
                                                                            const SplitSpec& spec) {
  if (ds.empty()) throw std::invalid_argument("split: empty dataset");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw std::invalid_argument("split: train_fraction must lie in (0, 1)");
  }
  const std::size_t n = ds.size();
  const auto n_train = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n)));
  if (n_train == 0 || n_train == n) {
    throw std::invalid_argument("split: train_fraction " + std::to_string(spec.train_fraction) + " on " +
                                std::to_string(n) + " samples leaves one side empty");
  }
  Rng rng(spec.rng_seed);
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  if (!spec.stratified) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  } else {
    int n_groups = 0;
    for (const auto& s : ds.samples) n_groups = std::max(n_groups, s.label + 1);
    std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(n_groups));
    for (std::size_t i = 0; i < n; ++i) groups[static_cast<std::size_t>(ds.samples[i].label)].push_back(i);

    // Largest-remainder allocation of the train slots across classes.
    std::vector<std::size_t> quota(groups.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t allocated = 0;
    for (std::size_t c = 0; c < groups.size(); ++c) {
      const double exact = spec.train_fraction * static_cast<double>(groups[c].size());
      quota[c] = static_cast<std::size_t>(std::floor(exact + 1e-9));
      allocated += quota[c];
      remainders.emplace_back(exact - static_cast<double>(quota[c]), c);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; allocated < n_train && r < remainders.size(); ++r) {
      const auto c = remainders[r].second;
      if (quota[c] < groups[c].size()) {
        ++quota[c];
        ++allocated;
      }
    }
    for (std::size_t c = 0; c < groups.size(); ++c) {
      auto& g = groups[c];
      std::shuffle(g.begin(), g.end(), rng);
      train.insert(train.end(), g.begin(), g.begin() + static_cast<std::ptrdiff_t>(quota[c]));
      test.insert(test.end(), g.begin() + static_cast<std::ptrdiff_t>(quota[c]), g.end());
    }
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  if (train.empty() || test.empty()) throw std::invalid_argument("split: one side is empty");
  return {std::move(train), std::move(test)};
}

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec) {
  const auto [train_idx, test_idx] = split_indices(ds, spec);
  auto subset = [&](const std::vector<std::size_t>& idx) {
    Dataset out;
    out.n_classes = ds.n_classes;
    out.feature_dim = ds.feature_dim;
    out.boundary = ds.boundary;
    out.samples.reserve(idx.size());
    for (auto i : idx) out.samples.push_back(ds.samples[i]);
    return out;
  };
  return {subset(train_idx), subset(test_idx)};
}

}  // namespace pvqc
