// Copyright 2026 The qktext authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qktext/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qktext/qbow.hpp"

namespace qktext {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("config key '" + key + "': bad integer '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("config key '" + key + "': bad number '" + value + "'");
  }
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value,
                          Parse parse) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw UsageError("config key '" + key + "': empty list item");
    out.push_back(parse(key, item));
  }
  if (out.empty()) throw UsageError("config key '" + key + "': empty list");
  return out;
}

std::string map_name(MapChoice map) {
  switch (map) {
    case MapChoice::kAmplitude: return "amplitude";
    case MapChoice::kZz: return "zz";
    case MapChoice::kLinear: return "linear";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json config_echo(const RunConfig& cfg) {
  json j;
  j["dataset"] = cfg.dataset == DatasetKind::kLambeq ? "lambeq" : "imdb";
  j["data"] = cfg.data_path;
  j["embedding"] = cfg.embedding;
  j["embedding_file"] = cfg.embedding_file;
  j["dim"] = cfg.dim;
  j["window"] = cfg.window;
  j["map"] = map_name(cfg.map);
  j["qubits"] = cfg.qubits;
  j["reps"] = cfg.reps;
  j["shots"] = cfg.shots;
  j["seeds"] = cfg.seeds;
  j["train"] = cfg.n_train;
  j["test"] = cfg.n_test;
  j["c"] = cfg.svm_c;
  j["tol"] = cfg.svm_tol;
  j["max_passes"] = cfg.svm_max_passes;
  j["out"] = cfg.out_dir;
  j["dims"] = cfg.dims;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("short write to " + path);
}

std::string seed_name(const std::string& stem, std::uint64_t seed,
                      const std::string& ext) {
  return stem + "_s" + std::to_string(seed) + ext;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  RunConfig cfg;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "dataset") {
      if (value == "lambeq") {
        cfg.dataset = DatasetKind::kLambeq;
      } else if (value == "imdb") {
        cfg.dataset = DatasetKind::kImdb;
      } else {
        throw UsageError("dataset must be 'lambeq' or 'imdb', got '" + value + "'");
      }
    } else if (key == "data") {
      cfg.data_path = value;
    } else if (key == "embedding") {
      cfg.embedding = value;
    } else if (key == "embedding_file") {
      cfg.embedding_file = value;
    } else if (key == "dim") {
      cfg.dim = static_cast<int>(parse_long(key, value));
    } else if (key == "window") {
      cfg.window = static_cast<int>(parse_long(key, value));
    } else if (key == "map") {
      if (value == "amplitude") {
        cfg.map = MapChoice::kAmplitude;
      } else if (value == "zz") {
        cfg.map = MapChoice::kZz;
      } else if (value == "linear" || value == "csvm") {
        cfg.map = MapChoice::kLinear;
      } else {
        throw UsageError("map must be amplitude, zz, or linear, got '" + value + "'");
      }
    } else if (key == "qubits") {
      cfg.qubits = static_cast<int>(parse_long(key, value));
    } else if (key == "reps") {
      cfg.reps = static_cast<int>(parse_long(key, value));
    } else if (key == "shots") {
      cfg.shots = parse_long(key, value);
    } else if (key == "seeds") {
      cfg.seeds = parse_list<std::uint64_t>(
          key, value, [](const std::string& k, const std::string& v) {
            return static_cast<std::uint64_t>(parse_long(k, v));
          });
    } else if (key == "train") {
      cfg.n_train = static_cast<std::size_t>(parse_long(key, value));
    } else if (key == "test") {
      cfg.n_test = static_cast<std::size_t>(parse_long(key, value));
    } else if (key == "c") {
      cfg.svm_c = parse_double(key, value);
    } else if (key == "tol") {
      cfg.svm_tol = parse_double(key, value);
    } else if (key == "max_passes") {
      cfg.svm_max_passes = parse_long(key, value);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "dims") {
      cfg.dims = parse_list<int>(key, value,
                                 [](const std::string& k, const std::string& v) {
                                   return static_cast<int>(parse_long(k, v));
                                 });
    } else {
      throw UsageError(path + ":" + std::to_string(line_no) +
                       ": unknown config key '" + key + "'");
    }
  }
  return cfg;
}

int resolve_qubits(MapChoice map, int qubits, int dim) {
  if (map == MapChoice::kLinear) return 0;
  if (map == MapChoice::kZz) {
    if (qubits != 0 && qubits != dim) {
      throw UsageError("ZZ map uses one qubit per dimension; qubits=" +
                       std::to_string(qubits) + " conflicts with dim=" +
                       std::to_string(dim));
    }
    if (dim > kMaxQubits) {
      throw UsageError("ZZ map over dim " + std::to_string(dim) +
                       " exceeds the " + std::to_string(kMaxQubits) +
                       "-qubit cap");
    }
    return dim;
  }
  int n = qubits;
  if (n == 0) {
    n = 1;
    while ((1 << n) < dim) ++n;
  }
  if (n > kMaxQubits) {
    throw UsageError("amplitude map needs " + std::to_string(n) +
                     " qubits for dim " + std::to_string(dim) +
                     ", above the cap of " + std::to_string(kMaxQubits));
  }
  if ((Eigen::Index{1} << n) < dim) {
    throw UsageError("amplitude map on " + std::to_string(n) +
                     " qubits cannot hold dim " + std::to_string(dim));
  }
  return n;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.data_path.empty()) throw UsageError("config: 'data' path is required");
  if (cfg.dim < 1) throw UsageError("config: dim must be >= 1");
  if (cfg.window < 1) throw UsageError("config: window must be >= 1");
  if (cfg.reps < 1) throw UsageError("config: reps must be >= 1");
  if (cfg.shots < 0) throw UsageError("config: shots must be >= 0");
  if (cfg.seeds.empty()) throw UsageError("config: at least one seed");
  if (cfg.n_train < 2 || cfg.n_train % 2 != 0 || cfg.n_test < 2 ||
      cfg.n_test % 2 != 0) {
    throw UsageError("config: train and test must be even counts >= 2");
  }
  if (cfg.svm_c <= 0.0) throw UsageError("config: c must be positive");
  if (cfg.svm_tol <= 0.0) throw UsageError("config: tol must be positive");
  if (cfg.svm_max_passes < 1) throw UsageError("config: max_passes must be >= 1");
  if (cfg.embedding != "self" && cfg.embedding != "file") {
    throw UsageError("config: embedding must be 'self' or 'file'");
  }
  if (cfg.embedding == "file" && cfg.embedding_file.empty()) {
    throw UsageError("config: embedding = file requires embedding_file");
  }
  if (cfg.out_dir.empty()) throw UsageError("config: 'out' must not be empty");
  resolve_qubits(cfg.map, cfg.qubits, cfg.dim);
  for (int d : cfg.dims) {
    if (d < 1 || d > kMaxQubits) {
      throw UsageError("config: sweep dims must lie in [1, " +
                       std::to_string(kMaxQubits) + "], got " + std::to_string(d));
    }
  }
}

LabeledDataset load_dataset(const RunConfig& cfg) {
  return cfg.dataset == DatasetKind::kLambeq ? load_lambeq(cfg.data_path)
                                             : load_imdb(cfg.data_path);
}

EmbeddedSplit embed_split(const RunConfig& cfg, const LabeledDataset& dataset,
                          std::uint64_t seed, int dim) {
  const SplitIndices idx =
      sample_subset_indices(dataset, cfg.n_train, cfg.n_test, seed);

  // The embedding corpus is exactly the sampled documents, in dataset
  // order. Token statistics never see documents outside this run.
  std::vector<std::size_t> sampled;
  sampled.reserve(idx.train.size() + idx.test.size());
  std::merge(idx.train.begin(), idx.train.end(), idx.test.begin(),
             idx.test.end(), std::back_inserter(sampled));
  std::vector<Document> corpus;
  corpus.reserve(sampled.size());
  for (std::size_t i : sampled) corpus.push_back(dataset.docs[i]);

  EmbeddingTable table;
  if (cfg.embedding == "file") {
    table = load_embeddings_text(cfg.embedding_file);
    if (table.dim() != dim) {
      throw ShapeError("embedding file has dim " + std::to_string(table.dim()) +
                       ", run asks for " + std::to_string(dim));
    }
  } else {
    table = train_embeddings(corpus, dim, cfg.window);
  }

  EmbeddedSplit out;
  out.train_docs.class_names = dataset.class_names;
  out.test_docs.class_names = dataset.class_names;
  for (std::size_t i : idx.train) {
    const Document& doc = dataset.docs[i];
    out.train_x.push_back(sentence_vector(doc, table));
    out.train_y.push_back(label_sign(doc.label));
    out.train_docs.docs.push_back(doc);
  }
  for (std::size_t i : idx.test) {
    const Document& doc = dataset.docs[i];
    out.test_x.push_back(sentence_vector(doc, table));
    out.test_y.push_back(label_sign(doc.label));
    out.test_docs.docs.push_back(doc);
  }
  return out;
}

void write_features_csv(const std::string& path, const EmbeddedSplit& split) {
  if (split.train_x.empty()) throw ArgumentError("write_features_csv: no rows");
  const Eigen::Index dim = split.train_x.front().size();
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "label";
  for (Eigen::Index d = 0; d < dim; ++d) out << ",x" << d;
  out << ",split\n";
  auto write_rows = [&](const std::vector<FeatureVector>& xs,
                        const std::vector<int>& ys, const char* tag) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out << ys[i];
      for (Eigen::Index d = 0; d < dim; ++d) {
        out << "," << format_double(xs[i][d]);
      }
      out << "," << tag << "\n";
    }
  };
  write_rows(split.train_x, split.train_y, "train");
  write_rows(split.test_x, split.test_y, "test");
  if (!out) throw IoError("short write to " + path);
}

EmbeddedSplit read_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 1, "missing header");
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 3 || header.front() != "label" || header.back() != "split") {
    throw ParseError(path, 1, "expected 'label,x0,...,split' header");
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(header.size()) - 2;

  EmbeddedSplit out;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) {
      throw ParseError(path, line_no,
                       "expected " + std::to_string(header.size()) + " cells, got " +
                           std::to_string(cells.size()));
    }
    int label = 0;
    try {
      label = std::stoi(cells[0]);
    } catch (const std::logic_error&) {
      throw ParseError(path, line_no, "bad label '" + cells[0] + "'");
    }
    if (label != 1 && label != -1) {
      throw ParseError(path, line_no, "label must be +1 or -1");
    }
    FeatureVector x(dim);
    for (Eigen::Index d = 0; d < dim; ++d) {
      const std::string& c = cells[static_cast<std::size_t>(d) + 1];
      try {
        std::size_t used = 0;
        x[d] = std::stod(c, &used);
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::logic_error&) {
        throw ParseError(path, line_no, "bad coordinate '" + c + "'");
      }
    }
    const std::string& split_tag = cells.back();
    if (split_tag == "train") {
      out.train_x.push_back(std::move(x));
      out.train_y.push_back(label);
    } else if (split_tag == "test") {
      out.test_x.push_back(std::move(x));
      out.test_y.push_back(label);
    } else {
      throw ParseError(path, line_no, "split must be 'train' or 'test'");
    }
  }
  if (out.train_x.empty()) throw ParseError(path, line_no, "no training rows");
  return out;
}

KernelStage compute_kernels(const RunConfig& cfg, MapChoice map, int dim,
                            const EmbeddedSplit& split, std::uint64_t seed) {
  KernelStage stage;
  if (map == MapChoice::kLinear) {
    stage.train = linear_gram(split.train_x, split.train_x);
    stage.test = linear_gram(split.test_x, split.train_x);
    stage.train_exact = stage.train;
    stage.test_exact = stage.test;
    return stage;
  }

  std::vector<FeatureVector> train_f = split.train_x;
  std::vector<FeatureVector> test_f = split.test_x;
  if (map == MapChoice::kZz) {
    const ZzScaler scaler = ZzScaler::fit(train_f);
    for (auto& v : train_f) v = scaler.transform(v);
    for (auto& v : test_f) v = scaler.transform(v);
  }

  FeatureMapSpec spec;
  spec.kind = map == MapChoice::kZz ? FeatureMapKind::kZz : FeatureMapKind::kAmplitude;
  spec.n_qubits = resolve_qubits(map, cfg.qubits, dim);
  spec.reps = cfg.reps;

  const ShotConfig shot_cfg{cfg.shots, seed};
  stage.train = gram_matrix(spec, train_f, shot_cfg);
  stage.test = gram_block(spec, test_f, train_f, shot_cfg);
  if (cfg.shots > 0) {
    const ShotConfig exact_cfg{0, seed};
    stage.train_exact = gram_matrix(spec, train_f, exact_cfg);
    stage.test_exact = gram_block(spec, test_f, train_f, exact_cfg);
    stage.train_distance = frobenius_distance(stage.train, stage.train_exact);
    stage.test_distance = frobenius_distance(stage.test, stage.test_exact);
  } else {
    stage.train_exact = stage.train;
    stage.test_exact = stage.test;
  }
  return stage;
}

EvalOutcome train_eval(const Eigen::MatrixXd& train_gram,
                       const std::vector<int>& train_y,
                       const Eigen::MatrixXd& test_block,
                       const std::vector<int>& test_y,
                       const SvmTrainConfig& svm_cfg) {
  if (test_block.cols() != train_gram.rows()) {
    throw ShapeError("train_eval: test block has " +
                     std::to_string(test_block.cols()) +
                     " columns, train gram has " +
                     std::to_string(train_gram.rows()) + " rows");
  }
  if (static_cast<std::size_t>(test_block.rows()) != test_y.size()) {
    throw ShapeError("train_eval: test block rows vs labels mismatch");
  }
  EvalOutcome out;
  const PsdRepair repair = repair_psd(train_gram);
  out.psd_shift = repair.shift;
  out.model = train_svm(repair.matrix, train_y, svm_cfg);
  out.train_accuracy = accuracy(predict(out.model, repair.matrix), train_y);
  out.test_accuracy = accuracy(predict(out.model, test_block), test_y);
  return out;
}

Stats make_stats(std::vector<double> values) {
  Stats s;
  s.per_seed = std::move(values);
  if (s.per_seed.empty()) return s;
  double sum = 0.0;
  for (double v : s.per_seed) sum += v;
  s.mean = sum / static_cast<double>(s.per_seed.size());
  if (s.per_seed.size() > 1) {
    double sq = 0.0;
    for (double v : s.per_seed) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(s.per_seed.size() - 1));
  }
  return s;
}

std::string format_cell(const Stats& stats) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f±%.3f", stats.mean, stats.stddev);
  return buf;
}

std::string cmd_embed(const RunConfig& cfg, std::uint64_t seed) {
  fs::create_directories(cfg.out_dir);
  const LabeledDataset dataset = load_dataset(cfg);
  const EmbeddedSplit split = embed_split(cfg, dataset, seed, cfg.dim);
  const std::string path =
      (fs::path(cfg.out_dir) / seed_name("features", seed, ".csv")).string();
  write_features_csv(path, split);
  return path;
}

std::string cmd_kernel(const RunConfig& cfg, std::uint64_t seed) {
  fs::create_directories(cfg.out_dir);
  const fs::path out(cfg.out_dir);
  const std::string features =
      (out / seed_name("features", seed, ".csv")).string();
  const EmbeddedSplit split = read_features_csv(features);
  const int dim = static_cast<int>(split.train_x.front().size());
  const KernelStage stage = compute_kernels(cfg, cfg.map, dim, split, seed);

  const std::string train_path =
      (out / seed_name("gram_train", seed, ".csv")).string();
  write_gram_csv(train_path, stage.train, cfg.shots, seed);
  write_gram_csv((out / seed_name("gram_test", seed, ".csv")).string(),
                 stage.test, cfg.shots, seed);
  if (cfg.shots > 0 && cfg.map != MapChoice::kLinear) {
    write_gram_csv((out / seed_name("gram_train_exact", seed, ".csv")).string(),
                   stage.train_exact, 0, seed);
    write_gram_csv((out / seed_name("gram_test_exact", seed, ".csv")).string(),
                   stage.test_exact, 0, seed);
    json quality;
    quality["shots"] = cfg.shots;
    quality["train_frobenius_distance"] = stage.train_distance;
    quality["test_frobenius_distance"] = stage.test_distance;
    write_text((out / seed_name("kernel_quality", seed, ".json")).string(),
               quality.dump(2) + "\n");
  }
  return train_path;
}

std::string cmd_train_eval(const RunConfig& cfg, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(cfg.out_dir);
  const fs::path out(cfg.out_dir);
  const EmbeddedSplit split =
      read_features_csv((out / seed_name("features", seed, ".csv")).string());
  const GramFile train =
      read_gram_csv((out / seed_name("gram_train", seed, ".csv")).string());
  const GramFile test =
      read_gram_csv((out / seed_name("gram_test", seed, ".csv")).string());
  if (static_cast<std::size_t>(train.matrix.rows()) != split.train_y.size()) {
    throw ShapeError("gram_train has " + std::to_string(train.matrix.rows()) +
                     " rows but the feature file lists " +
                     std::to_string(split.train_y.size()) + " training rows");
  }

  const SvmTrainConfig svm_cfg{cfg.svm_c, cfg.svm_tol, cfg.svm_max_passes};
  const EvalOutcome outcome =
      train_eval(train.matrix, split.train_y, test.matrix, split.test_y, svm_cfg);
  save_model((out / seed_name("model", seed, ".json")).string(), outcome.model);

  json report;
  report["config"] = config_echo(cfg);
  report["seed"] = seed;
  report["shots"] = train.shots;
  report["psd_shift"] = outcome.psd_shift;
  report["support_count"] = outcome.model.support_indices.size();
  report["train_accuracy"] = outcome.train_accuracy;
  report["test_accuracy"] = outcome.test_accuracy;
  report["timing"] = {{"seconds", seconds_since(start)}};
  const std::string report_path =
      (out / seed_name("report", seed, ".json")).string();
  write_text(report_path, report.dump(2) + "\n");

  std::ostringstream csv;
  csv << "seed,train_accuracy,test_accuracy\n"
      << seed << "," << format_double(outcome.train_accuracy) << ","
      << format_double(outcome.test_accuracy) << "\n";
  write_text((out / seed_name("report", seed, ".csv")).string(), csv.str());
  return report_path;
}

std::string run_experiment(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(cfg.out_dir);
  const LabeledDataset dataset = load_dataset(cfg);
  const std::vector<int> dims = cfg.dims.empty() ? std::vector<int>{cfg.dim} : cfg.dims;
  const std::vector<MapChoice> maps = {MapChoice::kLinear, MapChoice::kZz,
                                       MapChoice::kAmplitude};
  const SvmTrainConfig svm_cfg{cfg.svm_c, cfg.svm_tol, cfg.svm_max_passes};

  // accuracies[dim][map] -> per-seed list; bow -> per-seed list
  std::map<int, std::map<std::string, std::vector<double>>> accuracies;
  std::vector<double> bow;
  std::vector<std::uint64_t> ok_seeds, failed_seeds;
  double embed_s = 0.0, kernel_s = 0.0, svm_s = 0.0;

  for (std::uint64_t seed : cfg.seeds) {
    const auto seed_start = std::chrono::steady_clock::now();
    try {
      std::map<int, std::map<std::string, double>> seed_cells;
      double seed_bow = 0.0;
      {
        const auto [train_docs, test_docs] =
            sample_subset(dataset, cfg.n_train, cfg.n_test, seed);
        const QBowModel qbow = train_qbow(train_docs);
        seed_bow = qbow_accuracy(qbow, test_docs, QBowMode::kClassical);
      }
      for (int dim : dims) {
        const auto t0 = std::chrono::steady_clock::now();
        const EmbeddedSplit split = embed_split(cfg, dataset, seed, dim);
        embed_s += seconds_since(t0);
        for (MapChoice map : maps) {
          // Amplitude rows follow the reported layout: dim-n vectors on n
          // qubits, zero-padded. Kernel values are unchanged by padding.
          RunConfig cell_cfg = cfg;
          cell_cfg.qubits = map == MapChoice::kAmplitude ? dim : 0;
          const auto t1 = std::chrono::steady_clock::now();
          const KernelStage stage = compute_kernels(cell_cfg, map, dim, split, seed);
          kernel_s += seconds_since(t1);
          const auto t2 = std::chrono::steady_clock::now();
          const EvalOutcome outcome = train_eval(stage.train, split.train_y,
                                                 stage.test, split.test_y, svm_cfg);
          svm_s += seconds_since(t2);
          seed_cells[dim][map_name(map)] = outcome.test_accuracy;
        }
      }
      // Commit only after the whole seed succeeded, so failed seeds leave
      // no partial columns behind.
      for (const auto& [dim, cells] : seed_cells) {
        for (const auto& [name, acc] : cells) accuracies[dim][name].push_back(acc);
      }
      bow.push_back(seed_bow);
      ok_seeds.push_back(seed);
      std::fprintf(stderr, "[experiment] seed %llu done in %.1fs\n",
                   static_cast<unsigned long long>(seed),
                   seconds_since(seed_start));
    } catch (const ConvergenceError& e) {
      failed_seeds.push_back(seed);
      std::fprintf(stderr, "[experiment] seed %llu failed: %s\n",
                   static_cast<unsigned long long>(seed), e.what());
    }
  }

  if (failed_seeds.size() * 2 > cfg.seeds.size()) {
    throw NumericError("experiment: " + std::to_string(failed_seeds.size()) +
                       " of " + std::to_string(cfg.seeds.size()) +
                       " seeds failed to converge");
  }

  json report;
  report["config"] = config_echo(cfg);
  report["seeds"] = ok_seeds;
  report["failed_seeds"] = failed_seeds;
  report["single_sample"] = ok_seeds.size() == 1;
  report["rows"] = json::array();
  std::ostringstream csv;
  csv << "dim,csvm,zz,amplitude\n";
  for (int dim : dims) {
    json row;
    row["dim"] = dim;
    csv << dim;
    for (const char* name : {"linear", "zz", "amplitude"}) {
      const Stats stats = make_stats(accuracies[dim][name]);
      json cell;
      cell["per_seed"] = stats.per_seed;
      cell["mean"] = stats.mean;
      cell["stddev"] = stats.stddev;
      cell["display"] = format_cell(stats);
      row[name == std::string("linear") ? "csvm" : name] = cell;
      csv << "," << format_cell(stats);
    }
    report["rows"].push_back(row);
    csv << "\n";
  }
  const Stats bow_stats = make_stats(bow);
  json bow_cell;
  bow_cell["per_seed"] = bow_stats.per_seed;
  bow_cell["mean"] = bow_stats.mean;
  bow_cell["stddev"] = bow_stats.stddev;
  bow_cell["display"] = format_cell(bow_stats);
  report["bow"] = bow_cell;
  csv << "bow," << format_cell(bow_stats) << ",,\n";
  report["timing"] = {{"total_seconds", seconds_since(start)},
                      {"embed_seconds", embed_s},
                      {"kernel_seconds", kernel_s},
                      {"svm_seconds", svm_s}};

  const std::string payload = report.dump(2) + "\n";
  write_text((fs::path(cfg.out_dir) / "experiment.json").string(), payload);
  write_text((fs::path(cfg.out_dir) / "experiment.csv").string(), csv.str());
  return payload;
}

}  // namespace qktext
