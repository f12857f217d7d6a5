#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "qktext/errors.hpp"
#include "qktext/harness.hpp"

using namespace qktext;

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qktext_units" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return path.string();
}

std::string data_path(const std::string& leaf) {
  return std::string(QKTEXT_DATA_DIR) + "/" + leaf;
}

RunConfig small_lambeq_config(const fs::path& out_dir) {
  RunConfig cfg;
  cfg.dataset = DatasetKind::kLambeq;
  cfg.data_path = data_path("lambeq_sentences.txt");
  cfg.dim = 4;
  cfg.map = MapChoice::kAmplitude;
  cfg.shots = 200;
  cfg.seeds = {11};
  cfg.n_train = 12;
  cfg.n_test = 4;
  cfg.out_dir = out_dir.string();
  return cfg;
}

}  // namespace

TEST_CASE("config files parse with comments, overrides, and lists") {
  const fs::path dir = fresh_dir("config_parse");
  const std::string path = write_file(dir / "run.conf",
                                      "# comment line\n"
                                      "dataset = imdb\n"
                                      "data = /tmp/reviews  # trailing comment\n"
                                      "embedding = file\n"
                                      "embedding_file = vec.txt\n"
                                      "dim = 6\n"
                                      "window = 3\n"
                                      "map = zz\n"
                                      "qubits = 6\n"
                                      "reps = 1\n"
                                      "shots = 1234\n"
                                      "seeds = 3, 5, 8\n"
                                      "train = 20\n"
                                      "test = 10\n"
                                      "c = 2.5\n"
                                      "tol = 0.01\n"
                                      "max_passes = 50\n"
                                      "out = results\n"
                                      "dims = 2, 4\n"
                                      "map = zz\n");
  const RunConfig cfg = load_config(path);
  CHECK(cfg.dataset == DatasetKind::kImdb);
  CHECK(cfg.data_path == "/tmp/reviews");
  CHECK(cfg.embedding == "file");
  CHECK(cfg.embedding_file == "vec.txt");
  CHECK(cfg.dim == 6);
  CHECK(cfg.window == 3);
  CHECK(cfg.map == MapChoice::kZz);
  CHECK(cfg.qubits == 6);
  CHECK(cfg.reps == 1);
  CHECK(cfg.shots == 1234);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 5, 8});
  CHECK(cfg.n_train == 20);
  CHECK(cfg.n_test == 10);
  CHECK(cfg.svm_c == doctest::Approx(2.5));
  CHECK(cfg.svm_tol == doctest::Approx(0.01));
  CHECK(cfg.svm_max_passes == 50);
  CHECK(cfg.out_dir == "results");
  CHECK(cfg.dims == std::vector<int>{2, 4});
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
  const fs::path dir = fresh_dir("config_bad");
  CHECK_THROWS_AS(load_config((dir / "missing.conf").string()), UsageError);
  CHECK_THROWS_AS(load_config(write_file(dir / "a.conf", "zap = 1\n")), UsageError);
  CHECK_THROWS_AS(load_config(write_file(dir / "b.conf", "dim six\n")), UsageError);
  CHECK_THROWS_AS(load_config(write_file(dir / "c.conf", "dim = six\n")), UsageError);
  CHECK_THROWS_AS(load_config(write_file(dir / "d.conf", "map = qr\n")), UsageError);
  CHECK_THROWS_AS(load_config(write_file(dir / "e.conf", "seeds = \n")), UsageError);
  CHECK_THROWS_AS(load_config(write_file(dir / "f.conf", "dataset = tiny\n")),
                  UsageError);
}

TEST_CASE("config validation enforces the documented ranges") {
  const fs::path dir = fresh_dir("config_validate");
  RunConfig cfg = small_lambeq_config(dir);
  CHECK_NOTHROW(validate_config(cfg));

  RunConfig bad = cfg;
  bad.data_path.clear();
  CHECK_THROWS_AS(validate_config(bad), UsageError);
  bad = cfg;
  bad.dim = 0;
  CHECK_THROWS_AS(validate_config(bad), UsageError);
  bad = cfg;
  bad.n_train = 7;
  CHECK_THROWS_AS(validate_config(bad), UsageError);
  bad = cfg;
  bad.seeds.clear();
  CHECK_THROWS_AS(validate_config(bad), UsageError);
  bad = cfg;
  bad.svm_c = 0.0;
  CHECK_THROWS_AS(validate_config(bad), UsageError);
  bad = cfg;
  bad.shots = -1;
  CHECK_THROWS_AS(validate_config(bad), UsageError);
  bad = cfg;
  bad.embedding = "word2vec";
  CHECK_THROWS_AS(validate_config(bad), UsageError);
  bad = cfg;
  bad.embedding = "file";
  CHECK_THROWS_AS(validate_config(bad), UsageError);
  bad = cfg;
  bad.dims = {2, 14};
  CHECK_THROWS_AS(validate_config(bad), UsageError);
}

TEST_CASE("qubit resolution derives widths per map") {
  CHECK(resolve_qubits(MapChoice::kLinear, 0, 5) == 0);
  CHECK(resolve_qubits(MapChoice::kZz, 0, 5) == 5);
  CHECK(resolve_qubits(MapChoice::kZz, 5, 5) == 5);
  CHECK_THROWS_AS(resolve_qubits(MapChoice::kZz, 4, 5), UsageError);
  CHECK_THROWS_AS(resolve_qubits(MapChoice::kZz, 0, 13), UsageError);

  CHECK(resolve_qubits(MapChoice::kAmplitude, 0, 2) == 1);
  CHECK(resolve_qubits(MapChoice::kAmplitude, 0, 5) == 3);
  CHECK(resolve_qubits(MapChoice::kAmplitude, 0, 16) == 4);
  CHECK(resolve_qubits(MapChoice::kAmplitude, 4, 5) == 4);
  CHECK(resolve_qubits(MapChoice::kAmplitude, 12, 16) == 12);
  CHECK_THROWS_AS(resolve_qubits(MapChoice::kAmplitude, 2, 5), UsageError);
  CHECK_THROWS_AS(resolve_qubits(MapChoice::kAmplitude, 13, 5), UsageError);
  CHECK_THROWS_AS(resolve_qubits(MapChoice::kAmplitude, 0, 5000), UsageError);
}

TEST_CASE("embedded splits are deterministic and correctly labeled") {
  const fs::path dir = fresh_dir("embed_split");
  const RunConfig cfg = small_lambeq_config(dir);
  const LabeledDataset ds = load_dataset(cfg);

  const EmbeddedSplit a = embed_split(cfg, ds, 11, 4);
  CHECK(a.train_x.size() == 12);
  CHECK(a.test_x.size() == 4);
  CHECK(a.train_docs.docs.size() == 12);
  for (const FeatureVector& v : a.train_x) {
    CHECK(v.size() == 4);
    CHECK(v.norm() == doctest::Approx(1.0));
  }
  int pos = 0;
  for (int y : a.train_y) {
    CHECK((y == 1 || y == -1));
    pos += y == 1;
  }
  CHECK(pos == 6);

  const EmbeddedSplit b = embed_split(cfg, ds, 11, 4);
  CHECK(a.train_x == b.train_x);
  CHECK(a.test_y == b.test_y);
}

TEST_CASE("stored embeddings must match the requested dimension") {
  const fs::path dir = fresh_dir("embed_file");
  RunConfig cfg = small_lambeq_config(dir);
  const LabeledDataset ds = load_dataset(cfg);

  const EmbeddedSplit self = embed_split(cfg, ds, 11, 4);
  // Train a table on the whole file and store it.
  const EmbeddingTable table = train_embeddings(ds.docs, 4, cfg.window);
  const std::string stored = (dir / "table.txt").string();
  save_embeddings_text(stored, table);

  cfg.embedding = "file";
  cfg.embedding_file = stored;
  const EmbeddedSplit from_file = embed_split(cfg, ds, 11, 4);
  CHECK(from_file.train_x.size() == self.train_x.size());

  CHECK_THROWS_AS(embed_split(cfg, ds, 11, 6), ShapeError);
}

TEST_CASE("feature csv round-trips splits") {
  const fs::path dir = fresh_dir("features_csv");
  const RunConfig cfg = small_lambeq_config(dir);
  const EmbeddedSplit split = embed_split(cfg, load_dataset(cfg), 11, 4);

  const std::string path = (dir / "f.csv").string();
  write_features_csv(path, split);
  const EmbeddedSplit back = read_features_csv(path);
  CHECK(back.train_x == split.train_x);
  CHECK(back.test_x == split.test_x);
  CHECK(back.train_y == split.train_y);
  CHECK(back.test_y == split.test_y);

  CHECK_THROWS_AS(read_features_csv((dir / "none.csv").string()), IoError);
  CHECK_THROWS_AS(read_features_csv(write_file(dir / "h.csv", "label,x0\n")),
                  ParseError);
  CHECK_THROWS_AS(
      read_features_csv(write_file(dir / "r.csv", "label,x0,split\n1,0.5\n")),
      ParseError);
  CHECK_THROWS_AS(
      read_features_csv(write_file(dir / "l.csv", "label,x0,split\n2,0.5,train\n")),
      ParseError);
  CHECK_THROWS_AS(
      read_features_csv(write_file(dir / "s.csv", "label,x0,split\n1,0.5,dev\n")),
      ParseError);
}

TEST_CASE("kernel stages cover linear, zz, and amplitude maps") {
  const fs::path dir = fresh_dir("kernel_stage");
  RunConfig cfg = small_lambeq_config(dir);
  const EmbeddedSplit split = embed_split(cfg, load_dataset(cfg), 11, 4);

  const KernelStage lin = compute_kernels(cfg, MapChoice::kLinear, 4, split, 11);
  CHECK(lin.train.rows() == 12);
  CHECK(lin.test.rows() == 4);
  CHECK(lin.train_distance == 0.0);
  CHECK(lin.train(0, 1) == doctest::Approx(split.train_x[0].dot(split.train_x[1])));

  cfg.shots = 0;
  const KernelStage amp = compute_kernels(cfg, MapChoice::kAmplitude, 4, split, 11);
  FeatureMapSpec spec;
  spec.kind = FeatureMapKind::kAmplitude;
  spec.n_qubits = 2;
  CHECK(amp.train(2, 5) ==
        doctest::Approx(exact_kernel(spec, split.train_x[2], split.train_x[5])));
  CHECK(amp.train == amp.train_exact);

  cfg.shots = 300;
  const KernelStage sampled = compute_kernels(cfg, MapChoice::kAmplitude, 4, split, 11);
  CHECK(sampled.train_distance > 0.0);
  CHECK(sampled.test_distance > 0.0);
  CHECK(sampled.train_exact(3, 4) == doctest::Approx(amp.train(3, 4)));
  for (int i = 0; i < 12; ++i) CHECK(sampled.train(i, i) == 1.0);

  cfg.shots = 0;
  cfg.qubits = 0;
  const KernelStage zz = compute_kernels(cfg, MapChoice::kZz, 4, split, 11);
  CHECK(zz.train.rows() == 12);
  CHECK(zz.train(0, 0) == doctest::Approx(1.0));
  // Scaled features leave kernels well-defined; spot-check the range.
  CHECK(zz.train.minCoeff() >= -1e-12);
  CHECK(zz.train.maxCoeff() <= 1.0 + 1e-12);
}

TEST_CASE("train_eval repairs the gram and scores both splits") {
  const fs::path dir = fresh_dir("train_eval");
  RunConfig cfg = small_lambeq_config(dir);
  cfg.shots = 0;
  const EmbeddedSplit split = embed_split(cfg, load_dataset(cfg), 11, 4);
  const KernelStage stage = compute_kernels(cfg, MapChoice::kAmplitude, 4, split, 11);

  const EvalOutcome out =
      train_eval(stage.train, split.train_y, stage.test, split.test_y, {});
  CHECK(out.psd_shift >= 0.0);
  CHECK(out.train_accuracy >= 0.0);
  CHECK(out.train_accuracy <= 1.0);
  CHECK(out.test_accuracy >= 0.0);
  CHECK(out.test_accuracy <= 1.0);
  CHECK(out.model.alphas.size() == 12);

  CHECK_THROWS_AS(
      train_eval(stage.train, split.train_y, Eigen::MatrixXd::Zero(4, 5),
                 split.test_y, SvmTrainConfig{}),
      ShapeError);
}

TEST_CASE("stats summarise per-seed accuracy") {
  const Stats s = make_stats({0.5, 0.7, 0.6});
  CHECK(s.mean == doctest::Approx(0.6));
  CHECK(s.stddev == doctest::Approx(0.1));
  CHECK(s.per_seed.size() == 3);

  const Stats single = make_stats({0.8});
  CHECK(single.mean == doctest::Approx(0.8));
  CHECK(single.stddev == 0.0);

  CHECK(format_cell(s) == "0.600±0.100");
  CHECK(format_cell(make_stats({1.0})) == "1.000±0.000");
}

TEST_CASE("stage commands write seed-suffixed artifacts") {
  const fs::path dir = fresh_dir("stage_cmds");
  RunConfig cfg = small_lambeq_config(dir);

  const std::string features = cmd_embed(cfg, 11);
  CHECK(features == (dir / "features_s11.csv").string());
  CHECK(fs::exists(features));

  const std::string gram = cmd_kernel(cfg, 11);
  CHECK(gram == (dir / "gram_train_s11.csv").string());
  CHECK(fs::exists(dir / "gram_test_s11.csv"));
  CHECK(fs::exists(dir / "gram_train_exact_s11.csv"));
  CHECK(fs::exists(dir / "gram_test_exact_s11.csv"));
  CHECK(fs::exists(dir / "kernel_quality_s11.json"));

  const std::string report = cmd_train_eval(cfg, 11);
  CHECK(report == (dir / "report_s11.json").string());
  CHECK(fs::exists(dir / "model_s11.json"));
  CHECK(fs::exists(dir / "report_s11.csv"));

  std::ifstream in(report);
  json j;
  in >> j;
  CHECK(j.at("seed") == 11);
  CHECK(j.at("shots") == 200);
  CHECK(j.at("test_accuracy").is_number());
  CHECK(j.at("config").at("map") == "amplitude");
  CHECK(j.contains("timing"));

  // Exact-kernel runs skip the redundant exact copies.
  const fs::path exact_dir = fresh_dir("stage_cmds_exact");
  cfg.out_dir = exact_dir.string();
  cfg.shots = 0;
  cmd_embed(cfg, 11);
  cmd_kernel(cfg, 11);
  CHECK_FALSE(fs::exists(exact_dir / "gram_train_exact_s11.csv"));
  CHECK_FALSE(fs::exists(exact_dir / "kernel_quality_s11.json"));
}

TEST_CASE("train_eval stage rejects gram and feature files that disagree") {
  const fs::path dir = fresh_dir("stage_mismatch");
  RunConfig cfg = small_lambeq_config(dir);
  cmd_embed(cfg, 11);
  cmd_kernel(cfg, 11);

  // Rewrite the features file with one training row dropped.
  const std::string features = (dir / "features_s11.csv").string();
  std::ifstream in(features);
  std::string line, kept;
  int train_rows = 0;
  while (std::getline(in, line)) {
    if (line.find(",train") != std::string::npos && ++train_rows == 1) continue;
    kept += line + "\n";
  }
  in.close();
  write_file(features, kept);

  CHECK_THROWS_AS(cmd_train_eval(cfg, 11), ShapeError);
}

TEST_CASE("experiments aggregate seeds into a table") {
  const fs::path dir = fresh_dir("experiment");
  RunConfig cfg = small_lambeq_config(dir);
  cfg.shots = 0;
  cfg.seeds = {1, 2};
  cfg.dims = {2, 4};

  const std::string payload = run_experiment(cfg);
  const json j = json::parse(payload);
  CHECK(j.at("seeds").size() == 2);
  CHECK(j.at("failed_seeds").empty());
  CHECK(j.at("rows").size() == 2);
  CHECK(j.at("rows")[0].at("dim") == 2);
  CHECK(j.at("rows")[0].at("csvm").at("per_seed").size() == 2);
  CHECK(j.at("rows")[1].at("amplitude").at("mean").is_number());
  CHECK(j.at("bow").at("per_seed").size() == 2);
  CHECK(j.contains("timing"));

  REQUIRE(fs::exists(dir / "experiment.json"));
  REQUIRE(fs::exists(dir / "experiment.csv"));
  std::ifstream csv(dir / "experiment.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "dim,csvm,zz,amplitude");
  int lines = 0;
  std::string row;
  while (std::getline(csv, row)) ++lines;
  CHECK(lines == 3);  // two dims plus the bag-of-words baseline
}

TEST_CASE("experiment payloads are identical across reruns except timing") {
  const fs::path dir_a = fresh_dir("exp_rerun_a");
  const fs::path dir_b = fresh_dir("exp_rerun_b");
  RunConfig cfg = small_lambeq_config(dir_a);
  cfg.shots = 100;
  cfg.seeds = {5, 6};
  cfg.dims = {2};

  json a = json::parse(run_experiment(cfg));
  cfg.out_dir = dir_b.string();
  json b = json::parse(run_experiment(cfg));
  a.erase("timing");
  b.erase("timing");
  // The out directory is part of the config echo and legitimately differs.
  a.at("config").erase("out");
  b.at("config").erase("out");
  CHECK(a.dump() == b.dump());
}
