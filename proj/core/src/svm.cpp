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

#include "qktext/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace qktext {

namespace {

// Progress threshold for one SMO step. Far below cfg.tol so the final
// iterate is limited by tol, not by step rejection.
constexpr double kStepEps = 1e-12;

struct Problem {
  const Eigen::MatrixXd& k;
  const std::vector<int>& y;
  double c;
  double tol;

  Eigen::VectorXd alpha;
  Eigen::VectorXd error;  // E_i = f(x_i) - y_i, bias included
  double bias = 0.0;

  bool non_bound(Eigen::Index i) const {
    return alpha[i] > 0.0 && alpha[i] < c;
  }

  bool take_step(Eigen::Index i1, Eigen::Index i2) {
    if (i1 == i2) return false;
    const double a1 = alpha[i1], a2 = alpha[i2];
    const int y1 = y[static_cast<std::size_t>(i1)];
    const int y2 = y[static_cast<std::size_t>(i2)];
    const double e1 = error[i1], e2 = error[i2];
    const double s = y1 * y2;

    double lo, hi;
    if (y1 != y2) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c, c + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c);
      hi = std::min(c, a1 + a2);
    }
    if (lo >= hi) return false;

    const double k11 = k(i1, i1), k12 = k(i1, i2), k22 = k(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;
    double a2_new;
    if (eta > 0.0) {
      a2_new = a2 + y2 * (e1 - e2) / eta;
      a2_new = std::min(hi, std::max(lo, a2_new));
    } else {
      // Objective at the segment ends (Platt's eta <= 0 branch).
      const double f1 = y1 * e1 - a1 * k11 - s * a2 * k12;
      const double f2 = y2 * e2 - s * a1 * k12 - a2 * k22;
      const double l1 = a1 + s * (a2 - lo);
      const double h1 = a1 + s * (a2 - hi);
      const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                            0.5 * lo * lo * k22 + s * lo * l1 * k12;
      const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                            0.5 * hi * hi * k22 + s * hi * h1 * k12;
      if (obj_lo < obj_hi - kStepEps) {
        a2_new = lo;
      } else if (obj_lo > obj_hi + kStepEps) {
        a2_new = hi;
      } else {
        return false;
      }
    }
    if (std::abs(a2_new - a2) < kStepEps * (a2_new + a2 + kStepEps)) {
      return false;
    }

    double a1_new = a1 + s * (a2 - a2_new);
    // Clip roundoff spill so the box invariant holds exactly.
    a1_new = std::min(c, std::max(0.0, a1_new));

    const double d1 = y1 * (a1_new - a1);
    const double d2 = y2 * (a2_new - a2);
    const double b1 = bias - e1 - d1 * k11 - d2 * k12;
    const double b2 = bias - e2 - d1 * k12 - d2 * k22;
    double bias_new;
    if (a1_new > 0.0 && a1_new < c) {
      bias_new = b1;
    } else if (a2_new > 0.0 && a2_new < c) {
      bias_new = b2;
    } else {
      bias_new = 0.5 * (b1 + b2);
    }

    const double db = bias_new - bias;
    for (Eigen::Index i = 0; i < error.size(); ++i) {
      error[i] += d1 * k(i1, i) + d2 * k(i2, i) + db;
    }
    alpha[i1] = a1_new;
    alpha[i2] = a2_new;
    bias = bias_new;
    return true;
  }

  bool examine(Eigen::Index i2) {
    const int y2 = y[static_cast<std::size_t>(i2)];
    const double r2 = error[i2] * y2;
    const bool violates = (r2 < -tol && alpha[i2] < c) || (r2 > tol && alpha[i2] > 0.0);
    if (!violates) return false;

    // Second choice: largest |E1 - E2| among non-bound points.
    Eigen::Index best = -1;
    double best_gap = -1.0;
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
      if (i == i2 || !non_bound(i)) continue;
      const double gap = std::abs(error[i] - error[i2]);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best >= 0 && take_step(best, i2)) return true;
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
      if (i != best && non_bound(i) && take_step(i, i2)) return true;
    }
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
      if (!non_bound(i) && take_step(i, i2)) return true;
    }
    return false;
  }
};

// Bias from the converged alphas: mean KKT-exact value over free support
// vectors; with none free, the midpoint of the interval the bound points
// leave for it.
double final_bias(const Eigen::MatrixXd& k, const std::vector<int>& y,
                  const Eigen::VectorXd& alpha, double c) {
  const Eigen::Index n = alpha.size();
  Eigen::VectorXd margin(n);  // f without bias
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      acc += alpha[j] * y[static_cast<std::size_t>(j)] * k(j, i);
    }
    margin[i] = acc;
  }

  double sum = 0.0;
  long free_count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (alpha[i] > 0.0 && alpha[i] < c) {
      sum += y[static_cast<std::size_t>(i)] - margin[i];
      ++free_count;
    }
  }
  if (free_count > 0) return sum / static_cast<double>(free_count);

  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const int yi = y[static_cast<std::size_t>(i)];
    const bool at_zero = alpha[i] <= 0.0;
    // alpha == 0 requires y*f >= 1; alpha == c requires y*f <= 1.
    if (at_zero) {
      if (yi > 0) {
        lower = std::max(lower, 1.0 - margin[i]);
      } else {
        upper = std::min(upper, -1.0 - margin[i]);
      }
    } else {
      if (yi > 0) {
        upper = std::min(upper, 1.0 - margin[i]);
      } else {
        lower = std::max(lower, -1.0 - margin[i]);
      }
    }
  }
  if (std::isinf(lower) && std::isinf(upper)) return 0.0;
  if (std::isinf(lower)) return upper;
  if (std::isinf(upper)) return lower;
  return 0.5 * (lower + upper);
}

SvmModel snapshot(const Problem& p, const std::vector<int>& labels,
                  const SvmTrainConfig& cfg) {
  SvmModel model;
  model.alphas = p.alpha;
  model.labels = labels;
  model.c = cfg.c;
  model.tol = cfg.tol;
  for (Eigen::Index i = 0; i < model.alphas.size(); ++i) {
    if (model.alphas[i] < kStepEps * cfg.c) model.alphas[i] = 0.0;
    if (model.alphas[i] > cfg.c * (1.0 - kStepEps)) model.alphas[i] = cfg.c;
    if (model.alphas[i] > 0.0) model.support_indices.push_back(i);
  }
  model.bias = final_bias(p.k, labels, model.alphas, cfg.c);
  return model;
}

void validate_labels(const std::vector<int>& labels) {
  bool pos = false, neg = false;
  for (int l : labels) {
    if (l == 1) {
      pos = true;
    } else if (l == -1) {
      neg = true;
    } else {
      throw ArgumentError("labels must be +1 or -1, got " + std::to_string(l));
    }
  }
  if (!pos || !neg) {
    throw DegenerateLabelError("training labels contain a single class");
  }
}

}  // namespace

SvmModel train_svm(const Eigen::MatrixXd& gram, const std::vector<int>& labels,
                   const SvmTrainConfig& cfg) {
  if (gram.rows() != gram.cols()) {
    throw ShapeError("train_svm: kernel matrix is not square");
  }
  if (static_cast<std::size_t>(gram.rows()) != labels.size()) {
    throw ShapeError("train_svm: " + std::to_string(gram.rows()) +
                     " kernel rows vs " + std::to_string(labels.size()) +
                     " labels");
  }
  if (labels.size() < 2) throw ArgumentError("train_svm: need at least 2 points");
  if (cfg.c <= 0.0) throw ArgumentError("train_svm: C must be positive");
  if (cfg.tol <= 0.0) throw ArgumentError("train_svm: tol must be positive");
  if (cfg.max_passes < 1) throw ArgumentError("train_svm: max_passes must be >= 1");
  validate_labels(labels);

  Problem p{gram, labels, cfg.c, cfg.tol, Eigen::VectorXd::Zero(gram.rows()),
            Eigen::VectorXd(gram.rows()), 0.0};
  for (Eigen::Index i = 0; i < p.error.size(); ++i) {
    p.error[i] = -labels[static_cast<std::size_t>(i)];  // f == 0 at alpha == 0
  }

  long changed = 0;
  bool examine_all = true;
  long passes = 0;
  while (changed > 0 || examine_all) {
    if (++passes > cfg.max_passes) {
      throw ConvergenceError(
          "train_svm: no convergence after " + std::to_string(cfg.max_passes) +
              " passes",
          snapshot(p, labels, cfg));
    }
    changed = 0;
    for (Eigen::Index i = 0; i < p.alpha.size(); ++i) {
      if (examine_all || p.non_bound(i)) {
        if (p.examine(i)) ++changed;
      }
    }
    if (examine_all) {
      examine_all = false;
    } else if (changed == 0) {
      examine_all = true;
    }
  }
  return snapshot(p, labels, cfg);
}

double decision_value(const SvmModel& model, const Eigen::VectorXd& k_row) {
  if (k_row.size() != model.alphas.size()) {
    throw ShapeError("decision_value: kernel row length " +
                     std::to_string(k_row.size()) + " vs " +
                     std::to_string(model.alphas.size()) + " training points");
  }
  double acc = model.bias;
  for (Eigen::Index i = 0; i < k_row.size(); ++i) {
    acc += model.alphas[i] * model.labels[static_cast<std::size_t>(i)] * k_row[i];
  }
  return acc;
}

int predict(const SvmModel& model, const Eigen::VectorXd& k_row) {
  return decision_value(model, k_row) >= 0.0 ? 1 : -1;
}

std::vector<int> predict(const SvmModel& model, const Eigen::MatrixXd& k_block) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k_block.rows()));
  for (Eigen::Index i = 0; i < k_block.rows(); ++i) {
    out.push_back(predict(model, Eigen::VectorXd(k_block.row(i))));
  }
  return out;
}

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& expected) {
  if (predicted.empty()) throw ArgumentError("accuracy: empty prediction list");
  if (predicted.size() != expected.size()) {
    throw ShapeError("accuracy: " + std::to_string(predicted.size()) +
                     " predictions vs " + std::to_string(expected.size()) +
                     " labels");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == expected[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

double dual_objective(const Eigen::MatrixXd& gram,
                      const std::vector<int>& labels,
                      const Eigen::VectorXd& alphas) {
  if (gram.rows() != gram.cols() || gram.rows() != alphas.size() ||
      static_cast<std::size_t>(gram.rows()) != labels.size()) {
    throw ShapeError("dual_objective: inconsistent shapes");
  }
  double quad = 0.0;
  for (Eigen::Index i = 0; i < alphas.size(); ++i) {
    for (Eigen::Index j = 0; j < alphas.size(); ++j) {
      quad += alphas[i] * alphas[j] * labels[static_cast<std::size_t>(i)] *
              labels[static_cast<std::size_t>(j)] * gram(i, j);
    }
  }
  return alphas.sum() - 0.5 * quad;
}

void save_model(const std::string& path, const SvmModel& model) {
  nlohmann::json j;
  j["alphas"] = std::vector<double>(model.alphas.begin(), model.alphas.end());
  j["bias"] = model.bias;
  j["labels"] = model.labels;
  j["C"] = model.c;
  j["tol"] = model.tol;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("short write to " + path);
}

SvmModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path, 0, e.what());
  }
  SvmModel model;
  try {
    const auto alphas = j.at("alphas").get<std::vector<double>>();
    model.alphas = Eigen::Map<const Eigen::VectorXd>(
        alphas.data(), static_cast<Eigen::Index>(alphas.size()));
    model.bias = j.at("bias").get<double>();
    model.labels = j.at("labels").get<std::vector<int>>();
    model.c = j.at("C").get<double>();
    model.tol = j.at("tol").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path, 0, e.what());
  }
  if (model.labels.size() != static_cast<std::size_t>(model.alphas.size())) {
    throw ParseError(path, 0, "alphas and labels disagree in length");
  }
  for (Eigen::Index i = 0; i < model.alphas.size(); ++i) {
    if (model.alphas[i] > 0.0) model.support_indices.push_back(i);
  }
  return model;
}

}  // namespace qktext
