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

#include "qktext/qbow.hpp"

#include <array>

#include "qktext/circuit.hpp"
#include "qktext/errors.hpp"

namespace qktext {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::array<double, 2> evidence(const QBowModel& model, const Document& doc) {
  std::array<double, 2> sums = {0.0, 0.0};
  for (const std::string& token : doc.tokens) {
    const auto it = model.scores.find(token);
    if (it == model.scores.end()) continue;
    sums[0] += it->second[0];
    sums[1] += it->second[1];
  }
  return sums;
}

}  // namespace

QBowModel train_qbow(const LabeledDataset& train) {
  QBowModel model;
  model.topics = train.class_names;

  std::map<std::string, std::array<double, 2>> class_counts;
  for (const Document& doc : train.docs) {
    for (const std::string& token : doc.tokens) {
      class_counts[token][static_cast<std::size_t>(doc.label)] += 1.0;
    }
  }
  if (class_counts.empty()) {
    throw DegenerateInputError("train_qbow: no tokens in the training set");
  }
  for (const auto& [token, counts] : class_counts) {
    const double total = counts[0] + counts[1];
    model.scores.emplace(token,
                         std::array<double, 2>{counts[0] / total, counts[1] / total});
  }

  double max_sum = 0.0;
  for (const Document& doc : train.docs) {
    const auto sums = evidence(model, doc);
    max_sum = std::max({max_sum, sums[0], sums[1]});
  }
  // max_sum > 0: every training token scores 1 across the two topics.
  model.angle_scale = kPi / max_sum;
  return model;
}

int qbow_classify(const QBowModel& model, const Document& doc, QBowMode mode) {
  const auto sums = evidence(model, doc);
  if (mode == QBowMode::kClassical) {
    return sums[1] > sums[0] ? 1 : 0;
  }
  Circuit circuit(2);
  for (const std::string& token : doc.tokens) {
    const auto it = model.scores.find(token);
    if (it == model.scores.end()) continue;
    circuit.add(Gate::ry(0, model.angle_scale * it->second[0]));
    circuit.add(Gate::ry(1, model.angle_scale * it->second[1]));
  }
  const QuantumState state = run_circuit(circuit, zero_state(2));
  const double p0 = one_probability(state, 0);
  const double p1 = one_probability(state, 1);
  return p1 > p0 ? 1 : 0;
}

double qbow_accuracy(const QBowModel& model, const LabeledDataset& data,
                     QBowMode mode) {
  if (data.docs.empty()) throw ArgumentError("qbow_accuracy: empty dataset");
  long hits = 0;
  for (const Document& doc : data.docs) {
    if (qbow_classify(model, doc, mode) == doc.label) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.docs.size());
}

}  // namespace qktext
