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

#pragma once

#include <array>
#include <map>
#include <string>

#include "qktext/corpus.hpp"

namespace qktext {

// Bag-of-words topic scorer with a quantum readout. Each vocabulary word w
// carries score(w, t) = count of w in topic t / count of w overall; a
// document's per-topic evidence is the score sum over its known tokens.
// angle_scale normalises rotations so the largest per-topic sum seen on any
// training document maps to a half-turn, keeping P(1) = sin^2 monotone in
// the evidence.
struct QBowModel {
  std::array<std::string, 2> topics{};
  std::map<std::string, std::array<double, 2>> scores;
  double angle_scale = 0.0;
};

// Raises DegenerateInputError when the training set holds no tokens.
QBowModel train_qbow(const LabeledDataset& train);

// kClassical takes the argmax of the evidence sums directly. kCircuit
// accumulates RY(angle_scale * score) rotations on one qubit per topic and
// takes the argmax of the exact P(1) readouts. The two agree whenever the
// scaled evidence stays within [0, pi], which angle_scale guarantees for
// training-length documents. Ties resolve to topic 0.
enum class QBowMode { kClassical, kCircuit };

int qbow_classify(const QBowModel& model, const Document& doc, QBowMode mode);

double qbow_accuracy(const QBowModel& model, const LabeledDataset& data,
                     QBowMode mode);

}  // namespace qktext
