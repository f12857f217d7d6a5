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
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qktext {

// kWhitespace splits on blanks and keeps tokens as-is (punctuation
// included); kEnglish additionally deletes punctuation characters from each
// token and drops tokens that end up empty. Neither mode changes case.
enum class TokenizeMode { kWhitespace, kEnglish };

std::vector<std::string> tokenize(const std::string& text, TokenizeMode mode);

struct Document {
  std::vector<std::string> tokens;
  int label = 0;       // class index, 0 or 1
  std::string source;  // file name or "<file>:<line>", stable identity
};

struct LabeledDataset {
  std::vector<Document> docs;
  std::array<std::string, 2> class_names{};
};

// Class index -> SVM sign: 0 -> -1, 1 -> +1.
inline int label_sign(int class_index) { return class_index == 0 ? -1 : 1; }

// Topic-sentence file: each line is a 0/1 class digit, whitespace, then the
// sentence (whitespace tokens). Class 0 is "computing", class 1 is "food".
// Blank lines are allowed; anything else malformed raises ParseError with
// the line number.
LabeledDataset load_lambeq(const std::string& path);

// Review tree: root/pos/*.txt and root/neg/*.txt, one document per file,
// English tokenization, files in lexicographic name order (neg block
// first). Missing or empty class directories raise DataLayoutError.
LabeledDataset load_imdb(const std::string& root);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Balanced, seed-deterministic, disjoint split: n_train/2 and n_test/2
// documents per class, so both counts must be even and >= 2. When group_key
// maps document sources to group ids, documents are drawn greedily from the
// fewest groups (largest first, name tie-break) that can fill both splits;
// unmapped documents form singleton groups.
SplitIndices sample_subset_indices(
    const LabeledDataset& dataset, std::size_t n_train, std::size_t n_test,
    std::uint64_t seed,
    const std::map<std::string, std::string>* group_key = nullptr);

std::pair<LabeledDataset, LabeledDataset> sample_subset(
    const LabeledDataset& dataset, std::size_t n_train, std::size_t n_test,
    std::uint64_t seed,
    const std::map<std::string, std::string>* group_key = nullptr);

}  // namespace qktext
