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

#include "qktext/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qktext/errors.hpp"
#include "qktext/rng.hpp"

namespace qktext {

namespace fs = std::filesystem;

std::vector<std::string> tokenize(const std::string& text, TokenizeMode mode) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (mode == TokenizeMode::kEnglish) {
      std::string cleaned;
      cleaned.reserve(current.size());
      for (char ch : current) {
        if (!std::ispunct(static_cast<unsigned char>(ch))) cleaned.push_back(ch);
      }
      current = std::move(cleaned);
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      current.push_back(ch);
    }
  }
  flush();
  return tokens;
}

LabeledDataset load_lambeq(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  LabeledDataset ds;
  ds.class_names = {"computing", "food"};
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.size() < 3 || (line[0] != '0' && line[0] != '1')) {
      throw ParseError(path, line_no, "expected '<0|1><space><sentence>'");
    }
    if (line[1] != ' ' && line[1] != '\t') {
      throw ParseError(path, line_no, "label digit must be followed by whitespace");
    }
    Document doc;
    doc.label = line[0] - '0';
    doc.tokens = tokenize(line.substr(1), TokenizeMode::kWhitespace);
    if (doc.tokens.empty()) {
      throw ParseError(path, line_no, "empty sentence");
    }
    doc.source = path + ":" + std::to_string(line_no);
    ds.docs.push_back(std::move(doc));
  }
  return ds;
}

namespace {

std::vector<fs::path> list_txt_sorted(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw DataLayoutError("missing class directory " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) {
    throw DataLayoutError("no .txt files under " + dir.string());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  return files;
}

}  // namespace

LabeledDataset load_imdb(const std::string& root) {
  LabeledDataset ds;
  ds.class_names = {"neg", "pos"};
  const std::array<const char*, 2> subdirs = {"neg", "pos"};
  for (int label = 0; label < 2; ++label) {
    for (const fs::path& file : list_txt_sorted(fs::path(root) / subdirs[static_cast<std::size_t>(label)])) {
      std::ifstream in(file);
      if (!in) throw IoError("cannot read " + file.string());
      std::stringstream buffer;
      buffer << in.rdbuf();
      Document doc;
      doc.label = label;
      doc.tokens = tokenize(buffer.str(), TokenizeMode::kEnglish);
      doc.source = std::string(subdirs[static_cast<std::size_t>(label)]) + "/" +
                   file.filename().string();
      ds.docs.push_back(std::move(doc));
    }
  }
  return ds;
}

SplitIndices sample_subset_indices(
    const LabeledDataset& dataset, std::size_t n_train, std::size_t n_test,
    std::uint64_t seed, const std::map<std::string, std::string>* group_key) {
  if (n_train < 2 || n_test < 2 || n_train % 2 != 0 || n_test % 2 != 0) {
    throw ArgumentError(
        "sample_subset: balanced splits need even train/test counts >= 2");
  }
  if (n_train + n_test > dataset.docs.size()) {
    throw ArgumentError("sample_subset: requested " +
                        std::to_string(n_train + n_test) + " documents from " +
                        std::to_string(dataset.docs.size()));
  }

  SplitIndices split;
  for (int label = 0; label < 2; ++label) {
    const std::size_t need_train = n_train / 2;
    const std::size_t need_test = n_test / 2;
    const std::size_t need = need_train + need_test;

    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < dataset.docs.size(); ++i) {
      if (dataset.docs[i].label == label) pool.push_back(i);
    }

    if (group_key != nullptr) {
      // Fewest groups that can fill the class quota, preferring large
      // groups; unmapped documents count as their own group.
      std::map<std::string, std::vector<std::size_t>> groups;
      for (std::size_t idx : pool) {
        const auto& source = dataset.docs[idx].source;
        const auto it = group_key->find(source);
        groups[it == group_key->end() ? source : it->second].push_back(idx);
      }
      std::vector<const std::pair<const std::string, std::vector<std::size_t>>*> order;
      for (const auto& g : groups) order.push_back(&g);
      std::stable_sort(order.begin(), order.end(),
                       [](const auto* a, const auto* b) {
                         return a->second.size() > b->second.size();
                       });
      std::vector<std::size_t> selected;
      for (const auto* g : order) {
        if (selected.size() >= need) break;
        selected.insert(selected.end(), g->second.begin(), g->second.end());
      }
      std::sort(selected.begin(), selected.end());
      pool = std::move(selected);
    }

    if (pool.size() < need) {
      throw ArgumentError("sample_subset: class " + std::to_string(label) +
                          " has " + std::to_string(pool.size()) +
                          " usable documents, needs " + std::to_string(need));
    }

    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(label), 0));
    for (std::size_t i = pool.size() - 1; i > 0; --i) {
      const std::size_t j = rng.below(i + 1);
      std::swap(pool[i], pool[j]);
    }
    split.train.insert(split.train.end(), pool.begin(),
                       pool.begin() + static_cast<std::ptrdiff_t>(need_train));
    split.test.insert(split.test.end(),
                      pool.begin() + static_cast<std::ptrdiff_t>(need_train),
                      pool.begin() + static_cast<std::ptrdiff_t>(need));
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::pair<LabeledDataset, LabeledDataset> sample_subset(
    const LabeledDataset& dataset, std::size_t n_train, std::size_t n_test,
    std::uint64_t seed, const std::map<std::string, std::string>* group_key) {
  const SplitIndices split =
      sample_subset_indices(dataset, n_train, n_test, seed, group_key);
  LabeledDataset train, test;
  train.class_names = dataset.class_names;
  test.class_names = dataset.class_names;
  for (std::size_t i : split.train) train.docs.push_back(dataset.docs[i]);
  for (std::size_t i : split.test) test.docs.push_back(dataset.docs[i]);
  return {std::move(train), std::move(test)};
}

}  // namespace qktext
