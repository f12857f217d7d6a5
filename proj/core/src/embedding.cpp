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

#include "qktext/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "qktext/errors.hpp"

namespace qktext {

std::vector<std::string> build_vocabulary(const std::vector<Document>& corpus) {
  std::vector<std::string> vocab;
  std::map<std::string, Eigen::Index> seen;
  for (const Document& doc : corpus) {
    for (const std::string& token : doc.tokens) {
      if (seen.emplace(token, 0).second) vocab.push_back(token);
    }
  }
  return vocab;
}

Eigen::MatrixXd cooccurrence_counts(const std::vector<Document>& corpus,
                                    const std::map<std::string, Eigen::Index>& vocab,
                                    int window) {
  if (window < 1) {
    throw ArgumentError("cooccurrence_counts: window must be >= 1");
  }
  const Eigen::Index v = static_cast<Eigen::Index>(vocab.size());
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(v, v);
  for (const Document& doc : corpus) {
    const std::size_t n = doc.tokens.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto wi = vocab.find(doc.tokens[i]);
      if (wi == vocab.end()) continue;
      const std::size_t hi = std::min(n, i + static_cast<std::size_t>(window) + 1);
      for (std::size_t j = i + 1; j < hi; ++j) {
        const auto wj = vocab.find(doc.tokens[j]);
        if (wj == vocab.end()) continue;
        counts(wi->second, wj->second) += 1.0;
        counts(wj->second, wi->second) += 1.0;
      }
    }
  }
  return counts;
}

Eigen::MatrixXd ppmi(const Eigen::MatrixXd& counts) {
  if (counts.rows() != counts.cols()) {
    throw ShapeError("ppmi: count matrix is not square");
  }
  const double total = counts.sum();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(counts.rows(), counts.cols());
  if (total == 0.0) return out;
  const Eigen::VectorXd row_sums = counts.rowwise().sum();
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      const double c = counts(i, j);
      if (c <= 0.0) continue;
      const double pmi = std::log(c * total / (row_sums[i] * row_sums[j]));
      if (pmi > 0.0) out(i, j) = pmi;
    }
  }
  return out;
}

namespace {

// Columns of `vectors` get a canonical sign: the entry of largest magnitude
// (lowest index on ties) is made non-negative.
void canonicalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double mag = std::abs(vectors(r, c));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if (vectors(arg, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

}  // namespace

EmbeddingTable train_embeddings(const std::vector<Document>& corpus, int dim,
                                int window) {
  if (dim < 1) throw ArgumentError("train_embeddings: dim must be >= 1");
  EmbeddingTable table;
  table.tokens = build_vocabulary(corpus);
  if (table.tokens.empty()) {
    throw DegenerateInputError("train_embeddings: empty vocabulary");
  }
  if (static_cast<std::size_t>(dim) > table.tokens.size()) {
    throw ArgumentError("train_embeddings: dim " + std::to_string(dim) +
                        " exceeds vocabulary size " +
                        std::to_string(table.tokens.size()));
  }
  for (std::size_t i = 0; i < table.tokens.size(); ++i) {
    table.index.emplace(table.tokens[i], static_cast<Eigen::Index>(i));
  }

  const Eigen::MatrixXd weights =
      ppmi(cooccurrence_counts(corpus, table.index, window));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(weights);
  if (solver.info() != Eigen::Success) {
    throw DegenerateInputError("train_embeddings: eigendecomposition failed");
  }

  // Rank by |eigenvalue| descending; positive wins ties so the kept
  // subspace is the best rank-dim approximation with a stable order.
  const Eigen::VectorXd& values = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&values](Eigen::Index a, Eigen::Index b) {
                     const double ma = std::abs(values[a]);
                     const double mb = std::abs(values[b]);
                     if (ma != mb) return ma > mb;
                     return values[a] > values[b];
                   });

  Eigen::MatrixXd basis(values.size(), dim);
  for (int k = 0; k < dim; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    basis.col(k) =
        solver.eigenvectors().col(src) * std::sqrt(std::abs(values[src]));
  }
  canonicalize_signs(basis);
  table.vectors = std::move(basis);
  return table;
}

EmbeddingTable load_embeddings_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  EmbeddingTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  Eigen::Index dim = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ls(line);
    std::string token;
    ls >> token;
    std::vector<double> values;
    std::string cell;
    while (ls >> cell) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size() || !std::isfinite(v)) {
          throw std::invalid_argument(cell);
        }
        values.push_back(v);
      } catch (const std::logic_error&) {
        throw ParseError(path, line_no, "bad coordinate '" + cell + "'");
      }
    }
    if (values.empty()) {
      throw ParseError(path, line_no, "token without coordinates");
    }
    if (dim < 0) {
      dim = static_cast<Eigen::Index>(values.size());
    } else if (static_cast<Eigen::Index>(values.size()) != dim) {
      throw ParseError(path, line_no,
                       "expected " + std::to_string(dim) + " coordinates, got " +
                           std::to_string(values.size()));
    }
    if (!table.index.emplace(token, static_cast<Eigen::Index>(table.tokens.size())).second) {
      throw ParseError(path, line_no, "duplicate token '" + token + "'");
    }
    table.tokens.push_back(token);
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError(path, line_no, "no embeddings in file");
  table.vectors.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      table.vectors(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
    }
  }
  return table;
}

void save_embeddings_text(const std::string& path, const EmbeddingTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  char buf[40];
  for (std::size_t r = 0; r < table.tokens.size(); ++r) {
    out << table.tokens[r];
    for (Eigen::Index c = 0; c < table.dim(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g",
                    table.vectors(static_cast<Eigen::Index>(r), c));
      out << " " << buf;
    }
    out << "\n";
  }
  if (!out) throw IoError("short write to " + path);
}

FeatureVector sentence_vector(const Document& doc, const EmbeddingTable& table) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(table.dim());
  long known = 0;
  for (const std::string& token : doc.tokens) {
    const auto it = table.index.find(token);
    if (it == table.index.end()) continue;
    sum += table.vectors.row(it->second);
    ++known;
  }
  if (known == 0) {
    throw DegenerateInputError("sentence_vector: no in-vocabulary token in '" +
                               doc.source + "'");
  }
  sum /= static_cast<double>(known);
  const double norm = sum.norm();
  if (norm == 0.0) {
    throw DegenerateInputError("sentence_vector: zero mean vector for '" +
                               doc.source + "'");
  }
  return sum / norm;
}

}  // namespace qktext
