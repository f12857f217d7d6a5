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

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "qktext/corpus.hpp"
#include "qktext/feature_map.hpp"

namespace qktext {

struct EmbeddingTable {
  std::vector<std::string> tokens;  // row order
  std::map<std::string, Eigen::Index> index;
  Eigen::MatrixXd vectors;  // one row per token

  Eigen::Index dim() const { return vectors.cols(); }
  bool contains(const std::string& token) const { return index.count(token) > 0; }
};

// Vocabulary in first-occurrence order.
std::vector<std::string> build_vocabulary(const std::vector<Document>& corpus);

// Symmetric-window co-occurrence counts; windows do not cross document
// boundaries. Rows/columns follow `vocab` order.
Eigen::MatrixXd cooccurrence_counts(const std::vector<Document>& corpus,
                                    const std::map<std::string, Eigen::Index>& vocab,
                                    int window);

// Positive pointwise mutual information of a symmetric count matrix.
Eigen::MatrixXd ppmi(const Eigen::MatrixXd& counts);

// Count-based distributional embeddings: co-occurrence -> PPMI -> dense
// symmetric eigendecomposition truncated to the `dim` largest-|eigenvalue|
// pairs, coordinates scaled by sqrt(|eigenvalue|). Eigenvector signs are
// canonicalised (largest-magnitude entry positive), so repeated runs agree
// bit for bit. dim must be in [1, vocabulary size].
EmbeddingTable train_embeddings(const std::vector<Document>& corpus, int dim,
                                int window = 5);

// Text format: one "token v1 .. vd" line per token, any whitespace
// separation, file order preserved. Inconsistent dimensions, duplicate
// tokens, or non-finite values raise ParseError.
EmbeddingTable load_embeddings_text(const std::string& path);
void save_embeddings_text(const std::string& path, const EmbeddingTable& table);

// Mean of in-vocabulary token vectors (with multiplicity), scaled to unit
// norm. Raises DegenerateInputError when no token is known or the mean is
// the zero vector.
FeatureVector sentence_vector(const Document& doc, const EmbeddingTable& table);

}  // namespace qktext
