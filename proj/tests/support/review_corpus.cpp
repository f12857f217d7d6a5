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

#include "support/review_corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "qktext/rng.hpp"

namespace qktext::testing {

namespace fs = std::filesystem;

namespace {

const char* const kStopwords[] = {
    "the", "a",    "an",   "and",  "of",    "to",    "in",   "it",     "is",
    "was", "i",    "this", "that", "with",  "for",   "on",   "but",    "not",
    "as",  "at",   "by",   "from", "or",    "so",    "if",   "then",   "there",
    "here", "very", "really", "just", "more", "some", "when", "while", "about",
    "into", "over", "after", "before", "also", "too", "quite", "rather",
    "almost", "still"};

const char* const kDomain[] = {
    "movie",    "film",        "story",     "plot",     "scene",   "scenes",
    "character", "characters", "actor",     "actors",   "actress", "director",
    "script",   "dialogue",    "screenplay", "cast",    "performance",
    "performances", "camera",  "music",     "score",    "soundtrack", "ending",
    "beginning", "pacing",     "runtime",   "sequel",   "genre",   "thriller",
    "drama",    "comedy",      "audience",  "cinema",   "screen",  "role",
    "roles",    "acting",      "footage",   "effects",  "editing"};

const char* const kVerbs[] = {
    "watched", "played", "showed",   "followed", "featured", "delivered",
    "opened",  "closed", "seemed",   "appeared", "turned",   "kept",
    "gave",    "took",   "made",     "found",    "felt",     "looked",
    "sounded", "went"};

const char* const kPositive[] = {
    "brilliant", "superb",   "wonderful", "excellent",   "moving",
    "gripping",  "delightful", "masterful", "stunning",  "memorable",
    "charming",  "inventive", "witty",     "powerful",   "touching",
    "perfect",   "beautiful", "enjoyable", "outstanding", "remarkable"};

const char* const kNegative[] = {
    "dull",     "boring",      "terrible", "awful",       "clumsy",
    "tedious",  "bland",       "forgettable", "shallow",  "predictable",
    "annoying", "weak",        "messy",    "lazy",        "pointless",
    "flat",     "lifeless",    "disappointing", "wooden", "incoherent"};

const char* const kSyllables[] = {"bar", "cor", "dan", "el",  "fen", "gar",
                                  "hol", "ker", "lan", "mor", "nor", "pel",
                                  "ran", "sel", "tor", "vin", "wes", "zan"};

template <std::size_t N>
const char* pick(const char* const (&pool)[N], Rng& rng) {
  return pool[rng.below(N)];
}

// Zipf-weighted pick keeps the function-word histogram long-tailed,
// which is what the PPMI statistics see in natural text.
template <std::size_t N>
const char* pick_zipf(const char* const (&pool)[N], Rng& rng) {
  static thread_local double cdf[N];
  static thread_local bool ready = false;
  if (!ready) {
    double acc = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      acc += 1.0 / static_cast<double>(k + 1);
      cdf[k] = acc;
    }
    for (std::size_t k = 0; k < N; ++k) cdf[k] /= acc;
    ready = true;
  }
  const double u = rng.uniform();
  return pool[std::lower_bound(cdf, cdf + N, u) - cdf];
}

std::string invented_name(Rng& rng) {
  std::string out;
  const int parts = 2 + static_cast<int>(rng.below(2));
  for (int p = 0; p < parts; ++p) out += pick(kSyllables, rng);
  return out;
}

// One review with an exact token count. Sentences end with a period glued
// to the last word, which English tokenization strips again.
std::string make_review(Rng& rng, long tokens, int label,
                        const ReviewCorpusConfig& cfg) {
  std::string text;
  long emitted = 0;
  while (emitted < tokens) {
    const long want = std::min<long>(8 + static_cast<long>(rng.below(8)),
                                     tokens - emitted);
    const bool carry = rng.uniform() < cfg.sentiment_sentence_rate && want >= 3;
    const long sentiment_at = carry ? 1 + static_cast<long>(
                                              rng.below(static_cast<std::uint64_t>(want - 1)))
                                    : -1;
    std::string sentence;
    for (long w = 0; w < want; ++w) {
      if (!sentence.empty()) sentence += ' ';
      if (w == sentiment_at) {
        const bool own = rng.uniform() < cfg.own_class_fidelity;
        const bool positive = (label == 1) == own;
        sentence += positive ? pick(kPositive, rng) : pick(kNegative, rng);
        continue;
      }
      const double u = rng.uniform();
      if (u < 0.50) {
        sentence += pick_zipf(kStopwords, rng);
      } else if (u < 0.78) {
        sentence += pick(kDomain, rng);
      } else if (u < 0.95) {
        sentence += pick(kVerbs, rng);
      } else {
        sentence += invented_name(rng);
      }
    }
    sentence += '.';
    if (!text.empty()) text += rng.uniform() < 0.12 ? "\n\n" : " ";
    text += sentence;
    emitted += want;
  }
  text += '\n';
  return text;
}

}  // namespace

double write_review_corpus(const std::string& root,
                           const ReviewCorpusConfig& cfg) {
  if (cfg.files_per_class < 1) {
    throw std::invalid_argument("review corpus needs at least one file per class");
  }
  const std::size_t total = 2 * cfg.files_per_class;

  // Lengths are drawn first, then nudged one token at a time round-robin
  // until the pool total matches the target mean exactly (to rounding).
  Rng length_rng(derive_seed(cfg.seed, 0, 0));
  std::vector<long> lengths(total);
  long sum = 0;
  for (std::size_t i = 0; i < total; ++i) {
    lengths[i] = 150 + static_cast<long>(length_rng.below(157));
    sum += lengths[i];
  }
  long residual =
      std::lround(cfg.target_mean_tokens * static_cast<double>(total)) - sum;
  std::size_t idx = 0;
  std::size_t stuck = 0;
  while (residual != 0) {
    long& len = lengths[idx];
    if (residual > 0 && len < 400) {
      ++len;
      --residual;
      stuck = 0;
    } else if (residual < 0 && len > 80) {
      --len;
      ++residual;
      stuck = 0;
    } else if (++stuck > total) {
      throw std::runtime_error("review corpus cannot reach the target mean");
    }
    idx = (idx + 1) % total;
  }

  long written = 0;
  for (int label = 0; label < 2; ++label) {
    const fs::path dir = fs::path(root) / (label == 0 ? "neg" : "pos");
    fs::create_directories(dir);
    for (std::size_t i = 0; i < cfg.files_per_class; ++i) {
      const std::size_t slot = static_cast<std::size_t>(label) * cfg.files_per_class + i;
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(label) + 1, i + 1));
      const int rating = label == 0 ? 1 + static_cast<int>(rng.below(4))
                                    : 7 + static_cast<int>(rng.below(4));
      char name[32];
      std::snprintf(name, sizeof name, "%04zu_%d.txt", i, rating);
      std::ofstream out(dir / name);
      if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
      out << make_review(rng, lengths[slot], label, cfg);
      written += lengths[slot];
    }
  }
  return static_cast<double>(written) / static_cast<double>(total);
}

}  // namespace qktext::testing
