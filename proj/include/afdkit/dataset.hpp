#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "afdkit/parser.hpp"
#include "afdkit/types.hpp"

namespace afdkit {

inline constexpr int kDatasetSchemaVersion = 1;

struct SplitRatios {
  double train = 0.70;
  double validation = 0.10;
  double test = 0.20;

  bool valid() const;
  std::array<double, 3> as_array() const { return {train, validation, test}; }
};

struct DatasetSplits {
  std::vector<Discussion> train;
  std::vector<Discussion> validation;
  std::vector<Discussion> test;
  uint64_t split_seed = 0;
  SplitRatios ratios;
  std::vector<std::string> warnings;  // degenerate strata etc.

  size_t total() const { return train.size() + validation.size() + test.size(); }
  const std::vector<Discussion>& split(size_t i) const;
};

inline constexpr std::array<std::string_view, 3> kSplitNames = {"train", "validation", "test"};

// Stratified-by-label split. Duplicate titles collapse to one instance before
// splitting (the latest log date wins); allocation per label uses largest
// remainder with ties to the later split. Deterministic under the seed and
// independent of input order. Labels with fewer items than splits fall back
// to train with a warning.
DatasetSplits build_dataset(const std::vector<Discussion>& discussions, const SplitRatios& ratios,
                            uint64_t seed);

// Applies vote masking to every discussion body, leaving labels and split
// structure untouched.
std::vector<Discussion> masked_copy(const std::vector<Discussion>& discussions,
                                    const LabelTable& table = LabelTable::builtin(),
                                    MaskMode mode = MaskMode::Delete);

struct SentenceLengthStats {
  double mean = 0;
  double min = 0;
  double p25 = 0;
  double p50 = 0;
  double p75 = 0;
  double max = 0;
  size_t count = 0;
};

struct LabelStats {
  // label -> items per split (train, validation, test)
  std::map<std::string, std::array<size_t, 3>> counts;
  // label -> mean discussion length in whitespace tokens, across all splits
  std::map<std::string, double> mean_discussion_tokens;
  // label -> sentence length distribution (whitespace tokens per sentence)
  std::map<std::string, SentenceLengthStats> sentence_lengths;

  size_t split_total(size_t split_index) const;
};

LabelStats compute_stats(const DatasetSplits& splits);

// Directory layout: train.jsonl / validation.jsonl / test.jsonl plus
// manifest.json (schema version, seed, ratios, per-split counts, source date
// range). Round trip is exact.
void save_dataset(const DatasetSplits& splits, const std::filesystem::path& dir);
DatasetSplits load_dataset(const std::filesystem::path& dir);

}  // namespace afdkit
