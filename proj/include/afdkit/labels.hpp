#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "afdkit/errors.hpp"

namespace afdkit {

// The closed 8-way taxonomy of deletion-discussion outcomes.
enum class Outcome {
  Delete,
  Keep,
  Redirect,
  NoConsensus,
  Merge,
  SpeedyKeep,
  SpeedyDelete,
  Withdrawn,
};

inline constexpr size_t kOutcomeCount = 8;

const std::array<Outcome, kOutcomeCount>& all_outcomes();

std::string_view to_string(Outcome o);

// Exact canonical-name lookup ("no consensus" -> NoConsensus).
std::optional<Outcome> outcome_from_canonical(std::string_view canonical);

// Canonical label names in taxonomy order, for label spaces and reports.
std::vector<std::string> outcome_label_names();

// Maps observed label spellings to canonical outcomes. Lookups are
// case-insensitive and whitespace-normalized; anything outside the table is
// an UnknownLabel.
class LabelTable {
 public:
  struct Row {
    std::string variant;  // normalized form
    Outcome canonical;
  };

  // Compiled-in table mirroring data/label_variants.tsv.
  static const LabelTable& builtin();

  // Loads a `variant<TAB>canonical` file (UTF-8, one mapping per line,
  // '#' comments allowed).
  static LabelTable load(const std::filesystem::path& file);

  Outcome canonicalize(std::string_view raw) const;  // throws UnknownLabel
  std::optional<Outcome> try_canonicalize(std::string_view raw) const noexcept;

  // True when the normalized form of `s` is a known vote keyword.
  bool is_vote_keyword(std::string_view s) const noexcept;

  const std::vector<Row>& rows() const { return rows_; }

  // Normalization applied before lookup: lowercase, trim, collapse inner
  // whitespace, strip surrounding punctuation.
  static std::string normalize(std::string_view raw);

 private:
  void add(std::string_view variant, Outcome canonical);

  std::vector<Row> rows_;
  std::unordered_map<std::string, Outcome> index_;
};

}  // namespace afdkit
