#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "afdkit/labels.hpp"

namespace afdkit {

// Fixed anchor of the outcome prompt template, useful for fidelity checks.
inline constexpr std::string_view kPromptAnchor = "You are a helpful knowledge management expert";

inline constexpr std::string_view kTitlePlaceholder = "TOREPLACE_ARTICLE";
inline constexpr std::string_view kDiscussionPlaceholder = "TOREPLACE_DISCUSSION";

// The raw template with placeholders still in place.
std::string_view prompt_template();

struct PromptExemplar {
  std::string title;
  std::string discussion;
  std::string label;
  std::string explanation;
};

// Renders the outcome prompt: the template with both placeholders
// substituted. Zero-shot when `shots` is empty; otherwise each exemplar is
// inserted as an INPUT/OUTPUT pair before the final INPUT block.
std::string render_llm_prompt(std::string_view title, std::string_view discussion,
                              const std::vector<PromptExemplar>& shots = {});

struct LlmOutcome {
  Outcome label;
  std::string explanation;
};

// Extracts the first object carrying a Label (and optionally Explanation)
// from a model response, tolerating surrounding prose, code fences and
// unquoted keys. The label goes through canonicalize_label. Throws
// UnparseableResponse / UnknownLabel.
LlmOutcome parse_llm_response(std::string_view raw, const LabelTable& table = LabelTable::builtin());

}  // namespace afdkit
