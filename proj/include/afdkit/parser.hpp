#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afdkit/labels.hpp"
#include "afdkit/types.hpp"

namespace afdkit {

// Splits a daily log page into its per-article discussion sections.
//
// Each AfD section is one h3 heading plus everything up to the next section.
// Closed discussions are wrapped in the archived-discussion markup
// (div class "xfd-closed" / "boilerplate afd"); the banner text is captured
// as the closure confirmation. Throws ParseError when a page contains no
// AfD sections at all.
std::vector<RawDiscussion> extract_discussions(const RawPage& page, const Date& log_date);

// Case-insensitive, whitespace-normalized mapping of a raw label spelling to
// the 8-way taxonomy. Throws UnknownLabel outside the variant table.
Outcome canonicalize_label(std::string_view raw, const LabelTable& table = LabelTable::builtin());

// Strips markup from a discussion body: tags removed, entities decoded,
// closure/navigation boilerplate dropped, whitespace collapsed. Spans that
// were bold in the source are recorded for later vote masking.
AnnotatedText clean_text(const RawDiscussion& raw);

enum class MaskMode {
  Delete,        // drop the vote token entirely
  ReplaceToken,  // substitute a fixed placeholder
};

inline constexpr std::string_view kMaskToken = "[MASKED]";

// Removes every bold span whose normalized content is a vote keyword.
// Non-vote bold spans are left untouched; remaining span offsets are
// adjusted. Idempotent.
AnnotatedText mask_votes(const AnnotatedText& input, const LabelTable& table = LabelTable::builtin(),
                         MaskMode mode = MaskMode::Delete);

// Rule-based sentence segmentation on sentence-final punctuation, with an
// abbreviation exception list and protection for dotted acronyms and wiki
// shortcuts. Whitespace-only input yields an empty list.
std::vector<Sentence> segment_sentences(std::string_view text);

// Result phrase parsed out of a closure banner ("The result was <label>").
std::optional<std::string> result_phrase_label(std::string_view banner_text);

// Cleans a raw discussion and resolves its closure state and label.
// A discussion is closed iff it carries the archived wrapper and a result
// phrase; labels outside the variant table leave it closed but unlabeled.
Discussion to_discussion(const RawDiscussion& raw, const LabelTable& table = LabelTable::builtin());

}  // namespace afdkit
