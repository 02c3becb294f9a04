#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "afdkit/date.hpp"
#include "afdkit/labels.hpp"

namespace afdkit {

// Half-open [begin, end) character range.
struct TextSpan {
  size_t begin = 0;
  size_t end = 0;

  auto operator<=>(const TextSpan&) const = default;
  size_t size() const { return end - begin; }
};

// Plain text plus the spans that were bold in the source markup. The spans
// are what vote masking operates on.
struct AnnotatedText {
  std::string text;
  std::vector<TextSpan> bold_spans;

  bool operator==(const AnnotatedText&) const = default;
};

// One fetched page, either fresh or from the on-disk cache.
struct RawPage {
  std::string url;
  std::string fetched_at;  // ISO-8601 UTC
  std::string body;
  bool from_cache = false;
};

// A single AfD section as it appears on a daily log page, before cleaning.
struct RawDiscussion {
  std::string title;
  std::string anchor;  // heading id, used for URL fragment targeting
  std::string body_html;
  std::optional<std::string> closing_banner;  // text of the archived-discussion banner
  std::string source_url;
  Date log_date;
};

// A cleaned discussion ready for dataset assembly and classification.
struct Discussion {
  std::string title;
  AnnotatedText body;
  std::optional<Outcome> label;
  bool closed = false;
  std::string source_url;
  Date log_date;

  bool operator==(const Discussion&) const = default;

  const std::string& text() const { return body.text; }
};

struct Sentence {
  size_t index = 0;
  std::string text;

  bool operator==(const Sentence&) const = default;
};

}  // namespace afdkit
