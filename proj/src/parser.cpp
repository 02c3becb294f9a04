#include "afdkit/parser.hpp"

#include <algorithm>
#include <cctype>

#include "afdkit/html.hpp"
#include "afdkit/util.hpp"

namespace afdkit {

namespace {

bool is_closed_wrapper(const html::Tag& tag) {
  if (tag.name != "div" || tag.closing) return false;
  if (html::has_class(tag.attrs_raw, "xfd-closed")) return true;
  return html::has_class(tag.attrs_raw, "boilerplate") &&
         (html::has_class(tag.attrs_raw, "afd") || html::has_class(tag.attrs_raw, "vfd"));
}

// Chrome dropped while cleaning discussion bodies.
const html::ExtractOptions& clean_options() {
  static const html::ExtractOptions opts = [] {
    html::ExtractOptions o;
    o.skip_classes = {"mw-editsection", "plainlinks", "navbox", "metadata", "noprint",
                      "xfd-relist-hr"};
    return o;
  }();
  return opts;
}

constexpr std::string_view kArchiveTop = "The following discussion is an archived debate";
constexpr std::string_view kArchiveBottom = "The above discussion is preserved as an archive";

// Locates the trailing archive paragraph inside a closed wrapper's content so
// it can be excluded from the discussion body.
size_t find_trailing_banner(std::string_view content) {
  size_t pos = 0;
  size_t best = content.size();
  while (auto tag = html::next_tag(content, pos)) {
    pos = tag->end;
    if (tag->closing || (tag->name != "p" && tag->name != "div")) continue;
    size_t end = html::element_end(content, *tag);
    std::string_view inner = content.substr(tag->end, end - tag->end);
    if (inner.find(kArchiveBottom) != std::string_view::npos) {
      best = tag->begin;
      break;
    }
  }
  return best;
}

struct SectionCandidate {
  size_t order = 0;
  RawDiscussion raw;
};

}  // namespace

std::optional<std::string> result_phrase_label(std::string_view banner_text) {
  static constexpr std::string_view kPhrase = "the result was";
  std::string lowered = to_lower(banner_text);
  size_t pos = lowered.find(kPhrase);
  if (pos == std::string::npos) return std::nullopt;
  size_t begin = pos + kPhrase.size();
  size_t end = begin;
  while (end < banner_text.size() && banner_text[end] != '.' && banner_text[end] != ';' &&
         banner_text[end] != '(' && banner_text[end] != '\n' && end - begin < 64)
    ++end;
  std::string label = trim(banner_text.substr(begin, end - begin));
  if (label.empty()) return std::nullopt;
  return label;
}

std::vector<RawDiscussion> extract_discussions(const RawPage& page, const Date& log_date) {
  const std::string& body = page.body;
  if (trim(body).empty()) throw ParseError(page.url, "empty page body");

  std::vector<SectionCandidate> sections;
  std::vector<std::pair<size_t, size_t>> closed_ranges;

  // Pass 1: closed discussions, wrapped in the archived-discussion div.
  size_t pos = 0;
  while (auto tag = html::next_tag(body, pos)) {
    pos = tag->end;
    if (!is_closed_wrapper(*tag)) continue;
    size_t wrapper_end = html::element_end(body, *tag);
    closed_ranges.emplace_back(tag->begin, wrapper_end);

    std::string_view content = std::string_view(body).substr(
        tag->end, wrapper_end - tag->end);
    // strip the wrapper's own closing tag from the content view
    size_t close = content.rfind("</");
    if (close != std::string_view::npos) content = content.substr(0, close);

    auto headings = html::find_headings(content, 3);
    if (headings.empty()) continue;  // wrapper without a section heading: not an AfD
    const html::Heading& h = headings.front();

    std::string_view banner_html = content.substr(0, h.begin);
    size_t body_begin = h.end;
    size_t body_end = find_trailing_banner(content);
    if (body_end < body_begin) body_end = content.size();
    std::string_view trailing_html =
        body_end <= content.size() ? content.substr(body_end) : std::string_view{};

    std::string banner_text = html::extract_text(banner_html).text;
    std::string trailing_text = html::extract_text(trailing_html).text;
    if (!trailing_text.empty()) banner_text += " " + trailing_text;

    RawDiscussion raw;
    raw.title = trim(h.text);
    raw.anchor = h.anchor;
    raw.body_html = std::string(content.substr(body_begin, body_end - body_begin));
    raw.closing_banner = banner_text.empty() ? std::nullopt : std::make_optional(banner_text);
    raw.source_url = page.url + (h.anchor.empty() ? "" : "#" + h.anchor);
    raw.log_date = log_date;
    if (!raw.title.empty() && !trim(raw.body_html).empty())
      sections.push_back({tag->begin, std::move(raw)});
    pos = wrapper_end;
  }

  // Pass 2: open discussions, h3 headings outside any closed wrapper.
  auto headings = html::find_headings(body, 3);
  auto inside_closed = [&](size_t offset) {
    for (auto [b, e] : closed_ranges)
      if (offset >= b && offset < e) return true;
    return false;
  };
  for (size_t i = 0; i < headings.size(); ++i) {
    const html::Heading& h = headings[i];
    if (inside_closed(h.begin)) continue;

    size_t content_end = body.size();
    if (i + 1 < headings.size()) content_end = std::min(content_end, headings[i + 1].begin);
    for (auto [b, e] : closed_ranges)
      if (b > h.end) content_end = std::min(content_end, b);
    // page footer is not discussion content
    size_t footer = body.find("<div class=\"printfooter\"", h.end);
    if (footer != std::string::npos) content_end = std::min(content_end, footer);

    RawDiscussion raw;
    raw.title = trim(h.text);
    raw.anchor = h.anchor;
    raw.body_html = body.substr(h.end, content_end - h.end);
    raw.closing_banner = std::nullopt;
    raw.source_url = page.url + (h.anchor.empty() ? "" : "#" + h.anchor);
    raw.log_date = log_date;
    if (!raw.title.empty() && !trim(raw.body_html).empty())
      sections.push_back({h.begin, std::move(raw)});
  }

  if (sections.empty()) throw ParseError(page.url, "no AfD sections found");

  std::sort(sections.begin(), sections.end(),
            [](const SectionCandidate& a, const SectionCandidate& b) { return a.order < b.order; });
  std::vector<RawDiscussion> out;
  out.reserve(sections.size());
  for (auto& s : sections) out.push_back(std::move(s.raw));
  return out;
}

Outcome canonicalize_label(std::string_view raw, const LabelTable& table) {
  return table.canonicalize(raw);
}

AnnotatedText clean_text(const RawDiscussion& raw) {
  return html::extract_text(raw.body_html, clean_options());
}

AnnotatedText mask_votes(const AnnotatedText& input, const LabelTable& table, MaskMode mode) {
  std::vector<TextSpan> spans = input.bold_spans;
  std::sort(spans.begin(), spans.end());

  // Rebuild the text, dropping (or replacing) vote spans. Offsets of the
  // surviving spans shift left by the amount removed before them.
  std::string out;
  std::vector<TextSpan> out_spans;
  out.reserve(input.text.size());
  const std::string& text = input.text;
  size_t pos = 0;

  auto append_plain = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end && i < text.size(); ++i) {
      char c = text[i];
      if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
      out.push_back(c);
    }
  };

  for (const TextSpan& span : spans) {
    if (span.begin < pos || span.end > text.size() || span.begin >= span.end) continue;
    std::string_view content = std::string_view(text).substr(span.begin, span.size());
    bool vote = table.is_vote_keyword(content);
    append_plain(pos, span.begin);
    if (vote) {
      pos = span.end;
      if (mode == MaskMode::ReplaceToken) {
        if (!out.empty() && out.back() != ' ') out.push_back(' ');
        out += kMaskToken;
      } else {
        // swallow an orphaned separator left behind by the deleted vote
        size_t k = pos;
        while (k < text.size() && text[k] == ' ') ++k;
        if (k < text.size() && (text[k] == '.' || text[k] == ',' || text[k] == ':' ||
                                text[k] == ';') &&
            (k + 1 == text.size() || text[k + 1] == ' '))
          pos = k + 1;
      }
    } else {
      size_t b = out.size();
      append_plain(span.begin, span.end);
      if (out.size() > b) out_spans.push_back({b, out.size()});
      pos = span.end;
    }
  }
  append_plain(pos, text.size());

  // trim
  size_t b = out.find_first_not_of(' ');
  size_t e = out.find_last_not_of(' ');
  if (b == std::string::npos) return AnnotatedText{};
  if (b > 0 || e + 1 < out.size()) {
    for (auto& s : out_spans) {
      s.begin -= b;
      s.end -= b;
    }
    out = out.substr(b, e - b + 1);
  }
  return AnnotatedText{std::move(out), std::move(out_spans)};
}

namespace {

bool is_sentence_punct(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closing_quote(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

const std::vector<std::string>& abbreviations() {
  static const std::vector<std::string> kAbbrev = {
      "e.g", "i.e", "etc", "cf",  "vs",  "p",    "pp",  "mr",  "mrs",  "ms",  "dr",
      "prof", "rev", "st",  "jr",  "sr",  "inc",  "ltd", "co",  "dept", "ca",  "al",
      "fig", "vol", "ch",  "sec", "art", "approx"};
  return kAbbrev;
}

// Abbreviations that only suppress a boundary when a number follows ("no. 5").
const std::vector<std::string>& numeric_abbreviations() {
  static const std::vector<std::string> kNumeric = {"no", "nos"};
  return kNumeric;
}

bool suppresses_boundary(std::string_view token, bool next_is_digit) {
  while (!token.empty() && !std::isalnum(static_cast<unsigned char>(token.front())) &&
         token.front() != '.')
    token.remove_prefix(1);
  if (token.empty()) return false;

  // dotted acronyms and abbreviations spelled with periods ("U.S", "e.g")
  if (token.find('.') != std::string_view::npos) return true;
  // single-letter initials ("J. Smith")
  if (token.size() == 1 && std::isupper(static_cast<unsigned char>(token[0]))) return true;

  std::string lowered = to_lower(token);
  for (const auto& a : abbreviations())
    if (lowered == a) return true;
  if (next_is_digit)
    for (const auto& a : numeric_abbreviations())
      if (lowered == a) return true;
  return false;
}

}  // namespace

std::vector<Sentence> segment_sentences(std::string_view text) {
  std::vector<Sentence> out;
  std::string s = trim(text);
  if (s.empty()) return out;

  size_t start = 0;
  size_t i = 0;
  const size_t n = s.size();
  while (i < n) {
    if (!is_sentence_punct(s[i])) {
      ++i;
      continue;
    }
    size_t run_begin = i;
    size_t dots = 0, others = 0;
    while (i < n && is_sentence_punct(s[i])) {
      s[i] == '.' ? ++dots : ++others;
      ++i;
    }
    // ellipses are not sentence boundaries
    if (others == 0 && dots >= 3) continue;

    while (i < n && is_closing_quote(s[i])) ++i;
    size_t sentence_end = i;

    if (i >= n) break;  // final sentence closed by end of text

    if (!std::isspace(static_cast<unsigned char>(s[i]))) continue;
    size_t k = i;
    while (k < n && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    if (k >= n) break;

    char next = s[k];
    bool opens_sentence = std::isupper(static_cast<unsigned char>(next)) ||
                          std::isdigit(static_cast<unsigned char>(next)) || next == '"' ||
                          next == '\'' || next == '(' || next == '[';
    if (!opens_sentence) continue;

    // token immediately before the punctuation run
    size_t tb = run_begin;
    while (tb > start && !std::isspace(static_cast<unsigned char>(s[tb - 1]))) --tb;
    std::string_view token = std::string_view(s).substr(tb, run_begin - tb);
    if (dots > 0 && others == 0 &&
        suppresses_boundary(token, std::isdigit(static_cast<unsigned char>(next)) != 0))
      continue;

    std::string sentence = trim(std::string_view(s).substr(start, sentence_end - start));
    if (!sentence.empty()) out.push_back({out.size(), std::move(sentence)});
    start = k;
    i = k;
  }

  std::string tail = trim(std::string_view(s).substr(start));
  if (!tail.empty()) out.push_back({out.size(), std::move(tail)});
  return out;
}

Discussion to_discussion(const RawDiscussion& raw, const LabelTable& table) {
  Discussion d;
  d.title = raw.title;
  d.body = clean_text(raw);
  d.source_url = raw.source_url;
  d.log_date = raw.log_date;
  d.closed = false;
  if (raw.closing_banner) {
    if (auto phrase = result_phrase_label(*raw.closing_banner)) {
      d.closed = true;
      d.label = table.try_canonicalize(*phrase);
    }
  }
  return d;
}

}  // namespace afdkit
