#include "afdkit/html.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "afdkit/util.hpp"

namespace afdkit::html {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(char(cp));
  } else if (cp < 0x800) {
    out.push_back(char(0xC0 | (cp >> 6)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(char(0xE0 | (cp >> 12)));
    out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(char(0xF0 | (cp >> 18)));
    out.push_back(char(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(char(0x80 | (cp & 0x3F)));
  }
}

struct NamedEntity {
  std::string_view name;
  std::string_view value;
};

// The named entities that actually show up on log pages.
constexpr NamedEntity kEntities[] = {
    {"amp", "&"},       {"lt", "<"},        {"gt", ">"},       {"quot", "\""},
    {"apos", "'"},      {"nbsp", " "},      {"ndash", "–"}, {"mdash", "—"},
    {"hellip", "…"}, {"middot", "·"}, {"rsquo", "’"}, {"lsquo", "‘"},
    {"rdquo", "”"}, {"ldquo", "“"}, {"copy", "©"},  {"deg", "°"},
    {"times", "×"}, {"minus", "−"},
};

// Collapsing text emitter that tracks which output ranges were bold.
class Emitter {
 public:
  void bold_open() { ++bold_depth_; }

  void bold_close() {
    if (bold_depth_ > 0 && --bold_depth_ == 0) close_span();
  }

  void space() {
    if (!out_.empty()) pending_space_ = true;
  }

  void text(std::string_view t) {
    for (char c : t) {
      if (is_space(c)) {
        space();
        continue;
      }
      if (pending_space_) {
        // A space crossing a bold boundary belongs to neither span.
        if (bold_depth_ == 0) close_span();
        out_.push_back(' ');
        pending_space_ = false;
      }
      if (bold_depth_ > 0 && open_start_ < 0) open_start_ = long(out_.size());
      out_.push_back(c);
    }
  }

  AnnotatedText finish() {
    close_span();
    return AnnotatedText{std::move(out_), std::move(spans_)};
  }

 private:
  void close_span() {
    if (open_start_ >= 0) {
      if (size_t(open_start_) < out_.size()) spans_.push_back({size_t(open_start_), out_.size()});
      open_start_ = -1;
    }
  }

  std::string out_;
  std::vector<TextSpan> spans_;
  bool pending_space_ = false;
  int bold_depth_ = 0;
  long open_start_ = -1;
};

bool is_void_tag(std::string_view name) {
  static const char* kVoid[] = {"area",  "base", "br",   "col",  "embed",  "hr",    "img",
                                "input", "link", "meta", "param", "source", "track", "wbr"};
  for (const char* v : kVoid)
    if (name == v) return true;
  return false;
}

bool is_block_tag(std::string_view name) {
  static const char* kBlock[] = {"p",  "div", "li", "ul", "ol",    "dl",    "dd",  "dt",
                                 "h1", "h2",  "h3", "h4", "h5",    "h6",    "br",  "hr",
                                 "tr", "td",  "th", "table", "blockquote", "pre", "section"};
  for (const char* b : kBlock)
    if (name == b) return true;
  return false;
}

}  // namespace

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    std::string_view body = s.substr(i + 1, semi - i - 1);
    if (!body.empty() && body[0] == '#') {
      uint32_t cp = 0;
      bool ok = body.size() > 1;
      if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
        for (size_t k = 2; k < body.size() && ok; ++k) {
          char c = char(std::tolower(static_cast<unsigned char>(body[k])));
          if (c >= '0' && c <= '9') cp = cp * 16 + uint32_t(c - '0');
          else if (c >= 'a' && c <= 'f') cp = cp * 16 + uint32_t(c - 'a' + 10);
          else ok = false;
        }
      } else {
        for (size_t k = 1; k < body.size() && ok; ++k) {
          if (body[k] >= '0' && body[k] <= '9') cp = cp * 10 + uint32_t(body[k] - '0');
          else ok = false;
        }
      }
      if (ok && cp > 0 && cp <= 0x10FFFF) {
        append_utf8(out, cp);
        i = semi + 1;
        continue;
      }
    } else {
      bool matched = false;
      for (const auto& e : kEntities) {
        if (body == e.name) {
          out += e.value;
          i = semi + 1;
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::optional<Tag> next_tag(std::string_view html, size_t pos) {
  while (pos < html.size()) {
    size_t lt = html.find('<', pos);
    if (lt == std::string_view::npos) return std::nullopt;
    if (lt + 1 >= html.size()) return std::nullopt;

    // Comments and declarations are skipped as opaque pseudo-tags.
    if (html.compare(lt, 4, "<!--") == 0) {
      size_t close = html.find("-->", lt + 4);
      size_t end = close == std::string_view::npos ? html.size() : close + 3;
      return Tag{"!comment", false, true, lt, end, ""};
    }
    if (html[lt + 1] == '!') {
      size_t close = html.find('>', lt + 1);
      size_t end = close == std::string_view::npos ? html.size() : close + 1;
      return Tag{"!decl", false, true, lt, end, ""};
    }

    size_t cur = lt + 1;
    bool closing = false;
    if (html[cur] == '/') {
      closing = true;
      ++cur;
    }
    if (cur >= html.size() || !std::isalpha(static_cast<unsigned char>(html[cur]))) {
      pos = lt + 1;  // literal '<' in text
      continue;
    }
    size_t name_begin = cur;
    while (cur < html.size() &&
           (std::isalnum(static_cast<unsigned char>(html[cur])) || html[cur] == '-'))
      ++cur;
    std::string name = to_lower(html.substr(name_begin, cur - name_begin));

    size_t gt = html.find('>', cur);
    if (gt == std::string_view::npos) return std::nullopt;

    Tag tag;
    tag.name = std::move(name);
    tag.closing = closing;
    tag.begin = lt;
    tag.end = gt + 1;
    std::string_view attrs = html.substr(cur, gt - cur);
    if (!attrs.empty() && attrs.back() == '/') {
      tag.self_closing = true;
      attrs.remove_suffix(1);
    }
    tag.attrs_raw = std::string(attrs);
    return tag;
  }
  return std::nullopt;
}

std::optional<std::string> attr_value(std::string_view attrs_raw, std::string_view name) {
  size_t i = 0;
  while (i < attrs_raw.size()) {
    while (i < attrs_raw.size() && (is_space(attrs_raw[i]) || attrs_raw[i] == '/')) ++i;
    size_t name_begin = i;
    while (i < attrs_raw.size() && !is_space(attrs_raw[i]) && attrs_raw[i] != '=') ++i;
    std::string attr_name = to_lower(attrs_raw.substr(name_begin, i - name_begin));
    while (i < attrs_raw.size() && is_space(attrs_raw[i])) ++i;
    std::string value;
    if (i < attrs_raw.size() && attrs_raw[i] == '=') {
      ++i;
      while (i < attrs_raw.size() && is_space(attrs_raw[i])) ++i;
      if (i < attrs_raw.size() && (attrs_raw[i] == '"' || attrs_raw[i] == '\'')) {
        char q = attrs_raw[i++];
        size_t vb = i;
        while (i < attrs_raw.size() && attrs_raw[i] != q) ++i;
        value = std::string(attrs_raw.substr(vb, i - vb));
        if (i < attrs_raw.size()) ++i;
      } else {
        size_t vb = i;
        while (i < attrs_raw.size() && !is_space(attrs_raw[i])) ++i;
        value = std::string(attrs_raw.substr(vb, i - vb));
      }
    }
    if (attr_name == to_lower(name) && !attr_name.empty()) return decode_entities(value);
    if (attr_name.empty()) break;
  }
  return std::nullopt;
}

bool has_class(std::string_view attrs_raw, std::string_view cls) {
  auto v = attr_value(attrs_raw, "class");
  if (!v) return false;
  for (const auto& token : split_tokens(*v))
    if (to_lower(token) == to_lower(cls)) return true;
  return false;
}

size_t element_end(std::string_view html, const Tag& open_tag) {
  if (open_tag.self_closing || is_void_tag(open_tag.name)) return open_tag.end;
  int depth = 1;
  size_t pos = open_tag.end;
  while (auto tag = next_tag(html, pos)) {
    pos = tag->end;
    if (tag->name != open_tag.name) continue;
    if (tag->closing) {
      if (--depth == 0) return pos;
    } else if (!tag->self_closing) {
      ++depth;
    }
  }
  return html.size();
}

AnnotatedText extract_text(std::string_view html, const ExtractOptions& opts) {
  Emitter em;
  size_t pos = 0;
  while (pos < html.size()) {
    auto tag = next_tag(html, pos);
    size_t text_end = tag ? tag->begin : html.size();
    if (text_end > pos) em.text(decode_entities(html.substr(pos, text_end - pos)));
    if (!tag) break;

    if (tag->name == "!comment" || tag->name == "!decl") {
      pos = tag->end;
      continue;
    }

    bool skip_whole = false;
    if (!tag->closing) {
      for (const auto& t : opts.skip_tags)
        if (tag->name == t) skip_whole = true;
      if (!skip_whole)
        for (const auto& c : opts.skip_classes)
          if (has_class(tag->attrs_raw, c)) skip_whole = true;
    }
    if (skip_whole) {
      em.space();
      pos = element_end(html, *tag);
      continue;
    }

    if (tag->name == "b" || tag->name == "strong") {
      if (tag->closing) em.bold_close();
      else if (!tag->self_closing) em.bold_open();
    } else if (is_block_tag(tag->name)) {
      em.space();
    }
    pos = tag->end;
  }
  return em.finish();
}

std::vector<Heading> find_headings(std::string_view html, int level) {
  std::vector<Heading> out;
  const std::string want = "h" + std::to_string(level);
  size_t pos = 0;
  while (auto tag = next_tag(html, pos)) {
    pos = tag->end;
    if (tag->closing || tag->name != want) continue;
    size_t end = element_end(html, *tag);
    std::string_view inner = html.substr(tag->end, end - tag->end);
    // strip the trailing "</hN>"
    size_t close = inner.rfind("</");
    if (close != std::string_view::npos) inner = inner.substr(0, close);

    Heading h;
    h.begin = tag->begin;
    h.end = end;
    ExtractOptions heading_opts;
    heading_opts.skip_classes = {"mw-editsection"};
    h.text = extract_text(inner, heading_opts).text;

    if (auto id = attr_value(tag->attrs_raw, "id")) h.anchor = *id;
    if (h.anchor.empty()) {
      // anchor may live on an inner span (mw-headline convention)
      size_t ipos = 0;
      while (auto itag = next_tag(inner, ipos)) {
        ipos = itag->end;
        if (!itag->closing && itag->name == "span") {
          if (auto id = attr_value(itag->attrs_raw, "id")) {
            h.anchor = *id;
            break;
          }
        }
      }
    }
    out.push_back(std::move(h));
    pos = end;
  }
  return out;
}

}  // namespace afdkit::html
