#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afdkit/types.hpp"

// Minimal HTML handling for the markup subset observed on AfD log pages.
// Not a general-purpose HTML parser: tolerant tag scanning, entity decoding
// and text extraction with bold-span tracking.
namespace afdkit::html {

// Decodes the common named entities plus numeric (&#123; / &#x1F;) forms.
std::string decode_entities(std::string_view s);

struct Tag {
  std::string name;      // lowercased
  bool closing = false;  // </name>
  bool self_closing = false;
  size_t begin = 0;  // offset of '<'
  size_t end = 0;    // offset one past '>'
  std::string attrs_raw;
};

// Scans the next tag at or after `pos`; returns nullopt when none remains.
std::optional<Tag> next_tag(std::string_view html, size_t pos);

// Value of an attribute inside a raw attribute string, entity-decoded.
std::optional<std::string> attr_value(std::string_view attrs_raw, std::string_view name);

// True when the class attribute contains the given class token.
bool has_class(std::string_view attrs_raw, std::string_view cls);

// Range of one balanced element: `open_tag_begin` must point at the '<' of an
// opening tag. Returns the offset one past the matching close tag, or the end
// of input when unbalanced.
size_t element_end(std::string_view html, const Tag& open_tag);

struct ExtractOptions {
  // Elements whose class attribute contains any of these tokens are dropped
  // wholesale (navigation chrome, edit links, ...).
  std::vector<std::string> skip_classes;
  // Tags whose entire content is dropped.
  std::vector<std::string> skip_tags = {"script", "style"};
};

// Strips tags from an HTML fragment, decodes entities, collapses whitespace,
// and records which output spans were inside <b>/<strong>.
AnnotatedText extract_text(std::string_view html, const ExtractOptions& opts = {});

struct Heading {
  std::string text;    // heading text, tags stripped
  std::string anchor;  // id of the heading or its mw-headline span
  size_t begin = 0;    // offset of the opening <hN
  size_t end = 0;      // offset one past </hN>
};

// All <hN> headings of the given level, in document order.
std::vector<Heading> find_headings(std::string_view html, int level);

}  // namespace afdkit::html
