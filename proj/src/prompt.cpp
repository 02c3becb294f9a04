#include "afdkit/prompt.hpp"

#include <cctype>

#include "afdkit/errors.hpp"
#include "afdkit/util.hpp"

namespace afdkit {

namespace {

// Outcome prompt. The final INPUT block carries the substitution
// placeholders; few-shot exemplars are inserted immediately before it.
constexpr const char* kTemplate =
    R"(You are a helpful knowledge management expert, and you excel at identifying the resolution of the Wikipedia deletion discussion for an Article.

Given an article flagged for deletion on Wikipedia along with its deletion discussions, your task is to analyze the article text and discussions to identify the most suitable consensus label based on the deletion discussion.

Your output should be a JSON dictionary with the label that you found and a three-sentence explanation of choosing that label. It is crucial to provide specific reasons based on the content of the deletion discussions and article text. Here is the list of labels with what they mean:
- "keep": The article should be kept as it is.
- "delete": The article should be deleted.
- "merge": The article should be merged with another article.
- "redirect": The article should be redirected to another existing article that is a better target for the content.
- "withdraw": The nominator withdraws their nomination for deletion.
- "no consensus": When there is no clear agreement on the deletion discussion.
- "speedy keep": The article should be kept and there are reasons to bypass deletion discussions to keep the article immediately.
- "speedy delete": The article should be deleted and there are reasons to bypass deletion discussions to delete the article immediately.

Your input will be in the following format:

INPUT:
{
     Title: <Article Title>,
     Discussion: <Discussion text>
}

OUTPUT:
{
    Label: <One of the labels from the list of labels.>,
    Explanation: <Your explanation for the label.>
}

Now, you must read the following Input which is a dictionary with Title and deletion discussion. Your task is to analyze the article text and discussions to identify the most suitable consensus label based on the deletion discussion.
INPUT:
{
    Title: TOREPLACE_ARTICLE,
    Discussion: TOREPLACE_DISCUSSION
}
OUTPUT:
)";

std::string replace_once(std::string s, std::string_view needle, std::string_view value) {
  size_t pos = s.find(needle);
  if (pos != std::string::npos) s.replace(pos, needle.size(), value);
  return s;
}

}  // namespace

std::string_view prompt_template() { return kTemplate; }

std::string render_llm_prompt(std::string_view title, std::string_view discussion,
                              const std::vector<PromptExemplar>& shots) {
  if (trim(title).empty()) throw PreconditionViolation("prompt title must be non-empty");
  if (trim(discussion).empty()) throw PreconditionViolation("prompt discussion must be non-empty");

  std::string prompt = kTemplate;
  if (!shots.empty()) {
    std::string block;
    for (const auto& shot : shots) {
      block += "INPUT:\n{\n    Title: " + shot.title + ",\n    Discussion: " + shot.discussion +
               "\n}\nOUTPUT:\n{\n    Label: " + shot.label +
               ",\n    Explanation: " + shot.explanation + "\n}\n\n";
    }
    size_t final_input = prompt.rfind("INPUT:");
    prompt.insert(final_input, block);
  }
  prompt = replace_once(std::move(prompt), kTitlePlaceholder, title);
  prompt = replace_once(std::move(prompt), kDiscussionPlaceholder, discussion);
  return prompt;
}

namespace {

// Balanced {...} regions, quote-aware, in order of appearance.
std::vector<std::string_view> object_candidates(std::string_view raw) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '{') {
      ++i;
      continue;
    }
    int depth = 0;
    bool in_string = false;
    size_t j = i;
    for (; j < raw.size(); ++j) {
      char c = raw[j];
      if (in_string) {
        if (c == '\\') ++j;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{') ++depth;
      else if (c == '}') {
        if (--depth == 0) break;
      }
    }
    if (j < raw.size()) {
      out.push_back(raw.substr(i, j - i + 1));
      i = j + 1;
    } else {
      ++i;  // unbalanced; skip this brace
    }
  }
  return out;
}

// Case-insensitive search for `key` followed by ':'. Returns the offset just
// past the colon, or npos.
size_t find_key(std::string_view obj, std::string_view key) {
  std::string lowered = to_lower(obj);
  std::string needle = to_lower(key);
  size_t pos = 0;
  while ((pos = lowered.find(needle, pos)) != std::string::npos) {
    size_t after = pos + needle.size();
    // key must not be part of a longer word
    if (pos > 0 && std::isalnum(static_cast<unsigned char>(lowered[pos - 1]))) {
      pos = after;
      continue;
    }
    size_t k = after;
    while (k < obj.size() && (obj[k] == '"' || obj[k] == '\'' ||
                              std::isspace(static_cast<unsigned char>(obj[k]))))
      ++k;
    if (k < obj.size() && obj[k] == ':') return k + 1;
    pos = after;
  }
  return std::string_view::npos;
}

// Value after a key: a quoted string (with escapes) or a bare run ending at
// ',' / '}' / newline.
std::string read_value(std::string_view obj, size_t pos, bool bare_to_line_end) {
  while (pos < obj.size() && std::isspace(static_cast<unsigned char>(obj[pos]))) ++pos;
  if (pos >= obj.size()) return "";
  if (obj[pos] == '"' || obj[pos] == '\'') {
    char q = obj[pos++];
    std::string out;
    while (pos < obj.size() && obj[pos] != q) {
      if (obj[pos] == '\\' && pos + 1 < obj.size()) {
        char esc = obj[pos + 1];
        if (esc == 'n') out.push_back('\n');
        else if (esc == 't') out.push_back('\t');
        else out.push_back(esc);
        pos += 2;
      } else {
        out.push_back(obj[pos++]);
      }
    }
    return out;
  }
  size_t end = pos;
  while (end < obj.size()) {
    char c = obj[end];
    if (c == '}' || c == '\n' || (!bare_to_line_end && c == ',')) break;
    ++end;
  }
  std::string out = trim(obj.substr(pos, end - pos));
  while (!out.empty() && out.back() == ',') out.pop_back();
  return trim(out);
}

}  // namespace

LlmOutcome parse_llm_response(std::string_view raw, const LabelTable& table) {
  if (trim(raw).empty()) throw PreconditionViolation("response text must be non-empty");

  for (std::string_view obj : object_candidates(raw)) {
    size_t label_pos = find_key(obj, "label");
    if (label_pos == std::string_view::npos) continue;
    std::string label = read_value(obj, label_pos, /*bare_to_line_end=*/false);
    if (label.empty()) continue;

    std::string explanation;
    size_t expl_pos = find_key(obj, "explanation");
    if (expl_pos != std::string_view::npos)
      explanation = read_value(obj, expl_pos, /*bare_to_line_end=*/true);

    // first object carrying a label decides; the taxonomy gate applies to it
    return LlmOutcome{table.canonicalize(label), std::move(explanation)};
  }
  throw UnparseableResponse("no object with a Label key in model response");
}

}  // namespace afdkit
