#include "afdkit/labels.hpp"

#include <fstream>

#include "afdkit/util.hpp"

namespace afdkit {

const std::array<Outcome, kOutcomeCount>& all_outcomes() {
  static const std::array<Outcome, kOutcomeCount> kAll = {
      Outcome::Delete,     Outcome::Keep,       Outcome::Redirect,     Outcome::NoConsensus,
      Outcome::Merge,      Outcome::SpeedyKeep, Outcome::SpeedyDelete, Outcome::Withdrawn,
  };
  return kAll;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Delete: return "delete";
    case Outcome::Keep: return "keep";
    case Outcome::Redirect: return "redirect";
    case Outcome::NoConsensus: return "no consensus";
    case Outcome::Merge: return "merge";
    case Outcome::SpeedyKeep: return "speedy keep";
    case Outcome::SpeedyDelete: return "speedy delete";
    case Outcome::Withdrawn: return "withdrawn";
  }
  return "";
}

std::optional<Outcome> outcome_from_canonical(std::string_view canonical) {
  for (Outcome o : all_outcomes())
    if (to_string(o) == canonical) return o;
  return std::nullopt;
}

std::vector<std::string> outcome_label_names() {
  std::vector<std::string> out;
  out.reserve(kOutcomeCount);
  for (Outcome o : all_outcomes()) out.emplace_back(to_string(o));
  return out;
}

std::string LabelTable::normalize(std::string_view raw) {
  std::string s = collapse_whitespace(to_lower(raw));
  auto is_edge_punct = [](char c) {
    return c == '.' || c == ',' || c == ':' || c == ';' || c == '!' || c == '\'' || c == '"' ||
           c == '*' || c == '(' || c == ')' || c == '[' || c == ']';
  };
  size_t b = 0, e = s.size();
  while (b < e && is_edge_punct(s[b])) ++b;
  while (e > b && is_edge_punct(s[e - 1])) --e;
  return collapse_whitespace(s.substr(b, e - b));
}

void LabelTable::add(std::string_view variant, Outcome canonical) {
  std::string key = normalize(variant);
  if (key.empty()) return;
  if (index_.emplace(key, canonical).second) rows_.push_back({key, canonical});
}

const LabelTable& LabelTable::builtin() {
  static const LabelTable table = [] {
    LabelTable t;
    const std::pair<const char*, Outcome> kRows[] = {
        {"delete", Outcome::Delete},
        {"deleted", Outcome::Delete},
        {"deletion", Outcome::Delete},
        {"strong delete", Outcome::Delete},
        {"weak delete", Outcome::Delete},
        {"soft delete", Outcome::Delete},
        {"delete all", Outcome::Delete},
        {"keep", Outcome::Keep},
        {"kept", Outcome::Keep},
        {"strong keep", Outcome::Keep},
        {"weak keep", Outcome::Keep},
        {"keep all", Outcome::Keep},
        {"redirect", Outcome::Redirect},
        {"redirected", Outcome::Redirect},
        {"soft redirect", Outcome::Redirect},
        {"no consensus", Outcome::NoConsensus},
        {"no-consensus", Outcome::NoConsensus},
        {"merge", Outcome::Merge},
        {"merged", Outcome::Merge},
        {"merge all", Outcome::Merge},
        {"speedy keep", Outcome::SpeedyKeep},
        {"speedily kept", Outcome::SpeedyKeep},
        {"speedy kept", Outcome::SpeedyKeep},
        {"speedy delete", Outcome::SpeedyDelete},
        {"speedy deleted", Outcome::SpeedyDelete},
        {"speedily deleted", Outcome::SpeedyDelete},
        {"speedy deletion", Outcome::SpeedyDelete},
        {"withdrawn", Outcome::Withdrawn},
        {"withdraw", Outcome::Withdrawn},
        {"nomination withdrawn", Outcome::Withdrawn},
        {"withdrawn by nominator", Outcome::Withdrawn},
    };
    for (const auto& [variant, canonical] : kRows) t.add(variant, canonical);
    return t;
  }();
  return table;
}

LabelTable LabelTable::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open label variant table: " + file.string());
  LabelTable t;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw CorruptRecord(file.string(), lineno, "expected variant<TAB>canonical");
    std::string variant = trim(line.substr(0, tab));
    std::string canonical = trim(line.substr(tab + 1));
    auto outcome = outcome_from_canonical(normalize(canonical));
    if (!outcome)
      throw CorruptRecord(file.string(), lineno, "not a canonical label: \"" + canonical + "\"");
    t.add(variant, *outcome);
  }
  return t;
}

Outcome LabelTable::canonicalize(std::string_view raw) const {
  if (trim(raw).empty()) throw PreconditionViolation("label text must be non-empty");
  auto it = index_.find(normalize(raw));
  if (it == index_.end()) throw UnknownLabel(std::string(raw));
  return it->second;
}

std::optional<Outcome> LabelTable::try_canonicalize(std::string_view raw) const noexcept {
  auto it = index_.find(normalize(raw));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool LabelTable::is_vote_keyword(std::string_view s) const noexcept {
  return index_.count(normalize(s)) > 0;
}

}  // namespace afdkit
