#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <random>

#include "afdkit/parser.hpp"
#include "afdkit/util.hpp"
#include "paths.hpp"

using namespace afdkit;
using json = nlohmann::json;
namespace ts = afdkit::testsupport;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::vector<json> read_expected(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line))
    if (!trim(line).empty()) out.push_back(json::parse(line));
  return out;
}

RawPage page_from_file(const std::filesystem::path& p) {
  RawPage page;
  page.url = "http://fixture.local/wiki/Wikipedia:Articles_for_deletion/Log/x";
  page.body = slurp(p);
  return page;
}

// "**Delete** per nom" -> AnnotatedText with the bold span recorded
AnnotatedText from_markup(std::string_view s) {
  AnnotatedText out;
  bool bold = false;
  size_t span_begin = 0;
  size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, 2, "**") == 0) {
      if (!bold) span_begin = out.text.size();
      else out.bold_spans.push_back({span_begin, out.text.size()});
      bold = !bold;
      i += 2;
    } else {
      out.text.push_back(s[i++]);
    }
  }
  return out;
}

std::vector<std::filesystem::path> corpus_pages() {
  std::vector<std::filesystem::path> pages;
  for (const auto& entry : std::filesystem::directory_iterator(ts::fixture_dir()))
    if (entry.path().extension() == ".html") pages.push_back(entry.path());
  std::sort(pages.begin(), pages.end());
  return pages;
}

}  // namespace

TEST_CASE("golden suite: every fixture page extracts titles, closure state and labels") {
  auto pages = corpus_pages();
  REQUIRE(pages.size() >= 20);

  size_t labels_seen[kOutcomeCount] = {};
  for (const auto& html_file : pages) {
    auto expected_file = html_file;
    expected_file.replace_extension(".expected.jsonl");
    std::vector<json> expected = read_expected(expected_file);

    Date log_date = parse_date(html_file.stem().string());
    std::vector<RawDiscussion> raws = extract_discussions(page_from_file(html_file), log_date);
    REQUIRE_MESSAGE(raws.size() == expected.size(), html_file.string());

    for (size_t i = 0; i < raws.size(); ++i) {
      CAPTURE(html_file.string());
      CAPTURE(i);
      CHECK(raws[i].title == expected[i].at("title").get<std::string>());
      CHECK(raws[i].anchor == expected[i].at("anchor").get<std::string>());

      Discussion d = to_discussion(raws[i]);
      CHECK(d.closed == expected[i].at("closed").get<bool>());
      if (expected[i].at("label").is_null()) {
        CHECK_FALSE(d.label.has_value());
      } else {
        REQUIRE(d.label.has_value());
        CHECK(std::string(to_string(*d.label)) == expected[i].at("label").get<std::string>());
        labels_seen[size_t(*d.label)] += 1;
      }
      if (expected[i].contains("text"))
        CHECK(d.text() == expected[i].at("text").get<std::string>());

      // closure boilerplate never leaks into the cleaned text
      CHECK(d.text().find("The result was") == std::string::npos);
      CHECK(d.text().find("archived debate") == std::string::npos);
      CHECK(d.text().find("preserved as an archive") == std::string::npos);
      // no markup survives
      CHECK(d.text().find('<') == std::string::npos);
      CHECK(d.text().find("&amp;") == std::string::npos);
    }
  }
  for (size_t i = 0; i < kOutcomeCount; ++i) {
    CAPTURE(to_string(Outcome(i)));
    CHECK(labels_seen[i] >= 1);  // corpus covers all 8 labels
  }
}

TEST_CASE("extract_discussions: 3 closed + 1 open fixture") {
  auto raws = extract_discussions(page_from_file(ts::fixture_dir() / "2023-01-01.html"),
                                  Date{2023, 1, 1});
  REQUIRE(raws.size() == 4);
  size_t with_banner = 0;
  for (const auto& r : raws)
    if (r.closing_banner) ++with_banner;
  CHECK(with_banner == 3);
  CHECK(raws[3].title == "Glenhollow Viaduct");
  CHECK_FALSE(raws[3].closing_banner.has_value());
}

TEST_CASE("extract_discussions: degenerate inputs raise ParseError") {
  RawPage page;
  page.url = "http://fixture.local/x";
  page.body = "";
  CHECK_THROWS_AS(extract_discussions(page, Date{2023, 1, 1}), ParseError);

  page.body = "<html><body><p>Not a log page at all.</p></body></html>";
  CHECK_THROWS_AS(extract_discussions(page, Date{2023, 1, 1}), ParseError);
}

TEST_CASE("extract_discussions: nested replies stay in document order") {
  auto raws = extract_discussions(page_from_file(ts::fixture_dir() / "2023-01-02.html"),
                                  Date{2023, 1, 2});
  REQUIRE(!raws.empty());
  Discussion d = to_discussion(raws[0]);
  size_t first = d.text().find("plausible search term");
  size_t reply = d.text().find("barely mentions her");
  size_t nested = d.text().find("blog posts, not reliable sources");
  size_t last = d.text().find("nothing to merge");
  REQUIRE(first != std::string::npos);
  REQUIRE(reply != std::string::npos);
  REQUIRE(nested != std::string::npos);
  REQUIRE(last != std::string::npos);
  CHECK(first < reply);
  CHECK(reply < nested);
  CHECK(nested < last);
}

TEST_CASE("extract_discussions: open section followed by a closed one keeps its boundary") {
  RawPage page;
  page.url = "http://fixture.local/wiki/Wikipedia:Articles_for_deletion/Log/x";
  page.body =
      "<html><body><div class=\"mw-parser-output\">"
      "<h3><span class=\"mw-headline\" id=\"Open_One\">Open One</span></h3>"
      "<p>Still being debated.</p>"
      "<ul><li><b>Keep</b> early days.</li></ul>"
      "<div class=\"boilerplate afd xfd-closed\">"
      "<p>The following discussion is an archived debate of the proposed deletion of the article "
      "below. <b>Please do not modify it.</b></p>"
      "<p>The result was <b>delete</b>.</p>"
      "<h3><span class=\"mw-headline\" id=\"Closed_One\">Closed One</span></h3>"
      "<p>Closed nomination text.</p>"
      "<p>The above discussion is preserved as an archive of the debate.</p>"
      "</div>"
      "</div></body></html>";

  auto raws = extract_discussions(page, Date{2023, 1, 1});
  REQUIRE(raws.size() == 2);
  CHECK(raws[0].title == "Open One");
  CHECK_FALSE(raws[0].closing_banner.has_value());
  CHECK(raws[1].title == "Closed One");
  CHECK(raws[1].closing_banner.has_value());

  // the open discussion's body stops at the closed wrapper
  std::string open_text = clean_text(raws[0]).text;
  CHECK(open_text == "Still being debated. Keep early days.");
  CHECK(open_text.find("Closed nomination") == std::string::npos);
  CHECK(clean_text(raws[1]).text == "Closed nomination text.");
}

TEST_CASE("extract_discussions: dl/dd indented replies stay in order") {
  RawPage page;
  page.url = "http://fixture.local/wiki/Wikipedia:Articles_for_deletion/Log/x";
  page.body =
      "<html><body>"
      "<h3><span class=\"mw-headline\" id=\"Indented\">Indented</span></h3>"
      "<p>Nomination line.</p>"
      "<ul><li><b>Delete</b> first comment."
      "<dl><dd>Indented reply one.<dl><dd>Deeper reply two.</dd></dl></dd></dl></li>"
      "<li><b>Keep</b> second comment.</li></ul>";

  auto raws = extract_discussions(page, Date{2023, 1, 1});
  REQUIRE(raws.size() == 1);
  std::string text = clean_text(raws[0]).text;
  CHECK(text ==
        "Nomination line. Delete first comment. Indented reply one. Deeper reply two. Keep "
        "second comment.");
}

TEST_CASE("canonicalize_label: examples and error path") {
  CHECK(canonicalize_label("Withdrawn") == Outcome::Withdrawn);
  CHECK(canonicalize_label("withdraw") == Outcome::Withdrawn);
  CHECK(canonicalize_label("delete") == Outcome::Delete);
  CHECK(canonicalize_label("No Consensus") == Outcome::NoConsensus);
  CHECK(canonicalize_label("no-consensus") == Outcome::NoConsensus);
  CHECK(canonicalize_label("speedily deleted") == Outcome::SpeedyDelete);
  CHECK(canonicalize_label("  Speedy   Keep ") == Outcome::SpeedyKeep);
  CHECK_THROWS_AS(canonicalize_label("transwiki"), UnknownLabel);
  CHECK_THROWS_AS(canonicalize_label("userfy"), UnknownLabel);
  CHECK_THROWS_AS(canonicalize_label("   "), PreconditionViolation);
}

TEST_CASE("canonicalize_label: round trip over canonical names") {
  for (Outcome o : all_outcomes()) CHECK(canonicalize_label(to_string(o)) == o);
}

TEST_CASE("label table: shipped file matches the builtin table, exhaustively") {
  LabelTable from_file = LabelTable::load(ts::data_dir() / "label_variants.tsv");
  const LabelTable& builtin = LabelTable::builtin();

  REQUIRE(from_file.rows().size() == builtin.rows().size());
  for (const auto& row : from_file.rows()) {
    CAPTURE(row.variant);
    CHECK(builtin.canonicalize(row.variant) == row.canonical);
    CHECK(from_file.canonicalize(row.variant) == row.canonical);
  }
  // anything outside the table errors
  CHECK_THROWS_AS(from_file.canonicalize("transwiki"), UnknownLabel);
}

TEST_CASE("clean_text: tags stripped, entities decoded, bold spans recorded") {
  RawDiscussion raw;
  raw.title = "T";
  raw.body_html = "<p><b>Delete</b> per <a href=\"/wiki/WP:N\">WP:N</a> &amp; friends</p>";
  AnnotatedText cleaned = clean_text(raw);
  CHECK(cleaned.text == "Delete per WP:N & friends");
  REQUIRE(cleaned.bold_spans.size() == 1);
  CHECK(cleaned.text.substr(cleaned.bold_spans[0].begin, cleaned.bold_spans[0].size()) ==
        "Delete");
}

TEST_CASE("clean_text: chrome classes are dropped, comments kept in order") {
  RawDiscussion raw;
  raw.title = "T";
  raw.body_html =
      "<p><a href=\"/wiki/X\">X</a> <span class=\"plainlinks\">(Find sources)</span></p>"
      "<ul><li>first comment</li><li>second comment</li><li>third comment</li>"
      "<li>fourth comment</li><li>fifth comment</li></ul>";
  std::string text = clean_text(raw).text;
  CHECK(text == "X first comment second comment third comment fourth comment fifth comment");
}

TEST_CASE("mask_votes: single vote removal") {
  AnnotatedText t = from_markup("**Delete** Just a junk article");
  AnnotatedText masked = mask_votes(t);
  CHECK(masked.text == "Just a junk article");
  CHECK(masked.bold_spans.empty());
}

TEST_CASE("mask_votes: variant-table closure includes two-word and graded votes") {
  CHECK(mask_votes(from_markup("**Strong keep** notable per sources")).text ==
        "notable per sources");
  CHECK(mask_votes(from_markup("**Speedy delete** spam page")).text == "spam page");
  CHECK(mask_votes(from_markup("per nom, **weak delete** from me")).text ==
        "per nom, from me");
}

TEST_CASE("mask_votes: texts without bold spans are unchanged") {
  AnnotatedText t;
  t.text = "Delete sits here unbolded and stays";
  AnnotatedText masked = mask_votes(t);
  CHECK(masked.text == t.text);
  CHECK(masked.bold_spans.empty());
}

TEST_CASE("mask_votes: non-vote bold spans survive") {
  AnnotatedText t = from_markup("**Comment** the nominator has a point");
  AnnotatedText masked = mask_votes(t);
  CHECK(masked.text == "Comment the nominator has a point");
  REQUIRE(masked.bold_spans.size() == 1);
  CHECK(masked.text.substr(masked.bold_spans[0].begin, masked.bold_spans[0].size()) == "Comment");
}

TEST_CASE("mask_votes: replace mode substitutes the fixed token") {
  AnnotatedText t = from_markup("**Delete** per nom.");
  AnnotatedText masked = mask_votes(t, LabelTable::builtin(), MaskMode::ReplaceToken);
  CHECK(masked.text == std::string(kMaskToken) + " per nom.");
  // replacing again changes nothing
  CHECK(mask_votes(masked, LabelTable::builtin(), MaskMode::ReplaceToken) == masked);
}

TEST_CASE("mask_votes: orphaned separator after a deleted vote is swallowed") {
  CHECK(mask_votes(from_markup("**Delete**. Not notable at all.")).text ==
        "Not notable at all.");
  CHECK(mask_votes(from_markup("I lean **delete**, but weakly")).text == "I lean but weakly");
}

namespace {

AnnotatedText random_annotated_text(std::mt19937_64& rng) {
  static const char* kWords[] = {"the",     "article", "sources",  "coverage", "fails",
                                 "notable", "per",     "nom",      "guideline", "routine",
                                 "archive", "listing", "newspaper", "survey",   "local"};
  static const char* kVotes[] = {"delete", "keep",        "merge",      "redirect",
                                 "strong keep", "weak delete", "speedy delete"};
  static const char* kNonVotes[] = {"comment", "note", "question", "observation"};

  AnnotatedText out;
  size_t n_chunks = 1 + rng() % 12;
  for (size_t i = 0; i < n_chunks; ++i) {
    if (!out.text.empty()) out.text += " ";
    unsigned kind = rng() % 10;
    if (kind < 3) {
      const char* content = kind == 0 ? kNonVotes[rng() % std::size(kNonVotes)]
                                      : kVotes[rng() % std::size(kVotes)];
      size_t b = out.text.size();
      out.text += content;
      out.bold_spans.push_back({b, out.text.size()});
    } else {
      out.text += kWords[rng() % std::size(kWords)];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("mask_votes: idempotent on randomized annotated texts") {
  std::mt19937_64 rng(20230101);
  for (int i = 0; i < 1000; ++i) {
    AnnotatedText t = random_annotated_text(rng);
    AnnotatedText once = mask_votes(t);
    AnnotatedText twice = mask_votes(once);
    CAPTURE(t.text);
    CHECK(once == twice);
    // scanner: nothing bold-marked canonicalizes to a vote keyword
    for (const auto& span : once.bold_spans)
      CHECK_FALSE(LabelTable::builtin().is_vote_keyword(
          std::string_view(once.text).substr(span.begin, span.size())));
  }
}

TEST_CASE("segment_sentences: examples") {
  auto s = segment_sentences(
      "None establish his Wikipedia:Notability . The first reference is almost identical in "
      "wording to his official web site.");
  REQUIRE(s.size() == 2);
  CHECK(s[0].text == "None establish his Wikipedia:Notability .");
  CHECK(s[1].text == "The first reference is almost identical in wording to his official web site.");

  CHECK(segment_sentences("Delete.").size() == 1);

  auto abbrev = segment_sentences("Fails WP:GNG. See p. 4 of the source.");
  REQUIRE(abbrev.size() == 2);
  CHECK(abbrev[0].text == "Fails WP:GNG.");
  CHECK(abbrev[1].text == "See p. 4 of the source.");

  CHECK(segment_sentences("   \t \n ").empty());
  CHECK(segment_sentences("e.g. The start. And the end!").size() == 2);
}

TEST_CASE("segment_sentences: indices are consecutive from zero") {
  auto s = segment_sentences("One. Two! Three? Four.");
  REQUIRE(s.size() == 4);
  for (size_t i = 0; i < s.size(); ++i) CHECK(s[i].index == i);
}

TEST_CASE("segment_sentences: join loses no non-whitespace characters") {
  auto strip_ws = [](const std::string& s) {
    std::string out;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
  };

  std::vector<std::string> inputs = {
      "Delete per nom. Fails WP:GNG... badly. See pp. 3-4 (the \"survey\"). Final!",
      "One sentence only",
      "Ends with ellipsis...",
      "Mr. Smith wrote ch. 7. It covers the U.S. angle.",
  };
  // plus every fixture discussion text
  for (const auto& html_file : corpus_pages()) {
    for (const auto& raw :
         extract_discussions(page_from_file(html_file), parse_date(html_file.stem().string())))
      inputs.push_back(clean_text(raw).text);
  }

  for (const auto& input : inputs) {
    CAPTURE(input);
    std::string joined;
    for (const auto& sentence : segment_sentences(input)) {
      if (!joined.empty()) joined += " ";
      joined += sentence.text;
    }
    CHECK(strip_ws(joined) == strip_ws(input));
  }
}

TEST_CASE("result_phrase_label") {
  CHECK(result_phrase_label("The result was delete. Closed by admin.") == "delete");
  CHECK(result_phrase_label("Blah. The result was Speedy Keep. (non-admin closure)") ==
        "Speedy Keep");
  CHECK_FALSE(result_phrase_label("No verdict text here.").has_value());
}

TEST_CASE("to_discussion: label implies closed") {
  for (const auto& html_file : corpus_pages()) {
    for (const auto& raw :
         extract_discussions(page_from_file(html_file), parse_date(html_file.stem().string()))) {
      Discussion d = to_discussion(raw);
      if (d.label) CHECK(d.closed);
    }
  }
}
