#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "afdkit/dataset.hpp"
#include "afdkit/util.hpp"
#include "paths.hpp"

using namespace afdkit;
namespace ts = afdkit::testsupport;

namespace {

Discussion make_discussion(const std::string& title, Outcome label,
                           const std::string& text = "Delete per nom. Fails the guideline.") {
  Discussion d;
  d.title = title;
  d.body.text = text;
  d.label = label;
  d.closed = true;
  d.source_url = "http://fixture.local/wiki/log#x";
  d.log_date = Date{2023, 1, 1};
  return d;
}

// Heavily skewed per-label totals, 18,528 items in all, delete dominating.
const std::vector<std::pair<Outcome, size_t>>& snapshot_totals() {
  static const std::vector<std::pair<Outcome, size_t>> kTotals = {
      {Outcome::Delete, 10047},    {Outcome::Keep, 3025},        {Outcome::Redirect, 2355},
      {Outcome::NoConsensus, 1194}, {Outcome::Merge, 1052},      {Outcome::SpeedyKeep, 438},
      {Outcome::SpeedyDelete, 241}, {Outcome::Withdrawn, 176},
  };
  return kTotals;
}

std::vector<Discussion> synthetic_corpus() {
  std::vector<Discussion> all;
  for (const auto& [label, n] : snapshot_totals())
    for (size_t i = 0; i < n; ++i)
      all.push_back(make_discussion(std::string(to_string(label)) + " item " + std::to_string(i),
                                    label));
  return all;
}

}  // namespace

TEST_CASE("build_dataset: snapshot-scale proportions land on the published split sizes") {
  std::vector<Discussion> all = synthetic_corpus();
  REQUIRE(all.size() == 18528);

  DatasetSplits splits = build_dataset(all, SplitRatios{0.70, 0.10, 0.20}, 13);
  CHECK(splits.total() == 18528);

  CHECK(std::llabs(int64_t(splits.train.size()) - 12963) <= 10);
  CHECK(std::llabs(int64_t(splits.validation.size()) - 1856) <= 10);
  CHECK(std::llabs(int64_t(splits.test.size()) - 3709) <= 10);

  // stratification: per-label share of each split within 2 pp of global
  std::map<Outcome, size_t> global;
  for (const auto& [label, n] : snapshot_totals()) global[label] = n;
  for (size_t s = 0; s < 3; ++s) {
    std::map<Outcome, size_t> counts;
    for (const auto& d : splits.split(s)) counts[*d.label] += 1;
    for (const auto& [label, n] : snapshot_totals()) {
      if (n < 50) continue;
      double global_share = double(n) / double(all.size());
      double split_share = double(counts[label]) / double(splits.split(s).size());
      CAPTURE(to_string(label));
      CHECK(std::abs(split_share - global_share) <= 0.02);
    }
  }
}

TEST_CASE("build_dataset: exact division 8/1/1") {
  std::vector<Discussion> items;
  for (int i = 0; i < 10; ++i)
    items.push_back(make_discussion("t" + std::to_string(i), Outcome::Delete));
  DatasetSplits splits = build_dataset(items, SplitRatios{0.8, 0.1, 0.1}, 7);
  CHECK(splits.train.size() == 8);
  CHECK(splits.validation.size() == 1);
  CHECK(splits.test.size() == 1);
}

TEST_CASE("build_dataset: deterministic and input-order independent") {
  std::vector<Discussion> items;
  for (int i = 0; i < 120; ++i)
    items.push_back(make_discussion("title " + std::to_string(i),
                                    all_outcomes()[size_t(i) % kOutcomeCount]));

  DatasetSplits a = build_dataset(items, SplitRatios{}, 42);

  std::mt19937_64 rng(5);
  for (size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng() % i]);
  DatasetSplits b = build_dataset(items, SplitRatios{}, 42);

  CHECK(a.train == b.train);
  CHECK(a.validation == b.validation);
  CHECK(a.test == b.test);

  DatasetSplits c = build_dataset(items, SplitRatios{}, 43);
  CHECK(a.train != c.train);  // different seed, different shuffle
}

TEST_CASE("build_dataset: titles never straddle splits; duplicates collapse") {
  std::vector<Discussion> items;
  for (int i = 0; i < 60; ++i)
    items.push_back(make_discussion("unique " + std::to_string(i),
                                    all_outcomes()[size_t(i) % kOutcomeCount]));
  // the same page nominated twice: later nomination wins
  Discussion first = make_discussion("Example Band (musicians)", Outcome::Keep, "older text");
  first.log_date = Date{2023, 1, 3};
  Discussion second = make_discussion("Example Band (musicians)", Outcome::Delete, "newer text");
  second.log_date = Date{2023, 1, 17};
  items.push_back(first);
  items.push_back(second);

  DatasetSplits splits = build_dataset(items, SplitRatios{}, 1);
  CHECK(splits.total() == 61);

  std::set<std::string> seen;
  size_t dup_hits = 0;
  for (size_t s = 0; s < 3; ++s) {
    for (const auto& d : splits.split(s)) {
      CHECK(seen.insert(d.title).second);
      if (d.title == "Example Band (musicians)") {
        ++dup_hits;
        CHECK(d.text() == "newer text");
        CHECK(*d.label == Outcome::Delete);
      }
    }
  }
  CHECK(dup_hits == 1);
}

TEST_CASE("build_dataset: error paths and degenerate strata") {
  CHECK_THROWS_AS(build_dataset({}, SplitRatios{}, 1), EmptyInput);

  std::vector<Discussion> some = {make_discussion("r", Outcome::Keep)};
  CHECK_THROWS_AS(build_dataset(some, SplitRatios{0.5, 0.1, 0.1}, 1), PreconditionViolation);

  Discussion open = make_discussion("open one", Outcome::Delete);
  open.closed = false;
  open.label.reset();
  CHECK_THROWS_AS(build_dataset({open}, SplitRatios{}, 1), PreconditionViolation);

  std::vector<Discussion> items;
  for (int i = 0; i < 30; ++i)
    items.push_back(make_discussion("d" + std::to_string(i), Outcome::Delete));
  items.push_back(make_discussion("lonely withdrawn", Outcome::Withdrawn));
  DatasetSplits splits = build_dataset(items, SplitRatios{}, 1);
  REQUIRE(splits.warnings.size() == 1);
  CHECK(splits.warnings[0].find("withdrawn") != std::string::npos);
  bool in_train = false;
  for (const auto& d : splits.train) in_train |= d.title == "lonely withdrawn";
  CHECK(in_train);  // degenerate stratum falls back to train
}

TEST_CASE("masked_copy: identical structure, only texts differ") {
  std::vector<Discussion> items;
  for (int i = 0; i < 40; ++i) {
    Discussion d = make_discussion("m" + std::to_string(i),
                                   all_outcomes()[size_t(i) % kOutcomeCount]);
    d.body.text = "Delete fails the guideline badly";
    d.body.bold_spans = {{0, 6}};
    items.push_back(d);
  }

  std::vector<Discussion> masked = masked_copy(items);
  DatasetSplits full = build_dataset(items, SplitRatios{}, 99);
  DatasetSplits masked_splits = build_dataset(masked, SplitRatios{}, 99);

  REQUIRE(full.train.size() == masked_splits.train.size());
  REQUIRE(full.validation.size() == masked_splits.validation.size());
  REQUIRE(full.test.size() == masked_splits.test.size());
  for (size_t s = 0; s < 3; ++s) {
    for (size_t i = 0; i < full.split(s).size(); ++i) {
      CHECK(full.split(s)[i].title == masked_splits.split(s)[i].title);
      CHECK(full.split(s)[i].label == masked_splits.split(s)[i].label);
      CHECK(full.split(s)[i].text() != masked_splits.split(s)[i].text());
    }
  }
}

TEST_CASE("compute_stats: direct counts") {
  std::vector<Discussion> items;
  Discussion a = make_discussion("a", Outcome::Delete, "Delete. Junk.");
  Discussion b = make_discussion("b", Outcome::Delete, "one two three four five six seven eight nine ten");
  Discussion c = make_discussion("c", Outcome::Delete,
                                 "one two three four five six seven eight nine ten eleven twelve "
                                 "thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty");
  Discussion k = make_discussion("k", Outcome::Keep, "Keep it.");
  items = {a, b, c, k};

  DatasetSplits splits;
  splits.train = items;  // hand-assembled splits are fine for stats
  LabelStats stats = compute_stats(splits);

  CHECK(stats.counts["delete"][0] == 3);
  CHECK(stats.counts["keep"][0] == 1);
  CHECK(stats.split_total(0) == splits.train.size());
  CHECK(stats.split_total(1) == splits.validation.size());
  // "Delete. Junk." = 2 tokens; 10; 20 -> mean over the label
  CHECK(stats.mean_discussion_tokens["delete"] == doctest::Approx((2 + 10 + 20) / 3.0));
  // "Delete. Junk." segments into 2 sentences
  const auto& sl = stats.sentence_lengths["delete"];
  CHECK(sl.count == 4);  // 2 sentences + 1 + 1
  CHECK(stats.sentence_lengths["keep"].count == 1);
}

TEST_CASE("compute_stats: two discussions of 10 and 20 tokens mean 15") {
  std::vector<Discussion> items = {
      make_discussion("x", Outcome::Merge, "a b c d e f g h i j"),
      make_discussion("y", Outcome::Merge, "a b c d e f g h i j k l m n o p q r s t"),
      make_discussion("z", Outcome::Keep, "short text"),
  };
  DatasetSplits splits;
  splits.train = items;
  LabelStats stats = compute_stats(splits);
  CHECK(stats.mean_discussion_tokens["merge"] == doctest::Approx(15.0));
}

TEST_CASE("save/load: round trip is exact") {
  std::vector<Discussion> items;
  for (int i = 0; i < 25; ++i) {
    Discussion d = make_discussion("rt " + std::to_string(i),
                                   all_outcomes()[size_t(i) % kOutcomeCount]);
    if (i % 3 == 0) d.body.bold_spans = {{0, 6}};
    items.push_back(d);
  }
  DatasetSplits splits = build_dataset(items, SplitRatios{}, 5);

  ts::TempDir dir("roundtrip");
  save_dataset(splits, dir.path);
  DatasetSplits loaded = load_dataset(dir.path);

  CHECK(loaded.train == splits.train);
  CHECK(loaded.validation == splits.validation);
  CHECK(loaded.test == splits.test);
  CHECK(loaded.split_seed == splits.split_seed);
  CHECK(loaded.ratios.train == doctest::Approx(splits.ratios.train));
}

TEST_CASE("load: corrupt record reports the first bad line") {
  std::vector<Discussion> items;
  for (int i = 0; i < 12; ++i) items.push_back(make_discussion("c" + std::to_string(i), Outcome::Keep));
  DatasetSplits splits = build_dataset(items, SplitRatios{}, 5);

  ts::TempDir dir("corrupt");
  save_dataset(splits, dir.path);
  {
    std::ofstream out(dir.path / "train.jsonl", std::ios::app);
    out << "{ this is not json\n";
  }
  try {
    load_dataset(dir.path);
    FAIL("expected CorruptRecord");
  } catch (const CorruptRecord& e) {
    CHECK(e.line() == splits.train.size() + 1);
  }
}

TEST_CASE("load: future schema version is rejected") {
  std::vector<Discussion> items;
  for (int i = 0; i < 12; ++i) items.push_back(make_discussion("v" + std::to_string(i), Outcome::Keep));
  ts::TempDir dir("version");
  save_dataset(build_dataset(items, SplitRatios{}, 5), dir.path);

  // rewrite the manifest as a future version
  std::ifstream in(dir.path / "manifest.json");
  std::string manifest(std::istreambuf_iterator<char>(in), {});
  in.close();
  size_t pos = manifest.find("\"schema_version\": 1");
  REQUIRE(pos != std::string::npos);
  manifest.replace(pos, 19, "\"schema_version\": 99");
  std::ofstream(dir.path / "manifest.json", std::ios::trunc) << manifest;

  CHECK_THROWS_AS(load_dataset(dir.path), SchemaVersionMismatch);
}
