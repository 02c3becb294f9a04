#include "afdkit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "afdkit/util.hpp"

namespace afdkit {

using json = nlohmann::json;

bool SplitRatios::valid() const {
  if (train < 0 || validation < 0 || test < 0) return false;
  return std::abs(train + validation + test - 1.0) < 1e-9;
}

const std::vector<Discussion>& DatasetSplits::split(size_t i) const {
  switch (i) {
    case 0: return train;
    case 1: return validation;
    default: return test;
  }
}

namespace {

// Deterministic Fisher-Yates; std::shuffle's draw sequence is
// implementation-defined, this one is pinned.
void shuffle_deterministic(std::vector<Discussion>& items, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (size_t i = items.size(); i > 1; --i) {
    size_t j = size_t(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
}

// Largest-remainder allocation of n items over three ratios; remainder ties
// go to the later split.
std::array<size_t, 3> allocate(size_t n, const SplitRatios& ratios) {
  std::array<double, 3> exact = {ratios.train * double(n), ratios.validation * double(n),
                                 ratios.test * double(n)};
  std::array<size_t, 3> counts{};
  std::array<double, 3> rem{};
  size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    counts[i] = size_t(std::floor(exact[i] + 1e-9));
    rem[i] = exact[i] - double(counts[i]);
    assigned += counts[i];
  }
  std::array<int, 3> order = {2, 1, 0};  // later splits first on equal remainders
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return rem[a] > rem[b]; });
  for (size_t k = 0; assigned < n; ++k) {
    counts[order[k % 3]] += 1;
    ++assigned;
  }
  return counts;
}

size_t token_count(const std::string& text) { return split_tokens(text).size(); }

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0;
  if (sorted.size() == 1) return sorted[0];
  double pos = q * double(sorted.size() - 1);
  size_t lo = size_t(std::floor(pos));
  size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - double(lo);
  return sorted[lo] * (1 - frac) + sorted[hi] * frac;
}

}  // namespace

DatasetSplits build_dataset(const std::vector<Discussion>& discussions, const SplitRatios& ratios,
                            uint64_t seed) {
  if (discussions.empty()) throw EmptyInput("no discussions to split");
  if (!ratios.valid()) throw PreconditionViolation("split ratios must be non-negative and sum to 1");
  for (const auto& d : discussions) {
    if (!d.closed || !d.label)
      throw PreconditionViolation("build_dataset input must be closed and labeled: \"" + d.title +
                                  "\"");
  }

  // Collapse duplicate titles before splitting; the latest nomination wins.
  std::vector<Discussion> pool = discussions;
  std::sort(pool.begin(), pool.end(), [](const Discussion& a, const Discussion& b) {
    if (a.title != b.title) return a.title < b.title;
    if (a.log_date != b.log_date) return a.log_date > b.log_date;
    return a.source_url < b.source_url;
  });
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](const Discussion& a, const Discussion& b) { return a.title == b.title; }),
             pool.end());

  // Group by label, in taxonomy order for stable per-label seeds.
  std::map<size_t, std::vector<Discussion>> by_label;
  for (auto& d : pool) {
    size_t idx = size_t(*d.label);
    by_label[idx].push_back(std::move(d));
  }

  DatasetSplits out;
  out.split_seed = seed;
  out.ratios = ratios;

  for (auto& [label_idx, items] : by_label) {
    shuffle_deterministic(items, seed ^ ((label_idx + 1) * 0x9E3779B97F4A7C15ULL));

    if (items.size() < 3) {
      out.warnings.push_back("degenerate stratum \"" +
                             std::string(to_string(Outcome(label_idx))) + "\": only " +
                             std::to_string(items.size()) + " item(s); placed in train");
      for (auto& d : items) out.train.push_back(std::move(d));
      continue;
    }

    auto counts = allocate(items.size(), ratios);
    size_t pos = 0;
    for (size_t k = 0; k < counts[0]; ++k) out.train.push_back(std::move(items[pos++]));
    for (size_t k = 0; k < counts[1]; ++k) out.validation.push_back(std::move(items[pos++]));
    for (size_t k = 0; k < counts[2]; ++k) out.test.push_back(std::move(items[pos++]));
  }

  // Exhaustive disjointness check, every build.
  std::set<std::string> seen;
  for (size_t s = 0; s < 3; ++s)
    for (const auto& d : out.split(s))
      if (!seen.insert(d.title).second)
        throw Error("internal: title in more than one split: \"" + d.title + "\"");

  return out;
}

std::vector<Discussion> masked_copy(const std::vector<Discussion>& discussions,
                                    const LabelTable& table, MaskMode mode) {
  std::vector<Discussion> out = discussions;
  for (auto& d : out) d.body = mask_votes(d.body, table, mode);
  return out;
}

size_t LabelStats::split_total(size_t split_index) const {
  size_t total = 0;
  for (const auto& [label, per_split] : counts) total += per_split[split_index];
  return total;
}

LabelStats compute_stats(const DatasetSplits& splits) {
  if (splits.total() == 0) throw EmptyInput("empty dataset");

  LabelStats stats;
  std::map<std::string, std::pair<size_t, size_t>> token_totals;  // label -> (tokens, docs)
  std::map<std::string, std::vector<double>> sentence_tokens;

  for (size_t s = 0; s < 3; ++s) {
    for (const auto& d : splits.split(s)) {
      std::string label(to_string(*d.label));
      stats.counts[label][s] += 1;
      auto& [tokens, docs] = token_totals[label];
      tokens += token_count(d.text());
      docs += 1;
      for (const auto& sentence : segment_sentences(d.text()))
        sentence_tokens[label].push_back(double(token_count(sentence.text)));
    }
  }

  for (auto& [label, totals] : token_totals)
    stats.mean_discussion_tokens[label] = double(totals.first) / double(totals.second);

  for (auto& [label, lengths] : sentence_tokens) {
    std::sort(lengths.begin(), lengths.end());
    SentenceLengthStats s;
    s.count = lengths.size();
    double sum = 0;
    for (double v : lengths) sum += v;
    s.mean = lengths.empty() ? 0 : sum / double(lengths.size());
    if (!lengths.empty()) {
      s.min = lengths.front();
      s.max = lengths.back();
      s.p25 = quantile(lengths, 0.25);
      s.p50 = quantile(lengths, 0.50);
      s.p75 = quantile(lengths, 0.75);
    }
    stats.sentence_lengths[label] = s;
  }
  return stats;
}

namespace {

json discussion_to_json(const Discussion& d) {
  if (!d.label) throw PreconditionViolation("dataset records must be labeled: \"" + d.title + "\"");
  json j = {
      {"title", d.title},
      {"text", d.text()},
      {"label", std::string(to_string(*d.label))},
      {"url", d.source_url},
      {"date", to_iso(d.log_date)},
  };
  if (!d.body.bold_spans.empty()) {
    json spans = json::array();
    for (const auto& s : d.body.bold_spans) spans.push_back({s.begin, s.end});
    j["bold_spans"] = spans;
  }
  return j;
}

Discussion discussion_from_json(const json& j) {
  Discussion d;
  d.title = j.at("title").get<std::string>();
  d.body.text = j.at("text").get<std::string>();
  std::string label = j.at("label").get<std::string>();
  auto outcome = outcome_from_canonical(label);
  if (!outcome) throw Error("unknown canonical label: \"" + label + "\"");
  d.label = *outcome;
  d.closed = true;
  d.source_url = j.at("url").get<std::string>();
  d.log_date = parse_date(j.at("date").get<std::string>());
  if (j.contains("bold_spans"))
    for (const auto& s : j.at("bold_spans"))
      d.body.bold_spans.push_back({s.at(0).get<size_t>(), s.at(1).get<size_t>()});
  return d;
}

void write_split(const std::filesystem::path& file, const std::vector<Discussion>& items) {
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw Error("cannot write " + file.string());
  for (const auto& d : items) out << discussion_to_json(d).dump() << "\n";
}

std::vector<Discussion> read_split(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("missing dataset file " + file.string());
  std::vector<Discussion> items;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      items.push_back(discussion_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw CorruptRecord(file.string(), lineno, e.what());
    }
  }
  return items;
}

}  // namespace

void save_dataset(const DatasetSplits& splits, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create dataset directory " + dir.string() + ": " + ec.message());

  for (size_t s = 0; s < 3; ++s)
    write_split(dir / (std::string(kSplitNames[s]) + ".jsonl"), splits.split(s));

  json counts = json::object();
  std::optional<Date> min_date, max_date;
  for (size_t s = 0; s < 3; ++s) {
    json per_label = json::object();
    std::map<std::string, size_t> tally;
    for (const auto& d : splits.split(s)) {
      tally[std::string(to_string(*d.label))] += 1;
      if (!min_date || d.log_date < *min_date) min_date = d.log_date;
      if (!max_date || *max_date < d.log_date) max_date = d.log_date;
    }
    for (const auto& [label, n] : tally) per_label[label] = n;
    counts[std::string(kSplitNames[s])] = per_label;
  }

  json manifest = {
      {"schema_version", kDatasetSchemaVersion},
      {"seed", splits.split_seed},
      {"ratios", splits.ratios.as_array()},
      {"counts", counts},
      {"total", splits.total()},
      {"dedup", "by-title, latest nomination kept"},
  };
  if (min_date)
    manifest["source_date_range"] = {to_iso(*min_date), to_iso(*max_date)};
  else
    manifest["source_date_range"] = nullptr;

  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  if (!out) throw Error("cannot write dataset manifest in " + dir.string());
  out << manifest.dump(2) << "\n";
}

DatasetSplits load_dataset(const std::filesystem::path& dir) {
  std::filesystem::path manifest_path = dir / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw Error("missing dataset manifest " + manifest_path.string());
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    throw CorruptRecord(manifest_path.string(), 1, e.what());
  }

  int version = manifest.value("schema_version", -1);
  if (version != kDatasetSchemaVersion)
    throw SchemaVersionMismatch("dataset schema version " + std::to_string(version) +
                                " is not supported (expected " +
                                std::to_string(kDatasetSchemaVersion) + ")");

  DatasetSplits splits;
  splits.split_seed = manifest.value("seed", uint64_t(0));
  if (manifest.contains("ratios") && manifest["ratios"].is_array() &&
      manifest["ratios"].size() == 3) {
    splits.ratios.train = manifest["ratios"][0].get<double>();
    splits.ratios.validation = manifest["ratios"][1].get<double>();
    splits.ratios.test = manifest["ratios"][2].get<double>();
  }
  splits.train = read_split(dir / "train.jsonl");
  splits.validation = read_split(dir / "validation.jsonl");
  splits.test = read_split(dir / "test.jsonl");
  return splits;
}

}  // namespace afdkit
