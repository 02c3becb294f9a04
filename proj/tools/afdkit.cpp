// afdkit command line: collect, build-dataset, stats, train-baseline,
// analyze, evaluate, correlate.
//
// Exit codes: 0 success, 1 fatal I/O or backend failure, 2 argument or
// validation errors, 3 explanation requested without LLM credentials.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>

#include "afdkit/backends.hpp"
#include "afdkit/baseline.hpp"
#include "afdkit/collector.hpp"
#include "afdkit/config.hpp"
#include "afdkit/dataset.hpp"
#include "afdkit/metrics.hpp"
#include "afdkit/parser.hpp"
#include "afdkit/pipeline.hpp"
#include "afdkit/util.hpp"

using json = nlohmann::json;
using namespace afdkit;

namespace {

struct CommonFlags {
  std::string config_file;
  std::string cache_dir;
  std::string base_url;
  std::string variants_file;
  std::string policy_labels_file;
  double rate_limit = -1;
  int parallelism = -1;
  bool refresh = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_file, "JSON config file");
  cmd->add_option("--cache", flags.cache_dir, "page cache directory");
  cmd->add_option("--base-url", flags.base_url, "wiki origin (fixture server or live site)");
  cmd->add_option("--rate-limit", flags.rate_limit, "requests per second");
  cmd->add_option("--parallel", flags.parallelism, "max in-flight requests");
  cmd->add_option("--variants", flags.variants_file, "label variant table (variant<TAB>canonical)");
  cmd->add_option("--policy-labels", flags.policy_labels_file, "policy label list file");
  cmd->add_flag("--refresh", flags.refresh, "bypass cached pages");
}

Config resolve_config(const CommonFlags& flags) {
  Config cfg = Config::load(flags.config_file.empty() ? std::filesystem::path{}
                                                      : std::filesystem::path(flags.config_file));
  if (!flags.cache_dir.empty()) cfg.collector.cache_dir = flags.cache_dir;
  if (!flags.base_url.empty()) cfg.collector.base_url = flags.base_url;
  if (!flags.variants_file.empty()) cfg.variants_file = flags.variants_file;
  if (!flags.policy_labels_file.empty()) cfg.policy_labels_file = flags.policy_labels_file;
  if (flags.rate_limit > 0) cfg.collector.rate_limit = flags.rate_limit;
  if (flags.parallelism > 0) cfg.collector.parallelism = flags.parallelism;
  cfg.collector.refresh = flags.refresh;

  // flag-supplied paths get the same existence check as configured ones
  if (cfg.variants_file && !std::filesystem::exists(*cfg.variants_file))
    throw PreconditionViolation("label variant table does not exist: " +
                                cfg.variants_file->string());
  if (cfg.policy_labels_file && !std::filesystem::exists(*cfg.policy_labels_file))
    throw PreconditionViolation("policy label list does not exist: " +
                                cfg.policy_labels_file->string());
  return cfg;
}

json discussion_record(const Discussion& d) {
  json j = {
      {"title", d.title},
      {"text", d.text()},
      {"label", d.label ? json(std::string(to_string(*d.label))) : json(nullptr)},
      {"closed", d.closed},
      {"url", d.source_url},
      {"log_date", to_iso(d.log_date)},
  };
  json spans = json::array();
  for (const auto& s : d.body.bold_spans) spans.push_back({s.begin, s.end});
  j["bold_spans"] = spans;
  return j;
}

Discussion discussion_from_record(const json& j) {
  Discussion d;
  d.title = j.at("title").get<std::string>();
  d.body.text = j.at("text").get<std::string>();
  if (j.contains("label") && !j.at("label").is_null()) {
    auto o = outcome_from_canonical(j.at("label").get<std::string>());
    if (!o) throw Error("unknown canonical label in record");
    d.label = o;
  }
  d.closed = j.value("closed", d.label.has_value());
  d.source_url = j.value("url", "");
  d.log_date = parse_date(j.at("log_date").get<std::string>());
  if (j.contains("bold_spans"))
    for (const auto& s : j.at("bold_spans"))
      d.body.bold_spans.push_back({s.at(0).get<size_t>(), s.at(1).get<size_t>()});
  return d;
}

std::vector<Discussion> read_parsed_records(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open parsed records " + file.string());
  std::vector<Discussion> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      out.push_back(discussion_from_record(json::parse(line)));
    } catch (const std::exception& e) {
      throw CorruptRecord(file.string(), lineno, e.what());
    }
  }
  return out;
}

// --- collect ---

struct CollectArgs {
  std::string mode = "date";
  std::string url;
  std::string date;
  std::string start;
  std::string end;
  std::string out_dir;
  CommonFlags common;
};

int cmd_collect(const CollectArgs& args) {
  Config cfg = resolve_config(args.common);
  LabelTable table = cfg.label_table();

  CollectRequest req;
  auto mode = collect_mode_from_string(args.mode);
  if (!mode) throw PreconditionViolation("unknown mode \"" + args.mode + "\"");
  req.mode = *mode;
  if (!args.url.empty()) req.url = args.url;
  if (!args.date.empty()) req.start_date = parse_date(args.date);
  if (!args.start.empty()) req.start_date = parse_date(args.start);
  if (!args.end.empty()) req.end_date = parse_date(args.end);

  FetchPlan plan = resolve_plan(req, cfg.collector);
  std::cerr << "fetching " << plan.pages.size() << " log page(s)\n";

  Fetcher fetcher(cfg.collector);
  std::vector<FetchResult> results = fetcher.fetch(plan);

  std::vector<Discussion> discussions;
  size_t failed_pages = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    if (!results[i].ok()) {
      ++failed_pages;
      std::cerr << "warning: " << results[i].error->url << ": " << results[i].error->message
                << "\n";
      continue;
    }
    try {
      for (const auto& raw : extract_discussions(*results[i].page, plan.pages[i].date))
        discussions.push_back(to_discussion(raw, table));
    } catch (const ParseError& e) {
      ++failed_pages;
      std::cerr << "warning: " << e.what() << "\n";
    }
  }
  if (!results.empty() && failed_pages == results.size())
    throw Error("every page in the plan failed");

  std::filesystem::create_directories(args.out_dir);
  std::filesystem::path out_file = std::filesystem::path(args.out_dir) / "parsed.jsonl";
  {
    std::ofstream out(out_file, std::ios::trunc);
    if (!out) throw Error("cannot write " + out_file.string());
    for (const auto& d : discussions) out << discussion_record(d).dump() << "\n";
  }

  std::map<std::string, size_t> label_counts;
  size_t open_count = 0, unlabeled = 0;
  for (const auto& d : discussions) {
    if (!d.closed) ++open_count;
    else if (!d.label) ++unlabeled;
    else label_counts[std::string(to_string(*d.label))] += 1;
  }
  std::cout << "parsed " << discussions.size() << " discussion(s) from "
            << (results.size() - failed_pages) << " page(s) -> " << out_file.string() << "\n";
  for (const auto& [label, n] : label_counts) std::cout << "  " << label << ": " << n << "\n";
  if (unlabeled) std::cout << "  (closed, unrecognized label): " << unlabeled << "\n";
  if (open_count) std::cout << "  (still open): " << open_count << "\n";
  return 0;
}

// --- build-dataset ---

struct BuildArgs {
  std::string in_file;
  std::string out_dir;
  std::string ratios;
  uint64_t seed = 0;
  bool seed_set = false;
  bool masked = false;
  std::string mask_mode = "delete";
  CommonFlags common;
};

int cmd_build_dataset(const BuildArgs& args) {
  Config cfg = resolve_config(args.common);
  LabelTable table = cfg.label_table();

  SplitRatios ratios = cfg.ratios;
  if (!args.ratios.empty()) {
    double a, b, c;
    if (std::sscanf(args.ratios.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
      throw PreconditionViolation("--ratios wants three comma-separated fractions");
    ratios = SplitRatios{a, b, c};
  }
  uint64_t seed = args.seed_set ? args.seed : cfg.seed;

  std::vector<Discussion> all = read_parsed_records(args.in_file);
  std::vector<Discussion> labeled;
  for (auto& d : all)
    if (d.closed && d.label) labeled.push_back(std::move(d));
  std::cerr << "using " << labeled.size() << " of " << all.size()
            << " records (closed with a known label)\n";

  if (args.masked) {
    MaskMode mode = args.mask_mode == "replace" ? MaskMode::ReplaceToken : MaskMode::Delete;
    labeled = masked_copy(labeled, table, mode);
  }

  DatasetSplits splits = build_dataset(labeled, ratios, seed);
  for (const auto& w : splits.warnings) std::cerr << "warning: " << w << "\n";
  save_dataset(splits, args.out_dir);

  std::cout << "dataset written to " << args.out_dir << (args.masked ? " (masked)" : "") << "\n"
            << "  train: " << splits.train.size() << "\n"
            << "  validation: " << splits.validation.size() << "\n"
            << "  test: " << splits.test.size() << "\n";
  return 0;
}

// --- stats ---

int cmd_stats(const std::string& dataset_dir, const std::string& format) {
  DatasetSplits splits = load_dataset(dataset_dir);
  LabelStats stats = compute_stats(splits);

  if (format == "csv") {
    std::cout << "label,train,validation,test,mean_tokens,sentences,sent_mean,sent_p25,sent_p50,"
                 "sent_p75\n";
    for (const auto& [label, counts] : stats.counts) {
      const auto& sl = stats.sentence_lengths[label];
      std::cout << label << "," << counts[0] << "," << counts[1] << "," << counts[2] << ","
                << stats.mean_discussion_tokens[label] << "," << sl.count << "," << sl.mean << ","
                << sl.p25 << "," << sl.p50 << "," << sl.p75 << "\n";
    }
    return 0;
  }

  std::cout << std::fixed << std::setprecision(1);
  std::cout << std::left << std::setw(16) << "label" << std::right << std::setw(8) << "train"
            << std::setw(8) << "val" << std::setw(8) << "test" << std::setw(12) << "mean tok"
            << std::setw(12) << "sent p50" << "\n";
  for (const auto& [label, counts] : stats.counts) {
    std::cout << std::left << std::setw(16) << label << std::right << std::setw(8) << counts[0]
              << std::setw(8) << counts[1] << std::setw(8) << counts[2] << std::setw(12)
              << stats.mean_discussion_tokens[label] << std::setw(12)
              << stats.sentence_lengths[label].p50 << "\n";
  }
  std::cout << "totals: train " << stats.split_total(0) << ", validation " << stats.split_total(1)
            << ", test " << stats.split_total(2) << "\n";
  return 0;
}

// --- train-baseline ---

struct TrainArgs {
  std::string dataset_dir;
  std::string task = "outcome";
  std::string out_file;
  BaselineHyperparams hp;
  CommonFlags common;
};

std::vector<TrainExample> comment_examples(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("missing dataset file " + file.string());
  std::vector<TrainExample> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      out.push_back({j.at("text").get<std::string>(), j.at("label").get<std::string>()});
    } catch (const std::exception& e) {
      throw CorruptRecord(file.string(), lineno, e.what());
    }
  }
  return out;
}

int cmd_train_baseline(const TrainArgs& args) {
  Config cfg = resolve_config(args.common);
  auto task = task_from_string(args.task);
  if (!task) throw PreconditionViolation("unknown task \"" + args.task + "\"");
  LabelSpace space = LabelSpace::for_task(*task, cfg.policy_labels());

  std::vector<TrainExample> train, validation;
  if (*task == AnalysisTask::Outcome) {
    DatasetSplits splits = load_dataset(args.dataset_dir);
    for (const auto& d : splits.train) train.push_back({d.text(), std::string(to_string(*d.label))});
    for (const auto& d : splits.validation)
      validation.push_back({d.text(), std::string(to_string(*d.label))});
  } else {
    // comment-level datasets: same layout, records carry text + label
    train = comment_examples(std::filesystem::path(args.dataset_dir) / "train.jsonl");
    validation = comment_examples(std::filesystem::path(args.dataset_dir) / "validation.jsonl");
  }

  BaselineModel model = train_baseline(train, validation, space, args.hp);
  model.save(args.out_file);
  std::cout << "model written to " << args.out_file << "\n"
            << "vocabulary: " << model.vocabulary_size() << " terms\n"
            << std::fixed << std::setprecision(4)
            << "validation macro-F1: " << model.validation_macro_f1() << "\n";
  return 0;
}

// --- analyze ---

struct AnalyzeArgs {
  std::string task = "outcome";
  std::string url;
  std::string text;
  std::string backend;  // baseline | remote | llm | lexicon (default by task)
  std::string model_file;
  std::string endpoint;
  bool explanation = false;
  std::string format = "records";
  CommonFlags common;
};

std::unique_ptr<PredictionBackend> make_backend(const AnalyzeArgs& args, const Config& cfg,
                                                AnalysisTask task) {
  std::string backend = args.backend;
  if (backend.empty())
    backend = (task == AnalysisTask::Sentiment || task == AnalysisTask::Offensive) ? "lexicon"
                                                                                   : "baseline";
  if (backend == "baseline") {
    if (args.model_file.empty())
      throw PreconditionViolation("baseline backend needs --model <file>");
    auto model = std::make_unique<BaselineModel>(BaselineModel::load(args.model_file));
    if (model->task() != task)
      throw PreconditionViolation("model was trained for task \"" +
                                  std::string(to_string(model->task())) + "\"");
    return model;
  }
  if (backend == "lexicon") return std::make_unique<LexiconBackend>();
  if (backend == "remote") {
    RemoteBackend::Config rc;
    rc.endpoint = args.endpoint.empty() ? cfg.remote_endpoint : args.endpoint;
    if (rc.endpoint.empty())
      throw PreconditionViolation("remote backend needs --endpoint or a configured endpoint");
    return std::make_unique<RemoteBackend>(rc);
  }
  if (backend == "llm") {
    LlmBackend::Config lc;
    lc.endpoint = args.endpoint.empty() ? cfg.llm_endpoint : args.endpoint;
    lc.model = cfg.llm_model;
    if (auto key = cfg.llm_api_key()) lc.api_key = *key;
    if (lc.endpoint.empty())
      throw PreconditionViolation("llm backend needs --endpoint or a configured endpoint");
    return std::make_unique<LlmBackend>(lc);
  }
  throw PreconditionViolation("unknown backend \"" + backend + "\"");
}

int cmd_analyze(const AnalyzeArgs& args) {
  Config cfg = resolve_config(args.common);
  auto task = task_from_string(args.task);
  if (!task) throw PreconditionViolation("unknown task \"" + args.task + "\"");
  if (args.url.empty() == args.text.empty())
    throw PreconditionViolation("provide exactly one of --url or --text");

  std::unique_ptr<LlmBackend> llm;
  if (args.explanation) {
    if (cfg.llm_endpoint.empty() || !cfg.llm_api_key())
      throw ExplanationUnavailable(
          "explanation requested, but no LLM endpoint/API key is configured (set " +
          cfg.llm_api_key_env + ")");
    LlmBackend::Config lc;
    lc.endpoint = cfg.llm_endpoint;
    lc.model = cfg.llm_model;
    lc.api_key = *cfg.llm_api_key();
    llm = std::make_unique<LlmBackend>(lc);
  }

  LabelTable table = cfg.label_table();
  LabelSpace space = LabelSpace::for_task(*task, cfg.policy_labels());
  std::unique_ptr<PredictionBackend> backend = make_backend(args, cfg, *task);

  PipelineOptions opts;
  opts.collector = cfg.collector;
  opts.table = &table;
  Pipeline pipeline(opts);

  AnalyzeRequest req;
  req.task = *task;
  req.want_explanation = args.explanation;
  if (!args.url.empty()) {
    req.mode = InputMode::Url;
    req.input = args.url;
  } else {
    req.mode = InputMode::Text;
    req.input = args.text;
  }

  AnalysisResult result = pipeline.analyze(req, *backend, space, llm.get());

  if (args.format == "text") {
    if (result.title) std::cout << "discussion: " << *result.title << "\n";
    if (result.outcome) {
      std::cout << "prediction: " << result.outcome->label << " (p=" << std::fixed
                << std::setprecision(4) << result.outcome->probability << ")\n";
      if (result.outcome->explanation) std::cout << "explanation: " << *result.outcome->explanation << "\n";
    }
    for (const auto& sr : result.sentences)
      std::cout << "[" << sr.sentence.index << "] " << sr.prediction.label << " (" << std::fixed
                << std::setprecision(4) << sr.prediction.probability << ") " << sr.sentence.text
                << "\n";
  } else {
    for (const auto& line : result.to_records()) std::cout << line << "\n";
  }
  return 0;
}

// --- evaluate ---

struct EvaluateArgs {
  std::string dataset_dir;
  std::string pairs_file;
  std::string split = "test";
  std::string task = "outcome";
  std::string labels_csv;
  std::string model_file;
  std::string report_dir;
  CommonFlags common;
};

int cmd_evaluate(const EvaluateArgs& args) {
  Config cfg = resolve_config(args.common);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> label_space;

  if (!args.labels_csv.empty()) {
    std::stringstream ss(args.labels_csv);
    std::string item;
    while (std::getline(ss, item, ',')) label_space.push_back(trim(item));
  }

  if (!args.pairs_file.empty()) {
    std::ifstream in(args.pairs_file);
    if (!in) throw Error("cannot open pairs file " + args.pairs_file);
    std::string line;
    size_t lineno = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      try {
        json j = json::parse(line);
        pairs.emplace_back(j.at("gold").get<std::string>(), j.at("predicted").get<std::string>());
        seen.insert(pairs.back().first);
        seen.insert(pairs.back().second);
      } catch (const std::exception& e) {
        throw CorruptRecord(args.pairs_file, lineno, e.what());
      }
    }
    if (label_space.empty()) label_space.assign(seen.begin(), seen.end());
  } else {
    if (args.dataset_dir.empty() || args.model_file.empty())
      throw PreconditionViolation("evaluate needs --pairs, or --dataset plus --model");
    auto task = task_from_string(args.task);
    if (!task) throw PreconditionViolation("unknown task \"" + args.task + "\"");
    LabelSpace space = LabelSpace::for_task(*task, cfg.policy_labels());
    if (label_space.empty()) label_space = space.labels;

    DatasetSplits splits = load_dataset(args.dataset_dir);
    const std::vector<Discussion>* split = &splits.test;
    if (args.split == "train") split = &splits.train;
    else if (args.split == "validation") split = &splits.validation;
    else if (args.split != "test")
      throw PreconditionViolation("unknown split \"" + args.split + "\"");

    BaselineModel model = BaselineModel::load(args.model_file);
    size_t failures = 0;
    for (const auto& item : batch_analyze(*split, *task, model, space)) {
      if (item.prediction)
        pairs.emplace_back(item.gold, item.prediction->label);
      else
        ++failures;
    }
    if (failures) std::cerr << "warning: " << failures << " item(s) failed to predict\n";
  }

  EvalReport report = evaluate(pairs, label_space);
  std::cout << report.render_table();
  std::cout << std::fixed << std::setprecision(3) << "macro-F1 " << report.macro_f1 << "\n";

  if (!args.report_dir.empty()) {
    std::filesystem::create_directories(args.report_dir);
    std::filesystem::path dir(args.report_dir);
    std::ofstream(dir / "report.json", std::ios::trunc) << report.to_json_string() << "\n";
    std::ofstream(dir / "report.txt", std::ios::trunc) << report.render_table();
    std::ofstream(dir / "confusion.csv", std::ios::trunc) << report.confusion_csv();
    std::cout << "reports written to " << args.report_dir << "\n";
  }
  return 0;
}

// --- correlate ---

struct CorrelateArgs {
  std::string dataset_dir;
  std::string task = "sentiment";
  std::string backend;
  std::string model_file;
  std::string split = "all";
  std::string aggregation = "mean";
  std::string report_dir;
  CommonFlags common;
};

int cmd_correlate(const CorrelateArgs& args) {
  Config cfg = resolve_config(args.common);
  auto task = task_from_string(args.task);
  if (!task) throw PreconditionViolation("unknown task \"" + args.task + "\"");
  if (*task == AnalysisTask::Outcome)
    throw PreconditionViolation("correlate works with sentence-level tasks");

  LabelSpace space = LabelSpace::for_task(*task, cfg.policy_labels());
  AnalyzeArgs backend_args;
  backend_args.backend = args.backend;
  backend_args.model_file = args.model_file;
  std::unique_ptr<PredictionBackend> backend = make_backend(backend_args, cfg, *task);

  DatasetSplits splits = load_dataset(args.dataset_dir);
  std::vector<const Discussion*> items;
  auto add_split = [&](const std::vector<Discussion>& v) {
    for (const auto& d : v) items.push_back(&d);
  };
  if (args.split == "all") {
    add_split(splits.train);
    add_split(splits.validation);
    add_split(splits.test);
  } else if (args.split == "train") add_split(splits.train);
  else if (args.split == "validation") add_split(splits.validation);
  else if (args.split == "test") add_split(splits.test);
  else throw PreconditionViolation("unknown split \"" + args.split + "\"");

  std::vector<ScoredDiscussion> scored;
  for (const Discussion* d : items) {
    ScoredDiscussion sd;
    sd.outcome_label = std::string(to_string(*d->label));
    for (const Sentence& s : segment_sentences(d->text()))
      sd.sentence_predictions.push_back(predict(*backend, *task, space, s.text));
    if (!sd.sentence_predictions.empty()) scored.push_back(std::move(sd));
  }

  AggregationMode mode = args.aggregation == "vote" ? AggregationMode::VoteFraction
                                                    : AggregationMode::MeanProbability;
  CorrelationReport report = correlate(scored, space, outcome_label_names(), mode);
  std::cout << report.render_table();

  if (!args.report_dir.empty()) {
    std::filesystem::create_directories(args.report_dir);
    std::ofstream(std::filesystem::path(args.report_dir) / "correlation.csv", std::ios::trunc)
        << report.to_csv();
    std::cout << "report written to " << args.report_dir << "\n";
  }
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"AfD discussion harvesting, datasets, classification and evaluation"};
  app.require_subcommand(1);

  CollectArgs collect_args;
  auto* collect = app.add_subcommand("collect", "fetch daily log pages and parse discussions");
  collect->add_option("--mode", collect_args.mode, "url | date | date_range | wide_2023")
      ->required();
  collect->add_option("--url", collect_args.url, "log page URL (mode=url)");
  collect->add_option("--date", collect_args.date, "YYYY-MM-DD (mode=date)");
  collect->add_option("--start", collect_args.start, "range start YYYY-MM-DD");
  collect->add_option("--end", collect_args.end, "range end YYYY-MM-DD");
  collect->add_option("--out", collect_args.out_dir, "output directory")->required();
  add_common(collect, collect_args.common);

  BuildArgs build_args;
  auto* build = app.add_subcommand("build-dataset", "assemble stratified splits from parsed records");
  build->add_option("--in", build_args.in_file, "parsed.jsonl from collect")->required();
  build->add_option("--out", build_args.out_dir, "dataset directory")->required();
  build->add_option("--ratios", build_args.ratios, "train,validation,test fractions");
  build->add_option("--seed", build_args.seed, "split seed")
      ->each([&](const std::string&) { build_args.seed_set = true; });
  build->add_flag("--masked", build_args.masked, "mask bold vote keywords in texts");
  build->add_option("--mask-mode", build_args.mask_mode, "delete | replace");
  add_common(build, build_args.common);

  std::string stats_dataset, stats_format = "text";
  auto* stats = app.add_subcommand("stats", "per-label dataset statistics");
  stats->add_option("--dataset", stats_dataset, "dataset directory")->required();
  stats->add_option("--format", stats_format, "text | csv");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train-baseline", "train the TF-IDF logistic baseline");
  train->add_option("--dataset", train_args.dataset_dir, "dataset directory")->required();
  train->add_option("--task", train_args.task, "outcome | stance | policy");
  train->add_option("--out", train_args.out_file, "model output file")->required();
  train->add_option("--l2", train_args.hp.l2, "L2 strength");
  train->add_option("--epochs", train_args.hp.epochs, "training epochs");
  train->add_option("--lr", train_args.hp.learning_rate, "learning rate");
  train->add_option("--min-tf", train_args.hp.min_term_freq, "minimum document frequency");
  train->add_option("--seed", train_args.hp.seed, "seed");
  add_common(train, train_args.common);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "one-click analysis of a discussion");
  analyze->add_option("--task", analyze_args.task,
                      "outcome | stance | policy | sentiment | offensive");
  analyze->add_option("--url", analyze_args.url, "discussion URL (anchored to a section)");
  analyze->add_option("--text", analyze_args.text, "raw discussion text");
  analyze->add_option("--backend", analyze_args.backend, "baseline | remote | llm | lexicon");
  analyze->add_option("--model", analyze_args.model_file, "baseline model file");
  analyze->add_option("--endpoint", analyze_args.endpoint, "remote/llm endpoint origin");
  analyze->add_flag("--explanation", analyze_args.explanation, "append an LLM explanation");
  analyze->add_option("--format", analyze_args.format, "records | text");
  add_common(analyze, analyze_args.common);

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "score predictions against gold labels");
  evaluate->add_option("--dataset", eval_args.dataset_dir, "dataset directory");
  evaluate->add_option("--pairs", eval_args.pairs_file, "jsonl of {gold, predicted} pairs");
  evaluate->add_option("--split", eval_args.split, "train | validation | test");
  evaluate->add_option("--task", eval_args.task, "task for the label space");
  evaluate->add_option("--labels", eval_args.labels_csv, "comma-separated label space override");
  evaluate->add_option("--model", eval_args.model_file, "baseline model file");
  evaluate->add_option("--report-dir", eval_args.report_dir, "write report.json/confusion.csv here");
  add_common(evaluate, eval_args.common);

  CorrelateArgs corr_args;
  auto* correlate = app.add_subcommand("correlate",
                                       "correlate sentence-level scores with outcomes");
  correlate->add_option("--dataset", corr_args.dataset_dir, "dataset directory")->required();
  correlate->add_option("--task", corr_args.task, "sentiment | stance | policy | offensive");
  correlate->add_option("--backend", corr_args.backend, "lexicon | baseline | remote");
  correlate->add_option("--model", corr_args.model_file, "baseline model file");
  correlate->add_option("--split", corr_args.split, "all | train | validation | test");
  correlate->add_option("--aggregation", corr_args.aggregation, "mean | vote");
  correlate->add_option("--report-dir", corr_args.report_dir, "write correlation.csv here");
  add_common(correlate, corr_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*collect) return cmd_collect(collect_args);
  if (*build) return cmd_build_dataset(build_args);
  if (*stats) return cmd_stats(stats_dataset, stats_format);
  if (*train) return cmd_train_baseline(train_args);
  if (*analyze) return cmd_analyze(analyze_args);
  if (*evaluate) return cmd_evaluate(eval_args);
  if (*correlate) return cmd_correlate(corr_args);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ExplanationUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvalidDateRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const MalformedUrl& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
