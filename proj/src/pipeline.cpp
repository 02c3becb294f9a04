#include "afdkit/pipeline.hpp"

#include <nlohmann/json.hpp>

#include "afdkit/util.hpp"

namespace afdkit {

using json = nlohmann::json;

void AnalyzeRequest::validate() const {
  if (trim(input).empty()) throw PreconditionViolation("analysis input must be non-empty");
  if (want_explanation && !is_discussion_level(task))
    throw PreconditionViolation("explanations are available for the outcome task only");
  if (mode == InputMode::Url) split_url(input);  // throws MalformedUrl
}

Pipeline::Pipeline(PipelineOptions opts) : opts_(std::move(opts)) {
  fetcher_ = std::make_unique<Fetcher>(opts_.collector);
}

namespace {

std::string anchor_of(const std::string& title) {
  std::string anchor = title;
  for (char& c : anchor)
    if (c == ' ') c = '_';
  return anchor;
}

}  // namespace

Discussion Pipeline::resolve_url(const std::string& url) {
  UrlParts parts = split_url(url);
  Date log_date = date_from_log_url(url);
  std::string page_url = parts.origin + parts.path;

  FetchResult fetched = fetcher_->fetch_one(page_url);
  if (!fetched.ok())
    throw Error("cannot fetch " + page_url + ": " + fetched.error->message);

  std::vector<RawDiscussion> raws = extract_discussions(*fetched.page, log_date);
  const LabelTable& table = opts_.table ? *opts_.table : LabelTable::builtin();

  const RawDiscussion* chosen = nullptr;
  if (!parts.fragment.empty()) {
    for (const auto& raw : raws) {
      if (raw.anchor == parts.fragment || anchor_of(raw.title) == parts.fragment) {
        chosen = &raw;
        break;
      }
    }
  } else if (raws.size() == 1) {
    chosen = &raws.front();
  }

  if (!chosen) {
    std::vector<std::string> titles;
    titles.reserve(raws.size());
    for (const auto& raw : raws) titles.push_back(raw.title);
    throw DiscussionNotFound(url, std::move(titles));
  }
  return to_discussion(*chosen, table);
}

AnalysisResult Pipeline::analyze(const AnalyzeRequest& req, PredictionBackend& backend,
                                 const LabelSpace& space, LlmBackend* llm) {
  req.validate();
  if (req.want_explanation && llm == nullptr)
    throw ExplanationUnavailable("explanation requested but no LLM backend is configured");

  AnalysisResult result;
  result.task = req.task;

  std::string text;
  std::string title;
  if (req.mode == InputMode::Url) {
    Discussion d = resolve_url(req.input);
    text = d.text();
    title = d.title;
    result.title = d.title;
  } else {
    text = trim(req.input);
  }
  if (text.empty()) throw PreconditionViolation("resolved discussion text is empty");

  if (is_discussion_level(req.task)) {
    Prediction p = predict(backend, req.task, space, text, title);
    if (req.want_explanation) p.explanation = llm->explain(title, text, p.label);
    result.outcome = std::move(p);
  } else {
    for (const Sentence& sentence : segment_sentences(text)) {
      Prediction p = predict(backend, req.task, space, sentence.text);
      result.sentences.push_back({sentence, std::move(p)});
    }
  }
  return result;
}

std::vector<std::string> AnalysisResult::to_records() const {
  std::vector<std::string> out;
  if (outcome) {
    json j = {
        {"prediction", outcome->label},
        {"probability", outcome->probability},
    };
    if (outcome->explanation) j["explanation"] = *outcome->explanation;
    out.push_back(j.dump());
    return out;
  }

  // sentence-level key names follow the per-task convention
  std::string key;
  switch (task) {
    case AnalysisTask::Stance: key = "label"; break;
    case AnalysisTask::Policy: key = "policy"; break;
    case AnalysisTask::Sentiment: key = "sentiment"; break;
    case AnalysisTask::Offensive: key = "offensive_label"; break;
    default: key = "label"; break;
  }
  for (const auto& sr : sentences) {
    json j = {
        {"sentence", sr.sentence.text},
        {key, sr.prediction.label},
        {"score", sr.prediction.probability},
    };
    out.push_back(j.dump());
  }
  return out;
}

std::vector<BatchItem> batch_analyze(const std::vector<Discussion>& items, AnalysisTask task,
                                     PredictionBackend& backend, const LabelSpace& space) {
  if (items.empty()) throw EmptyInput("empty batch");
  std::vector<BatchItem> out;
  out.reserve(items.size());
  for (const auto& d : items) {
    BatchItem item;
    item.gold = d.label ? std::string(to_string(*d.label)) : "";
    try {
      item.prediction = predict(backend, task, space, d.text(), d.title);
    } catch (const Error& e) {
      item.error = e.what();
    }
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace afdkit
