#include "afdkit/backends.hpp"

#include <httplib.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

#include "afdkit/baseline.hpp"
#include "afdkit/util.hpp"

namespace afdkit {

using json = nlohmann::json;

// --- remote ---

RemoteBackend::RemoteBackend(Config cfg) : cfg_(std::move(cfg)) {
  if (trim(cfg_.endpoint).empty())
    throw PreconditionViolation("remote backend requires an endpoint");
}

Prediction RemoteBackend::predict(AnalysisTask task, const LabelSpace& space,
                                  std::string_view text, std::string_view) {
  json request = {
      {"task", std::string(to_string(task))},
      {"labels", space.labels},
      {"text", std::string(text)},
  };

  httplib::Client cli(cfg_.endpoint);
  cli.set_connection_timeout(std::chrono::duration<double>(cfg_.timeout_s));
  cli.set_read_timeout(std::chrono::duration<double>(cfg_.timeout_s));
  auto res = cli.Post("/v1/classify", request.dump(), "application/json");
  if (!res)
    throw BackendUnavailable("remote inference endpoint unreachable: " +
                             httplib::to_string(res.error()));
  if (res->status != 200)
    throw BackendUnavailable("remote inference endpoint returned HTTP " +
                             std::to_string(res->status));

  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::exception& e) {
    throw BackendUnavailable(std::string("remote endpoint sent unparseable JSON: ") + e.what());
  }
  if (!body.contains("labels") || !body["labels"].is_array() || body["labels"].empty())
    throw BackendUnavailable("remote endpoint response carries no ranked labels");

  Prediction p;
  p.label = body["labels"][0].value("label", "");
  p.probability = body["labels"][0].value("score", 0.0);

  // Adopt the distribution only when it covers the space exactly and is
  // normalized; otherwise keep label+probability only.
  if (body["labels"].size() == space.labels.size()) {
    std::vector<double> scores(space.labels.size(), 0.0);
    double sum = 0;
    bool complete = true;
    std::set<int> seen;
    for (const auto& entry : body["labels"]) {
      int idx = space.index_of(entry.value("label", ""));
      if (idx < 0 || !seen.insert(idx).second) {
        complete = false;
        break;
      }
      scores[size_t(idx)] = entry.value("score", 0.0);
      sum += scores[size_t(idx)];
    }
    if (complete && std::abs(sum - 1.0) <= 1e-6) p.per_label_scores = std::move(scores);
  }
  return p;
}

// --- llm ---

LlmBackend::LlmBackend(Config cfg) : cfg_(std::move(cfg)) {
  if (trim(cfg_.endpoint).empty()) throw PreconditionViolation("llm backend requires an endpoint");
}

std::string LlmBackend::complete(const std::string& prompt) {
  if (trim(cfg_.api_key).empty())
    throw BackendUnavailable("llm backend has no API key configured");

  json request = {
      {"model", cfg_.model},
      {"temperature", cfg_.temperature},
      {"max_tokens", cfg_.max_tokens},
      {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
  };

  httplib::Client cli(cfg_.endpoint);
  cli.set_connection_timeout(std::chrono::duration<double>(cfg_.timeout_s));
  cli.set_read_timeout(std::chrono::duration<double>(cfg_.timeout_s));
  httplib::Headers headers = {{"Authorization", "Bearer " + cfg_.api_key}};
  auto res = cli.Post("/v1/chat/completions", headers, request.dump(), "application/json");
  if (!res)
    throw BackendUnavailable("llm endpoint unreachable: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw BackendUnavailable("llm endpoint returned HTTP " + std::to_string(res->status));

  try {
    json body = json::parse(res->body);
    return body.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw BackendUnavailable(std::string("llm endpoint sent an unexpected response shape: ") +
                             e.what());
  }
}

Prediction LlmBackend::predict(AnalysisTask task, const LabelSpace& space, std::string_view text,
                               std::string_view title) {
  if (task != AnalysisTask::Outcome)
    throw BackendUnavailable("the llm backend answers the outcome task only");

  std::string prompt = render_llm_prompt(title.empty() ? "(untitled)" : title, text, cfg_.shots);
  LlmOutcome out = parse_llm_response(complete(prompt));

  Prediction p;
  p.label = std::string(to_string(out.label));
  p.probability = 1.0;  // chat completions carry no calibrated probability
  if (!out.explanation.empty()) p.explanation = out.explanation;
  if (!space.contains(p.label))
    throw LabelSpaceMismatch("llm produced \"" + p.label + "\" outside the configured space");
  return p;
}

std::string LlmBackend::explain(std::string_view title, std::string_view discussion,
                                std::string_view label) {
  std::string prompt =
      "A Wikipedia deletion discussion was classified with the outcome label \"" +
      std::string(label) + "\".\n\nArticle title: " + std::string(title.empty() ? "(untitled)" : title) +
      "\n\nDiscussion:\n" + std::string(discussion) +
      "\n\nGive a three-sentence explanation of why this label fits the discussion. "
      "Respond as a JSON dictionary of the form {\"Label\": \"" +
      std::string(label) + "\", \"Explanation\": \"<your three sentences>\"}.";

  std::string content = complete(prompt);
  try {
    LlmOutcome out = parse_llm_response(content);
    if (!out.explanation.empty()) return out.explanation;
  } catch (const Error&) {
    // fall through: an unstructured reply still serves as an explanation
  }
  return trim(content);
}

// --- lexicon ---

namespace {

const std::vector<std::string>& positive_words() {
  static const std::vector<std::string> kWords = {
      "good",      "great",    "excellent",  "reliable",   "well",     "improve",
      "improved",  "notable",  "significant", "valuable",  "useful",   "helpful",
      "clear",     "strong",   "solid",      "verifiable", "credible", "comprehensive",
      "quality",   "encyclopedic"};
  return kWords;
}

const std::vector<std::string>& negative_words() {
  static const std::vector<std::string> kWords = {
      "none",        "no",        "not",        "nothing",    "never",      "fails",
      "fail",        "failed",    "lacks",      "lack",       "lacking",    "junk",
      "spam",        "hoax",      "vanity",     "trivial",    "unsourced",  "unreliable",
      "poorly",      "poor",      "bad",        "worst",      "useless",    "promotional",
      "advertisement", "advertising", "advert", "fake",       "problematic", "irrelevant",
      "insignificant"};
  return kWords;
}

const std::vector<std::string>& offensive_words() {
  static const std::vector<std::string> kWords = {
      "idiot",    "idiots", "stupid", "moron",    "dumb",  "crap",   "garbage", "trash",
      "fool",     "foolish", "pathetic", "clown", "loser", "jerk",   "damn",    "sucks",
      "troll",    "liar",   "lying",  "shut",     "shit",  "ass",    "bastard", "bitch",
      "fuck",     "fucking", "insult", "insulting"};
  return kWords;
}

size_t count_hits(const std::vector<std::string>& tokens, const std::vector<std::string>& words) {
  size_t hits = 0;
  for (const auto& t : tokens)
    for (const auto& w : words)
      if (t == w) {
        ++hits;
        break;
      }
  return hits;
}

bool contains(const std::vector<std::string>& words, const std::string& t) {
  for (const auto& w : words)
    if (t == w) return true;
  return false;
}

// Negators flip the polarity of the cue that immediately follows, so
// "not notable" and "non-notable" (tokenized as non, notable) read negative.
bool is_negator(const std::string& t) {
  static const char* kNegators[] = {"not", "non", "no", "none", "never", "neither", "nor",
                                    "nothing"};
  for (const char* n : kNegators)
    if (t == n) return true;
  return false;
}

std::pair<double, double> sentiment_counts(const std::vector<std::string>& tokens,
                                           const std::vector<std::string>& positive,
                                           const std::vector<std::string>& negative) {
  double p = 0, n = 0;
  bool flip = false;
  for (const auto& t : tokens) {
    if (is_negator(t)) {
      if (contains(negative, t)) n += 1;  // negators that are cues themselves still count
      flip = true;
      continue;
    }
    if (contains(positive, t)) {
      flip ? n += 1 : p += 1;
    } else if (contains(negative, t)) {
      flip ? p += 1 : n += 1;
    }
    flip = false;
  }
  return {p, n};
}

// softmax over named class logits, aligned with the space's label order
Prediction scored(const LabelSpace& space, const std::vector<std::pair<std::string, double>>& logits) {
  std::vector<double> scores(space.labels.size(), 0.0);
  double zmax = logits[0].second;
  for (const auto& [label, z] : logits) zmax = std::max(zmax, z);
  double sum = 0;
  for (const auto& [label, z] : logits) {
    int idx = space.index_of(label);
    if (idx < 0)
      throw LabelSpaceMismatch("lexicon backend expects label \"" + label + "\" in the space");
    scores[size_t(idx)] = std::exp(z - zmax);
    sum += scores[size_t(idx)];
  }
  size_t argmax = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    scores[i] /= sum;
    if (scores[i] > scores[argmax]) argmax = i;
  }
  Prediction p;
  p.label = space.labels[argmax];
  p.probability = scores[argmax];
  p.per_label_scores = std::move(scores);
  return p;
}

}  // namespace

LexiconBackend::LexiconBackend()
    : positive_(positive_words()), negative_(negative_words()), offensive_(offensive_words()) {}

Prediction LexiconBackend::predict(AnalysisTask task, const LabelSpace& space,
                                   std::string_view text, std::string_view) {
  std::vector<std::string> tokens = feature_tokens(text);

  if (task == AnalysisTask::Sentiment) {
    auto [p, n] = sentiment_counts(tokens, positive_, negative_);
    double s = p - n;
    // neutral prior 0.5 wins on ties and empty input
    return scored(space, {{"positive", s}, {"negative", -s}, {"neutral", 0.5}});
  }
  if (task == AnalysisTask::Offensive) {
    double o = double(count_hits(tokens, offensive_));
    return scored(space, {{"offensive", o - 0.5}, {"non-offensive", 0.0}});
  }
  throw BackendUnavailable("the lexicon heuristic covers sentiment and offensive tasks only");
}

}  // namespace afdkit
