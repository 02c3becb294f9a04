#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "afdkit/date.hpp"
#include "afdkit/types.hpp"

namespace afdkit {

enum class CollectMode { Url, Date, DateRange, Wide2023 };

std::string_view to_string(CollectMode m);
std::optional<CollectMode> collect_mode_from_string(std::string_view s);

// The fixed range the wide_2023 shorthand expands to.
inline constexpr Date kWideStart{2023, 1, 1};
inline constexpr Date kWideEnd{2024, 7, 18};

struct CollectRequest {
  CollectMode mode = CollectMode::Date;
  std::optional<std::string> url;
  std::optional<Date> start_date;
  std::optional<Date> end_date;

  // Throws InvalidDateRange / MalformedUrl / PreconditionViolation when the
  // per-mode invariants do not hold.
  void validate() const;
};

struct PlanEntry {
  Date date;
  std::string url;
};

struct FetchPlan {
  std::vector<PlanEntry> pages;
};

inline constexpr std::string_view kLogPathMarker = "/wiki/Wikipedia:Articles_for_deletion/Log/";

struct CollectorConfig {
  std::string base_url = "https://en.wikipedia.org";
  // {base}/{year}/{month}/{day} placeholders; month is the English name,
  // day is unpadded, matching the daily log naming.
  std::string url_template = "{base}/wiki/Wikipedia:Articles_for_deletion/Log/{year}_{month}_{day}";
  std::string user_agent =
      "afdkit/1.0 (deletion-discussion research tool; contact: see project README)";
  double rate_limit = 1.0;  // requests per second
  int parallelism = 4;
  int max_retries = 3;
  double backoff_initial_s = 0.5;
  double timeout_s = 30.0;
  bool refresh = false;  // bypass cache reads
  std::filesystem::path cache_dir = ".afdkit-cache";
};

// Expands a request into the ordered list of daily log pages to fetch.
// Pure: the same request and config always produce the same plan.
FetchPlan resolve_plan(const CollectRequest& req, const CollectorConfig& cfg = {});

// Extracts the log date from a daily log page URL ("..._deletion/Log/2023_January_5").
// Throws MalformedUrl when the URL does not carry the log path.
Date date_from_log_url(const std::string& url);

struct FetchError {
  std::string url;
  std::string message;
};

// Per-page outcome: exactly one of page/error is set.
struct FetchResult {
  std::optional<RawPage> page;
  std::optional<FetchError> error;

  bool ok() const { return page.has_value(); }
};

// On-disk page cache: <dir>/<2-hex-prefix>/<sha256>.html plus a sidecar
// <sha256>.meta.json carrying url, fetch timestamp, status and content type.
class PageCache {
 public:
  explicit PageCache(std::filesystem::path dir);

  std::optional<RawPage> get(const std::string& url) const;
  void put(const RawPage& page, int status, const std::string& content_type);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path entry_path(const std::string& url, bool meta) const;
  std::filesystem::path dir_;
};

// HTTP fetcher with caching, retries with exponential backoff, and a shared
// rate limiter. Safe to call from multiple threads.
class Fetcher {
 public:
  explicit Fetcher(CollectorConfig cfg);
  ~Fetcher();

  // Fetches every page of the plan, bounded-parallel, order-preserving.
  // Per-page failures land in the result list instead of aborting the batch.
  std::vector<FetchResult> fetch(const FetchPlan& plan);

  FetchResult fetch_one(const std::string& url);

  const CollectorConfig& config() const { return cfg_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  CollectorConfig cfg_;
};

}  // namespace afdkit
