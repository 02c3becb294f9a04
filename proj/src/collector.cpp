#include "afdkit/collector.hpp"

#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "afdkit/rate_limiter.hpp"
#include "afdkit/util.hpp"

namespace afdkit {

using json = nlohmann::json;

std::string_view to_string(CollectMode m) {
  switch (m) {
    case CollectMode::Url: return "url";
    case CollectMode::Date: return "date";
    case CollectMode::DateRange: return "date_range";
    case CollectMode::Wide2023: return "wide_2023";
  }
  return "";
}

std::optional<CollectMode> collect_mode_from_string(std::string_view s) {
  if (s == "url") return CollectMode::Url;
  if (s == "date") return CollectMode::Date;
  if (s == "date_range") return CollectMode::DateRange;
  if (s == "wide_2023") return CollectMode::Wide2023;
  return std::nullopt;
}

void CollectRequest::validate() const {
  switch (mode) {
    case CollectMode::Url: {
      if (!url) throw PreconditionViolation("url mode requires a URL");
      UrlParts parts = split_url(*url);  // throws MalformedUrl
      if (parts.path.find(kLogPathMarker) == std::string::npos)
        throw MalformedUrl("not an AfD daily log page URL: " + *url);
      break;
    }
    case CollectMode::Date:
      if (!start_date) throw PreconditionViolation("date mode requires a date");
      if (end_date) throw PreconditionViolation("date mode takes a single date, not a range");
      break;
    case CollectMode::DateRange:
      if (!start_date || !end_date)
        throw PreconditionViolation("date_range mode requires start and end dates");
      if (*start_date > *end_date)
        throw InvalidDateRange("reversed date range: start " + to_iso(*start_date) +
                               " is after end " + to_iso(*end_date));
      break;
    case CollectMode::Wide2023:
      break;
  }
}

namespace {

std::string replace_all(std::string s, std::string_view needle, std::string_view value) {
  size_t pos = 0;
  while ((pos = s.find(needle, pos)) != std::string::npos) {
    s.replace(pos, needle.size(), value);
    pos += value.size();
  }
  return s;
}

std::string log_url_for(const Date& d, const CollectorConfig& cfg) {
  std::string base = cfg.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  std::string url = cfg.url_template;
  url = replace_all(url, "{base}", base);
  url = replace_all(url, "{year}", std::to_string(d.year));
  url = replace_all(url, "{month}", month_name(d.month));
  url = replace_all(url, "{day}", std::to_string(d.day));
  return url;
}

}  // namespace

FetchPlan resolve_plan(const CollectRequest& req, const CollectorConfig& cfg) {
  req.validate();
  FetchPlan plan;

  if (req.mode == CollectMode::Url) {
    plan.pages.push_back({date_from_log_url(*req.url), *req.url});
    return plan;
  }

  Date start{}, end{};
  switch (req.mode) {
    case CollectMode::Date:
      start = end = *req.start_date;
      break;
    case CollectMode::DateRange:
      start = *req.start_date;
      end = *req.end_date;
      break;
    case CollectMode::Wide2023:
      start = kWideStart;
      end = kWideEnd;
      break;
    default:
      break;
  }

  for (Date d = start;; d = d.next()) {
    plan.pages.push_back({d, log_url_for(d, cfg)});
    if (d == end) break;
  }
  return plan;
}

Date date_from_log_url(const std::string& url) {
  UrlParts parts = split_url(url);
  size_t pos = parts.path.find(kLogPathMarker);
  if (pos == std::string::npos) throw MalformedUrl("not an AfD daily log page URL: " + url);
  std::string rest = parts.path.substr(pos + kLogPathMarker.size());
  size_t cut = rest.find_first_of("?#/");
  if (cut != std::string::npos) rest = rest.substr(0, cut);

  // "2023_January_5"
  size_t u1 = rest.find('_');
  size_t u2 = u1 == std::string::npos ? std::string::npos : rest.find('_', u1 + 1);
  if (u1 == std::string::npos || u2 == std::string::npos)
    throw MalformedUrl("log page URL without a parseable date: " + url);
  int year = 0;
  unsigned day = 0;
  try {
    year = std::stoi(rest.substr(0, u1));
    day = unsigned(std::stoul(rest.substr(u2 + 1)));
  } catch (const std::exception&) {
    throw MalformedUrl("log page URL without a parseable date: " + url);
  }
  unsigned month = month_from_name(rest.substr(u1 + 1, u2 - u1 - 1));
  Date d{year, month, day};
  if (month == 0 || !d.ok()) throw MalformedUrl("log page URL without a parseable date: " + url);
  return d;
}

// --- cache ---

PageCache::PageCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path PageCache::entry_path(const std::string& url, bool meta) const {
  std::string hash = sha256_hex(canonical_url(url));
  return dir_ / hash.substr(0, 2) / (hash + (meta ? ".meta.json" : ".html"));
}

std::optional<RawPage> PageCache::get(const std::string& url) const {
  std::filesystem::path body_path = entry_path(url, false);
  std::filesystem::path meta_path = entry_path(url, true);
  std::ifstream body_in(body_path, std::ios::binary);
  std::ifstream meta_in(meta_path);
  if (!body_in || !meta_in) return std::nullopt;

  RawPage page;
  page.url = url;
  page.from_cache = true;
  page.body.assign(std::istreambuf_iterator<char>(body_in), std::istreambuf_iterator<char>());
  try {
    json meta = json::parse(meta_in);
    page.fetched_at = meta.value("fetched_at", "");
  } catch (const json::exception&) {
    return std::nullopt;  // unreadable sidecar: treat as a miss
  }
  if (page.body.empty()) return std::nullopt;
  return page;
}

void PageCache::put(const RawPage& page, int status, const std::string& content_type) {
  std::filesystem::path body_path = entry_path(page.url, false);
  std::error_code ec;
  std::filesystem::create_directories(body_path.parent_path(), ec);
  if (ec) throw CacheIoError("cannot create cache directory " + body_path.parent_path().string() +
                             ": " + ec.message());

  {
    std::ofstream out(body_path, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheIoError("cannot write cache entry " + body_path.string());
    out.write(page.body.data(), std::streamsize(page.body.size()));
    if (!out) throw CacheIoError("short write on cache entry " + body_path.string());
  }
  json meta = {
      {"url", page.url},
      {"canonical_url", canonical_url(page.url)},
      {"fetched_at", page.fetched_at},
      {"status", status},
      {"content_type", content_type},
  };
  std::ofstream meta_out(entry_path(page.url, true), std::ios::trunc);
  if (!meta_out) throw CacheIoError("cannot write cache sidecar for " + page.url);
  meta_out << meta.dump(2) << "\n";
}

// --- fetcher ---

struct Fetcher::Impl {
  explicit Impl(const CollectorConfig& cfg) : limiter(cfg.rate_limit), cache(cfg.cache_dir) {}

  RateLimiter limiter;
  PageCache cache;
  std::mutex cache_mu;
};

Fetcher::Fetcher(CollectorConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.rate_limit <= 0) throw PreconditionViolation("rate limit must be > 0");
  if (trim(cfg_.user_agent).empty())
    throw PreconditionViolation("a descriptive user-agent string is required");
  impl_ = std::make_unique<Impl>(cfg_);
}

Fetcher::~Fetcher() = default;

namespace {

void apply_proxy(httplib::Client& cli, const std::string& origin) {
  const char* env = starts_with(origin, "https://") ? std::getenv("https_proxy")
                                                    : std::getenv("http_proxy");
  if (!env || !*env) return;
  try {
    UrlParts parts = split_url(env);
    std::string hostport = parts.origin.substr(parts.origin.find("://") + 3);
    size_t colon = hostport.rfind(':');
    if (colon == std::string::npos) return;
    cli.set_proxy(hostport.substr(0, colon).c_str(),
                  std::stoi(hostport.substr(colon + 1)));
  } catch (const std::exception&) {
    // unusable proxy setting: fall through to a direct connection
  }
}

}  // namespace

FetchResult Fetcher::fetch_one(const std::string& url) {
  UrlParts parts;
  try {
    parts = split_url(url);
  } catch (const MalformedUrl& e) {
    return {std::nullopt, FetchError{url, e.what()}};
  }

  if (!cfg_.refresh) {
    std::lock_guard<std::mutex> lock(impl_->cache_mu);
    if (auto cached = impl_->cache.get(url)) return {std::move(cached), std::nullopt};
  }

  std::string last_error = "unknown error";
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) {
      auto delay = std::chrono::duration<double>(cfg_.backoff_initial_s * double(1 << (attempt - 1)));
      std::this_thread::sleep_for(delay);
    }
    impl_->limiter.acquire();

    httplib::Client cli(parts.origin);
    cli.set_connection_timeout(std::chrono::duration<double>(cfg_.timeout_s));
    cli.set_read_timeout(std::chrono::duration<double>(cfg_.timeout_s));
    cli.set_follow_location(true);
    apply_proxy(cli, parts.origin);
    // gzip accepted; httplib transparently decompresses the response
    httplib::Headers headers = {{"User-Agent", cfg_.user_agent},
                                {"Accept-Encoding", "gzip, deflate"}};

    auto res = cli.Get(parts.path, headers);
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;  // retryable
    }
    if (res->status >= 200 && res->status < 300) {
      if (res->body.empty()) {
        last_error = "empty response body";
        continue;
      }
      RawPage page{url, utc_now_iso(), res->body, false};
      std::string content_type = res->get_header_value("Content-Type");
      {
        std::lock_guard<std::mutex> lock(impl_->cache_mu);
        impl_->cache.put(page, res->status, content_type);
      }
      return {std::move(page), std::nullopt};
    }
    last_error = "HTTP " + std::to_string(res->status);
    if (res->status >= 400 && res->status < 500)
      return {std::nullopt, FetchError{url, last_error}};  // permanent
  }
  return {std::nullopt, FetchError{url, last_error + " after " +
                                            std::to_string(cfg_.max_retries + 1) + " attempts"}};
}

std::vector<FetchResult> Fetcher::fetch(const FetchPlan& plan) {
  std::vector<FetchResult> results(plan.pages.size());
  if (plan.pages.empty()) return results;

  size_t workers = size_t(std::max(1, cfg_.parallelism));
  workers = std::min(workers, plan.pages.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < plan.pages.size(); i = next.fetch_add(1))
      results[i] = fetch_one(plan.pages[i].url);
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace afdkit
