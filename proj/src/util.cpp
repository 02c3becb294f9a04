#include "afdkit/util.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>

#include "afdkit/date.hpp"
#include "afdkit/errors.hpp"

namespace afdkit {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> split_tokens(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) out.emplace_back(s.substr(b, i - b));
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string utc_now_iso() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

UrlParts split_url(const std::string& url) {
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw MalformedUrl("not an absolute URL: " + url);
  std::string scheme = to_lower(url.substr(0, scheme_end));
  if (scheme != "http" && scheme != "https")
    throw MalformedUrl("unsupported scheme in URL: " + url);

  size_t host_begin = scheme_end + 3;
  size_t frag = url.find('#', host_begin);
  std::string fragment = frag == std::string::npos ? "" : url.substr(frag + 1);
  std::string no_frag = frag == std::string::npos ? url : url.substr(0, frag);

  size_t path_begin = no_frag.find('/', host_begin);
  UrlParts parts;
  if (path_begin == std::string::npos) {
    parts.origin = scheme + "://" + to_lower(no_frag.substr(host_begin));
    parts.path = "/";
  } else {
    parts.origin = scheme + "://" + to_lower(no_frag.substr(host_begin, path_begin - host_begin));
    parts.path = no_frag.substr(path_begin);
  }
  if (parts.origin == scheme + "://") throw MalformedUrl("missing host in URL: " + url);
  parts.fragment = fragment;
  return parts;
}

std::string canonical_url(const std::string& url) {
  UrlParts parts = split_url(trim(url));
  std::string origin = parts.origin;
  if (starts_with(origin, "http://") && ends_with(origin, ":80"))
    origin = origin.substr(0, origin.size() - 3);
  else if (starts_with(origin, "https://") && ends_with(origin, ":443"))
    origin = origin.substr(0, origin.size() - 4);
  return origin + parts.path;
}

// --- date.hpp ---

Date parse_date(const std::string& iso) {
  int y = 0;
  unsigned m = 0, d = 0;
  char dash1 = 0, dash2 = 0, extra = 0;
  int n = std::sscanf(iso.c_str(), "%d%c%u%c%u%c", &y, &dash1, &m, &dash2, &d, &extra);
  if (n != 5 || dash1 != '-' || dash2 != '-')
    throw PreconditionViolation("malformed date (want YYYY-MM-DD): \"" + iso + "\"");
  Date date{y, m, d};
  if (!date.ok()) throw PreconditionViolation("not a calendar date: \"" + iso + "\"");
  return date;
}

std::string to_iso(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", d.year, d.month, d.day);
  return buf;
}

static const char* kMonthNames[12] = {"January",   "February", "March",    "April",
                                      "May",       "June",     "July",     "August",
                                      "September", "October",  "November", "December"};

std::string month_name(unsigned month) {
  if (month < 1 || month > 12) throw PreconditionViolation("month out of range");
  return kMonthNames[month - 1];
}

unsigned month_from_name(const std::string& name) {
  for (unsigned i = 0; i < 12; ++i)
    if (name == kMonthNames[i]) return i + 1;
  return 0;
}

}  // namespace afdkit
