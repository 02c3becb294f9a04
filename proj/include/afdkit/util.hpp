#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace afdkit {

std::string to_lower(std::string_view s);

std::string trim(std::string_view s);

// Collapses every run of whitespace to a single space and trims the ends.
std::string collapse_whitespace(std::string_view s);

// Whitespace-delimited tokens.
std::vector<std::string> split_tokens(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Hex-encoded SHA-256 of the input bytes.
std::string sha256_hex(std::string_view data);

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_now_iso();

// Splits an absolute http(s) URL into origin ("http://host:port") and the
// path+query remainder; throws MalformedUrl if the scheme is missing.
struct UrlParts {
  std::string origin;
  std::string path;      // includes query, "/" when absent
  std::string fragment;  // without '#', empty when absent
};
UrlParts split_url(const std::string& url);

// Canonical form used for cache keying: lowercased scheme/host, default port
// stripped, fragment dropped.
std::string canonical_url(const std::string& url);

}  // namespace afdkit
