#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "afdkit/date.hpp"

namespace afdkit::testsupport {

// Deterministic synthetic daily log page for a date: same date, same bytes.
// Follows the same markup conventions as the static corpus (archived-div
// wrappers, result phrases, h3 sections, bold votes).
std::string generated_log_page(const Date& date);

// Static corpus page for the date, when one exists (fixtures/corpus).
std::optional<std::string> static_page(const std::filesystem::path& corpus_dir, const Date& date);

}  // namespace afdkit::testsupport
