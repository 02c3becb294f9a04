#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace afdkit {

// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (empty text, missing field, ...).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class InvalidDateRange : public Error {
 public:
  using Error::Error;
};

class MalformedUrl : public Error {
 public:
  using Error::Error;
};

class CacheIoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string url, const std::string& reason)
      : Error("parse error for " + url + ": " + reason), url_(std::move(url)) {}
  const std::string& url() const { return url_; }

 private:
  std::string url_;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(std::string raw)
      : Error("unknown outcome label: \"" + raw + "\""), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class SchemaVersionMismatch : public Error {
 public:
  using Error::Error;
};

class CorruptRecord : public Error {
 public:
  CorruptRecord(const std::string& file, size_t line, const std::string& reason)
      : Error(file + ":" + std::to_string(line) + ": corrupt record: " + reason), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(std::string label)
      : Error("insufficient training data for label \"" + label + "\""), label_(std::move(label)) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class LabelSpaceMismatch : public Error {
 public:
  using Error::Error;
};

class UnparseableResponse : public Error {
 public:
  using Error::Error;
};

class UnknownLabelInPairs : public Error {
 public:
  using Error::Error;
};

class DiscussionNotFound : public Error {
 public:
  DiscussionNotFound(const std::string& url, std::vector<std::string> candidates)
      : Error(make_message(url, candidates)), candidates_(std::move(candidates)) {}
  const std::vector<std::string>& candidates() const { return candidates_; }

 private:
  static std::string make_message(const std::string& url, const std::vector<std::string>& cands) {
    std::string msg = "no matching discussion at " + url;
    if (!cands.empty()) {
      msg += "; candidates:";
      for (const auto& c : cands) msg += " \"" + c + "\"";
    }
    return msg;
  }
  std::vector<std::string> candidates_;
};

class ExplanationUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace afdkit
