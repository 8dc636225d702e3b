// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace abridge {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied malformed input (bad encoding, empty document, bad file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked before its precondition holds.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A request field is out of range or otherwise invalid.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Include and exclude constraints overlap.
class ConflictError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A prompt template could not be rendered (missing bindings, unknown template).
class TemplateError : public Error {
 public:
  using Error::Error;
};

/// The language-model provider failed after all retries.
class ProviderError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

/// The provider answered, but not in the expected shape (or the playbook had no rule).
class ProtocolError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

/// The extraction response held no parsable triple.
class ExtractionEmptyError : public ProviderError {
 public:
  ExtractionEmptyError(const std::string& message, std::string raw_response)
      : ProviderError(message), raw_response_(std::move(raw_response)) {}

  const std::string& raw_response() const noexcept { return raw_response_; }

 private:
  std::string raw_response_;
};

/// A summary has no content once parsed or tokenized.
class EmptySummaryError : public Error {
 public:
  using Error::Error;
};

}  // namespace abridge
