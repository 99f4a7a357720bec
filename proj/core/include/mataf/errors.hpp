#pragma once

#include <stdexcept>
#include <string>

namespace mataf {

/// Error categories, one per CLI exit code class.
enum class ErrorCategory { config = 2, data = 3, numeric = 4 };

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::data: return "data";
    case ErrorCategory::numeric: return "numeric";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorCategory::numeric, what) {}
};

// config
struct InvalidParameter final : ConfigError { using ConfigError::ConfigError; };
struct BadPalette final : ConfigError { using ConfigError::ConfigError; };
struct UnknownPreset final : ConfigError { using ConfigError::ConfigError; };
struct InvalidScenario final : ConfigError { using ConfigError::ConfigError; };
struct UnknownGate final : ConfigError { using ConfigError::ConfigError; };

// data
struct InsufficientPairs final : DataError { using DataError::DataError; };
struct DegenerateConfiguration final : DataError { using DataError::DataError; };
struct OutOfRange final : DataError { using DataError::DataError; };
struct TooFewKeyframes final : DataError { using DataError::DataError; };
struct TooFewSamples final : DataError { using DataError::DataError; };
struct GateNotCrossed final : DataError { using DataError::DataError; };
struct GridMismatch final : DataError { using DataError::DataError; };
struct EmptyInput final : DataError { using DataError::DataError; };
struct NoOverlap final : DataError { using DataError::DataError; };
struct EmptyReference final : DataError { using DataError::DataError; };
struct EmptyRing final : DataError { using DataError::DataError; };
struct FormatError final : DataError { using DataError::DataError; };

// numeric
struct PointAtInfinity final : NumericError { using NumericError::NumericError; };
struct SingularMap final : NumericError { using NumericError::NumericError; };

}  // namespace mataf
