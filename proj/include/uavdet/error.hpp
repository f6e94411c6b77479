#ifndef UAVDET_ERROR_HPP_
#define UAVDET_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace uavdet {

// Base of every error the library throws. Callers that only need a
// diagnostic line can catch this and print what().
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed annotation document (names the offending field).
class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownClassError : public Error {
 public:
  using Error::Error;
};

class UnsupportedShapeError : public Error {
 public:
  using Error::Error;
};

// Line-oriented text file with the wrong shape. Carries the 1-based line.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class RatioError : public Error {
 public:
  using Error::Error;
};

class EmptyManifestError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PlanError : public Error {
 public:
  using Error::Error;
};

// Recall is TP / gt_count; raised when gt_count is 0 but detections exist.
class UndefinedRecallError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class AggregationError : public Error {
 public:
  using Error::Error;
};

class PlacementError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace uavdet

#endif  // UAVDET_ERROR_HPP_
