#pragma once

#include <cassert>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace fivepoint {

enum class ErrorCode {
  kDepthSingular,
  kDegenerateAffine,
  kDegeneratePointSet,
  kEpipoleCoincidence,
  kNoRealRoot,
  kAllCoefficientsZero,
  kRankDefect,
  kCollinearSample,
  kRotationDegenerate,
  kDegenerateSample,
  kNoValidCandidate,
  kNotEnoughPoints,
  kNoModelFound,
  kRetryExhausted,
  kInvalidArgument,
  kParseError,
  kIoError,
};

// Stable machine-readable name, e.g. "RankDefect".
std::string_view ErrorCodeName(ErrorCode code);

struct Error {
  ErrorCode code;
  std::string message;
};

// Either a value or an Error. Solvers return this instead of throwing so
// that rejected RANSAC samples stay cheap.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : storage_(std::move(value)) {}  // NOLINT
  Result(Error error) : storage_(std::move(error)) {}  // NOLINT
  Result(ErrorCode code) : storage_(Error{code, {}}) {}  // NOLINT

  bool ok() const { return std::holds_alternative<T>(storage_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    assert(ok());
    return std::get<T>(storage_);
  }
  T& value() & {
    assert(ok());
    return std::get<T>(storage_);
  }
  T&& value() && {
    assert(ok());
    return std::get<T>(std::move(storage_));
  }

  const Error& error() const {
    assert(!ok());
    return std::get<Error>(storage_);
  }
  ErrorCode code() const { return error().code; }

  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

 private:
  std::variant<T, Error> storage_;
};

}  // namespace fivepoint
