#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace l0qp {

enum class ErrorKind {
  kMalformedInstance,
  kNotSymmetricStorage,
  kNotDiagonallyDominant,
  kInvalidPermutation,
  kNoObservations,
  kParseError,
  kNotPositiveDefinite,
  kSingularSupport,
  kSegmentNotPD,
  kInfeasiblePair,
  kNotBipartite,
  kHasCycle,
  kTooLarge,
  kInvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedInstance: return "MalformedInstance";
    case ErrorKind::kNotSymmetricStorage: return "NotSymmetricStorage";
    case ErrorKind::kNotDiagonallyDominant: return "NotDiagonallyDominant";
    case ErrorKind::kInvalidPermutation: return "InvalidPermutation";
    case ErrorKind::kNoObservations: return "NoObservations";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::kSingularSupport: return "SingularSupport";
    case ErrorKind::kSegmentNotPD: return "SegmentNotPD";
    case ErrorKind::kInfeasiblePair: return "InfeasiblePair";
    case ErrorKind::kNotBipartite: return "NotBipartite";
    case ErrorKind::kHasCycle: return "HasCycle";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// True for failures caused by the numerics of a well-formed input
/// (singular or indefinite blocks) rather than by the input itself.
inline bool is_numerical(ErrorKind kind) {
  return kind == ErrorKind::kNotPositiveDefinite ||
         kind == ErrorKind::kSingularSupport ||
         kind == ErrorKind::kSegmentNotPD;
}

// Every failure in the library is reported through this type. `index` carries
// the offending variable (0-based) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace l0qp
