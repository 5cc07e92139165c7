#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace torus_nbc {

enum class ErrorCode {
  kDimensionTooSmall,
  kOverflow,
  kParseError,
  kInvalidVertex,
  kNotAdjacentLayer,
  kAxisOutOfRange,
  kVertexDead,
  kEmptyTargetSet,
  kSameVertex,
  kUnsupportedMesh,
  kPreconditionViolated,
  kLayersNotAdjacent,
  kBudgetExceeded,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; `code()` tells the
// callers (and the CLI exit-code mapping) which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Mesh literal syntax error; `position` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorCode::kParseError,
              message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Raised by the exhaustive searches when the next level would exceed the
// configured subset cap. Carries how far the search got.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t levels_completed, std::uint64_t subsets_examined,
                 std::uint64_t next_level_subsets, std::uint64_t budget)
      : Error(ErrorCode::kBudgetExceeded,
              "level " + std::to_string(levels_completed + 1) + " needs " +
                  std::to_string(next_level_subsets) +
                  " subsets, budget is " + std::to_string(budget) + " (" +
                  std::to_string(subsets_examined) +
                  " examined over " + std::to_string(levels_completed) +
                  " completed levels)"),
        levels_completed_(levels_completed),
        subsets_examined_(subsets_examined) {}

  std::size_t levels_completed() const noexcept { return levels_completed_; }
  std::uint64_t subsets_examined() const noexcept { return subsets_examined_; }

 private:
  std::size_t levels_completed_;
  std::uint64_t subsets_examined_;
};

}  // namespace torus_nbc
