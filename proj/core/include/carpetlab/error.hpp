#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace carpetlab {

enum class ErrorCode {
  ParseError,
  EmptyDigits,
  DigitOutOfRange,
  BadExponent,
  DomainError,
  Overflow,
  WordTooShort,
  EmptyWord,
  SymbolOutOfRange,
  UnoccupiedRowSymbol,
  UnnormalizedMeasure,
  SupportMismatch,
  ZeroMassCell,
  ZeroMassRegion,
  InsufficientLevels,
  AxisParallelLine,
  CellBudgetExceeded,
  InsufficientData,
  EmptySlice,
  AtomExhaustion,
  BlockTooDeep,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> step = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// Orbit step at which a scenery run failed, when applicable.
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> step_;
};

}  // namespace carpetlab
