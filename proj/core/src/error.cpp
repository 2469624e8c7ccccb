#include "carpetlab/error.hpp"

namespace carpetlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyDigits: return "EmptyDigits";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::WordTooShort: return "WordTooShort";
    case ErrorCode::EmptyWord: return "EmptyWord";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::UnoccupiedRowSymbol: return "UnoccupiedRowSymbol";
    case ErrorCode::UnnormalizedMeasure: return "UnnormalizedMeasure";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::ZeroMassCell: return "ZeroMassCell";
    case ErrorCode::ZeroMassRegion: return "ZeroMassRegion";
    case ErrorCode::InsufficientLevels: return "InsufficientLevels";
    case ErrorCode::AxisParallelLine: return "AxisParallelLine";
    case ErrorCode::CellBudgetExceeded: return "CellBudgetExceeded";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::EmptySlice: return "EmptySlice";
    case ErrorCode::AtomExhaustion: return "AtomExhaustion";
    case ErrorCode::BlockTooDeep: return "BlockTooDeep";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> step)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      step_(step) {}

}  // namespace carpetlab
