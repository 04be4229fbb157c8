#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace disctower {

enum class ErrorKind {
  ContextMismatch,
  NotAUnit,
  SingularMatrix,
  NotMonic,
  IndexOutOfRange,
  NotRegular,
  AmbiguousZero,
  SearchExhausted,
  NonzeroConstantTerm,
  InvolvesX1,
  ZeroGerm,
  InconclusivePrecision,
  DerivativeNotUnit,
  SeedNotApproximate,
  NotDivisible,
  LeadingCoefficientZero,
  NoConvergence,
  ParseError,
  UndeclaredIdentifier,
  InvalidArgument,
  UnknownSubcommand,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::AmbiguousZero: return "AmbiguousZero";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::InvolvesX1: return "InvolvesX1";
    case ErrorKind::ZeroGerm: return "ZeroGerm";
    case ErrorKind::InconclusivePrecision: return "InconclusivePrecision";
    case ErrorKind::DerivativeNotUnit: return "DerivativeNotUnit";
    case ErrorKind::SeedNotApproximate: return "SeedNotApproximate";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::LeadingCoefficientZero: return "LeadingCoefficientZero";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UndeclaredIdentifier: return "UndeclaredIdentifier";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnknownSubcommand: return "UnknownSubcommand";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can report it in-band.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures remember where the first offending token sits (1-based).
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, int line, int column, const std::string& message)
      : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace disctower
