#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace skillgraph {

enum class ErrorKind {
  MalformedTriple,
  DanglingReference,
  MissingIscoMapping,
  BadCode,
  EmptyTable,
  OutOfRange,
  DuplicateSoc,
  UnknownOccupation,
  MalformedRecord,
  UnmappedIsco,
  EmptyGraph,
  InvalidEdgeIndex,
  IoFailure,
  ConsistencyViolation,
  SchemaMismatch,
  ParseFailure,
  ConfigInvalid,
  StageInputMissing,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedTriple: return "MalformedTriple";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::MissingIscoMapping: return "MissingIscoMapping";
    case ErrorKind::BadCode: return "BadCode";
    case ErrorKind::EmptyTable: return "EmptyTable";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DuplicateSoc: return "DuplicateSoc";
    case ErrorKind::UnknownOccupation: return "UnknownOccupation";
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::UnmappedIsco: return "UnmappedIsco";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::InvalidEdgeIndex: return "InvalidEdgeIndex";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::ConsistencyViolation: return "ConsistencyViolation";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::ParseFailure: return "ParseFailure";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::StageInputMissing: return "StageInputMissing";
  }
  return "Unknown";
}

/// Process exit status for the CLI: 2 config, 3 input, 4 consistency.
constexpr int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConfigInvalid:
      return 2;
    case ErrorKind::ConsistencyViolation:
    case ErrorKind::InvalidEdgeIndex:
      return 4;
    default:
      return 3;
  }
}

/// The single exception type thrown by the library. `line()` is 1-based and
/// zero when the failure is not tied to an input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0)
      : std::runtime_error(format(kind, message, line)),
        kind_(kind),
        line_(line),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(ErrorKind kind, const std::string& message,
                            std::size_t line) {
    std::string out(to_string(kind));
    if (line != 0) out += " at line " + std::to_string(line);
    out += ": ";
    out += message;
    return out;
  }

  ErrorKind kind_;
  std::size_t line_;
  std::string detail_;
};

}  // namespace skillgraph
