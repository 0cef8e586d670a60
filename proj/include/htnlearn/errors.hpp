#pragma once

#include <stdexcept>
#include <string>

namespace htnlearn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexical/syntactic HDDL errors, with 1-based source position.
struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Schema violations: undeclared predicates/tasks/types, arity mismatches...
struct ValidationError : Error {
  using Error::Error;
};

struct UnboundVariableError : Error {
  using Error::Error;
};

struct InapplicableActionError : Error {
  using Error::Error;
};

struct NotDecomposableError : Error {
  using Error::Error;
};

struct InconsistentSamplesError : Error {
  using Error::Error;
};

struct UnknownLabelError : Error {
  using Error::Error;
};

struct EmptyNodeSetError : Error {
  using Error::Error;
};

struct UncoverableInstanceError : Error {
  using Error::Error;
};

struct NoObservationError : Error {
  using Error::Error;
};

struct DeadEndError : Error {
  using Error::Error;
};

struct GenerationExhaustedError : Error {
  using Error::Error;
};

struct UnknownBenchmarkError : Error {
  using Error::Error;
};

struct CountMismatchError : Error {
  using Error::Error;
};

}  // namespace htnlearn
