#pragma once

#include <stdexcept>
#include <string>

namespace quatrace {

// Exit-code-carrying errors. The CLI maps exit_code straight to the process
// exit status; library callers can treat these as ordinary exceptions.
struct Error : std::runtime_error {
  int exit_code;
  Error(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

struct ParseError : Error {  // malformed expression / permutation / JSON input
  explicit ParseError(const std::string& msg) : Error(2, msg) {}
};

struct CapError : Error {  // enumeration size exceeds the configured cap
  explicit CapError(const std::string& msg) : Error(3, msg) {}
};

struct SemanticError : Error {  // well-formed input that violates a contract
  explicit SemanticError(const std::string& msg) : Error(4, msg) {}
};

struct BracketError : Error {  // permutation pair admits no bracket diagram
  explicit BracketError(const std::string& msg) : Error(5, msg) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& msg) : Error(1, msg) {}
};

#define QT_CHECK(cond, msg)                                              \
  do {                                                                   \
    if (!(cond)) throw ::quatrace::InternalError(std::string("internal check failed: ") + (msg)); \
  } while (0)

#define QT_INPUT(cond, msg)                                   \
  do {                                                        \
    if (!(cond)) throw ::quatrace::SemanticError(msg);        \
  } while (0)

}  // namespace quatrace
