#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace degen::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInvalidInput = 2,
  kHypothesisViolated = 3,
  kUndetermined = 4,
};

struct Result {
  int code = kOk;
  std::string out;  // report
  std::string err;  // diagnostics
};

// One invocation without the program name, e.g. {"component-group", "--matrix", "[[-3,3],[3,-3]]"}.
// Never throws.
Result run(const std::vector<std::string>& args);

// Splits a batch line into arguments; double and single quotes group words.
// Errors: SyntaxError on an unterminated quote.
std::vector<std::string> split_line(const std::string& line);

// DEGEN_FIELD_LIMIT, or the library default when unset. Errors: InvalidInput.
std::uint64_t field_limit_from_env();

}  // namespace degen::cli
