#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "momentcurve/exactmath.hpp"

namespace mc {

// Malformed input or a violated precondition (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The numeric extraction path could not produce a verified measure
// (CLI exit code 3).
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Witness {
  QuadScalar t, u;
};

struct SolveReport {
  bool exists = false;
  std::optional<std::size_t> minimal_atoms;
  std::optional<std::size_t> atom_upper_bound;
  std::optional<Witness> witness;
  std::string clause;
  std::map<std::string, std::string> diagnostics;

  void note(const std::string& key, const std::string& value) { diagnostics[key] = value; }
  void note(const std::string& key, const Rat& value) { diagnostics[key] = to_string(value); }
  void note(const std::string& key, std::size_t value) { diagnostics[key] = std::to_string(value); }
  void note(const std::string& key, bool value) { diagnostics[key] = value ? "true" : "false"; }
};

}  // namespace mc
