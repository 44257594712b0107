#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lifeaup {

// Precondition or argument violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input rejected because the operation is deliberately restricted
// (e.g. reachability on stochastic MDPs).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class GenerationError : public std::runtime_error {
 public:
  GenerationError(std::uint64_t seed, const std::string& what)
      : std::runtime_error(what + " (seed " + std::to_string(seed) + ")"),
        seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what), key_(key) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace lifeaup
