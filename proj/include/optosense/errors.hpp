// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPTOSENSE_ERRORS_HPP
#define OPTOSENSE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optosense {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on physical inputs was violated (negative mass, zero rate, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A pole or vanishing denominator was hit. `value` is the offending
/// frequency or dimensionless parameter, whichever the thrower names.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double value)
      : Error(what), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Iterative or dense linear-algebra routine failed.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent scenario configuration. Line and column are
/// 1-based; zero means "not tied to a location".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0,
              std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }
  std::size_t line_;
  std::size_t column_;
};

}  // namespace optosense

#endif  // OPTOSENSE_ERRORS_HPP
