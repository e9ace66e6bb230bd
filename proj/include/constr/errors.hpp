/*
 * Copyright 2026 The ConStR Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CONSTR_ERRORS_HPP
#define CONSTR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace constr {

/// Raised for malformed or inconsistent user input: unknown states or
/// agents, joint actions that are not available, mismatched arguments.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in a model, relation or formula text. Line and column are
/// 1-based.
class ParseError : public InputError {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line), column_(column), reason_(what) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& reason() const { return reason_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

} // namespace constr

#endif // CONSTR_ERRORS_HPP
