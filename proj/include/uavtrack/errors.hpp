// Copyright 2026 The uavtrack Authors
//
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

#pragma once

#include <stdexcept>
#include <string>

namespace uavtrack
{

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Matrix square root or innovation inversion failed.
class NumericalError : public Error
{
public:
  using Error::Error;
};

// A value does not fit the representable range of a codec field, or a
// lookup time is outside a trace.
class RangeError : public Error
{
public:
  using Error::Error;
};

// Payload bytes do not match the expected wire format.
class FormatError : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  ParseError(const std::string& what, std::size_t line)
    : Error(what + " (line " + std::to_string(line) + ")"), message_(what), line_(line)
  {
  }

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  // Message without the line suffix.
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
  std::string message_;
  std::size_t line_;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

}  // namespace uavtrack
