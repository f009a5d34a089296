/*
 * Copyright 2026 The tailcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace tailcheck {

// Values double as process exit codes for the CLI.
enum class ErrorKind : int {
    Usage = 1,
    Io = 2,
    Invariant = 3,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

// Bad configuration, bad table/stopword resources, bad command line.
class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

// Unreadable or inconsistent input, unwritable output, sidecar protocol failures.
class IoError : public Error {
  public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class InvariantError : public Error {
  public:
    explicit InvariantError(const std::string& what) : Error(ErrorKind::Invariant, what) {}
};

} // namespace tailcheck
