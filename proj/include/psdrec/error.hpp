// Copyright 2026 The psdrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSDREC_ERROR_HPP
#define PSDREC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psdrec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// An iterative routine hit its round cap before meeting tolerance.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string &what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {
    }
    double residual() const noexcept {
        return residual_;
    }

private:
    double residual_;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {
    }
    std::size_t line() const noexcept {
        return line_;
    }

private:
    std::size_t line_;
};

class NotSimultaneouslyDiagonalizable : public Error {
public:
    using Error::Error;
};

class RecoveryFailed : public Error {
public:
    using Error::Error;
};

}  // namespace psdrec

#endif  // PSDREC_ERROR_HPP
