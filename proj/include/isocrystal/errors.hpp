/*
   Copyright 2026 The isocrystal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ISOCRYSTAL_ERRORS_HPP
#define ISOCRYSTAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isoc {

enum class ErrorKind {
    parse,
    domain,
    not_implemented_place,
    non_unit,
    singular_matrix,
    precision_exhausted,
    non_stabilizing,
    descent_failure,
};

/// Base of every error raised by the library. The kind is what the C API
/// turns into a status code.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

class ParseError : public Error {
   public:
    explicit ParseError(const std::string& w) : Error(ErrorKind::parse, w) {}
};

class DomainError : public Error {
   public:
    explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};

class NotImplementedPlace : public Error {
   public:
    explicit NotImplementedPlace(const std::string& w) : Error(ErrorKind::not_implemented_place, w) {}
};

class NonUnit : public Error {
   public:
    explicit NonUnit(const std::string& w) : Error(ErrorKind::non_unit, w) {}
};

class SingularMatrix : public Error {
   public:
    explicit SingularMatrix(const std::string& w) : Error(ErrorKind::singular_matrix, w) {}
};

class PrecisionExhausted : public Error {
   public:
    explicit PrecisionExhausted(const std::string& w) : Error(ErrorKind::precision_exhausted, w) {}
};

class NonStabilizing : public Error {
   public:
    explicit NonStabilizing(const std::string& w) : Error(ErrorKind::non_stabilizing, w) {}
};

class DescentFailure : public Error {
   public:
    explicit DescentFailure(const std::string& w) : Error(ErrorKind::descent_failure, w) {}
};

}  // namespace isoc

#endif
