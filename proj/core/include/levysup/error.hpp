/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#pragma once

#include <stdexcept>
#include <string>

namespace levysup {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (x <= 0 for a tail, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole, e.g. zeta(1).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Model or parameter set violating a structural invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The operation is not defined for this family or zooming-in class.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class GridSpecError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Numerical integral that did not reach its tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double error_estimate)
        : Error(what + " (error estimate " + std::to_string(error_estimate) + ")"),
          error_estimate_(error_estimate) {}

    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

/// Not enough usable Monte Carlo data for a fit (zero probabilities, too few grid points).
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

}  // namespace levysup
