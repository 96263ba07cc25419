// Copyright 2026 The crheat Authors
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

namespace crheat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateState : public Error {
public:
    using Error::Error;
};

class NonHermitian : public Error {
public:
    using Error::Error;
};

/// A model or config parameter is out of range; `field()` names it.
class InvalidParameter : public Error {
public:
    InvalidParameter(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Base for failures of a numerical method (integrator, solver, invariant checks).
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class StepUnderflow : public NumericalFailure {
public:
    StepUnderflow(double time_reached, const std::string& what)
        : NumericalFailure(what), time_reached_(time_reached) {}
    double time_reached() const noexcept { return time_reached_; }

private:
    double time_reached_;
};

class StepTooLarge : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class SingularSystem : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class ResidualFailure : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class InvariantViolation : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace crheat
