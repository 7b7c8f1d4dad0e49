// Copyright 2026 The qmem Authors
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

#ifndef QMEM_ERRORS_HPP
#define QMEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qmem {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid, out-of-range rate, ...).
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// The input carries no signal where one is required (zero norm, zero input amplitude).
class DegenerateInput : public Error {
   public:
    using Error::Error;
};

/// The input is outside the class a designer can handle (complex or sign-changing envelopes).
class UnsupportedInput : public Error {
   public:
    using Error::Error;
};

/// No real control waveform reproduces the requested envelope.
class DesignInfeasible : public Error {
   public:
    using Error::Error;
};

/// The fixed step is too coarse for the fastest rate in a schedule.
class StiffnessError : public Error {
   public:
    StiffnessError(std::string control, double peak_rate, double dt, double required_dt);

    const std::string &control() const noexcept { return control_; }
    double peak_rate() const noexcept { return peak_rate_; }
    double dt() const noexcept { return dt_; }
    double required_dt() const noexcept { return required_dt_; }

   private:
    std::string control_;
    double peak_rate_;
    double dt_;
    double required_dt_;
};

}  // namespace qmem

#endif
