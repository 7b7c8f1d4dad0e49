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

#include "qmem/errors.hpp"

#include <sstream>

namespace qmem {

namespace {

std::string stiffness_message(const std::string &control, double peak_rate, double dt, double required_dt) {
    std::ostringstream m;
    m.precision(4);
    m << "control '" << control << "' peaks at |" << control << "| = " << peak_rate << "; dt = " << dt
      << " is too coarse, need dt <= " << required_dt;
    return m.str();
}

}  // namespace

StiffnessError::StiffnessError(std::string control, double peak_rate, double dt, double required_dt)
    : Error(stiffness_message(control, peak_rate, dt, required_dt)),
      control_(std::move(control)),
      peak_rate_(peak_rate),
      dt_(dt),
      required_dt_(required_dt) {}

}  // namespace qmem
