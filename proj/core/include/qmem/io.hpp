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

#ifndef QMEM_IO_HPP
#define QMEM_IO_HPP

#include <cstddef>
#include <iosfwd>
#include <string>

#include "qmem/dynamics.hpp"
#include "qmem/metrology.hpp"
#include "qmem/pulse_design.hpp"
#include "qmem/signal.hpp"

namespace qmem {

/// Shortest round-trip decimal for v, locale independent.
std::string format_number(double v);

// Envelope: t,re,im
void write_csv(std::ostream &out, const Envelope &e);
/// Reads the t,re,im layout back. The step is taken from the first two rows; rows must be uniform.
Envelope read_envelope_csv(std::istream &in);

// Schedule: t,g,delta,Delta,phase
void write_csv(std::ostream &out, const ControlSchedule &s, std::size_t stride = 1);

// Protocol: t,re_Ain,im_Ain,re_a,im_a,re_b,im_b,re_Aout,im_Aout,g,delta,Delta
void write_csv(std::ostream &out, const ProtocolResult &r, std::size_t stride = 1);

void write_csv(std::ostream &out, const FidelityReport &f);
/// Aligned quantity/value/bound/verdict table.
void write_table(std::ostream &out, const FidelityReport &f);

}  // namespace qmem

#endif
