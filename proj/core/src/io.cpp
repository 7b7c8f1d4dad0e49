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

#include "qmem/io.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qmem/errors.hpp"

namespace qmem {

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) {
        throw Error("number formatting failed");
    }
    return std::string(buf, end);
}

void write_csv(std::ostream &out, const Envelope &e) {
    out << "t,re,im\n";
    for (std::size_t k = 0; k < e.size(); ++k) {
        out << format_number(e.grid().at(k)) << ',' << format_number(e[k].real()) << ','
            << format_number(e[k].imag()) << '\n';
    }
}

Envelope read_envelope_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,re,im", 0) != 0) {
        throw InvalidArgument("envelope CSV must start with the header t,re,im");
    }
    std::vector<double> ts;
    std::vector<cplx> samples;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        double v[3];
        const char *p = line.data();
        const char *end = line.data() + line.size();
        for (int i = 0; i < 3; ++i) {
            auto [next, ec] = std::from_chars(p, end, v[i]);
            if (ec != std::errc{} || (i < 2 && (next == end || *next != ','))) {
                throw InvalidArgument("malformed envelope CSV row: " + line);
            }
            p = next + 1;
        }
        ts.push_back(v[0]);
        samples.emplace_back(v[1], v[2]);
    }
    if (ts.size() < 2) {
        throw InvalidArgument("envelope CSV needs at least two rows");
    }
    const double dt = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
    TimeGrid grid(ts.front(), dt, ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (std::abs(ts[k] - grid.at(k)) > 1e-6 * dt) {
            throw InvalidArgument("envelope CSV is not on a uniform grid");
        }
    }
    return Envelope(grid, std::move(samples));
}

namespace {

// Every stride-th row plus the final one.
template <class Row>
void strided(std::size_t n, std::size_t stride, Row &&row) {
    if (stride == 0) {
        throw InvalidArgument("CSV stride must be positive");
    }
    for (std::size_t k = 0; k < n; k += stride) {
        row(k);
    }
    if ((n - 1) % stride != 0) {
        row(n - 1);
    }
}

}  // namespace

void write_csv(std::ostream &out, const ControlSchedule &s, std::size_t stride) {
    out << "t,g,delta,Delta,phase\n";
    strided(s.grid().size(), stride, [&](std::size_t k) {
        out << format_number(s.grid().at(k)) << ',' << format_number(s.g()[k]) << ','
            << format_number(s.delta()[k]) << ',' << format_number(s.Delta()[k]) << ','
            << phase_name(s.phase_at(k)) << '\n';
    });
}

void write_csv(std::ostream &out, const ProtocolResult &r, std::size_t stride) {
    out << "t,re_Ain,im_Ain,re_a,im_a,re_b,im_b,re_Aout,im_Aout,g,delta,Delta\n";
    strided(r.schedule.grid().size(), stride, [&](std::size_t k) {
        const auto c = [&](cplx z) { out << ',' << format_number(z.real()) << ',' << format_number(z.imag()); };
        out << format_number(r.schedule.grid().at(k));
        c(r.A_in[k]);
        c(r.trajectory.a[k]);
        c(r.trajectory.b[k]);
        c(r.A_out[k]);
        out << ',' << format_number(r.schedule.g()[k]) << ',' << format_number(r.schedule.delta()[k]) << ','
            << format_number(r.schedule.Delta()[k]) << '\n';
    });
}

namespace {

const char *pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

void write_csv(std::ostream &out, const FidelityReport &f) {
    out << "eta,n_bar,F_coherent,F_classical_coherent,eta_threshold,F1,F2,clone_bound_1,clone_bound_2,"
           "verdict_coherent,verdict_1,verdict_2\n";
    out << format_number(f.eta) << ',' << format_number(f.n_bar) << ',' << format_number(f.F_coherent) << ','
        << format_number(f.F_classical_coherent) << ',' << format_number(f.eta_threshold) << ','
        << format_number(f.F1) << ',' << format_number(f.F2) << ',' << format_number(f.clone_bound_1) << ','
        << format_number(f.clone_bound_2) << ',' << pass_fail(f.verdicts.coherent) << ','
        << pass_fail(f.verdicts.bounded_1) << ',' << pass_fail(f.verdicts.bounded_2) << '\n';
}

void write_table(std::ostream &out, const FidelityReport &f) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4);
    const auto line = [&](const char *name, double value, const char *bound_name, double bound, const char *verdict) {
        s << std::left << std::setw(28) << name << std::right << std::setw(9) << value;
        if (bound_name != nullptr) {
            s << "   " << std::left << std::setw(22) << bound_name << std::right << std::setw(9) << bound;
            if (verdict != nullptr) {
                s << "   " << verdict;
            }
        }
        s << '\n';
    };
    line("efficiency eta_M", f.eta, "QM threshold eta_M >", f.eta_threshold, nullptr);
    line("amplitude sqrt(eta_M)", std::sqrt(f.eta), nullptr, 0, nullptr);
    line("mean photon number n_bar", f.n_bar, nullptr, 0, nullptr);
    line("coherent fidelity F", f.F_coherent, "classical bound F^c", f.F_classical_coherent,
         pass_fail(f.verdicts.coherent));
    line("bounded fidelity F_1", f.F1, "cloning bound F^b_1", f.clone_bound_1, pass_fail(f.verdicts.bounded_1));
    line("bounded fidelity F_2", f.F2, "cloning bound F^b_2", f.clone_bound_2, pass_fail(f.verdicts.bounded_2));
    out << s.str();
}

}  // namespace qmem
