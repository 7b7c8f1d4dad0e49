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

#ifndef QMEMCTL_APP_HPP
#define QMEMCTL_APP_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmem/errors.hpp"
#include "qmem/metrology.hpp"
#include "qmem/pulse_design.hpp"

namespace qmemctl {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3 };

class ConfigError : public qmem::Error {
   public:
    using qmem::Error::Error;
};

/// One write/hold/read experiment. Defaults reproduce the lossless variable-coupling run
/// with t0 = -5, T = 5, a0 = 1.
struct ScenarioConfig {
    int case_id = 1;
    double t0 = -5.0;
    double T_hold = 5.0;
    std::complex<double> a0 = 1.0;
    double gamma_over_kappa = 0.0;
    double n_bar = 20.0;
    /// Unset picks 1e-3 for case 1 and 1.25e-5 for case 2.
    std::optional<double> dt;
    std::string output_dir = "qmem_out";
    qmem::HoldOptions hold;
    /// Rows between trajectory CSV samples; 0 = about one row per 1e-3 time units.
    std::size_t stride = 0;

    double step() const;
    std::size_t output_stride() const;
    void validate() const;
};

inline constexpr const char *kSweepAxes[] = {"T_hold", "gamma_over_kappa", "n_bar"};

struct SweepConfig {
    ScenarioConfig base;
    std::string axis;
    std::vector<double> values;

    void validate() const;
};

/// Applies one `key = value` setting; throws ConfigError for unknown keys or bad values.
void apply_setting(ScenarioConfig &cfg, const std::string &key, const std::string &value);
/// Reads `key = value` lines ('#' starts a comment). sweep_axis / sweep_values fill the sweep.
void parse_config(std::istream &in, ScenarioConfig &cfg, SweepConfig *sweep = nullptr);
void load_config_file(const std::string &path, ScenarioConfig &cfg, SweepConfig *sweep = nullptr);
std::vector<double> parse_value_list(const std::string &text);
void set_axis(ScenarioConfig &cfg, const std::string &axis, double value);
double axis_value(const ScenarioConfig &cfg, const std::string &axis);

struct SummaryRow {
    ScenarioConfig config;
    double sqrt_eta = 0;
    double eta = 0;
    double vacuum_residual = 0;
    qmem::FidelityReport fidelity{};
    std::string error;
    int exit_code = kOk;
};

/// Simulates a scenario and evaluates it without touching the filesystem.
SummaryRow evaluate_scenario(const ScenarioConfig &cfg);

void write_summary_header(std::ostream &out);
void write_summary_row(std::ostream &out, const SummaryRow &row);

/// Writes trajectory.csv, schedule.csv, summary.csv and fidelity.txt into cfg.output_dir.
int run_scenario(const ScenarioConfig &cfg, std::ostream &log);

/// Evaluates every axis value (concurrently, `workers` threads; 0 = QMEM_WORKERS or hardware)
/// and writes sweep.csv sorted by axis value.
int run_sweep(const SweepConfig &cfg, std::ostream &log, unsigned workers = 0);

/// Prints PASS/FAIL lines for every row of a summary CSV.
int verdict(std::istream &summary_csv, std::ostream &out);

int run_oracle(double eta, int n_m, std::size_t samples, std::uint64_t seed, std::ostream &out,
               unsigned workers = 0);

/// Worker count from QMEM_WORKERS, falling back to hardware concurrency.
unsigned default_workers();

/// Maps a caught exception to the CLI exit code.
int exit_code_for(const std::exception &e) noexcept;

}  // namespace qmemctl

#endif
