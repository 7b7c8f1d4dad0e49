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

#include "app.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "qmem/dynamics.hpp"
#include "qmem/io.hpp"

namespace qmemctl {

namespace {

constexpr double kCase1Step = 1e-3;
constexpr double kCase2Step = 1.25e-5;
constexpr double kOutputSpacing = 1e-3;

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string &key, const std::string &text) {
    const std::string t = trim(text);
    double v = 0;
    const char *end = t.data() + t.size();
    auto [p, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc{} || p != end || !std::isfinite(v)) {
        throw ConfigError("'" + key + "' expects a finite number, got '" + text + "'");
    }
    return v;
}

std::complex<double> parse_complex(const std::string &key, const std::string &text) {
    const std::string t = trim(text);
    if (!t.empty() && t.front() == '(') {
        const auto comma = t.find(',');
        if (comma == std::string::npos || t.back() != ')') {
            throw ConfigError("'" + key + "' expects a number or (re,im), got '" + text + "'");
        }
        return {parse_double(key, t.substr(1, comma - 1)), parse_double(key, t.substr(comma + 1, t.size() - comma - 2))};
    }
    return parse_double(key, t);
}

bool is_axis(const std::string &axis) {
    return std::find(std::begin(kSweepAxes), std::end(kSweepAxes), axis) != std::end(kSweepAxes);
}

const char *pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream f(path);
    if (!f) {
        throw ConfigError("cannot write " + path.string());
    }
    return f;
}

}  // namespace

double ScenarioConfig::step() const {
    if (dt) {
        return *dt;
    }
    return case_id == 2 ? kCase2Step : kCase1Step;
}

std::size_t ScenarioConfig::output_stride() const {
    if (stride > 0) {
        return stride;
    }
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(kOutputSpacing / step())));
}

void ScenarioConfig::validate() const {
    if (case_id != 1 && case_id != 2) {
        throw ConfigError("case must be 1 (variable coupling) or 2 (variable detuning)");
    }
    for (double v : {t0, T_hold, a0.real(), a0.imag(), gamma_over_kappa, n_bar, step(), hold.detuning}) {
        if (!std::isfinite(v)) {
            throw ConfigError("all numeric settings must be finite");
        }
    }
    if (T_hold < 0) {
        throw ConfigError("T_hold must be nonnegative");
    }
    if (gamma_over_kappa < 0) {
        throw ConfigError("gamma_over_kappa must be nonnegative");
    }
    if (n_bar < 0) {
        throw ConfigError("n_bar must be nonnegative");
    }
    if (!(step() > 0)) {
        throw ConfigError("dt must be positive");
    }
    if (a0 == std::complex<double>{}) {
        throw ConfigError("a0 must be nonzero to define a retrieval efficiency");
    }
    if (output_dir.empty()) {
        throw ConfigError("output_dir must not be empty");
    }
}

void SweepConfig::validate() const {
    base.validate();
    if (!is_axis(axis)) {
        throw ConfigError("sweep axis must be one of T_hold, gamma_over_kappa, n_bar; got '" + axis + "'");
    }
    if (values.empty()) {
        throw ConfigError("sweep needs at least one value");
    }
}

void apply_setting(ScenarioConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "case") {
        const double c = parse_double(key, value);
        if (c != 1.0 && c != 2.0) {
            throw ConfigError("case must be 1 or 2, got '" + value + "'");
        }
        cfg.case_id = static_cast<int>(c);
    } else if (key == "t0") {
        cfg.t0 = parse_double(key, value);
    } else if (key == "T_hold" || key == "T") {
        cfg.T_hold = parse_double(key, value);
    } else if (key == "a0") {
        cfg.a0 = parse_complex(key, value);
    } else if (key == "gamma_over_kappa" || key == "gamma") {
        cfg.gamma_over_kappa = parse_double(key, value);
    } else if (key == "n_bar" || key == "nbar") {
        cfg.n_bar = parse_double(key, value);
    } else if (key == "dt") {
        cfg.dt = parse_double(key, value);
    } else if (key == "output_dir" || key == "out") {
        cfg.output_dir = trim(value);
    } else if (key == "hold_mode") {
        const std::string m = trim(value);
        if (m == "decoupled") {
            cfg.hold.mode = qmem::HoldOptions::Mode::decoupled;
        } else if (m == "detuned") {
            cfg.hold.mode = qmem::HoldOptions::Mode::detuned;
        } else {
            throw ConfigError("hold_mode must be 'decoupled' or 'detuned'");
        }
    } else if (key == "hold_detuning") {
        cfg.hold.detuning = parse_double(key, value);
    } else if (key == "stride") {
        const double s = parse_double(key, value);
        if (s < 0 || s != std::floor(s)) {
            throw ConfigError("stride must be a nonnegative integer");
        }
        cfg.stride = static_cast<std::size_t>(s);
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

std::vector<double> parse_value_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) {
            throw ConfigError("empty entry in value list '" + text + "'");
        }
        out.push_back(parse_double("values", item));
    }
    if (out.empty()) {
        throw ConfigError("value list is empty");
    }
    return out;
}

void parse_config(std::istream &in, ScenarioConfig &cfg, SweepConfig *sweep) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key == "sweep_axis" || key == "sweep_values") {
            if (sweep == nullptr) {
                throw ConfigError("line " + std::to_string(line_no) + ": sweep settings are only valid for 'sweep'");
            }
            if (key == "sweep_axis") {
                sweep->axis = value;
            } else {
                sweep->values = parse_value_list(value);
            }
            continue;
        }
        try {
            apply_setting(cfg, key, value);
        } catch (const ConfigError &e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void load_config_file(const std::string &path, ScenarioConfig &cfg, SweepConfig *sweep) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot open config file " + path);
    }
    parse_config(f, cfg, sweep);
}

void set_axis(ScenarioConfig &cfg, const std::string &axis, double value) {
    if (axis == "T_hold") {
        cfg.T_hold = value;
    } else if (axis == "gamma_over_kappa") {
        cfg.gamma_over_kappa = value;
    } else if (axis == "n_bar") {
        cfg.n_bar = value;
    } else {
        throw ConfigError("unknown sweep axis '" + axis + "'");
    }
}

double axis_value(const ScenarioConfig &cfg, const std::string &axis) {
    if (axis == "T_hold") {
        return cfg.T_hold;
    }
    if (axis == "gamma_over_kappa") {
        return cfg.gamma_over_kappa;
    }
    if (axis == "n_bar") {
        return cfg.n_bar;
    }
    throw ConfigError("unknown sweep axis '" + axis + "'");
}

int exit_code_for(const std::exception &e) noexcept {
    if (dynamic_cast<const ConfigError *>(&e) != nullptr || dynamic_cast<const qmem::InvalidArgument *>(&e) != nullptr ||
        dynamic_cast<const qmem::UnsupportedInput *>(&e) != nullptr) {
        return kConfigError;
    }
    return kNumericalError;
}

namespace {

qmem::ProtocolResult simulate(const ScenarioConfig &cfg) {
    const qmem::MemoryParams params{1.0, cfg.gamma_over_kappa};
    const qmem::TimeGrid grid = qmem::make_write_grid(cfg.t0, cfg.step());
    qmem::Design design = cfg.case_id == 1 ? qmem::Design(qmem::design_coupling_sech(cfg.t0, grid))
                                           : qmem::Design(qmem::design_detuning_sech(cfg.t0, grid));
    return qmem::run_protocol(params, design, {cfg.t0, cfg.T_hold, 1.0}, cfg.a0, cfg.hold);
}

void fill_metrics(SummaryRow &row, const qmem::ProtocolResult &result) {
    const qmem::EfficiencyReport eff = qmem::efficiency(result);
    row.sqrt_eta = eff.amplitude_efficiency;
    row.eta = eff.intensity_efficiency;
    row.vacuum_residual = qmem::vacuum_output_residual(result);
    row.fidelity = qmem::fidelity_report(row.eta, row.config.n_bar);
}

}  // namespace

SummaryRow evaluate_scenario(const ScenarioConfig &cfg) {
    SummaryRow row;
    row.config = cfg;
    try {
        cfg.validate();
        fill_metrics(row, simulate(cfg));
    } catch (const std::exception &e) {
        row.error = e.what();
        row.exit_code = exit_code_for(e);
    }
    return row;
}

void write_summary_header(std::ostream &out) {
    out << "case,t0,T_hold,gamma_over_kappa,n_bar,dt,sqrt_eta,eta,vacuum_residual,F_coherent,"
           "F_classical_coherent,eta_threshold,F1,F2,clone_bound_1,clone_bound_2,verdict_coherent,verdict_1,"
           "verdict_2,error\n";
}

void write_summary_row(std::ostream &out, const SummaryRow &row) {
    using qmem::format_number;
    const ScenarioConfig &c = row.config;
    out << c.case_id << ',' << format_number(c.t0) << ',' << format_number(c.T_hold) << ','
        << format_number(c.gamma_over_kappa) << ',' << format_number(c.n_bar) << ',' << format_number(c.step());
    if (!row.error.empty()) {
        std::string msg = row.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        out << ",,,,,,,,,,,,,," << msg << '\n';
        return;
    }
    const qmem::FidelityReport &f = row.fidelity;
    out << ',' << format_number(row.sqrt_eta) << ',' << format_number(row.eta) << ','
        << format_number(row.vacuum_residual) << ',' << format_number(f.F_coherent) << ','
        << format_number(f.F_classical_coherent) << ',' << format_number(f.eta_threshold) << ','
        << format_number(f.F1) << ',' << format_number(f.F2) << ',' << format_number(f.clone_bound_1) << ','
        << format_number(f.clone_bound_2) << ',' << pass_fail(f.verdicts.coherent) << ','
        << pass_fail(f.verdicts.bounded_1) << ',' << pass_fail(f.verdicts.bounded_2) << ",\n";
}

int run_scenario(const ScenarioConfig &cfg, std::ostream &log) {
    try {
        cfg.validate();
        const qmem::ProtocolResult result = simulate(cfg);
        SummaryRow row;
        row.config = cfg;
        fill_metrics(row, result);

        const std::filesystem::path dir(cfg.output_dir);
        std::filesystem::create_directories(dir);
        {
            auto f = open_output(dir / "trajectory.csv");
            qmem::write_csv(f, result, cfg.output_stride());
        }
        {
            auto f = open_output(dir / "schedule.csv");
            qmem::write_csv(f, result.schedule, cfg.output_stride());
        }
        {
            auto f = open_output(dir / "summary.csv");
            write_summary_header(f);
            write_summary_row(f, row);
        }
        {
            auto f = open_output(dir / "fidelity.txt");
            qmem::write_table(f, row.fidelity);
        }
        log << "case " << cfg.case_id << ", t0 = " << cfg.t0 << ", T = " << cfg.T_hold
            << ", gamma/kappa = " << cfg.gamma_over_kappa << ", dt = " << cfg.step() << '\n'
            << "vacuum-output residual (write+hold) " << qmem::format_number(row.vacuum_residual) << '\n';
        qmem::write_table(log, row.fidelity);
        log << "wrote " << dir.string() << "/{trajectory,schedule,summary}.csv\n";
        return kOk;
    } catch (const std::exception &e) {
        log << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

unsigned default_workers() {
    if (const char *env = std::getenv("QMEM_WORKERS")) {
        unsigned v = 0;
        const char *end = env + std::char_traits<char>::length(env);
        auto [p, ec] = std::from_chars(env, end, v);
        if (ec == std::errc{} && p == end && v > 0) {
            return v;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run_sweep(const SweepConfig &cfg, std::ostream &log, unsigned workers) {
    try {
        cfg.validate();
    } catch (const std::exception &e) {
        log << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }

    const std::size_t n = cfg.values.size();
    std::vector<SummaryRow> rows(n);
    if (workers == 0) {
        workers = default_workers();
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            ScenarioConfig point = cfg.base;
            set_axis(point, cfg.axis, cfg.values[i]);
            rows[i] = evaluate_scenario(point);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return cfg.values[l] < cfg.values[r]; });

    int code = kOk;
    try {
        const std::filesystem::path dir(cfg.base.output_dir);
        std::filesystem::create_directories(dir);
        auto f = open_output(dir / "sweep.csv");
        write_summary_header(f);
        for (std::size_t i : order) {
            write_summary_row(f, rows[i]);
        }
    } catch (const std::exception &e) {
        log << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }

    log << std::left << std::setw(18) << cfg.axis << std::setw(12) << "sqrt_eta" << std::setw(12) << "F"
        << std::setw(10) << "F^c" << "verdict\n";
    for (std::size_t i : order) {
        const SummaryRow &r = rows[i];
        log << std::left << std::setw(18) << qmem::format_number(cfg.values[i]);
        if (!r.error.empty()) {
            log << "error: " << r.error << '\n';
            code = std::max(code, r.exit_code);
            continue;
        }
        log << std::fixed << std::setprecision(4) << std::setw(12) << r.sqrt_eta << std::setw(12)
            << r.fidelity.F_coherent << std::setw(10) << r.fidelity.F_classical_coherent
            << pass_fail(r.fidelity.verdicts.coherent) << '\n'
            << std::defaultfloat;
    }
    log << "wrote " << (std::filesystem::path(cfg.base.output_dir) / "sweep.csv").string() << '\n';
    return code;
}

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

}  // namespace

int verdict(std::istream &summary_csv, std::ostream &out) {
    try {
        std::string line;
        if (!std::getline(summary_csv, line)) {
            throw ConfigError("summary is empty");
        }
        const std::vector<std::string> header = split_csv_line(line);
        std::map<std::string, std::size_t> col;
        for (std::size_t i = 0; i < header.size(); ++i) {
            col[header[i]] = i;
        }
        const bool has_eta = col.contains("eta") || col.contains("sqrt_eta");
        if (!has_eta || !col.contains("n_bar")) {
            throw ConfigError("summary needs an eta (or sqrt_eta) column and an n_bar column");
        }
        int row_no = 0;
        while (std::getline(summary_csv, line)) {
            if (trim(line).empty()) {
                continue;
            }
            ++row_no;
            const std::vector<std::string> cells = split_csv_line(line);
            const auto cell = [&](const std::string &name) -> std::string {
                auto it = col.find(name);
                return (it == col.end() || it->second >= cells.size()) ? std::string() : cells[it->second];
            };
            std::string label = "row " + std::to_string(row_no);
            if (!cell("T_hold").empty()) {
                label += " (T=" + cell("T_hold") + ")";
            }
            if (!cell("error").empty()) {
                out << label << ": ERROR " << cell("error") << '\n';
                continue;
            }
            double eta = 0;
            if (!cell("eta").empty()) {
                eta = parse_double("eta", cell("eta"));
            } else if (!cell("sqrt_eta").empty()) {
                const double r = parse_double("sqrt_eta", cell("sqrt_eta"));
                eta = r * r;
            } else {
                throw ConfigError(label + ": missing eta");
            }
            if (cell("n_bar").empty()) {
                throw ConfigError(label + ": missing n_bar");
            }
            const qmem::FidelityReport f = qmem::fidelity_report(eta, parse_double("n_bar", cell("n_bar")));
            std::ostringstream s;
            s << std::fixed << std::setprecision(4);
            s << label << ": coherent (n_bar=" << qmem::format_number(f.n_bar) << ") F=" << f.F_coherent
              << " vs classical " << f.F_classical_coherent << ": " << pass_fail(f.verdicts.coherent) << '\n';
            s << label << ": n_m=1 F_1=" << f.F1 << " vs cloning " << f.clone_bound_1 << ": "
              << pass_fail(f.verdicts.bounded_1) << '\n';
            s << label << ": n_m=2 F_2=" << f.F2 << " vs cloning " << f.clone_bound_2 << ": "
              << pass_fail(f.verdicts.bounded_2) << '\n';
            out << s.str();
        }
        if (row_no == 0) {
            throw ConfigError("summary has no rows");
        }
        return kOk;
    } catch (const std::exception &e) {
        out << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

int run_oracle(double eta, int n_m, std::size_t samples, std::uint64_t seed, std::ostream &out, unsigned workers) {
    try {
        const qmem::MonteCarloEstimate est =
            qmem::haar_average_fidelity(eta, n_m, samples, seed, workers == 0 ? default_workers() : workers);
        out << std::setprecision(8) << "haar_average_fidelity eta=" << eta << " n_m=" << n_m << " samples=" << samples
            << " seed=" << seed << '\n'
            << "mean " << est.mean << " +/- " << est.standard_error << '\n';
        if (n_m <= 2) {
            const double closed = qmem::bounded_fidelity(eta, n_m);
            out << "closed form " << closed;
            if (est.standard_error > 0) {
                out << " (deviation " << (est.mean - closed) / est.standard_error << " standard errors)";
            }
            out << '\n';
        }
        out << "cloning bound " << qmem::clone_bound(n_m) << '\n';
        return kOk;
    } catch (const std::exception &e) {
        out << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace qmemctl
