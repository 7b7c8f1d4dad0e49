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

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "app.hpp"

namespace {

struct Overrides {
    std::string config;
    std::string case_id, t0, T, gamma, nbar, dt, a0, out, stride, hold_mode, hold_detuning;

    void add_to(CLI::App &cmd) {
        cmd.add_option("-c,--config", config, "key = value config file");
        cmd.add_option("--case", case_id, "1 = variable coupling, 2 = variable detuning");
        cmd.add_option("--t0", t0, "pulse arrival time");
        cmd.add_option("--T", T, "storage (hold) time");
        cmd.add_option("--gamma", gamma, "oscillator damping gamma/kappa");
        cmd.add_option("--nbar", nbar, "coherent-ensemble mean photon number");
        cmd.add_option("--dt", dt, "integration step");
        cmd.add_option("--a0", a0, "pulse amplitude, real or (re,im)");
        cmd.add_option("--out", out, "output directory");
        cmd.add_option("--stride", stride, "trajectory CSV row stride (0 = auto)");
        cmd.add_option("--hold-mode", hold_mode, "decoupled or detuned");
        cmd.add_option("--hold-detuning", hold_detuning, "oscillator detuning for the detuned hold");
    }

    void apply(qmemctl::ScenarioConfig &cfg, qmemctl::SweepConfig *sweep) const {
        if (!config.empty()) {
            qmemctl::load_config_file(config, cfg, sweep);
        }
        const std::pair<const char *, const std::string *> flags[] = {
            {"case", &case_id}, {"t0", &t0},         {"T_hold", &T},          {"gamma_over_kappa", &gamma},
            {"n_bar", &nbar},   {"dt", &dt},         {"a0", &a0},             {"output_dir", &out},
            {"stride", &stride}, {"hold_mode", &hold_mode}, {"hold_detuning", &hold_detuning}};
        for (const auto &[key, value] : flags) {
            if (!value->empty()) {
                qmemctl::apply_setting(cfg, key, *value);
            }
        }
    }
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qmemctl: cavity-oscillator quantum memory simulator"};
    app.require_subcommand(1);

    Overrides run_opts;
    auto *run = app.add_subcommand("run", "simulate one write/hold/read scenario");
    run_opts.add_to(*run);

    Overrides sweep_opts;
    std::string axis, values;
    auto *sweep = app.add_subcommand("sweep", "evaluate a scenario over a list of parameter values");
    sweep_opts.add_to(*sweep);
    sweep->add_option("--axis", axis, "T_hold, gamma_over_kappa or n_bar");
    sweep->add_option("--values", values, "comma-separated axis values");

    std::string summary_path;
    auto *verdict = app.add_subcommand("verdict", "print quantum-memory verdicts for a summary CSV");
    verdict->add_option("summary", summary_path, "summary.csv or sweep.csv")->required();

    double eta = 0.5;
    int n_m = 2;
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    auto *oracle = app.add_subcommand("oracle", "Haar Monte Carlo fidelity of the loss channel");
    oracle->add_option("--eta", eta, "intensity efficiency")->required();
    oracle->add_option("--nm", n_m, "maximum photon number");
    oracle->add_option("--samples", samples, "number of Haar samples");
    oracle->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return qmemctl::kConfigError;
    }

    try {
        if (run->parsed()) {
            qmemctl::ScenarioConfig cfg;
            run_opts.apply(cfg, nullptr);
            return qmemctl::run_scenario(cfg, std::cout);
        }
        if (sweep->parsed()) {
            qmemctl::SweepConfig cfg;
            sweep_opts.apply(cfg.base, &cfg);
            if (!axis.empty()) {
                cfg.axis = axis;
            }
            if (!values.empty()) {
                cfg.values = qmemctl::parse_value_list(values);
            }
            return qmemctl::run_sweep(cfg, std::cout);
        }
        if (verdict->parsed()) {
            std::ifstream f(summary_path);
            if (!f) {
                std::cerr << "error: cannot open " << summary_path << '\n';
                return qmemctl::kConfigError;
            }
            return qmemctl::verdict(f, std::cout);
        }
        if (oracle->parsed()) {
            return qmemctl::run_oracle(eta, n_m, samples, seed, std::cout);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return qmemctl::exit_code_for(e);
    }
    return qmemctl::kConfigError;
}
