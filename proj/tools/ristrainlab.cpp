// SPDX-License-Identifier: Apache-2.0
//
// ristrainlab: simulation library for RIS-assisted multiuser downlink training
// Copyright (C) 2026 The ristrainlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ristrain/error.hpp"
#include "ristrain/experiments.hpp"
#include "ristrain/theory.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace ristrain;

// "1..16", "1,2,4,8" or a mix such as "1..4,8,16".
std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) {
            const std::size_t dots = item.find("..");
            try {
                if (dots == std::string::npos) {
                    out.push_back(std::stod(item));
                } else {
                    const double a = std::stod(item.substr(0, dots));
                    const double b = std::stod(item.substr(dots + 2));
                    for (double v = a; v <= b + 1e-9; v += 1.0)
                        out.push_back(v);
                }
            } catch (const std::logic_error&) {
                throw Error(ErrorCode::invalid_argument, "cannot parse list item '" + item + "'");
            }
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (out.empty())
        throw Error(ErrorCode::invalid_argument, "empty value list");
    return out;
}

std::size_t resolve_threads(std::size_t requested)
{
    if (const char* env = std::getenv("RISTRAINLAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        } catch (const std::logic_error&) {
        }
        throw Error(ErrorCode::invalid_argument, std::string("bad RISTRAINLAB_THREADS '") + env + "'");
    }
    if (requested == 0)
        return std::max(1u, std::thread::hardware_concurrency());
    return requested;
}

struct RunArgs {
    std::string preset_id;
    std::string config;
    std::string protocol;
    std::string out = "-";
    std::string sweep_values;
    std::size_t trials = 0;
    std::size_t threads = 0;
    std::size_t periods = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool noiseless = false;
};

int do_run(const RunArgs& a)
{
    ExperimentSpec spec = a.config.empty() ? preset(a.preset_id) : load_experiment_config(a.config);
    if (!a.preset_id.empty() && !a.config.empty())
        std::cerr << "note: --config takes precedence over --preset\n";
    if (!a.protocol.empty())
        spec.protocol = parse_protocol(a.protocol);
    if (a.trials > 0)
        spec.trials = a.trials;
    if (a.seed_set)
        spec.master_seed = a.seed;
    if (a.periods > 0)
        spec.periods = a.periods;
    if (a.noiseless)
        spec.noiseless_estimation = true;
    if (!a.sweep_values.empty())
        spec.sweep_values = parse_list(a.sweep_values);

    const auto records = run_experiment(spec, resolve_threads(a.threads));
    if (a.out == "-")
        write_csv(records, std::cout);
    else
        emit_csv(records, a.out);
    return 0;
}

struct TheoryArgs {
    std::string op = "g";
    std::string q = "1..16";
    std::size_t n = 1;
    double power = 1.0;
    double rho_r2 = 1.0;
    double rho_d2 = 1.0;
    double sigma_r2 = 0.0;
    double sigma_d2 = 0.0;
    double sigma_q2 = 0.0;
};

int do_theory(const TheoryArgs& a)
{
    std::cout << "q,value\n";
    for (double qd : parse_list(a.q)) {
        if (qd < 1.0)
            throw Error(ErrorCode::invalid_argument, "Q must be at least 1");
        const auto q = static_cast<std::size_t>(qd);
        theory::ClosedFormInputs in;
        in.power_mw = a.power;
        in.elements = a.n;
        in.rho_r2 = a.rho_r2;
        in.rho_d2 = a.rho_d2;
        in.sigma_r2 = a.sigma_r2;
        in.sigma_d2 = a.sigma_d2;
        in.sigma_q2 = a.sigma_q2;
        in.periods = q;

        double v = 0.0;
        if (a.op == "g")
            v = theory::g_of_Q(q);
        else if (a.op == "sinc")
            v = theory::equipartition_mean_cos(q);
        else if (a.op == "g2")
            v = theory::asymptotic_ratio(theory::AsymptoticKind::training, in);
        else if (a.op == "random")
            v = theory::power_random_training(in).value_mw;
        else if (a.op == "equipartition")
            v = theory::power_equipartition_upper(in).value_mw;
        else if (a.op == "optimal")
            v = theory::power_optimal(in);
        else if (a.op == "noisy-alignment")
            v = theory::power_noisy_alignment(in);
        else if (a.op == "noisy-training")
            v = theory::power_noisy_training_upper(in);
        else
            throw Error(ErrorCode::unknown_method, "unknown theory op '" + a.op + "'");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%zu,%.12g\n", q, v);
        std::cout << buf;
    }
    return 0;
}

int do_list()
{
    for (const auto& id : preset_ids()) {
        const ExperimentSpec s = preset(id);
        std::cout << id << "\t" << to_string(s.protocol) << "\tsweep " << to_string(s.sweep) << "\t"
                  << s.description << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ristrainlab: RIS-assisted downlink training and estimation simulator"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run a Monte Carlo experiment and write CSV");
    run_cmd->add_option("--preset", run.preset_id, "Preset id (see list-presets)");
    run_cmd->add_option("--config", run.config, "JSON experiment config");
    run_cmd->add_option("--protocol", run.protocol,
                        "onoff | three-phase | dft | training-random | training-equipartition | "
                        "optimal | single-random");
    run_cmd->add_option("--trials", run.trials, "Trials per sweep value");
    auto* seed_opt = run_cmd->add_option("--seed", run.seed, "Master seed");
    run_cmd->add_option("--out", run.out, "Output CSV path, '-' for stdout");
    run_cmd->add_option("--threads", run.threads, "Worker threads (0 = hardware concurrency)");
    run_cmd->add_option("--periods", run.periods, "Training periods Q (default N+1 or the sweep value)");
    run_cmd->add_option("--sweep-values", run.sweep_values, "Override sweep values, e.g. 1..8 or 10,20,30");
    run_cmd->add_flag("--noiseless", run.noiseless, "Estimate channels without receiver noise");

    TheoryArgs th;
    auto* theory_cmd = app.add_subcommand("theory", "Evaluate closed-form laws");
    theory_cmd->add_option("--op", th.op,
                           "g | sinc | g2 | random | equipartition | optimal | noisy-alignment | "
                           "noisy-training");
    theory_cmd->add_option("--q", th.q, "Training periods, e.g. 1..16");
    theory_cmd->add_option("--n", th.n, "RIS elements");
    theory_cmd->add_option("--power", th.power, "Transmit power P in mW");
    theory_cmd->add_option("--rho-r2", th.rho_r2, "Reflected path power");
    theory_cmd->add_option("--rho-d2", th.rho_d2, "Direct path power");
    theory_cmd->add_option("--sigma-r2", th.sigma_r2, "Reflected estimate error power");
    theory_cmd->add_option("--sigma-d2", th.sigma_d2, "Direct estimate error power");
    theory_cmd->add_option("--sigma-q2", th.sigma_q2, "Superimposed estimate error power");

    auto* list_cmd = app.add_subcommand("list-presets", "List built-in presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            run.seed_set = seed_opt->count() > 0;
            if (run.preset_id.empty() && run.config.empty())
                throw Error(ErrorCode::invalid_argument, "run needs --preset or --config");
            return do_run(run);
        }
        if (theory_cmd->parsed())
            return do_theory(th);
        if (list_cmd->parsed())
            return do_list();
    } catch (const Error& e) {
        std::cerr << "ristrainlab: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ristrainlab: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
