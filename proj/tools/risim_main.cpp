// SPDX-License-Identifier: Apache-2.0
//
// risim - RIS-assisted mmWave channel simulation and analysis
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

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "risim/pipeline.hpp"
#include "risim/version.hpp"

namespace {

// "a-b" or a single index
std::pair<int, int> parse_position_range(const std::string& s) {
    auto dash = s.find('-', 1); // allow a leading minus to fail validation later
    if (dash == std::string::npos) {
        int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))};
}

// "a,b,c" or "lo:step:hi"
std::vector<double> parse_snr_list(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double lo = 0, step = 0, hi = 0;
        if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &step, &hi) != 3 || step <= 0 || hi < lo)
            throw CLI::ValidationError("--snr", "range must be lo:step:hi with a positive step");
        for (double x = lo; x <= hi + 1e-9; x += step)
            out.push_back(x);
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stod(item));
    if (out.empty())
        throw CLI::ValidationError("--snr", "empty list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"risim - RIS-assisted mmWave channel simulator and analyzer"};
    app.set_version_flag("--version", risim::kVersion);

    std::string scenario_path;
    std::string ris_sel = "both";
    bool estimate = false;
    bool oracle = false;
    bool print_scenario = false;
    int nlos_from = -1;
    std::string positions_str;
    std::string snr_str;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;

    app.add_option("--scenario", scenario_path, "Scenario file (omit for built-in defaults)");
    app.add_option("--ris", ris_sel, "Surface state to simulate: on, off or both")
        ->check(CLI::IsMember({"on", "off", "both"}));
    app.add_flag("--estimate", estimate, "Extract paths from the synthesized tensors (slow)");
    app.add_flag("--oracle-mpc", oracle, "Feed ground-truth paths to the analysis (default)");
    app.add_option("--nlos-from", nlos_from, "Force the LOS/NLOS boundary to this position index");
    app.add_option("--positions", positions_str, "Position range a-b (inclusive) or a single index");
    app.add_option("--snr", snr_str, "SNR points in dB: list a,b,c or range lo:step:hi");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed, "Master seed override")->each([&](const std::string&) { seed_set = true; });
    app.add_flag("--print-scenario", print_scenario, "Print the resolved scenario and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        risim::Scenario sc = scenario_path.empty() ? risim::default_scenario() : risim::parse_scenario(scenario_path);

        if (print_scenario) {
            std::cout << risim::serialize_scenario(sc);
            return 0;
        }

        if (estimate && oracle)
            throw std::runtime_error("--estimate and --oracle-mpc are mutually exclusive");

        risim::RunOptions opt;
        opt.ris = (ris_sel == "on")    ? risim::StateSelection::on
                  : (ris_sel == "off") ? risim::StateSelection::off
                                       : risim::StateSelection::both;
        opt.estimate = estimate;
        if (nlos_from >= 0)
            opt.nlos_from = nlos_from;
        if (!positions_str.empty())
            opt.positions = parse_position_range(positions_str);
        if (!snr_str.empty())
            opt.snr_db = parse_snr_list(snr_str);
        if (!out_dir.empty())
            opt.out_dir = out_dir;
        if (seed_set)
            opt.seed = seed;

        risim::PipelineResult res = risim::run_pipeline(sc, opt);
        std::cout << "wrote " << res.files.size() << " files to "
                  << (out_dir.empty() ? sc.out_dir : out_dir) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
