// Copyright 2026 The lcuresp Authors
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

// lcuresp: spectral functions and density response from LCU circuits.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "lcuresp/pipeline.hpp"
#include "lcuresp/rc.hpp"

using namespace lcuresp;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Local maxima of |value| above 5% of the largest; heights keep their sign.
json find_peaks(const FrequencySeries &s, SeriesPart part, bool positive_only) {
    std::vector<double> v(s.size());
    auto signed_value = [&](std::size_t k) { return part == SeriesPart::Imag ? s.values[k].imag() : s.values[k].real(); };
    for (std::size_t k = 0; k < s.size(); ++k) v[k] = std::abs(signed_value(k));
    double top = 0.0;
    for (double x : v) top = std::max(top, x);
    json peaks = json::array();
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
        if (positive_only && s.omega[k] <= 0.0) continue;
        if (v[k] > v[k - 1] && v[k] >= v[k + 1] && v[k] > 0.05 * top) {
            peaks.push_back({{"omega_eV", s.omega[k]}, {"height", signed_value(k)}, {"height_pi_eta", signed_value(k) * std::numbers::pi * s.eta}});
        }
    }
    return peaks;
}

json census_json(const GateCensus &g) {
    return {{"depth", g.depth},   {"n_1q", g.n_1q},       {"n_virtual_z", g.n_virtual_z}, {"n_2q", g.n_2q},
            {"n_cz", g.n_cz},     {"n_cs", g.n_cs},       {"n_csdg", g.n_csdg},           {"n_swap", g.n_swap},
            {"n_itoffoli", g.n_itoffoli}, {"prep_2q", g.prep_2q}};
}

json config_json(const RunConfig &c) {
    return {{"hamiltonian", c.hamiltonian.string()}, {"branch", to_string(c.branch)}, {"rc", c.rc},
            {"n_rand", c.n_rand}, {"shots", c.shots}, {"noise", c.noise}, {"purify", c.purify}, {"seed", c.seed},
            {"omega_min", c.omega_min}, {"omega_max", c.omega_max}, {"omega_step", c.omega_step}, {"eta", c.eta}};
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw ConfigError("cannot write " + path.string());
}

void prepare_output(const RunConfig &cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output, ec);
    if (ec) throw ConfigError("cannot create output directory " + cfg.output.string() + ": " + ec.message());
}

void require_converged(const std::vector<CircuitRun> &runs) {
    for (const auto &run : runs) {
        for (std::size_t k = 0; k < run.converged.size(); ++k) {
            if (!run.converged[k]) {
                throw NumericalError("purification did not converge for circuit " + run.label + ", ancilla " + run.states[k].ancilla_bits);
            }
        }
    }
}

EigenSystem load_system(const RunConfig &cfg) {
    if (!std::filesystem::exists(cfg.hamiltonian)) throw ConfigError("Hamiltonian file not found: " + cfg.hamiltonian.string());
    EigenSystem sys = exact_eigensystem(load_hamiltonian_file(cfg.hamiltonian));
    for (const auto &note : sys.notes) std::cerr << "note: " << note << "\n";
    return sys;
}

std::string amplitudes_csv(const SpectralResult &r, const EigenSystem &eig) {
    const auto exact = exact_amplitudes(eig);
    std::ostringstream s;
    s.precision(15);
    s << "# units: energy in eV, weights dimensionless\n";
    s << "mode,kind,state,electrons,energy_eV,weight,exact_weight\n";
    for (int m = 0; m < 4; ++m) {
        const FermionOp op = FermionOp::from_index(m, FermionKind::Create);
        const auto &states = eig.classes[static_cast<std::size_t>(to_class(sector_of(op)))];
        const auto mm = static_cast<std::size_t>(m);
        for (const char *kind : {"electron", "hole"}) {
            const bool electron = kind[0] == 'e';
            const auto &w = electron ? r.amps.electron[mm] : r.amps.hole[mm];
            const auto &x = electron ? exact.electron[mm] : exact.hole[mm];
            const double target = eig.classes[0].front().electron_count + (electron ? 1.0 : -1.0);
            for (std::size_t l = 0; l < states.size(); ++l) {
                if (std::abs(states[l].electron_count - target) > 0.5) continue;
                s << op.orbital_label() << "," << kind << "," << l << "," << std::lround(states[l].electron_count) << ","
                  << states[l].energy << "," << w[l] << "," << x[l] << "\n";
            }
        }
    }
    return s.str();
}

int cmd_spectral(const RunConfig &cfg) {
    cfg.validate();
    const EigenSystem sys = load_system(cfg);
    const SpectralResult r = run_spectral(sys, cfg);
    require_converged(r.runs);

    json summary;
    summary["command"] = "spectral";
    summary["config"] = config_json(cfg);
    summary["ground_energy_eV"] = sys.ground_energy;
    summary["ground_degenerate"] = sys.ground_degenerate;
    json weights = json::object(), circuits = json::object();
    for (int m = 0; m < 4; ++m) {
        const auto &run = r.runs[static_cast<std::size_t>(m)];
        weights[FermionOp::from_index(m, FermionKind::Number).orbital_label()] = spectral_weight(r.amps, m);
        circuits[run.label] = {{"census", census_json(run.census)}, {"mean_fidelity", run.mean_fidelity()}};
    }
    summary["spectral_weight"] = weights;
    summary["circuits"] = circuits;
    summary["peaks"] = find_peaks(r.spectral, SeriesPart::Real, false);
    summary["exact_peaks"] = find_peaks(r.exact_spectral, SeriesPart::Real, false);
    // Relative height error of the nearest measured peak, per exact peak.
    json deviation = json::array();
    for (const auto &e : summary["exact_peaks"]) {
        const json *best = nullptr;
        for (const auto &m : summary["peaks"]) {
            if (!best || std::abs(m["omega_eV"].get<double>() - e["omega_eV"].get<double>()) < std::abs((*best)["omega_eV"].get<double>() - e["omega_eV"].get<double>())) best = &m;
        }
        if (best) deviation.push_back({{"omega_eV", e["omega_eV"]}, {"relative", (*best)["height"].get<double>() / e["height"].get<double>() - 1.0}});
    }
    summary["peak_height_deviation"] = deviation;
    summary["rms_vs_exact"] = rms_error(r.spectral, r.exact_spectral, SeriesPart::Real);

    prepare_output(cfg);
    write_file(cfg.output / "spectral.csv", series_csv(r.spectral, "A(omega) = -Im Tr G / pi in the re column"));
    write_file(cfg.output / "spectral_exact.csv", series_csv(r.exact_spectral, "exact A(omega) in the re column"));
    write_file(cfg.output / "amplitudes.csv", amplitudes_csv(r, sys));
    write_file(cfg.output / "summary.json", summary.dump(2) + "\n");
    return 0;
}

std::string pair_key(int p, int q) { return std::to_string(p) + std::to_string(q); }

int cmd_response(const RunConfig &cfg) {
    cfg.validate();
    const EigenSystem sys = load_system(cfg);
    // Both branches run so the summary can compare them; only the selected
    // branch writes chi and fidelity files.
    RunConfig other = cfg;
    other.branch = cfg.branch == DecompositionChoice::IToffoli ? DecompositionChoice::CZOnly : DecompositionChoice::IToffoli;
    const ResponseResult main = run_response(sys, cfg);
    const ResponseResult alt = run_response(sys, other);
    require_converged(main.diagonal);
    require_converged(main.pairs);
    require_converged(alt.pairs);

    const ResponseResult &ito = main.branch == DecompositionChoice::IToffoli ? main : alt;
    const ResponseResult &cz = main.branch == DecompositionChoice::IToffoli ? alt : main;

    json summary;
    summary["command"] = "response";
    summary["config"] = config_json(cfg);
    summary["ground_energy_eV"] = sys.ground_energy;
    summary["ground_degenerate"] = sys.ground_degenerate;

    std::ostringstream census;
    census << "# units: gate counts and depth in moments\n" << "branch," << census_csv_header() << "\n";
    json circuits = json::object();
    for (const auto &run : main.diagonal) {
        circuits[run.label] = {{"census", census_json(run.census)}, {"mean_fidelity", run.mean_fidelity()}};
        census << "number," << census_csv_row(run.label, run.census) << "\n";
    }
    json ratios = json::object();
    double worst_ratio = 0.0;
    for (std::size_t k = 0; k < ito.pairs.size(); ++k) {
        const auto &a = ito.pairs[k];
        const auto &b = cz.pairs[k];
        const double ratio = static_cast<double>(a.census.depth) / b.census.depth;
        worst_ratio = std::max(worst_ratio, ratio);
        ratios[a.label] = ratio;
        census << "itoffoli," << census_csv_row(a.label, a.census) << "\n";
        census << "cz," << census_csv_row(b.label, b.census) << "\n";
        circuits[a.label] = {{"itoffoli", {{"census", census_json(a.census)}, {"mean_fidelity", a.mean_fidelity()}}},
                             {"cz", {{"census", census_json(b.census)}, {"mean_fidelity", b.mean_fidelity()}}}};
    }
    summary["circuits"] = circuits;
    summary["depth_ratio_itoffoli_over_cz"] = ratios;
    summary["max_depth_ratio"] = worst_ratio;

    json rms = json::object();
    for (std::size_t c = 0; c < main.components.size(); ++c) {
        const std::string key = pair_key(main.components[c].p, main.components[c].q);
        rms[key] = {{"itoffoli", ito.components[c].rms_imag}, {"cz", cz.components[c].rms_imag}};
    }
    summary["rms_imag_chi_vs_exact"] = rms;

    json peaks = json::object();
    for (const auto &c : main.components) {
        peaks[pair_key(c.p, c.q)] = {{"measured", find_peaks(c.series.chi, SeriesPart::Imag, true)},
                                     {"exact", find_peaks(c.exact.chi, SeriesPart::Imag, true)},
                                     {"static_weight", c.series.static_weight.real()}};
    }
    summary["im_chi_peaks"] = peaks;
    double mean_fid = 0.0;
    for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) mean_fid += main.fidelity(p, q) / 16.0;
    }
    summary["mean_fidelity"] = mean_fid;

    prepare_output(cfg);
    for (const auto &c : main.components) {
        const std::string key = pair_key(c.p, c.q);
        write_file(cfg.output / ("chi_" + key + ".csv"), series_csv(c.series.chi, "chi_" + key + " summed over spins, ground-state term excluded"));
        write_file(cfg.output / ("chi_" + key + "_exact.csv"), series_csv(c.exact.chi, "exact chi_" + key));
    }
    write_file(cfg.output / "fidelity_matrix.csv", fidelity_matrix_csv(main.fidelity));
    write_file(cfg.output / "census.csv", census.str());
    write_file(cfg.output / "summary.json", summary.dump(2) + "\n");
    return 0;
}

int cmd_twirl_audit(const RunConfig &cfg) {
    prepare_output(cfg);
    write_file(cfg.output / "twirl_audit.csv", twirl_audit_csv());
    return 0;
}

int cmd_fidelity_trace(const RunConfig &cfg) {
    cfg.validate();
    const EigenSystem sys = load_system(cfg);
    const std::string csv = fidelity_trace_csv(sys, resolve_noise(cfg.noise));
    prepare_output(cfg);
    write_file(cfg.output / "fidelity_trace.csv", csv);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"LCU-circuit spectral functions and density response on a simulated noisy device"};
    app.set_config("--config", "", "TOML or INI file with option values; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string branch = "itoffoli";
    std::string hamiltonian, output = cfg.output.string();
    bool exact = false, no_purify = false;
    app.add_option("--hamiltonian", hamiltonian, "Qubit Hamiltonian file (coefficient and Pauli string per line)");
    app.add_option("--branch", branch, "CCZ decomposition: itoffoli or cz")->capture_default_str();
    app.add_flag("--rc", cfg.rc, "Enable randomized compiling");
    app.add_option("--n-rand", cfg.n_rand, "Randomizations per circuit")->capture_default_str();
    auto *shots = app.add_option("--shots", cfg.shots, "Shots per tomography setting (0 = exact distribution)")->capture_default_str();
    app.add_flag("--exact", exact, "Exact outcome distribution (forbids --shots > 0)");
    app.add_option("--noise", cfg.noise, "Noise preset (none, paper, depolarizing) or noise file")->capture_default_str();
    app.add_flag("--no-purify", no_purify, "Skip McWeeny purification");
    app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    app.add_option("--omega-min", cfg.omega_min, "Grid start (eV)")->capture_default_str();
    app.add_option("--omega-max", cfg.omega_max, "Grid end (eV)")->capture_default_str();
    app.add_option("--omega-step", cfg.omega_step, "Grid spacing (eV)")->capture_default_str();
    app.add_option("--eta", cfg.eta, "Broadening (eV)")->capture_default_str();
    app.add_option("--output", output, "Output directory")->capture_default_str();

    auto *spectral = app.add_subcommand("spectral", "Four diagonal circuits: A(omega) and transition amplitudes");
    auto *response = app.add_subcommand("response", "Number and pair circuits: chi components, fidelity matrix, branch summary");
    auto *audit = app.add_subcommand("twirl-audit", "Twirl-set sizes of the native multi-qubit gates");
    auto *trace = app.add_subcommand("fidelity-trace", "Per-moment fidelity of the (0u,0d) circuit on both branches");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (exact && shots->count() > 0 && cfg.shots > 0) throw ConfigError("--exact forbids --shots > 0");
        if (exact) cfg.shots = 0;
        cfg.branch = parse_branch(branch);
        cfg.hamiltonian = hamiltonian;
        cfg.output = output;
        cfg.purify = !no_purify;
        if (*spectral) return cmd_spectral(cfg);
        if (*response) return cmd_response(cfg);
        if (*audit) return cmd_twirl_audit(cfg);
        if (*trace) return cmd_fidelity_trace(cfg);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const HamiltonianError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NoiseConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const SimError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
