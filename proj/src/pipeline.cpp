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

#include "lcuresp/pipeline.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include "lcuresp/rc.hpp"

namespace lcuresp {

namespace {

std::string mode_label(int mode) { return FermionOp::from_index(mode, FermionKind::Number).orbital_label(); }

std::uint64_t bits_value(const std::string &bits) {
    std::uint64_t v = 0;
    for (char c : bits) v = (v << 1) | (c == '1' ? 1u : 0u);
    return v;
}

struct Job {
    Circuit circuit;
    std::vector<std::string> bits;
    std::string label;
};

// Seeds are drawn in job order before the fan-out, so results do not depend on
// scheduling.
std::vector<CircuitRun> execute_all(const std::vector<Job> &jobs, const ExecutionOptions &opt, std::uint64_t seed) {
    std::mt19937_64 master(seed);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> seeds;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        const std::uint64_t a = master();
        seeds.emplace_back(a, master());
    }
    std::vector<std::future<CircuitRun>> futures;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        futures.push_back(std::async(std::launch::async, [&, k] {
            CircuitRun r = execute_circuit(jobs[k].circuit, jobs[k].bits, opt, seeds[k].first, seeds[k].second);
            r.label = jobs[k].label;
            return r;
        }));
    }
    std::vector<CircuitRun> runs;
    for (auto &f : futures) runs.push_back(f.get());
    return runs;
}

double nan_mean(const std::vector<double> &v) {
    double s = 0.0;
    int n = 0;
    for (double x : v) {
        if (std::isnan(x)) continue;
        s += x;
        ++n;
    }
    return n ? s / n : std::numeric_limits<double>::quiet_NaN();
}

// Trace, hermiticity and positivity of a simulated state.
void check_physical(const DensityMatrix &rho, const std::string &label) {
    constexpr double kTol = 1e-9;
    const double trace_err = std::abs(rho.trace() - 1.0);
    const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho).eigenvalues().minCoeff();
    if (trace_err > kTol || herm_err > kTol || min_eig < -kTol) {
        std::ostringstream s;
        s << "state of circuit " << label << " is not a density matrix (trace error " << trace_err << ", hermiticity " << herm_err
          << ", min eigenvalue " << min_eig << ")";
        throw NumericalError(s.str());
    }
}

}  // namespace

void RunConfig::validate() const {
    if (hamiltonian.empty()) throw ConfigError("a Hamiltonian file is required");
    if (rc && n_rand < 1) throw ConfigError("n_rand must be at least 1 when rc is on");
    if (shots < 0) throw ConfigError("shots must be non-negative");
    if (!(eta > 0.0)) throw ConfigError("eta must be positive");
    if (!(omega_step > 0.0) || !(omega_max > omega_min)) throw ConfigError("frequency grid needs omega_min < omega_max and a positive step");
}

DecompositionChoice parse_branch(const std::string &s) {
    if (s == "itoffoli") return DecompositionChoice::IToffoli;
    if (s == "cz") return DecompositionChoice::CZOnly;
    throw ConfigError("unknown branch '" + s + "' (expected itoffoli or cz)");
}

NoiseModel resolve_noise(const std::string &spec) {
    if (spec == "none" || spec == "paper" || spec == "depolarizing") return NoiseModel::preset(spec);
    if (!std::filesystem::exists(spec)) throw ConfigError("noise '" + spec + "' is neither a preset nor a file");
    return NoiseModel::load(spec);
}

double CircuitRun::mean_fidelity() const { return nan_mean(fidelity); }

ExecutionOptions execution_options(const RunConfig &cfg) {
    return {resolve_noise(cfg.noise), cfg.rc, cfg.n_rand, cfg.shots, cfg.purify};
}

CircuitRun execute_circuit(const Circuit &c, const std::vector<std::string> &ancilla_bits, const ExecutionOptions &opt,
                           std::uint64_t rc_seed, std::uint64_t measure_seed) {
    CircuitRun run;
    run.label = c.name();
    run.circuit = c;
    run.census = gate_census(c);
    const int n = c.num_qubits();
    const DensityMatrix rho = opt.rc ? rc_average(c, opt.n_rand, opt.noise, rc_seed) : run_density(c, opt.noise, projector(basis_state(n)));
    check_physical(rho, c.name());
    run.record = opt.shots == 0 ? measure_exact(rho, n, opt.noise) : sample_measurements(rho, n, opt.noise, opt.shots, measure_seed);
    const StateVector out = run_statevector(c, basis_state(n));
    const DensityMatrix mixed = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
    for (const auto &bits : ancilla_bits) {
        const StateVector branch = out.segment(static_cast<Eigen::Index>(4 * bits_value(bits)), 4);
        const double p_ideal = branch.squaredNorm();
        ConditionalState ideal{bits, p_ideal, p_ideal > 1e-14 ? projector(branch / std::sqrt(p_ideal)) : mixed};

        ConditionalState st{bits, 0.0, mixed};
        bool converged = true;
        try {
            st = reconstruct_conditional(run.record, bits);
            if (opt.purify) {
                const auto pr = mcweeny_purify(st.rho);
                st.rho = pr.rho;
                converged = pr.converged;
            }
        } catch (const TomoError &) {
            // Empty subspace: zero weight.
        }
        run.fidelity.push_back(p_ideal > 1e-14 ? state_fidelity(st.rho, branch / std::sqrt(p_ideal)) : std::numeric_limits<double>::quiet_NaN());
        run.states.push_back(std::move(st));
        run.ideal.push_back(std::move(ideal));
        run.converged.push_back(converged);
    }
    return run;
}

Circuit spectral_circuit(const EigenSystem &eig, int mode) {
    const FermionOp op = FermionOp::from_index(mode, FermionKind::Create);
    Circuit c = transpile(build_diagonal_circuit(op, prep_unitary(eig.ground_tapered(sector_of(op)))));
    c.set_name("a" + mode_label(mode));
    return c;
}

Circuit number_circuit(const EigenSystem &eig, int mode) {
    const FermionOp op = FermionOp::from_index(mode, FermionKind::Number);
    Circuit c = transpile(build_diagonal_circuit(op, prep_unitary(eig.ground_tapered(SymmetrySector::SpinBalanced))));
    c.set_name("n" + mode_label(mode));
    return c;
}

Circuit pair_circuit(const EigenSystem &eig, int p, int q, DecompositionChoice branch) {
    Circuit c = transpile(build_offdiagonal_circuit(FermionOp::from_index(p, FermionKind::Number), FermionOp::from_index(q, FermionKind::Number),
                                                    prep_unitary(eig.ground_tapered(SymmetrySector::SpinBalanced)), branch));
    c.set_name(mode_label(p) + "," + mode_label(q));
    return c;
}

SpectralResult run_spectral(const EigenSystem &eig, const RunConfig &cfg) {
    cfg.validate();
    const ExecutionOptions opt = execution_options(cfg);
    std::vector<Job> jobs;
    for (int m = 0; m < 4; ++m) {
        Circuit c = spectral_circuit(eig, m);
        jobs.push_back({c, {"0", "1"}, c.name()});
    }
    SpectralResult r;
    r.runs = execute_all(jobs, opt, cfg.seed);
    r.amps = empty_amplitudes(eig);
    const auto grid = cfg.grid();
    const auto exact = exact_amplitudes(eig);
    std::vector<FrequencySeries> exact_greens;
    for (int m = 0; m < 4; ++m) {
        const auto &run = r.runs[static_cast<std::size_t>(m)];
        diagonal_amplitudes(r.amps, run.states[0], run.states[1], eig, FermionOp::from_index(m, FermionKind::Create));
        r.greens[static_cast<std::size_t>(m)] = greens_function(r.amps, eig, m, grid, cfg.eta);
        exact_greens.push_back(greens_function(exact, eig, m, grid, cfg.eta));
    }
    r.spectral = spectral_function({r.greens.begin(), r.greens.end()});
    r.exact_spectral = spectral_function(exact_greens);
    return r;
}

ResponseResult run_response(const EigenSystem &eig, const RunConfig &cfg) {
    cfg.validate();
    const ExecutionOptions opt = execution_options(cfg);
    std::vector<Job> jobs;
    for (int m = 0; m < 4; ++m) {
        Circuit c = number_circuit(eig, m);
        jobs.push_back({c, {"1"}, c.name()});
    }
    std::vector<std::pair<int, int>> order;
    for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
            if (p == q) continue;
            order.emplace_back(p, q);
            Circuit c = pair_circuit(eig, p, q, cfg.branch);
            jobs.push_back({c, {kPairPlus, kPairMinus}, c.name()});
        }
    }
    auto runs = execute_all(jobs, opt, cfg.seed);

    ResponseResult r;
    r.branch = cfg.branch;
    r.amps = empty_amplitudes(eig);
    r.fidelity = Eigen::Matrix4d::Zero();
    for (int m = 0; m < 4; ++m) {
        auto &run = runs[static_cast<std::size_t>(m)];
        diagonal_amplitudes(r.amps, run.states[0], run.states[0], eig, FermionOp::from_index(m, FermionKind::Number));
        r.fidelity(m, m) = run.mean_fidelity();
        r.diagonal.push_back(std::move(run));
    }
    std::map<std::pair<int, int>, std::pair<std::vector<double>, std::vector<double>>> t;
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto &run = runs[4 + k];
        t[order[k]] = {offdiagonal_weights(run.states[0], eig), offdiagonal_weights(run.states[1], eig)};
        r.fidelity(order[k].first, order[k].second) = run.mean_fidelity();
        r.pairs.push_back(std::move(run));
    }
    for (const auto &[pq, tpq] : t) {
        const auto &tqp = t.at({pq.second, pq.first});
        r.amps.density_offdiag[pq] = recombine_offdiagonal(tpq.first, tpq.second, tqp.first, tqp.second);
    }
    const auto grid = cfg.grid();
    const auto exact = exact_amplitudes(eig);
    for (auto [p, q] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
        ResponseComponent c{p, q, response_function(r.amps, eig, p, q, grid, cfg.eta), response_function(exact, eig, p, q, grid, cfg.eta), 0.0};
        c.rms_imag = rms_error(c.series.chi, c.exact.chi, SeriesPart::Imag);
        r.components.push_back(std::move(c));
    }
    return r;
}

std::string fidelity_matrix_csv(const Eigen::Matrix4d &f) {
    std::ostringstream s;
    s.precision(10);
    s << "# units: state fidelity (dimensionless); row p, column q; diagonal from number circuits\n";
    s << "mode";
    for (int q = 0; q < 4; ++q) s << "," << mode_label(q);
    s << "\n";
    for (int p = 0; p < 4; ++p) {
        s << mode_label(p);
        for (int q = 0; q < 4; ++q) s << "," << f(p, q);
        s << "\n";
    }
    return s.str();
}

std::string fidelity_trace_csv(const EigenSystem &eig, const NoiseModel &noise) {
    std::ostringstream s;
    s.precision(12);
    s << "# units: state fidelity (dimensionless) after each moment of the (0u,0d) circuit\n";
    s << "branch,moment,fidelity,is_itoffoli\n";
    for (auto branch : {DecompositionChoice::IToffoli, DecompositionChoice::CZOnly}) {
        for (const auto &pt : fidelity_trace(pair_circuit(eig, 0, 1, branch), noise)) {
            s << to_string(branch) << "," << pt.moment << "," << pt.fidelity << "," << (pt.is_itoffoli ? 1 : 0) << "\n";
        }
    }
    return s.str();
}

}  // namespace lcuresp
