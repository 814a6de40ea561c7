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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcuresp/circuit.hpp"
#include "lcuresp/model.hpp"
#include "lcuresp/response.hpp"
#include "lcuresp/sim.hpp"
#include "lcuresp/tomo.hpp"

namespace lcuresp {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when post-processing cannot produce a trustworthy result.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::filesystem::path hamiltonian;
    DecompositionChoice branch = DecompositionChoice::IToffoli;
    bool rc = false;
    int n_rand = 100;
    int shots = 0;  // per tomography setting; 0 selects the exact distribution
    std::string noise = "none";  // preset name or path to a noise file
    bool purify = true;
    std::uint64_t seed = 1;
    double omega_min = -30.0;
    double omega_max = 30.0;
    double omega_step = 0.05;
    double eta = 0.1;
    std::filesystem::path output = "out";

    bool exact() const { return shots == 0; }
    /// Throws ConfigError.
    void validate() const;
    std::vector<double> grid() const { return make_grid(omega_min, omega_max, omega_step); }
};

DecompositionChoice parse_branch(const std::string &s);

/// Preset name, or else a noise file path.
NoiseModel resolve_noise(const std::string &spec);

/// One executed circuit and its post-selected system states.
struct CircuitRun {
    std::string label;
    Circuit circuit;  // transpiled
    GateCensus census;
    std::vector<ConditionalState> states;  // reconstructed, purified when enabled
    std::vector<ConditionalState> ideal;   // noiseless post-selected states
    std::vector<double> fidelity;          // <ideal| rho |ideal>; NaN for empty subspaces
    std::vector<bool> converged;           // purification status per subspace
    MeasurementRecord record;

    double mean_fidelity() const;
};

struct ExecutionOptions {
    NoiseModel noise;
    bool rc = false;
    int n_rand = 1;
    int shots = 0;
    bool purify = true;
};

ExecutionOptions execution_options(const RunConfig &cfg);

/// Runs `c` from |0...0> (mixture over randomizations when rc is on), records
/// the tomography data and reconstructs each requested ancilla subspace. A
/// subspace without counts gives probability 0 and the maximally mixed state.
CircuitRun execute_circuit(const Circuit &c, const std::vector<std::string> &ancilla_bits, const ExecutionOptions &opt,
                           std::uint64_t rc_seed, std::uint64_t measure_seed);

/// Diagonal circuit of the creation operator on spin orbital `mode`.
Circuit spectral_circuit(const EigenSystem &eig, int mode);
/// Diagonal circuit of the number operator on spin orbital `mode`.
Circuit number_circuit(const EigenSystem &eig, int mode);
/// Off-diagonal circuit of the ordered number-operator pair (p, q).
Circuit pair_circuit(const EigenSystem &eig, int p, int q, DecompositionChoice branch);

/// Ancilla bitstrings (a1 a0) of the two off-diagonal subspaces.
inline const std::string kPairPlus = "01";
inline const std::string kPairMinus = "11";

struct SpectralResult {
    TransitionAmplitudes amps;
    std::vector<CircuitRun> runs;  // one per spin orbital
    std::array<FrequencySeries, 4> greens;
    FrequencySeries spectral;
    FrequencySeries exact_spectral;
};

SpectralResult run_spectral(const EigenSystem &eig, const RunConfig &cfg);

struct ResponseComponent {
    int p = 0, q = 0;
    ResponseSeries series;
    ResponseSeries exact;
    double rms_imag = 0.0;
};

struct ResponseResult {
    DecompositionChoice branch = DecompositionChoice::IToffoli;
    TransitionAmplitudes amps;
    std::vector<CircuitRun> diagonal;  // number circuits, one per spin orbital
    std::vector<CircuitRun> pairs;     // ordered off-diagonal circuits (p, q), p != q
    std::vector<ResponseComponent> components;  // (0,0), (0,1), (1,1)
    /// Row p, column q: mean conditional fidelity of the circuit for (p, q).
    Eigen::Matrix4d fidelity;
};

/// All four number circuits and the twelve ordered off-diagonal circuits.
ResponseResult run_response(const EigenSystem &eig, const RunConfig &cfg);

/// CSV grid of a fidelity matrix over the spin orbitals.
std::string fidelity_matrix_csv(const Eigen::Matrix4d &f);

/// `branch,moment,fidelity,is_itoffoli` over the transpiled (0u,0d) circuit of
/// both branches.
std::string fidelity_trace_csv(const EigenSystem &eig, const NoiseModel &noise);

}  // namespace lcuresp
