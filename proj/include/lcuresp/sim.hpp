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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lcuresp/circuit.hpp"

namespace lcuresp {

using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

class SimError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised for noise settings that do not define a CPTP map.
class NoiseConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// CPTP map in Kraus form on `num_qubits` qubits.
struct Channel {
    int num_qubits = 1;
    std::vector<Eigen::MatrixXcd> kraus;

    static Channel identity(int n);
    static Channel unitary(const Eigen::MatrixXcd &u);
    /// With probability p the operand marginal is replaced by I/d.
    static Channel depolarizing(int n, double p);

    /// max |sum K^dag K - I|.
    double completeness_error() const;
    /// `second` after `first`.
    static Channel compose(const Channel &first, const Channel &second);
    DensityMatrix apply(const DensityMatrix &rho) const;
};

/// Pauli transfer matrix: (i, j) = Tr[P_i ch(P_j)] / 2^n, Paulis in
/// `all_pauli_strings` order. n <= 3.
Eigen::MatrixXd channel_ptm(const Channel &ch);

enum class NoiseClass { Single, CZ, CS, CSdg, CZPhi, Swap, IToffoli, Prep };
inline constexpr std::size_t kNoiseClasses = 8;
std::string to_string(NoiseClass c);
NoiseClass noise_class(const Gate &g);

struct GateNoise {
    double depolarizing = 0.0;
    std::optional<PauliString> coherent_axis;  // unsigned letters, gate arity
    double coherent_angle = 0.0;               // exp(-i angle/2 P) after the gate

    bool empty() const { return depolarizing == 0.0 && (!coherent_axis || coherent_angle == 0.0); }
};

struct NoiseModel {
    std::array<GateNoise, kNoiseClasses> gates{};
    double spectator_phi = 0.0;  // conditional phase exp(-i phi/2 ZZ) next to each iToffoli
    bool correction = false;     // undo the spectator phase with a CZphi-based correction

    GateNoise &at(NoiseClass c) { return gates[static_cast<std::size_t>(c)]; }
    const GateNoise &at(NoiseClass c) const { return gates[static_cast<std::size_t>(c)]; }
    bool empty() const;
    /// Throws NoiseConfigError on probabilities outside [0,1] or axis arity mismatches.
    void validate() const;

    static NoiseModel none();
    /// Calibrated: 1q 99.5%, two-qubit gates 98.2%, iToffoli 96.1% process
    /// fidelity, half of each multi-qubit infidelity as a coherent
    /// ZZ / ZZI over-rotation, spectator phase 0.844 rad, correction on.
    static NoiseModel paper();
    /// Same depolarizing strengths as `paper` without coherent or spectator terms.
    static NoiseModel depolarizing_only();
    /// "none", "paper" or "depolarizing"; throws NoiseConfigError otherwise.
    static NoiseModel preset(std::string_view name);
    /// Key = value text, see README. Throws NoiseConfigError.
    static NoiseModel parse(std::string_view text);
    static NoiseModel load(const std::filesystem::path &path);
    std::string to_text() const;
};

/// Depolarizing probability p giving process fidelity `fidelity` for a gate
/// whose coherent error unitary is `coherent` (identity when absent):
/// F = (1 - p) |Tr E / d|^2 + p / d^2. Clamped at 0.
double depolarizing_from_fidelity(double fidelity, const Eigen::MatrixXcd &coherent);

/// Unitary exp(-i angle/2 P).
Eigen::MatrixXcd pauli_rotation(const PauliString &axis, double angle);

/// Spectator conditional phase exp(-i phi/2 Z⊗Z).
Eigen::Matrix4cd spectator_unitary(double phi);
/// CZphi-based correction: CZphi(2 phi) followed by virtual phase(-phi) on both qubits.
Eigen::Matrix4cd spectator_correction(double phi);

StateVector basis_state(int num_qubits, std::uint64_t index = 0);
DensityMatrix projector(const StateVector &psi);

StateVector run_statevector(const Circuit &c, const StateVector &input);
DensityMatrix run_density(const Circuit &c, const NoiseModel &noise, const DensityMatrix &input);

/// rho -> K rho K^dag with K on the listed qubits.
void apply_unitary(DensityMatrix &rho, int num_qubits, const Eigen::MatrixXcd &k, const std::vector<int> &qubits);
/// Fast depolarizing on the listed qubits.
void apply_depolarizing(DensityMatrix &rho, int num_qubits, double p, const std::vector<int> &qubits);
/// Partial trace keeping `keep` (ascending positions).
DensityMatrix partial_trace(const DensityMatrix &rho, int num_qubits, const std::vector<int> &keep);

/// <psi| rho |psi>.
double state_fidelity(const DensityMatrix &rho, const StateVector &psi);
/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double uhlmann_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

struct TracePoint {
    int moment = 0;
    double fidelity = 1.0;
    bool is_itoffoli = false;
};

/// Fidelity of the noisy register state to the noiseless one after every
/// moment, starting from |0...0>.
std::vector<TracePoint> fidelity_trace(const Circuit &c, const NoiseModel &noise);

}  // namespace lcuresp
