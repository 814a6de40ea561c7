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
#include <stdexcept>
#include <string>
#include <vector>

#include "lcuresp/circuit.hpp"
#include "lcuresp/sim.hpp"

namespace lcuresp {

class TomoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Measurement bases of the two system qubits (the last two register
/// positions); the ancillas are always read in Z.
struct TomoSetting {
    Pauli s0 = Pauli::Z;
    Pauli s1 = Pauli::Z;
    std::string label() const;  // "XY"
};

/// The nine settings, s0-major in X, Y, Z order.
const std::array<TomoSetting, 9> &tomo_settings();

/// Outcome counts per setting over the full register bitstring (first qubit
/// most significant). With shots == 0 the record is exact and the counts are
/// Born probabilities.
struct MeasurementRecord {
    int num_qubits = 0;
    int shots = 0;
    std::array<std::vector<double>, 9> counts;

    bool exact() const { return shots == 0; }
    int num_ancillas() const { return num_qubits - 2; }
};

/// Outcome distribution of every setting from a final register state. The
/// basis-change gates (H, or Sdg then H) run under `noise`.
MeasurementRecord measure_exact(const DensityMatrix &rho, int num_qubits, const NoiseModel &noise);
/// Multinomial draw of `shots` per setting. Setting k uses the k-th output of
/// a generator seeded with `seed`.
MeasurementRecord sample_measurements(const DensityMatrix &rho, int num_qubits, const NoiseModel &noise, int shots, std::uint64_t seed);
/// Runs `c` from |0...0> under `noise`, then samples (shots >= 1).
MeasurementRecord sample_measurements(const Circuit &c, const NoiseModel &noise, int shots, std::uint64_t seed);

/// `setting,bitstring,count` rows after a units comment line.
std::string measurement_csv(const MeasurementRecord &rec);

struct ConditionalState {
    std::string ancilla_bits;  // e.g. "1" or "01" (a1 a0)
    double probability = 0.0;
    DensityMatrix rho;  // normalized, 4x4

    /// p(bits) * rho.
    DensityMatrix unnormalized() const { return probability * rho; }
};

/// Linear inversion of the Pauli expectations of the system qubits restricted
/// to outcomes whose ancilla bits equal `ancilla_bits`, then the nearest
/// unit-trace PSD matrix in Frobenius norm. p(bits) is the ancilla marginal
/// pooled over settings.
ConditionalState reconstruct_conditional(const MeasurementRecord &rec, const std::string &ancilla_bits);

/// Closest unit-trace positive semidefinite matrix (Frobenius norm).
DensityMatrix project_to_density(const DensityMatrix &m);

struct PurifyResult {
    DensityMatrix rho;
    int iterations = 0;
    bool converged = false;
};

/// 3 rho^2 - 2 rho^3 without renormalization.
DensityMatrix mcweeny_step(const DensityMatrix &rho);
/// Iterates mcweeny_step with trace renormalization until ||rho^2 - rho||_F <
/// 1e-8, for at most 100 steps.
PurifyResult mcweeny_purify(const DensityMatrix &rho);

}  // namespace lcuresp
