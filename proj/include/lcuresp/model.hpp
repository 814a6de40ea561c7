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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lcuresp/pauli.hpp"

namespace lcuresp {

class HamiltonianError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct HamiltonianTerm {
    double coefficient = 0.0;  // eV
    PauliString pauli;
};

struct SymmetryReport {
    double hermiticity_residual = 0.0;
    double zizi_commutator = 0.0;
    double iziz_commutator = 0.0;
    bool ok() const { return hermiticity_residual < 1e-10 && zizi_commutator < 1e-10 && iziz_commutator < 1e-10; }
};

struct QubitHamiltonian {
    std::string label;
    std::vector<HamiltonianTerm> terms;
    SymmetryReport report;

    Eigen::MatrixXcd dense() const;
};

/// Parses the line format `<coeff> <PAULI>` with `#` comments. Rejects empty
/// input, malformed lines and Hamiltonians that break either parity symmetry.
QubitHamiltonian load_hamiltonian(std::string_view text, std::string label = {});
QubitHamiltonian load_hamiltonian_file(const std::filesystem::path &path);

SymmetryReport check_symmetries(const Eigen::MatrixXcd &dense);

/// Symmetry classes of the 16-dimensional space; Unused is the (+1,+1) block.
enum class SymmetryClass { SpinBalanced, UpSpin, DownSpin, Unused };

struct Eigenpair {
    double energy = 0.0;
    Eigen::VectorXcd state;    // 16 amplitudes
    Eigen::VectorXcd tapered;  // 4 amplitudes under the class's own transformation
    double electron_count = 0.0;
};

struct EigenSystem {
    double ground_energy = 0.0;
    Eigen::VectorXcd ground_state;
    bool ground_degenerate = false;
    /// Indexed by SymmetryClass; sorted by energy. The ground state is element
    /// 0 of the spin-balanced list.
    std::array<std::vector<Eigenpair>, 4> classes;
    /// Free-form remarks (degenerate multiplets, ground state not global).
    std::vector<std::string> notes;

    const std::vector<Eigenpair> &sector(SymmetrySector s) const;
    /// Ground state tapered under the given sector transformation.
    Eigen::VectorXcd ground_tapered(SymmetrySector transform) const;
};

SymmetryClass to_class(SymmetrySector s);

/// Block diagonalization inside each parity class. A degenerate spin-balanced
/// ground level is flagged, not rejected; callers that need a unique reference
/// state check ground_degenerate.
EigenSystem exact_eigensystem(const QubitHamiltonian &h);

/// Four amplitudes in tapered order from a 16-amplitude state of `state_sector`.
Eigen::VectorXcd taper_state(const Eigen::VectorXcd &state, SymmetrySector state_sector, SymmetrySector transform);

/// Unitary whose first column is psi0; remaining columns are the Gram-Schmidt
/// completion against the computational basis.
Eigen::Matrix4cd prep_unitary(const Eigen::Vector4cd &psi0);

}  // namespace lcuresp
