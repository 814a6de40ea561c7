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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lcuresp/pauli.hpp"

namespace lcuresp {

class CircuitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class GateKind { Single, CZ, CS, CSdg, CZPhi, IToffoli, Swap, DensePrep };

enum class DecompositionChoice { IToffoli, CZOnly };

std::string to_string(DecompositionChoice c);

/// One gate on explicit register positions. For IToffoli the operands are
/// (control, target, control); for DensePrep the first operand is the more
/// significant bit of the 4x4 matrix.
struct Gate {
    GateKind kind = GateKind::Single;
    std::vector<int> qubits;
    Eigen::Matrix2cd single = Eigen::Matrix2cd::Identity();
    Eigen::Matrix4cd dense = Eigen::Matrix4cd::Identity();
    double angle = 0.0;  // CZPhi: phase on |11>
    std::string name;    // display name of a Single gate

    static Gate one(int q, const Eigen::Matrix2cd &u, std::string name = {});
    static Gate h(int q);
    static Gate x(int q);
    static Gate phase(int q, double theta);  // diag(1, e^{i theta})
    static Gate two(GateKind kind, int a, int b, double angle = 0.0);
    static Gate itoffoli(int c0, int target, int c1);
    static Gate prep(int a, int b, const Eigen::Matrix4cd &u);

    int arity() const { return static_cast<int>(qubits.size()); }
    bool is_diagonal() const;
    /// A diagonal single-qubit gate, realized in software and excluded from depth.
    bool is_virtual_z() const { return kind == GateKind::Single && is_diagonal(); }
    /// 2^k x 2^k matrix in operand order, first operand most significant.
    Eigen::MatrixXcd matrix() const;
    std::string label() const;
    std::string to_string() const;
};

/// Matrix of a named single-qubit gate.
Eigen::Matrix2cd gate_matrix_1q(std::string_view name);
/// Short name of a 2x2 unitary when it equals a standard gate up to phase.
std::string name_1q(const Eigen::Matrix2cd &u);

struct Moment {
    std::vector<Gate> gates;
    bool is_multi_qubit() const { return gates.size() == 1 && gates.front().arity() > 1; }
    bool is_virtual_only() const;
};

class Circuit {
  public:
    Circuit() = default;
    Circuit(int num_qubits, std::vector<std::string> qubit_names, std::string name = {});

    int num_qubits() const { return num_qubits_; }
    const std::vector<std::string> &qubit_names() const { return qubit_names_; }
    const std::string &name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const std::vector<Moment> &moments() const { return moments_; }

    /// Appends the gate as its own moment.
    void append(Gate g);
    void append_moment(Moment m);
    std::vector<Gate> gates() const;
    bool empty() const { return moments_.empty(); }

    /// Throws CircuitError on an exclusivity, overlap or adjacency violation.
    void validate() const;

    /// One moment per line, tokens `<gate>(<qubits>)`.
    std::string dump() const;

  private:
    int num_qubits_ = 0;
    std::vector<std::string> qubit_names_;
    std::string name_;
    std::vector<Moment> moments_;
};

/// Register positions of the two circuit families.
namespace reg {
inline constexpr int kDiagA0 = 0, kDiagS0 = 1, kDiagS1 = 2;
inline constexpr int kA1 = 0, kA0 = 1, kS0 = 2, kS1 = 3;
}  // namespace reg

/// Single-ancilla LCU circuit on (a0, s0, s1): a0=0 applies (V0+V1)/2 and
/// a0=1 applies (V0-V1)/2 to the prepared system state.
Circuit build_diagonal_circuit(const PauliString &v0, const PauliString &v1, const Eigen::Matrix4cd &prep, std::string name = {});
Circuit build_diagonal_circuit(const FermionOp &op, const Eigen::Matrix4cd &prep);

/// Two-ancilla LCU circuit on (a1, a0, s0, s1). Outcome (a0,a1)=(1,0) applies
/// [(I-Zp) + e^{i pi/4}(I-Zq)]/4 and (1,1) the difference.
Circuit build_offdiagonal_circuit(const PauliString &zp, const PauliString &zq, const Eigen::Matrix4cd &prep,
                                  DecompositionChoice choice, std::string name = {});
Circuit build_offdiagonal_circuit(const FermionOp &p, const FermionOp &q, const Eigen::Matrix4cd &prep,
                                  DecompositionChoice choice);

/// CCZ on a contiguous triple; the returned gates address positions q0 < q1 < q2.
std::vector<Gate> decompose_ccz_itoffoli(int q0, int q1, int q2);
std::vector<Gate> decompose_ccz_cz(int q0, int q1, int q2);

/// Local rewrites (SWAP-pair removal, 1q merging, diagonal 2q merging,
/// folding into the prep gate) and ASAP rescheduling. SWAP gates present in
/// the input are kept as native two-qubit gates.
Circuit transpile(const Circuit &c);

struct GateCensus {
    int depth = 0;  // moments, excluding virtual-Z-only moments and the prep gate
    int n_1q = 0;   // physical single-qubit gates
    int n_virtual_z = 0;
    int n_2q = 0;  // CZ, CS, CS^dag, CZphi, SWAP
    int n_cz = 0;
    int n_cs = 0;
    int n_csdg = 0;
    int n_swap = 0;
    int n_itoffoli = 0;
    int prep_2q = 0;  // fixed cost of three CZs per prep gate
};

GateCensus gate_census(const Circuit &c);
std::string census_csv_header();
std::string census_csv_row(const std::string &label, const GateCensus &g);

/// Applies a 2^k matrix on the listed register positions of an n-qubit state.
void apply_matrix(Eigen::VectorXcd &state, int num_qubits, const Eigen::MatrixXcd &m, const std::vector<int> &qubits);

Eigen::MatrixXcd circuit_unitary(const Circuit &c);

/// min over global phases of ||a - e^{i phi} b|| (Frobenius).
double phase_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

}  // namespace lcuresp
