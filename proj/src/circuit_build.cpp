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

// LCU circuit construction and CCZ decompositions.

#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "lcuresp/circuit.hpp"

namespace lcuresp {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool near_angle(double a, double b) {
    const double d = std::remainder(a - b, 2 * kPi);
    return std::abs(d) < 1e-9;
}

// SWAP(a, b) as three Hadamard-dressed CZs.
std::vector<Gate> lowered_swap(int a, int b) {
    std::vector<Gate> out;
    for (int t : {a, b, a}) {
        out.push_back(Gate::h(t));
        out.push_back(Gate::two(GateKind::CZ, a, b));
        out.push_back(Gate::h(t));
    }
    return out;
}

// Emits gates one per moment and tracks where each logical qubit sits, so
// routing swaps can be left in place between blocks.
class Emitter {
  public:
    explicit Emitter(Circuit &c) : c_(c) {
        for (int q = 0; q < 4; ++q) phys_[q] = q;
    }

    int at(int logical) const { return phys_[logical]; }
    bool permuted() const {
        for (int q = 0; q < 4; ++q) {
            if (phys_[q] != q) return true;
        }
        return false;
    }

    void raw(Gate g) { c_.append(std::move(g)); }
    void one(int lq, const Eigen::Matrix2cd &u, const std::string &name) { raw(Gate::one(at(lq), u, name)); }
    void h(int lq) { raw(Gate::h(at(lq))); }
    void x(int lq) { raw(Gate::x(at(lq))); }
    void phase(int lq, double theta) {
        if (!near_angle(theta, 0.0)) raw(Gate::phase(at(lq), theta));
    }
    void cz(int la, int lb) { raw(Gate::two(GateKind::CZ, at(la), at(lb))); }
    void cnot(int lc, int lt) {
        h(lt);
        cz(lc, lt);
        h(lt);
    }
    void swap_physical(int pa, int pb) {
        for (auto &g : lowered_swap(pa, pb)) raw(std::move(g));
        for (auto &p : phys_) {
            if (p == pa) {
                p = pb;
            } else if (p == pb) {
                p = pa;
            }
        }
    }

  private:
    Circuit &c_;
    std::array<int, 4> phys_{};
};

// Rotates each non-identity letter to Z (forward) or back (inverse).
void basis_change(Emitter &e, const PauliString &p, const std::array<int, 2> &sys, bool forward) {
    for (int k = 0; k < 2; ++k) {
        const Pauli l = p[static_cast<std::size_t>(k)];
        if (l == Pauli::X) {
            e.h(sys[k]);
        } else if (l == Pauli::Y) {
            if (forward) {
                e.one(sys[k], gate_matrix_1q("Sdg"), "Sdg");
                e.h(sys[k]);
            } else {
                e.h(sys[k]);
                e.one(sys[k], gate_matrix_1q("S"), "S");
            }
        }
    }
}

// Moves the Z-parity of the support onto sys[0]; the inverse undoes it.
void parity_collapse(Emitter &e, const PauliString &p, const std::array<int, 2> &sys, bool forward) {
    const bool on0 = p[0] != Pauli::I, on1 = p[1] != Pauli::I;
    if (on0 && on1) {
        e.cnot(sys[1], sys[0]);
    } else if (!on0 && on1) {
        if (forward) {
            e.cnot(sys[0], sys[1]);
            e.cnot(sys[1], sys[0]);
        } else {
            e.cnot(sys[1], sys[0]);
            e.cnot(sys[0], sys[1]);
        }
    }
}

int parity_weight(const PauliString &p) { return static_cast<int>(p.weight()); }

void check_two_qubit(const PauliString &p, const char *what) {
    if (p.size() != 2) throw CircuitError(std::string(what) + ": expected a two-qubit Pauli string, got " + p.to_string());
}

std::string mode_name(const FermionOp &op) { return op.orbital_label(); }

}  // namespace

std::vector<Gate> decompose_ccz_itoffoli(int q0, int q1, int q2) {
    if (q1 != q0 + 1 || q2 != q1 + 1) throw CircuitError("decompose_ccz_itoffoli: operands must be contiguous");
    // H-dressed iToffoli gives CCZ times CS on the outer pair; the routed CS^dag cancels it.
    std::vector<Gate> out{Gate::h(q1), Gate::itoffoli(q0, q1, q2), Gate::h(q1)};
    for (auto &g : lowered_swap(q0, q1)) out.push_back(std::move(g));
    out.push_back(Gate::two(GateKind::CSdg, q1, q2));
    for (auto &g : lowered_swap(q0, q1)) out.push_back(std::move(g));
    return out;
}

std::vector<Gate> decompose_ccz_cz(int q0, int q1, int q2) {
    if (q1 != q0 + 1 || q2 != q1 + 1) throw CircuitError("decompose_ccz_cz: operands must be contiguous");
    // Phase polynomial of CCZ: T on the three single parities and the full
    // parity, T^dag on the three pair parities. The CNOT ladder below visits
    // every pair parity and the full parity and returns to the identity.
    const std::array<int, 3> q{q0, q1, q2};
    std::array<unsigned, 3> wire{1u, 2u, 4u};
    std::array<bool, 8> done{};
    std::vector<Gate> out;
    auto place = [&](int k) {
        const unsigned par = wire[k];
        if (done[par]) return;
        done[par] = true;
        out.push_back(Gate::one(q[k], gate_matrix_1q(std::popcount(par) == 2 ? "Tdg" : "T"), std::popcount(par) == 2 ? "Tdg" : "T"));
    };
    for (int k = 0; k < 3; ++k) place(k);
    for (int round = 0; round < 4; ++round) {
        for (int k = 0; k < 2; ++k) {
            out.push_back(Gate::h(q[k + 1]));
            out.push_back(Gate::two(GateKind::CZ, q[k], q[k + 1]));
            out.push_back(Gate::h(q[k + 1]));
            wire[k + 1] ^= wire[k];
            place(k + 1);
        }
    }
    for (unsigned par = 1; par < 8; ++par) {
        if (!done[par]) throw std::logic_error("decompose_ccz_cz: parity not visited");
    }
    return out;
}

Circuit build_diagonal_circuit(const PauliString &v0, const PauliString &v1, const Eigen::Matrix4cd &prep, std::string name) {
    check_two_qubit(v0, "build_diagonal_circuit");
    check_two_qubit(v1, "build_diagonal_circuit");
    Circuit c(3, {"a0", "s0", "s1"}, std::move(name));
    // Logical slots 0..2 map to the register directly; slot 3 is unused.
    Emitter e(c);
    const int a0 = reg::kDiagA0;
    const std::array<int, 2> sys{reg::kDiagS0, reg::kDiagS1};

    e.raw(Gate::prep(sys[0], sys[1], prep));
    e.h(a0);
    auto controlled = [&](const PauliString &v, int control_value) {
        const bool wrap = control_value == 0;
        const bool trivial = v.is_identity_letters() && v.phase() == Phase::one();
        if (trivial) return;
        if (wrap) e.x(a0);
        e.phase(a0, v.phase().quarter_turns() * kPi / 2);
        if (!v.is_identity_letters()) {
            basis_change(e, v, sys, true);
            parity_collapse(e, v, sys, true);
            e.cz(a0, sys[0]);
            parity_collapse(e, v, sys, false);
            basis_change(e, v, sys, false);
        }
        if (wrap) e.x(a0);
    };
    controlled(v0, 0);
    controlled(v1, 1);
    e.h(a0);
    c.validate();
    return c;
}

Circuit build_diagonal_circuit(const FermionOp &op, const Eigen::Matrix4cd &prep) {
    const auto [v0, v1] = lcu_pair(op);
    const std::string name = (op.kind == FermionKind::Number ? "num_" : "diag_") + mode_name(op);
    return build_diagonal_circuit(v0, v1, prep, name);
}

Circuit build_offdiagonal_circuit(const PauliString &zp, const PauliString &zq, const Eigen::Matrix4cd &prep,
                                  DecompositionChoice choice, std::string name) {
    check_two_qubit(zp, "build_offdiagonal_circuit");
    check_two_qubit(zq, "build_offdiagonal_circuit");
    Circuit c(4, {"a1", "a0", "s0", "s1"}, std::move(name));
    Emitter e(c);
    const int a1 = reg::kA1, a0 = reg::kA0;
    const std::array<int, 2> sys{reg::kS0, reg::kS1};

    e.raw(Gate::prep(sys[0], sys[1], prep));
    e.h(a0);
    e.h(a1);

    // Branch phases d(a0, a1): 1, e^{i pi/4}, sign(Zp), e^{i pi/4} sign(Zq).
    const cd omega = std::polar(1.0, kPi / 4);
    const cd d00 = 1.0, d01 = omega, d10 = zp.phase().value(), d11 = omega * zq.phase().value();
    e.phase(a0, std::arg(d10 / d00));
    e.phase(a1, std::arg(d01 / d00));
    const double theta = std::arg(d11 * d00 / (d01 * d10));
    if (near_angle(theta, kPi)) {
        e.cz(a1, a0);
    } else if (near_angle(theta, kPi / 2)) {
        e.raw(Gate::two(GateKind::CS, e.at(a1), e.at(a0)));
    } else if (near_angle(theta, -kPi / 2)) {
        // CS^dag is not native on the ancilla pair.
        e.raw(Gate::two(GateKind::CS, e.at(a1), e.at(a0)));
        e.cz(a1, a0);
    }

    // Each H-dressed iToffoli leaves a CS between its outer control and s0.
    // When both blocks act on the same support, the outer controls are a1 and
    // its complement in the same frame, so the two leftovers multiply to an S
    // on s0 alone and one virtual S^dag removes them. Otherwise each leftover
    // is cancelled by a routed CS^dag.
    const bool shared_support = !zp.is_identity_letters() && zp.letters() == zq.letters();
    auto ccz = [&](bool second) {
        if (choice == DecompositionChoice::CZOnly) {
            for (auto &g : decompose_ccz_cz(0, 1, 2)) e.raw(std::move(g));
            return;
        }
        e.raw(Gate::h(1));
        e.raw(Gate::itoffoli(0, 1, 2));
        e.raw(Gate::h(1));
        if (shared_support) {
            if (second) e.raw(Gate::one(2, gate_matrix_1q("Sdg"), "Sdg"));
            return;
        }
        // The routing swap is left in place; the next block runs in the
        // exchanged ancilla layout, where CCZ symmetry keeps it valid.
        e.swap_physical(0, 1);
        e.raw(Gate::two(GateKind::CSdg, 1, 2));
    };
    auto block = [&](const PauliString &z, int a1_value, bool second) {
        if (z.is_identity_letters()) return;
        if (a1_value == 0) e.x(a1);
        basis_change(e, z, sys, true);
        parity_collapse(e, z, sys, true);
        ccz(second);
        parity_collapse(e, z, sys, false);
        basis_change(e, z, sys, false);
        if (a1_value == 0) e.x(a1);
    };
    // The two blocks commute. A block that needs a parity collapse goes first
    // so its CNOT sits next to the prep gate.
    const bool q_first = parity_weight(zq) > parity_weight(zp);
    if (q_first) {
        block(zq, 1, false);
        block(zp, 0, true);
    } else {
        block(zp, 0, false);
        block(zq, 1, true);
    }
    if (e.permuted()) e.swap_physical(0, 1);

    e.h(a0);
    e.h(a1);
    c.validate();
    return c;
}

Circuit build_offdiagonal_circuit(const FermionOp &p, const FermionOp &q, const Eigen::Matrix4cd &prep, DecompositionChoice choice) {
    if (p.kind != FermionKind::Number || q.kind != FermionKind::Number) {
        throw CircuitError("build_offdiagonal_circuit: both operators must be number operators");
    }
    if (p.qubit() == q.qubit()) throw CircuitError("build_offdiagonal_circuit: p == q, use the diagonal circuit");
    const auto zp = lcu_pair(p).second, zq = lcu_pair(q).second;
    return build_offdiagonal_circuit(zp, zq, prep, choice, "off_" + mode_name(p) + "_" + mode_name(q) + "_" + to_string(choice));
}

}  // namespace lcuresp
