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

#include "lcuresp/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace lcuresp {

namespace {

using cd = std::complex<double>;
constexpr double kTol = 1e-12;

const std::vector<std::pair<std::string, Eigen::Matrix2cd>> &named_gates() {
    static const auto table = [] {
        const double r = 1.0 / std::sqrt(2.0);
        const cd i(0, 1);
        const cd t = std::polar(1.0, std::numbers::pi / 4);
        std::vector<std::pair<std::string, Eigen::Matrix2cd>> v;
        auto add = [&](std::string n, cd a, cd b, cd c, cd d) {
            Eigen::Matrix2cd m;
            m << a, b, c, d;
            v.emplace_back(std::move(n), m);
        };
        add("I", 1, 0, 0, 1);
        add("X", 0, 1, 1, 0);
        add("Y", 0, -i, i, 0);
        add("Z", 1, 0, 0, -1);
        add("H", r, r, r, -r);
        add("S", 1, 0, 0, i);
        add("Sdg", 1, 0, 0, -i);
        add("T", 1, 0, 0, t);
        add("Tdg", 1, 0, 0, std::conj(t));
        return v;
    }();
    return table;
}

bool equal_up_to_phase(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    return std::abs(std::abs((b.adjoint() * a).trace()) - 2.0) < 1e-10;
}

}  // namespace

std::string to_string(DecompositionChoice c) { return c == DecompositionChoice::IToffoli ? "itoffoli" : "cz"; }

Eigen::Matrix2cd gate_matrix_1q(std::string_view name) {
    for (const auto &[n, m] : named_gates()) {
        if (n == name) return m;
    }
    throw std::invalid_argument("unknown single-qubit gate '" + std::string(name) + "'");
}

std::string name_1q(const Eigen::Matrix2cd &u) {
    for (const auto &[n, m] : named_gates()) {
        if (equal_up_to_phase(u, m)) return n;
    }
    if (std::abs(u(0, 1)) < kTol && std::abs(u(1, 0)) < kTol) return "Rz";
    return "U";
}

Gate Gate::one(int q, const Eigen::Matrix2cd &u, std::string name) {
    Gate g;
    g.kind = GateKind::Single;
    g.qubits = {q};
    g.single = u;
    g.name = name.empty() ? name_1q(u) : std::move(name);
    return g;
}

Gate Gate::h(int q) { return one(q, gate_matrix_1q("H"), "H"); }
Gate Gate::x(int q) { return one(q, gate_matrix_1q("X"), "X"); }

Gate Gate::phase(int q, double theta) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m(1, 1) = std::polar(1.0, theta);
    return one(q, m);
}

Gate Gate::two(GateKind kind, int a, int b, double angle) {
    if (kind == GateKind::Single || kind == GateKind::IToffoli || kind == GateKind::DensePrep) {
        throw std::invalid_argument("Gate::two: not a two-qubit kind");
    }
    Gate g;
    g.kind = kind;
    g.qubits = {a, b};
    g.angle = angle;
    return g;
}

Gate Gate::itoffoli(int c0, int target, int c1) {
    Gate g;
    g.kind = GateKind::IToffoli;
    g.qubits = {c0, target, c1};
    return g;
}

Gate Gate::prep(int a, int b, const Eigen::Matrix4cd &u) {
    Gate g;
    g.kind = GateKind::DensePrep;
    g.qubits = {a, b};
    g.dense = u;
    return g;
}

bool Gate::is_diagonal() const {
    switch (kind) {
    case GateKind::Single:
        return std::abs(single(0, 1)) < kTol && std::abs(single(1, 0)) < kTol;
    case GateKind::CZ:
    case GateKind::CS:
    case GateKind::CSdg:
    case GateKind::CZPhi:
        return true;
    default:
        return false;
    }
}

Eigen::MatrixXcd Gate::matrix() const {
    switch (kind) {
    case GateKind::Single:
        return single;
    case GateKind::CZ:
    case GateKind::CS:
    case GateKind::CSdg:
    case GateKind::CZPhi: {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
        const double theta = kind == GateKind::CZ     ? std::numbers::pi
                             : kind == GateKind::CS   ? std::numbers::pi / 2
                             : kind == GateKind::CSdg ? -std::numbers::pi / 2
                                                      : angle;
        m(3, 3) = std::polar(1.0, theta);
        return m;
    }
    case GateKind::Swap: {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
        m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1.0;
        return m;
    }
    case GateKind::IToffoli: {
        // Index bits (c0, t, c1); iX on t when both controls are set.
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(8, 8);
        m(5, 5) = m(7, 7) = 0.0;
        m(5, 7) = m(7, 5) = cd(0, 1);
        return m;
    }
    case GateKind::DensePrep:
        return dense;
    }
    return {};
}

std::string Gate::label() const {
    switch (kind) {
    case GateKind::Single:
        return name;
    case GateKind::CZ:
        return "CZ";
    case GateKind::CS:
        return "CS";
    case GateKind::CSdg:
        return "CSdg";
    case GateKind::CZPhi: {
        std::ostringstream s;
        s << "CZphi[" << angle << "]";
        return s.str();
    }
    case GateKind::IToffoli:
        return "iToffoli";
    case GateKind::Swap:
        return "SWAP";
    case GateKind::DensePrep:
        return "Prep";
    }
    return "?";
}

std::string Gate::to_string() const {
    std::string s = label() + "(";
    for (std::size_t i = 0; i < qubits.size(); ++i) s += (i ? "," : "") + std::to_string(qubits[i]);
    return s + ")";
}

bool Moment::is_virtual_only() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate &g) { return g.is_virtual_z(); });
}

Circuit::Circuit(int num_qubits, std::vector<std::string> qubit_names, std::string name)
    : num_qubits_(num_qubits), qubit_names_(std::move(qubit_names)), name_(std::move(name)) {
    if (num_qubits_ <= 0) throw CircuitError("circuit needs at least one qubit");
    if (qubit_names_.empty()) {
        for (int q = 0; q < num_qubits_; ++q) qubit_names_.push_back("q" + std::to_string(q));
    }
    if (static_cast<int>(qubit_names_.size()) != num_qubits_) throw CircuitError("qubit name count mismatch");
}

void Circuit::append(Gate g) { moments_.push_back(Moment{{std::move(g)}}); }

void Circuit::append_moment(Moment m) {
    if (!m.gates.empty()) moments_.push_back(std::move(m));
}

std::vector<Gate> Circuit::gates() const {
    std::vector<Gate> out;
    for (const auto &m : moments_) out.insert(out.end(), m.gates.begin(), m.gates.end());
    return out;
}

void Circuit::validate() const {
    for (std::size_t k = 0; k < moments_.size(); ++k) {
        const auto &m = moments_[k];
        const std::string where = "moment " + std::to_string(k) + ": ";
        if (m.gates.empty()) throw CircuitError(where + "empty moment");
        std::set<int> used;
        bool multi = false;
        for (const auto &g : m.gates) {
            if (g.arity() > 1) multi = true;
            for (int q : g.qubits) {
                if (q < 0 || q >= num_qubits_) throw CircuitError(where + "qubit out of range in " + g.to_string());
                if (!used.insert(q).second) throw CircuitError(where + "overlapping operands at qubit " + std::to_string(q));
            }
            if (g.arity() == 2 && std::abs(g.qubits[0] - g.qubits[1]) != 1) {
                throw CircuitError(where + "non-adjacent operands in " + g.to_string());
            }
            if (g.kind == GateKind::IToffoli) {
                const int t = g.qubits[1];
                if (std::abs(g.qubits[0] - t) != 1 || std::abs(g.qubits[2] - t) != 1) {
                    throw CircuitError(where + "iToffoli operands must be (control, target, control) contiguous");
                }
            }
        }
        if (multi && m.gates.size() != 1) throw CircuitError(where + "multi-qubit gate shares its moment");
    }
}

std::string Circuit::dump() const {
    std::ostringstream out;
    for (const auto &m : moments_) {
        for (std::size_t i = 0; i < m.gates.size(); ++i) out << (i ? " " : "") << m.gates[i].to_string();
        out << "\n";
    }
    return out.str();
}

void apply_matrix(Eigen::VectorXcd &state, int num_qubits, const Eigen::MatrixXcd &m, const std::vector<int> &qubits) {
    const int k = static_cast<int>(qubits.size());
    const std::size_t sub = std::size_t{1} << k;
    std::vector<std::size_t> masks(k);
    std::size_t all = 0;
    for (int j = 0; j < k; ++j) {
        masks[j] = std::size_t{1} << (num_qubits - 1 - qubits[j]);
        all |= masks[j];
    }
    std::vector<std::size_t> offsets(sub);
    for (std::size_t s = 0; s < sub; ++s) {
        std::size_t off = 0;
        for (int j = 0; j < k; ++j) {
            if (s & (std::size_t{1} << (k - 1 - j))) off |= masks[j];
        }
        offsets[s] = off;
    }
    Eigen::VectorXcd in(static_cast<Eigen::Index>(sub)), out;
    const std::size_t dim = std::size_t{1} << num_qubits;
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & all) continue;
        for (std::size_t s = 0; s < sub; ++s) in(static_cast<Eigen::Index>(s)) = state(static_cast<Eigen::Index>(base | offsets[s]));
        out = m * in;
        for (std::size_t s = 0; s < sub; ++s) state(static_cast<Eigen::Index>(base | offsets[s])) = out(static_cast<Eigen::Index>(s));
    }
}

Eigen::MatrixXcd circuit_unitary(const Circuit &c) {
    if (c.num_qubits() > 5) throw CircuitError("circuit_unitary supports at most 5 qubits");
    const Eigen::Index dim = Eigen::Index{1} << c.num_qubits();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::VectorXcd v = u.col(col);
        for (const auto &m : c.moments()) {
            for (const auto &g : m.gates) apply_matrix(v, c.num_qubits(), g.matrix(), g.qubits);
        }
        u.col(col) = v;
    }
    return u;
}

double phase_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    const cd overlap = (b.adjoint() * a).trace();
    const cd phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cd(1.0);
    return (a - phase * b).norm();
}

}  // namespace lcuresp
