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

#include "lcuresp/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

namespace lcuresp {

namespace {

double commutator_norm(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) { return (a * b - b * a).norm(); }

// Fixes the global phase so the largest-magnitude amplitude is real positive.
void fix_phase(Eigen::VectorXcd &v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (std::abs(v(i)) > std::abs(v(best)) + 1e-12) best = i;
    }
    v *= std::conj(v(best)) / std::abs(v(best));
}

std::vector<std::uint64_t> class_members(SymmetryClass c) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t b = 0; b < 16; ++b) {
        auto s = basis_sector(b);
        SymmetryClass bc = s ? to_class(*s) : SymmetryClass::Unused;
        if (bc == c) out.push_back(b);
    }
    return out;
}

double electron_count(const Eigen::VectorXcd &state) {
    double n = 0.0;
    for (Eigen::Index b = 0; b < state.size(); ++b) {
        n += std::norm(state(b)) * std::popcount(static_cast<unsigned>(b));
    }
    return n;
}

}  // namespace

Eigen::MatrixXcd QubitHamiltonian::dense() const {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(16, 16);
    for (const auto &t : terms) h += t.coefficient * t.pauli.matrix();
    return h;
}

SymmetryReport check_symmetries(const Eigen::MatrixXcd &dense) {
    SymmetryReport r;
    r.hermiticity_residual = (dense - dense.adjoint()).norm();
    r.zizi_commutator = commutator_norm(dense, PauliString::parse("ZIZI").matrix());
    r.iziz_commutator = commutator_norm(dense, PauliString::parse("IZIZ").matrix());
    return r;
}

QubitHamiltonian load_hamiltonian(std::string_view text, std::string label) {
    QubitHamiltonian h;
    h.label = std::move(label);
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string coeff_text, word, extra;
        if (!(fields >> coeff_text)) continue;
        if (!(fields >> word) || (fields >> extra)) {
            throw HamiltonianError("line " + std::to_string(line_no) + ": expected '<coefficient> <pauli word>'");
        }
        double coeff = 0.0;
        try {
            std::size_t used = 0;
            coeff = std::stod(coeff_text, &used);
            if (used != coeff_text.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception &) {
            throw HamiltonianError("line " + std::to_string(line_no) + ": bad coefficient '" + coeff_text + "'");
        }
        if (word.size() != 4 || word.find_first_not_of("IXYZ") != std::string::npos) {
            throw HamiltonianError("line " + std::to_string(line_no) + ": expected a 4-letter Pauli word, got '" + word + "'");
        }
        h.terms.push_back({coeff, PauliString::parse(word)});
    }
    if (h.terms.empty()) throw HamiltonianError("Hamiltonian has no terms");
    h.report = check_symmetries(h.dense());
    if (h.report.zizi_commutator > 1e-10 || h.report.iziz_commutator > 1e-10) {
        std::ostringstream msg;
        msg << "Hamiltonian does not commute with the parity symmetries: ||[H,ZIZI]|| = " << h.report.zizi_commutator
            << ", ||[H,IZIZ]|| = " << h.report.iziz_commutator;
        throw HamiltonianError(msg.str());
    }
    return h;
}

QubitHamiltonian load_hamiltonian_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw HamiltonianError("cannot open Hamiltonian file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return load_hamiltonian(buf.str(), path.stem().string());
}

SymmetryClass to_class(SymmetrySector s) {
    switch (s) {
    case SymmetrySector::SpinBalanced:
        return SymmetryClass::SpinBalanced;
    case SymmetrySector::UpSpin:
        return SymmetryClass::UpSpin;
    case SymmetrySector::DownSpin:
        return SymmetryClass::DownSpin;
    }
    return SymmetryClass::Unused;
}

const std::vector<Eigenpair> &EigenSystem::sector(SymmetrySector s) const {
    return classes[static_cast<std::size_t>(to_class(s))];
}

Eigen::VectorXcd EigenSystem::ground_tapered(SymmetrySector transform) const {
    return taper_state(ground_state, SymmetrySector::SpinBalanced, transform);
}

Eigen::VectorXcd taper_state(const Eigen::VectorXcd &state, SymmetrySector state_sector, SymmetrySector transform) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(4);
    for (std::uint64_t b : class_members(to_class(state_sector))) {
        out(static_cast<Eigen::Index>(taper_index(b, state_sector, transform))) = state(static_cast<Eigen::Index>(b));
    }
    return out;
}

EigenSystem exact_eigensystem(const QubitHamiltonian &h) {
    const Eigen::MatrixXcd dense = h.dense();
    EigenSystem sys;
    double global_min = std::numeric_limits<double>::infinity();

    for (int c = 0; c < 4; ++c) {
        const auto cls = static_cast<SymmetryClass>(c);
        const auto members = class_members(cls);
        const auto m = static_cast<Eigen::Index>(members.size());
        Eigen::MatrixXcd block(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) block(i, j) = dense(members[i], members[j]);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
        for (Eigen::Index k = 0; k < m; ++k) {
            Eigenpair e;
            e.energy = solver.eigenvalues()(k);
            e.state = Eigen::VectorXcd::Zero(16);
            for (Eigen::Index i = 0; i < m; ++i) e.state(members[i]) = solver.eigenvectors()(i, k);
            fix_phase(e.state);
            e.electron_count = electron_count(e.state);
            if (cls != SymmetryClass::Unused) {
                const auto sector = cls == SymmetryClass::UpSpin     ? SymmetrySector::UpSpin
                                    : cls == SymmetryClass::DownSpin ? SymmetrySector::DownSpin
                                                                     : SymmetrySector::SpinBalanced;
                e.tapered = taper_state(e.state, sector, sector);
            }
            global_min = std::min(global_min, e.energy);
            sys.classes[c].push_back(std::move(e));
        }
        for (std::size_t k = 1; k < sys.classes[c].size(); ++k) {
            if (std::abs(sys.classes[c][k].energy - sys.classes[c][k - 1].energy) < 1e-8) {
                std::ostringstream note;
                note << "degenerate multiplet in class " << c << " at E = " << sys.classes[c][k].energy
                     << " eV; transition weights are summed over the multiplet";
                sys.notes.push_back(note.str());
            }
        }
    }

    const auto &balanced = sys.classes[static_cast<std::size_t>(SymmetryClass::SpinBalanced)];
    if (balanced.size() > 1 && std::abs(balanced[1].energy - balanced[0].energy) < 1e-8) {
        sys.ground_degenerate = true;
        sys.notes.push_back("degenerate ground state in the spin-balanced sector; lowest eigenvector used as reference");
    }
    sys.ground_energy = balanced.front().energy;
    sys.ground_state = balanced.front().state;
    if (sys.ground_energy > global_min + 1e-10) {
        sys.notes.push_back("spin-balanced ground state is not the global minimum of H");
    }
    return sys;
}

Eigen::Matrix4cd prep_unitary(const Eigen::Vector4cd &psi0) {
    if (std::abs(psi0.norm() - 1.0) > 1e-10) throw std::invalid_argument("prep_unitary: state is not normalized");
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u.col(0) = psi0;
    int filled = 1;
    for (int k = 0; k < 4 && filled < 4; ++k) {
        Eigen::Vector4cd v = Eigen::Vector4cd::Unit(k);
        // Two passes of modified Gram-Schmidt keep the residual near machine precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < filled; ++j) v -= u.col(j).dot(v) * u.col(j);
        }
        if (v.norm() < 1e-6) continue;
        u.col(filled++) = v / v.norm();
    }
    return u;
}

}  // namespace lcuresp
