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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "lcuresp/circuit.hpp"
#include "lcuresp/model.hpp"
#include "test_util.hpp"

using namespace lcuresp;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXcd ccz_matrix() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(8, 8);
    m(7, 7) = -1.0;
    return m;
}

Circuit from_gates(int n, const std::vector<Gate> &gs) {
    Circuit c(n, {});
    for (const auto &g : gs) c.append(g);
    return c;
}

int count_kind(const std::vector<Gate> &gs, GateKind k) {
    return static_cast<int>(std::count_if(gs.begin(), gs.end(), [&](const Gate &g) { return g.kind == k; }));
}

// Kronecker-built operator for a gate on explicit positions, independent of apply_matrix.
Eigen::MatrixXcd embed_1q(int n, int q, const Eigen::Matrix2cd &u) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
        const Eigen::MatrixXcd f = k == q ? Eigen::MatrixXcd(u) : Eigen::MatrixXcd::Identity(2, 2);
        Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = m(i, j) * f;
        }
        m = next;
    }
    return m;
}

// Diagonal phase e^{i theta} on basis states where all listed qubits are 1.
Eigen::MatrixXcd controlled_phase(int n, const std::vector<int> &qs, double theta) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        bool all = true;
        for (int q : qs) all = all && ((k >> (n - 1 - q)) & 1);
        if (all) m(k, k) = std::polar(1.0, theta);
    }
    return m;
}

struct Fixture {
    EigenSystem sys;
    Eigen::Matrix4cd prep;
};

const Fixture &fixture() {
    static const Fixture f = [] {
        Fixture x{exact_eigensystem(load_hamiltonian_file(std::string(LCURESP_DATA_DIR) + "/synth-B.ham")), {}};
        x.prep = prep_unitary(x.sys.ground_tapered(SymmetrySector::SpinBalanced));
        return x;
    }();
    return f;
}

Eigen::VectorXcd run(const Circuit &c) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << c.num_qubits());
    v(0) = 1.0;
    return circuit_unitary(c) * v;
}

// Random circuit on a linear chain mixing every gate kind the builders emit.
Circuit random_circuit(std::mt19937_64 &rng, int n, int length) {
    static const std::vector<std::string> names{"H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg"};
    std::uniform_int_distribution<int> pick(0, 9), qubit(0, n - 1), pair(0, n - 2), name(0, static_cast<int>(names.size()) - 1);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    Circuit c(n, {});
    for (int k = 0; k < length; ++k) {
        const int choice = pick(rng);
        if (choice < 4) {
            c.append(Gate::one(qubit(rng), gate_matrix_1q(names[static_cast<std::size_t>(name(rng))])));
        } else if (choice == 4) {
            c.append(Gate::phase(qubit(rng), angle(rng)));
        } else if (choice < 8) {
            const int a = pair(rng);
            const GateKind kinds[] = {GateKind::CZ, GateKind::CS, GateKind::CSdg, GateKind::Swap};
            const GateKind kind = kinds[std::uniform_int_distribution<int>(0, 3)(rng)];
            if (rng() & 1) {
                c.append(Gate::two(kind, a, a + 1));
            } else {
                c.append(Gate::two(kind, a + 1, a));
            }
        } else if (choice == 8 && n >= 3) {
            const int a = std::uniform_int_distribution<int>(0, n - 3)(rng);
            c.append(Gate::itoffoli(a, a + 1, a + 2));
        } else {
            c.append(Gate::h(qubit(rng)));
        }
    }
    return c;
}

std::pair<FermionOp, FermionOp> numbers(int p, int q) {
    return {FermionOp::from_index(p, FermionKind::Number), FermionOp::from_index(q, FermionKind::Number)};
}

}  // namespace

TEST(CircuitUnitary, Examples) {
    const Circuit empty(2, {});
    EXPECT_LT((circuit_unitary(empty) - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-15);
    const Circuit cz = from_gates(2, {Gate::two(GateKind::CZ, 0, 1)});
    EXPECT_LT((circuit_unitary(cz) - controlled_phase(2, {0, 1}, std::numbers::pi)).norm(), 1e-15);
    EXPECT_THROW(circuit_unitary(Circuit(6, {})), CircuitError);
}

TEST(CircuitUnitary, MatchesKroneckerProduct) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c(3, {});
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(8, 8);
        for (int k = 0; k < 12; ++k) {
            if (rng() % 3 == 0) {
                const int a = static_cast<int>(rng() % 2);
                c.append(Gate::two(GateKind::CS, a, a + 1));
                expected = controlled_phase(3, {a, a + 1}, std::numbers::pi / 2) * expected;
            } else {
                const int q = static_cast<int>(rng() % 3);
                const Eigen::Matrix2cd u = gate_matrix_1q(rng() % 2 ? "H" : "T");
                c.append(Gate::one(q, u));
                expected = embed_1q(3, q, u) * expected;
            }
        }
        EXPECT_LT((circuit_unitary(c) - expected).norm(), 1e-12);
    }
}

TEST(Gate, IToffoliIsDoublyControlledIX) {
    const Eigen::MatrixXcd m = Gate::itoffoli(0, 1, 2).matrix();
    for (int k = 0; k < 8; ++k) {
        const bool c0 = k & 4, c1 = k & 1;
        const int image = (c0 && c1) ? k ^ 2 : k;
        for (int r = 0; r < 8; ++r) {
            const cd want = r == image ? ((c0 && c1) ? cd(0, 1) : cd(1)) : cd(0);
            EXPECT_LT(std::abs(m(r, k) - want), 1e-15);
        }
    }
}

TEST(Gate, HadamardDressedIToffoliIsCczTimesOuterCs) {
    const Circuit c = from_gates(3, {Gate::h(1), Gate::itoffoli(0, 1, 2), Gate::h(1)});
    const Eigen::MatrixXcd expected = ccz_matrix() * controlled_phase(3, {0, 2}, std::numbers::pi / 2);
    EXPECT_LT((circuit_unitary(c) - expected).norm(), 1e-12);
}

TEST(Decomposition, IToffoliSequenceIsCcz) {
    const auto gs = decompose_ccz_itoffoli(0, 1, 2);
    const Circuit c = from_gates(3, gs);
    c.validate();
    EXPECT_LT(phase_distance(circuit_unitary(c), ccz_matrix()), 1e-12);
    EXPECT_EQ(count_kind(gs, GateKind::IToffoli), 1);
    EXPECT_EQ(count_kind(gs, GateKind::CSdg), 1);
    EXPECT_THROW(decompose_ccz_itoffoli(0, 2, 3), CircuitError);
}

TEST(Decomposition, CzSequenceUsesEightCz) {
    const auto gs = decompose_ccz_cz(0, 1, 2);
    EXPECT_EQ(count_kind(gs, GateKind::CZ), 8);
    EXPECT_EQ(static_cast<int>(std::count_if(gs.begin(), gs.end(), [](const Gate &g) { return g.arity() > 1; })), 8);
    const Circuit c = from_gates(3, gs);
    EXPECT_LT(phase_distance(circuit_unitary(c), ccz_matrix()), 1e-12);
    EXPECT_EQ(gate_census(c).n_2q, 8);
    EXPECT_THROW(decompose_ccz_cz(1, 0, 2), CircuitError);
}

TEST(Decomposition, BasisActionAndSquare) {
    for (const auto &gs : {decompose_ccz_itoffoli(0, 1, 2), decompose_ccz_cz(0, 1, 2)}) {
        const Eigen::MatrixXcd u = circuit_unitary(from_gates(3, gs));
        const cd phase = u(0, 0);
        EXPECT_LT(std::abs(u(6, 6) - phase), 1e-12);  // |110>
        EXPECT_LT(std::abs(u(7, 7) + phase), 1e-12);  // |111>
        std::vector<Gate> twice = gs;
        twice.insert(twice.end(), gs.begin(), gs.end());
        EXPECT_LT(phase_distance(circuit_unitary(from_gates(3, twice)), Eigen::MatrixXcd::Identity(8, 8)), 1e-12);
    }
}

TEST(Decomposition, ShiftedOperands) {
    for (const auto &gs : {decompose_ccz_itoffoli(1, 2, 3), decompose_ccz_cz(1, 2, 3)}) {
        const Eigen::MatrixXcd expected = controlled_phase(4, {1, 2, 3}, std::numbers::pi);
        EXPECT_LT(phase_distance(circuit_unitary(from_gates(4, gs)), expected), 1e-12);
    }
}

TEST(Validate, RejectsBadMoments) {
    Circuit c(3, {});
    c.append(Gate::two(GateKind::CZ, 0, 2));
    EXPECT_THROW(c.validate(), CircuitError);
    Circuit d(3, {});
    d.append_moment(Moment{{Gate::two(GateKind::CZ, 0, 1), Gate::h(2)}});
    EXPECT_THROW(d.validate(), CircuitError);
    Circuit e(3, {});
    e.append_moment(Moment{{Gate::h(1), Gate::x(1)}});
    EXPECT_THROW(e.validate(), CircuitError);
    Circuit f(3, {});
    f.append(Gate::itoffoli(1, 0, 2));
    EXPECT_THROW(f.validate(), CircuitError);
    Circuit g(2, {});
    g.append(Gate::h(2));
    EXPECT_THROW(g.validate(), CircuitError);
}

TEST(Transpile, Examples) {
    EXPECT_TRUE(transpile(from_gates(1, {Gate::h(0), Gate::h(0)})).empty());
    const Circuit swaps = from_gates(2, {Gate::two(GateKind::Swap, 0, 1), Gate::two(GateKind::Swap, 1, 0)});
    EXPECT_TRUE(transpile(swaps).empty());
    // A 1q gate between the swaps is relabelled rather than blocking.
    const Circuit sandwich = from_gates(2, {Gate::two(GateKind::Swap, 0, 1), Gate::h(0), Gate::two(GateKind::Swap, 0, 1)});
    const Circuit t = transpile(sandwich);
    EXPECT_EQ(gate_census(t).n_swap, 0);
    EXPECT_LT(phase_distance(circuit_unitary(t), circuit_unitary(sandwich)), 1e-12);
    const Circuit cs_pair = from_gates(2, {Gate::two(GateKind::CS, 0, 1), Gate::two(GateKind::CS, 0, 1)});
    const auto census = gate_census(transpile(cs_pair));
    EXPECT_EQ(census.n_cz, 1);
    EXPECT_EQ(census.n_2q, 1);
}

TEST(Transpile, RandomCircuitsKeepUnitaryAndDepth) {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const Circuit c = random_circuit(rng, n, 5 + static_cast<int>(rng() % 40));
        const Circuit t = transpile(c);
        ASSERT_NO_THROW(t.validate());
        EXPECT_LT(phase_distance(circuit_unitary(c), circuit_unitary(t)), 1e-10);
        EXPECT_LE(gate_census(t).depth, gate_census(c).depth);
        EXPECT_LE(gate_census(transpile(t)).depth, gate_census(t).depth);
        EXPECT_EQ(gate_census(t).n_itoffoli, gate_census(c).n_itoffoli);
    }
}

TEST(Transpile, PrepAbsorbsPairGates) {
    const auto &fx = fixture();
    const Circuit c = from_gates(3, {Gate::prep(1, 2, fx.prep), Gate::h(2), Gate::two(GateKind::CZ, 1, 2), Gate::h(2), Gate::h(0),
                                     Gate::two(GateKind::CZ, 0, 1)});
    const Circuit t = transpile(c);
    const auto census = gate_census(t);
    EXPECT_EQ(census.n_cz, 1);
    EXPECT_EQ(census.prep_2q, 3);
    EXPECT_LT(phase_distance(circuit_unitary(c), circuit_unitary(t)), 1e-12);
}

TEST(Census, EmptyAndVirtualZ) {
    EXPECT_EQ(gate_census(Circuit(2, {})).depth, 0);
    const Circuit c = from_gates(2, {Gate::one(0, gate_matrix_1q("T")), Gate::h(1), Gate::two(GateKind::CZ, 0, 1)});
    const auto g = gate_census(c);
    EXPECT_EQ(g.depth, 2);
    EXPECT_EQ(g.n_virtual_z, 1);
    EXPECT_EQ(g.n_1q, 1);
    EXPECT_EQ(g.n_2q, 1);
    EXPECT_EQ(census_csv_header(), "circuit,depth,n_1q,n_2q,n_itoffoli");
    EXPECT_EQ(census_csv_row("x", g), "x,2,1,1,0");
    EXPECT_EQ(census_csv_row("0u,0d", g), "\"0u,0d\",2,1,1,0");
}

TEST(DiagonalCircuit, PostSelectedStatesMatchFockOracle) {
    const auto &sys = fixture().sys;
    for (int mode = 0; mode < 4; ++mode) {
        for (auto kind : {FermionKind::Annihilate, FermionKind::Create, FermionKind::Number}) {
            const FermionOp op = FermionOp::from_index(mode, kind);
            const SymmetrySector transform = sector_of(op);
            const Eigen::Matrix4cd prep = prep_unitary(sys.ground_tapered(transform));
            const Circuit c = build_diagonal_circuit(op, prep);
            ASSERT_NO_THROW(c.validate());
            EXPECT_EQ(gate_census(c).n_itoffoli, 0);
            const Eigen::VectorXcd out = run(c);

            // Outcome a0=0 applies the annihilator (or 1 - n), a0=1 the creator (or n).
            Eigen::MatrixXcd first, second;
            if (kind == FermionKind::Number) {
                const Eigen::MatrixXcd n = testutil::fock_operator(mode, FermionKind::Number);
                first = Eigen::MatrixXcd::Identity(16, 16) - n;
                second = n;
            } else {
                first = testutil::fock_operator(mode, FermionKind::Annihilate);
                second = testutil::fock_operator(mode, FermionKind::Create);
            }
            Eigen::VectorXcd expected(8);
            for (int branch = 0; branch < 2; ++branch) {
                const Eigen::VectorXcd image = (branch == 0 ? first : second) * sys.ground_state;
                Eigen::Index top = 0;
                image.cwiseAbs().maxCoeff(&top);
                Eigen::Vector4cd tapered = Eigen::Vector4cd::Zero();
                if (image.norm() > 1e-12) {
                    const auto sector = basis_sector(static_cast<std::uint64_t>(top));
                    ASSERT_TRUE(sector.has_value());
                    tapered = taper_state(image, *sector, transform);
                }
                expected.segment(4 * branch, 4) = tapered;
            }
            // Down-spin tapering carries an overall sign; the global phase must be real.
            const cd overlap = expected.dot(out);
            EXPECT_NEAR(std::abs(overlap), expected.squaredNorm(), 1e-10) << c.name();
            EXPECT_LT(std::abs(overlap.imag()), 1e-10) << c.name();
            const double sign = overlap.real() >= 0 ? 1.0 : -1.0;
            EXPECT_LT((out - sign * expected).norm(), 1e-10) << c.name();
            EXPECT_NEAR(out.squaredNorm(), 1.0, 1e-12);
        }
    }
}

TEST(OffDiagonalCircuit, PostSelectedStatesMatchFockOracle) {
    const auto &fx = fixture();
    const cd omega = std::polar(1.0, std::numbers::pi / 4);
    for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
            if (p == q) continue;
            const Eigen::VectorXcd np = testutil::fock_operator(p, FermionKind::Number) * fx.sys.ground_state;
            const Eigen::VectorXcd nq = testutil::fock_operator(q, FermionKind::Number) * fx.sys.ground_state;
            for (auto choice : {DecompositionChoice::IToffoli, DecompositionChoice::CZOnly}) {
                const auto [P, Q] = numbers(p, q);
                const Circuit c = build_offdiagonal_circuit(P, Q, fx.prep, choice);
                ASSERT_NO_THROW(c.validate());
                const Eigen::VectorXcd out = run(c);
                for (int a1 = 0; a1 < 2; ++a1) {
                    // Register (a1, a0, s0, s1); outcome a0 = 1.
                    const Eigen::VectorXcd full = (np + (a1 ? -omega : omega) * nq) / 2.0;
                    const Eigen::Vector4cd expected =
                        taper_state(full, SymmetrySector::SpinBalanced, SymmetrySector::SpinBalanced);
                    const Eigen::Vector4cd got = out.segment(8 * a1 + 4, 4);
                    EXPECT_LT((got - expected).norm(), 1e-10) << c.name() << " a1=" << a1;
                    EXPECT_NEAR(got.squaredNorm(), expected.squaredNorm(), 1e-10);
                }
            }
        }
    }
}

TEST(OffDiagonalCircuit, IdentityOperatorsGiveZeroProbability) {
    const auto &fx = fixture();
    const PauliString id = PauliString::parse("II");
    for (auto choice : {DecompositionChoice::IToffoli, DecompositionChoice::CZOnly}) {
        const Eigen::VectorXcd out = run(build_offdiagonal_circuit(id, id, fx.prep, choice));
        EXPECT_LT(out.segment(4, 4).norm(), 1e-12);
        EXPECT_LT(out.segment(12, 4).norm(), 1e-12);
    }
}

TEST(OffDiagonalCircuit, BranchesAgreeAndCountIToffoli) {
    const auto &fx = fixture();
    for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
            if (p == q) continue;
            const auto [P, Q] = numbers(p, q);
            const Circuit ci = build_offdiagonal_circuit(P, Q, fx.prep, DecompositionChoice::IToffoli);
            const Circuit cz = build_offdiagonal_circuit(P, Q, fx.prep, DecompositionChoice::CZOnly);
            EXPECT_LT(phase_distance(circuit_unitary(ci), circuit_unitary(cz)), 1e-10) << ci.name();
            const Circuit ti = transpile(ci), tz = transpile(cz);
            EXPECT_LT(phase_distance(circuit_unitary(ci), circuit_unitary(ti)), 1e-10);
            EXPECT_LT(phase_distance(circuit_unitary(cz), circuit_unitary(tz)), 1e-10);
            EXPECT_EQ(gate_census(ti).n_itoffoli, 2) << ci.name();
            EXPECT_EQ(gate_census(tz).n_itoffoli, 0);
            EXPECT_LT(gate_census(ti).depth, gate_census(ci).depth);
            EXPECT_LE(gate_census(tz).depth, gate_census(cz).depth);
            EXPECT_EQ(gate_census(ti).n_swap, 0);
        }
    }
}

TEST(OffDiagonalCircuit, Rejections) {
    const auto &fx = fixture();
    const auto [P, Q] = numbers(0, 0);
    EXPECT_THROW(build_offdiagonal_circuit(P, Q, fx.prep, DecompositionChoice::IToffoli), CircuitError);
    const FermionOp a = FermionOp::from_index(1, FermionKind::Annihilate);
    EXPECT_THROW(build_offdiagonal_circuit(P, a, fx.prep, DecompositionChoice::CZOnly), CircuitError);
    EXPECT_THROW(build_offdiagonal_circuit(PauliString::parse("ZIZ"), PauliString::parse("ZI"), fx.prep, DecompositionChoice::CZOnly),
                 CircuitError);
}

TEST(Circuit, DumpFormat) {
    const Circuit c = from_gates(3, {Gate::h(0), Gate::itoffoli(0, 1, 2), Gate::two(GateKind::CS, 1, 2)});
    EXPECT_EQ(c.dump(), "H(0)\niToffoli(0,1,2)\nCS(1,2)\n");
}

TEST(PhaseDistance, IgnoresGlobalPhase) {
    std::mt19937_64 rng(3);
    const Circuit c = random_circuit(rng, 3, 30);
    const Eigen::MatrixXcd u = circuit_unitary(c);
    EXPECT_LT(phase_distance(u, std::polar(1.0, 0.7) * u), 1e-13);
    EXPECT_GT(phase_distance(u, controlled_phase(3, {0}, 0.3) * u), 0.1);
}
