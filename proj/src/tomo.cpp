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

#include "lcuresp/tomo.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace lcuresp {

namespace {

std::string bitstring(std::uint64_t index, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k) {
        if ((index >> (n - 1 - k)) & 1u) s[static_cast<std::size_t>(k)] = '1';
    }
    return s;
}

// Basis change that maps the eigenbasis of `basis` onto Z.
void add_rotation(Circuit &c, int q, Pauli basis) {
    if (basis == Pauli::Y) c.append(Gate::one(q, gate_matrix_1q("Sdg"), "Sdg"));
    if (basis == Pauli::X || basis == Pauli::Y) c.append(Gate::h(q));
}

std::vector<double> distribution(const DensityMatrix &rho, int n, const NoiseModel &noise, const TomoSetting &s) {
    Circuit rot(n, {});
    add_rotation(rot, n - 2, s.s0);
    add_rotation(rot, n - 1, s.s1);
    const DensityMatrix out = rot.empty() ? rho : run_density(rot, noise, rho);
    std::vector<double> p(static_cast<std::size_t>(out.rows()));
    for (Eigen::Index k = 0; k < out.rows(); ++k) p[static_cast<std::size_t>(k)] = std::max(0.0, out(k, k).real());
    return p;
}

void check_state(const DensityMatrix &rho, int n) {
    if (n < 2) throw TomoError("tomography needs at least two qubits");
    if (rho.rows() != (Eigen::Index{1} << n) || rho.cols() != rho.rows()) throw TomoError("density matrix does not match the qubit count");
}

}  // namespace

std::string TomoSetting::label() const { return {pauli_char(s0), pauli_char(s1)}; }

const std::array<TomoSetting, 9> &tomo_settings() {
    static const std::array<TomoSetting, 9> settings = [] {
        std::array<TomoSetting, 9> s;
        std::size_t k = 0;
        for (Pauli a : {Pauli::X, Pauli::Y, Pauli::Z}) {
            for (Pauli b : {Pauli::X, Pauli::Y, Pauli::Z}) s[k++] = {a, b};
        }
        return s;
    }();
    return settings;
}

MeasurementRecord measure_exact(const DensityMatrix &rho, int num_qubits, const NoiseModel &noise) {
    check_state(rho, num_qubits);
    MeasurementRecord rec;
    rec.num_qubits = num_qubits;
    for (std::size_t k = 0; k < 9; ++k) rec.counts[k] = distribution(rho, num_qubits, noise, tomo_settings()[k]);
    return rec;
}

MeasurementRecord sample_measurements(const DensityMatrix &rho, int num_qubits, const NoiseModel &noise, int shots, std::uint64_t seed) {
    if (shots < 1) throw TomoError("shots must be at least 1");
    check_state(rho, num_qubits);
    MeasurementRecord rec;
    rec.num_qubits = num_qubits;
    rec.shots = shots;
    std::mt19937_64 master(seed);
    for (std::size_t k = 0; k < 9; ++k) {
        const auto p = distribution(rho, num_qubits, noise, tomo_settings()[k]);
        std::mt19937_64 rng(master());
        std::discrete_distribution<std::size_t> draw(p.begin(), p.end());
        rec.counts[k].assign(p.size(), 0.0);
        for (int s = 0; s < shots; ++s) rec.counts[k][draw(rng)] += 1.0;
    }
    return rec;
}

MeasurementRecord sample_measurements(const Circuit &c, const NoiseModel &noise, int shots, std::uint64_t seed) {
    const DensityMatrix rho = run_density(c, noise, projector(basis_state(c.num_qubits())));
    return sample_measurements(rho, c.num_qubits(), noise, shots, seed);
}

std::string measurement_csv(const MeasurementRecord &rec) {
    std::ostringstream s;
    s.precision(17);
    s << "# units: " << (rec.exact() ? "probability" : "shots") << " per outcome; bitstring over the full register, first qubit first\n";
    s << "setting,bitstring,count\n";
    for (std::size_t k = 0; k < 9; ++k) {
        for (std::size_t o = 0; o < rec.counts[k].size(); ++o) {
            s << tomo_settings()[k].label() << "," << bitstring(o, rec.num_qubits) << "," << rec.counts[k][o] << "\n";
        }
    }
    return s.str();
}

DensityMatrix project_to_density(const DensityMatrix &m) {
    const DensityMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXd lam = es.eigenvalues();
    // Euclidean projection of the spectrum onto the probability simplex.
    std::vector<double> sorted(lam.data(), lam.data() + lam.size());
    std::sort(sorted.rbegin(), sorted.rend());
    double cumulative = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cumulative += sorted[k];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - t > 0.0) theta = t;
    }
    for (Eigen::Index k = 0; k < lam.size(); ++k) lam[k] = std::max(lam[k] - theta, 0.0);
    return es.eigenvectors() * lam.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
}

ConditionalState reconstruct_conditional(const MeasurementRecord &rec, const std::string &ancilla_bits) {
    const int na = rec.num_ancillas();
    if (static_cast<int>(ancilla_bits.size()) != na || ancilla_bits.find_first_not_of("01") != std::string::npos) {
        throw TomoError("ancilla bitstring '" + ancilla_bits + "' does not match " + std::to_string(na) + " ancillas");
    }
    std::uint64_t want = 0;
    for (char c : ancilla_bits) want = (want << 1) | (c == '1' ? 1u : 0u);

    double total = 0.0, kept = 0.0;
    // expectation sums and weights, indexed by 4*a + b over letters I, X, Y, Z
    std::array<double, 16> sum{}, weight{};
    for (std::size_t k = 0; k < 9; ++k) {
        const auto &counts = rec.counts[k];
        const TomoSetting &s = tomo_settings()[k];
        for (std::size_t o = 0; o < counts.size(); ++o) {
            const double n = counts[o];
            total += n;
            if ((o >> 2) != want || n == 0.0) continue;
            kept += n;
            const int z0 = (o >> 1) & 1u ? -1 : 1, z1 = o & 1u ? -1 : 1;
            for (int a = 0; a < 4; ++a) {
                if (a != 0 && a != static_cast<int>(s.s0)) continue;
                for (int b = 0; b < 4; ++b) {
                    if (b != 0 && b != static_cast<int>(s.s1)) continue;
                    const int sign = (a ? z0 : 1) * (b ? z1 : 1);
                    sum[static_cast<std::size_t>(4 * a + b)] += sign * n;
                    weight[static_cast<std::size_t>(4 * a + b)] += n;
                }
            }
        }
    }
    if (total == 0.0) throw TomoError("reconstruction failed: the record is empty");
    if (kept == 0.0) throw TomoError("no counts in ancilla subspace " + ancilla_bits);

    DensityMatrix m = DensityMatrix::Zero(4, 4);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const auto idx = static_cast<std::size_t>(4 * a + b);
            if (weight[idx] == 0.0) continue;
            const PauliString p(Phase::one(), {static_cast<Pauli>(a), static_cast<Pauli>(b)});
            m += (sum[idx] / weight[idx]) * p.matrix();
        }
    }
    return {ancilla_bits, kept / total, project_to_density(m / 4.0)};
}

DensityMatrix mcweeny_step(const DensityMatrix &rho) {
    const DensityMatrix sq = rho * rho;
    return 3.0 * sq - 2.0 * sq * rho;
}

PurifyResult mcweeny_purify(const DensityMatrix &rho) {
    constexpr double kTol = 1e-8;
    constexpr int kMaxIterations = 100;
    PurifyResult r{rho, 0, false};
    for (;;) {
        if ((r.rho * r.rho - r.rho).norm() < kTol) {
            r.converged = true;
            return r;
        }
        if (r.iterations == kMaxIterations) return r;
        DensityMatrix next = mcweeny_step(r.rho);
        next = (next + next.adjoint()).eval() / 2.0;
        r.rho = next / next.trace().real();
        ++r.iterations;
    }
}

}  // namespace lcuresp
