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

#include "lcuresp/rc.hpp"

#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace lcuresp {

namespace {

using cd = std::complex<double>;
constexpr double kTol = 1e-10;

bool twirlable(GateKind k) { return k == GateKind::CZ || k == GateKind::CS || k == GateKind::CSdg || k == GateKind::IToffoli; }

Eigen::MatrixXcd kind_matrix(GateKind kind) {
    switch (kind) {
    case GateKind::IToffoli:
        return Gate::itoffoli(0, 1, 2).matrix();
    case GateKind::CZ:
    case GateKind::CS:
    case GateKind::CSdg:
        return Gate::two(kind, 0, 1).matrix();
    default:
        throw RcError("no twirl set for gate kind " + gate_kind_name(kind));
    }
}

// Returns the phase c with a = c b when one exists.
std::optional<cd> proportional(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    const cd overlap = (b.adjoint() * a).trace() / static_cast<double>(a.rows());
    if (std::abs(std::abs(overlap) - 1.0) > kTol) return std::nullopt;
    if ((a - overlap * b).cwiseAbs().maxCoeff() > kTol) return std::nullopt;
    return overlap;
}

// Appends single-qubit Pauli letters as gates of one moment (identity letters skipped).
void add_letters(Moment &m, const PauliString &p, const std::vector<int> &qubits) {
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        const Pauli l = p[k];
        if (l == Pauli::I) continue;
        const std::string name(1, pauli_char(l));
        m.gates.push_back(Gate::one(qubits[k], pauli_matrix(l), name));
    }
}

bool is_easy(const Moment &m) { return !m.is_multi_qubit(); }

// Multiplies `later` into `earlier`, both single-qubit moments.
void fold(Moment &earlier, const Moment &later) {
    for (const auto &g : later.gates) {
        auto it = std::find_if(earlier.gates.begin(), earlier.gates.end(), [&](const Gate &e) { return e.qubits[0] == g.qubits[0]; });
        if (it == earlier.gates.end()) {
            earlier.gates.push_back(g);
        } else {
            it->single = (g.single * it->single).eval();
            it->name = name_1q(it->single);
        }
    }
}

}  // namespace

int TwirlSet::exact_size() const {
    return static_cast<int>(std::count_if(pairs.begin(), pairs.end(), [](const TwirlPair &p) { return p.exact; }));
}

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
    case GateKind::Single:
        return "single";
    case GateKind::CZ:
        return "CZ";
    case GateKind::CS:
        return "CS";
    case GateKind::CSdg:
        return "CSdg";
    case GateKind::CZPhi:
        return "CZphi";
    case GateKind::IToffoli:
        return "iToffoli";
    case GateKind::Swap:
        return "SWAP";
    case GateKind::DensePrep:
        return "Prep";
    }
    return "?";
}

TwirlSet twirl_set(GateKind kind) {
    const Eigen::MatrixXcd g = kind_matrix(kind);
    TwirlSet set;
    set.gate = kind;
    set.arity = kind == GateKind::IToffoli ? 3 : 2;
    const auto candidates = all_pauli_strings(static_cast<std::size_t>(set.arity));
    set.n_total = static_cast<int>(candidates.size());
    std::vector<Eigen::MatrixXcd> mats;
    for (const auto &p : candidates) mats.push_back(p.matrix());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = 0; j < candidates.size(); ++j) {
            const auto phase = proportional(mats[i] * g * mats[j], g);
            if (!phase) continue;
            set.pairs.push_back({candidates[i], candidates[j], std::abs(*phase - 1.0) < kTol});
        }
    }
    return set;
}

const TwirlSet &cached_twirl_set(GateKind kind) {
    static std::mutex mu;
    static std::map<GateKind, TwirlSet> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(kind);
    if (it == cache.end()) it = cache.emplace(kind, twirl_set(kind)).first;
    return it->second;
}

Circuit randomize(const Circuit &c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Moment> moments;
    for (const auto &m : c.moments()) {
        if (is_easy(m)) {
            moments.push_back(m);
            continue;
        }
        const Gate &g = m.gates.front();
        if (g.kind == GateKind::DensePrep) {
            moments.push_back(m);
            continue;
        }
        if (!twirlable(g.kind)) throw RcError("randomize: hard cycle with unknown gate kind " + gate_kind_name(g.kind));
        const auto &set = cached_twirl_set(g.kind);
        const auto &pair = set.pairs[std::uniform_int_distribution<std::size_t>(0, set.pairs.size() - 1)(rng)];
        Moment before, after;
        add_letters(before, pair.tc, g.qubits);
        add_letters(after, pair.t, g.qubits);
        moments.push_back(std::move(before));
        moments.push_back(m);
        moments.push_back(std::move(after));
    }
    Circuit out(c.num_qubits(), c.qubit_names(), c.name());
    std::vector<Moment> merged;
    for (auto &m : moments) {
        if (m.gates.empty()) continue;
        if (is_easy(m) && !merged.empty() && is_easy(merged.back())) {
            fold(merged.back(), m);
        } else {
            merged.push_back(std::move(m));
        }
    }
    for (auto &m : merged) {
        std::erase_if(m.gates, [](const Gate &g) { return g.kind == GateKind::Single && std::abs(std::abs(g.single.trace()) - 2.0) < 1e-12; });
        std::sort(m.gates.begin(), m.gates.end(), [](const Gate &a, const Gate &b) { return a.qubits[0] < b.qubits[0]; });
        out.append_moment(std::move(m));
    }
    out.validate();
    return out;
}

RandomizedBatch randomize_batch(const Circuit &c, int n_rand, std::uint64_t seed) {
    if (n_rand < 1) throw RcError("n_rand must be at least 1");
    RandomizedBatch batch{seed, {}};
    std::mt19937_64 master(seed);
    for (int k = 0; k < n_rand; ++k) batch.circuits.push_back(randomize(c, master()));
    return batch;
}

DensityMatrix rc_average(const Circuit &c, int n_rand, const NoiseModel &noise, std::uint64_t seed) {
    const auto batch = randomize_batch(c, n_rand, seed);
    const DensityMatrix input = projector(basis_state(c.num_qubits()));
    DensityMatrix sum = DensityMatrix::Zero(input.rows(), input.cols());
    for (const auto &r : batch.circuits) sum += run_density(r, noise, input);
    return sum / static_cast<double>(n_rand);
}

Eigen::MatrixXd cycle_error_ptm(GateKind kind, const Channel &error, const TwirlSet *twirls) {
    const Eigen::MatrixXcd g = kind_matrix(kind);
    if (error.num_qubits != (kind == GateKind::IToffoli ? 3 : 2)) throw RcError("cycle_error_ptm: error channel arity mismatch");
    auto frame = [&](const Channel &inner) {
        return Channel::compose(Channel::compose(Channel::unitary(g), inner), Channel::unitary(g.adjoint()));
    };
    if (!twirls) return channel_ptm(frame(error));
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(std::pow(4, error.num_qubits), std::pow(4, error.num_qubits));
    for (const auto &pair : twirls->pairs) {
        const Channel pre = Channel::unitary(pair.tc.matrix());
        const Channel post = Channel::unitary(pair.t.matrix());
        // Tc, G, E, T, then G^dag.
        const Channel cycle = Channel::compose(Channel::compose(Channel::compose(pre, Channel::unitary(g)), error), post);
        sum += channel_ptm(Channel::compose(cycle, Channel::unitary(g.adjoint())));
    }
    return sum / static_cast<double>(twirls->pairs.size());
}

double offdiagonal_mass(const Eigen::MatrixXd &ptm) {
    Eigen::MatrixXd off = ptm;
    off.diagonal().setZero();
    return off.norm();
}

std::string twirl_audit_csv() {
    std::ostringstream s;
    s << "# units: counts of Pauli strings; members as T:Tc with G = T G Tc up to global phase\n";
    std::ostringstream strict;
    s << "gate,n_twirl,n_total,members...\n";
    for (auto kind : {GateKind::CZ, GateKind::CS, GateKind::CSdg, GateKind::IToffoli}) {
        const auto &set = cached_twirl_set(kind);
        s << gate_kind_name(kind) << "," << set.size() << "," << set.n_total;
        for (const auto &p : set.pairs) s << "," << p.t.to_string() << ":" << p.tc.to_string();
        s << "\n";
        strict << " " << gate_kind_name(kind) << "=" << set.exact_size();
    }
    s << "# with global phase fixed to +1:" << strict.str() << "\n";
    return s.str();
}

}  // namespace lcuresp
