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

#include <cstdint>
#include <string>
#include <vector>

#include "lcuresp/circuit.hpp"
#include "lcuresp/sim.hpp"

namespace lcuresp {

class RcError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// G = T G Tc up to global phase: Tc goes before the gate, T after.
struct TwirlPair {
    PauliString t;
    PauliString tc;
    bool exact = false;  // holds with global phase +1
};

struct TwirlSet {
    GateKind gate = GateKind::CZ;
    int arity = 2;
    int n_total = 0;  // 4^arity candidates
    std::vector<TwirlPair> pairs;

    int size() const { return static_cast<int>(pairs.size()); }
    int exact_size() const;
};

/// Brute force over all Pauli strings of the gate's arity. Supports CZ, CS,
/// CS^dag and iToffoli; throws RcError otherwise.
TwirlSet twirl_set(GateKind kind);
/// Cached sets for the four twirlable kinds.
const TwirlSet &cached_twirl_set(GateKind kind);

std::string gate_kind_name(GateKind kind);

/// Folds a uniformly drawn twirl pair around every hard moment into the
/// neighbouring single-qubit moments. The prep gate is left bare.
Circuit randomize(const Circuit &c, std::uint64_t seed);

struct RandomizedBatch {
    std::uint64_t seed = 0;
    std::vector<Circuit> circuits;
};

/// Per-randomization seeds are drawn from a generator seeded with `seed`.
RandomizedBatch randomize_batch(const Circuit &c, int n_rand, std::uint64_t seed);

/// Uniform mixture of run_density over `n_rand` randomizations, from |0...0>.
DensityMatrix rc_average(const Circuit &c, int n_rand, const NoiseModel &noise, std::uint64_t seed);

/// PTM of the error of one noisy cycle, referred to the ideal gate:
/// avg_k G^dag o T_k o E o G o Tc_k over the twirl pairs, or G^dag o E o G when
/// `twirls` is null.
Eigen::MatrixXd cycle_error_ptm(GateKind kind, const Channel &error, const TwirlSet *twirls);

/// Frobenius norm of the off-diagonal part.
double offdiagonal_mass(const Eigen::MatrixXd &ptm);

/// CSV `gate,n_twirl,n_total,members...`, members as T:Tc, for CZ, CS, CS^dag, iToffoli.
std::string twirl_audit_csv();

}  // namespace lcuresp
