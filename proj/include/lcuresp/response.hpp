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
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcuresp/model.hpp"
#include "lcuresp/tomo.hpp"

namespace lcuresp {

class ResponseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Complex samples on an increasing frequency grid (eV), values in 1/eV.
struct FrequencySeries {
    std::vector<double> omega;
    std::vector<std::complex<double>> values;
    double eta = 0.1;

    std::size_t size() const { return omega.size(); }
};

/// lo, lo + step, ... up to hi (inclusive within half a step).
std::vector<double> make_grid(double lo, double hi, double step);

/// Transition weights aligned with the eigenstate lists of an EigenSystem.
/// Spin orbitals are indexed 0u, 0d, 1u, 1d.
struct TransitionAmplitudes {
    double ground_energy = 0.0;
    int electrons = 0;
    /// Over the eigenstates of the mode's own symmetry class; zero off the
    /// N+1 (electron) or N-1 (hole) states.
    std::array<std::vector<double>, 4> electron, hole;
    /// Over the spin-balanced eigenstates; zero off the N-electron states.
    std::array<std::vector<double>, 4> density;
    /// Ordered pairs (p, q), p != q, over the spin-balanced eigenstates.
    std::map<std::pair<int, int>, std::vector<std::complex<double>>> density_offdiag;
};

/// Empty container sized for `eig`.
TransitionAmplitudes empty_amplitudes(const EigenSystem &eig);

/// <Psi_l| rho |Psi_l> over the tapered eigenstates of `cls` that hold
/// `electrons` electrons; zero for the others.
std::vector<double> eigenstate_weights(const DensityMatrix &rho, const EigenSystem &eig, SymmetryClass cls, int electrons);

/// For a creation or annihilation mode, the a0=0 state gives hole weights and
/// the a0=1 state electron weights. For a number operator only the a0=1 state
/// is used. Both conditional states enter unnormalized.
void diagonal_amplitudes(TransitionAmplitudes &amps, const ConditionalState &plus, const ConditionalState &minus,
                         const EigenSystem &eig, const FermionOp &op);

/// Weights <Psi_l| rho |Psi_l> of an off-diagonal conditional state over the
/// spin-balanced N-electron states.
std::vector<double> offdiagonal_weights(const ConditionalState &state, const EigenSystem &eig);

/// N = e^{-i pi/4} (T+_pq - T-_pq) + e^{i pi/4} (T+_qp - T-_qp).
std::vector<std::complex<double>> recombine_offdiagonal(const std::vector<double> &t_plus_pq, const std::vector<double> &t_minus_pq,
                                                        const std::vector<double> &t_plus_qp, const std::vector<double> &t_minus_qp);

/// Noiseless weights computed directly from the eigenvectors.
TransitionAmplitudes exact_amplitudes(const EigenSystem &eig);

/// Diagonal Green's function of one spin orbital.
FrequencySeries greens_function(const TransitionAmplitudes &amps, const EigenSystem &eig, int mode,
                                const std::vector<double> &grid, double eta);

/// -Im Tr G / pi, stored in the real part.
FrequencySeries spectral_function(const std::vector<FrequencySeries> &diagonal);

/// Sum of electron and hole weights of one spin orbital.
double spectral_weight(const TransitionAmplitudes &amps, int mode);

struct ResponseSeries {
    FrequencySeries chi;
    /// Ground-state term, sum over spins of <n_p><n_q>; not part of `chi`.
    std::complex<double> static_weight;
};

/// Density response between spatial orbitals p and q summed over spins,
/// evaluated as R(w) + conj(R(-w)) with R the single-pole Lehmann sum over the
/// excited N-electron states, so that Im chi is odd in w.
ResponseSeries response_function(const TransitionAmplitudes &amps, const EigenSystem &eig, int p, int q,
                                 const std::vector<double> &grid, double eta);
/// R(w) only, every N-electron state including the ground state.
FrequencySeries response_function_raw(const TransitionAmplitudes &amps, const EigenSystem &eig, int p, int q,
                                      const std::vector<double> &grid, double eta);

enum class SeriesPart { Complex, Real, Imag };

/// sqrt(mean |a - b|^2) of the chosen part over a shared grid.
double rms_error(const FrequencySeries &a, const FrequencySeries &b, SeriesPart part = SeriesPart::Imag);

/// Real part reconstructed from the imaginary part by a principal-value
/// Hilbert transform over the sampled window (uniform grids only).
std::vector<double> hilbert_real_part(const FrequencySeries &s);

/// `omega_eV,re,im` rows after a units comment.
std::string series_csv(const FrequencySeries &s, const std::string &comment = {});

}  // namespace lcuresp
