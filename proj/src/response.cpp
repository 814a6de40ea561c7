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

#include "lcuresp/response.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace lcuresp {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;

int count_of(const Eigenpair &e) { return static_cast<int>(std::lround(e.electron_count)); }

const std::vector<Eigenpair> &balanced(const EigenSystem &eig) { return eig.classes[static_cast<std::size_t>(SymmetryClass::SpinBalanced)]; }

const std::vector<Eigenpair> &mode_class(const EigenSystem &eig, int mode) {
    return eig.sector(sector_of(FermionOp::from_index(mode, FermionKind::Create)));
}

void check_mode(int mode) {
    if (mode < 0 || mode > 3) throw ResponseError("spin orbital index out of range: " + std::to_string(mode));
}

void check_grid(const std::vector<double> &grid, double eta) {
    if (grid.empty()) throw ResponseError("empty frequency grid");
    if (!(eta > 0.0)) throw ResponseError("broadening must be positive");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) throw ResponseError("frequency grid must be strictly increasing");
    }
}

void check_same_grid(const FrequencySeries &a, const FrequencySeries &b) {
    if (a.size() != b.size()) throw ResponseError("frequency grids differ in length");
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a.omega[k] - b.omega[k]) > 1e-9) throw ResponseError("frequency grids differ");
    }
}

Eigen::MatrixXcd fermion_matrix(const FermionOp &op) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(16, 16);
    for (const auto &t : jordan_wigner(op)) m += t.coefficient * t.pauli.matrix();
    return m;
}

std::string mode_label(int mode) { return FermionOp::from_index(mode, FermionKind::Number).orbital_label(); }

}  // namespace

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi > lo)) throw ResponseError("grid needs lo < hi and a positive step");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = lo + static_cast<double>(k) * step;
    return g;
}

TransitionAmplitudes empty_amplitudes(const EigenSystem &eig) {
    TransitionAmplitudes a;
    a.ground_energy = eig.ground_energy;
    a.electrons = count_of(balanced(eig).front());
    for (int m = 0; m < 4; ++m) {
        const auto um = static_cast<std::size_t>(m);
        a.electron[um].assign(mode_class(eig, m).size(), 0.0);
        a.hole[um].assign(mode_class(eig, m).size(), 0.0);
        a.density[um].assign(balanced(eig).size(), 0.0);
    }
    return a;
}

std::vector<double> eigenstate_weights(const DensityMatrix &rho, const EigenSystem &eig, SymmetryClass cls, int electrons) {
    if (rho.rows() != 4 || rho.cols() != 4) throw ResponseError("conditional states must be 4x4");
    const auto &states = eig.classes[static_cast<std::size_t>(cls)];
    std::vector<double> w(states.size(), 0.0);
    bool any = false;
    for (std::size_t l = 0; l < states.size(); ++l) {
        if (count_of(states[l]) != electrons) continue;
        any = true;
        w[l] = states[l].tapered.dot(rho * states[l].tapered).real();
    }
    if (!any) throw ResponseError("no eigenstates with " + std::to_string(electrons) + " electrons in the requested symmetry class");
    return w;
}

void diagonal_amplitudes(TransitionAmplitudes &amps, const ConditionalState &plus, const ConditionalState &minus,
                         const EigenSystem &eig, const FermionOp &op) {
    const int mode = op.qubit();
    const auto um = static_cast<std::size_t>(mode);
    const SymmetryClass cls = to_class(sector_of(op));
    if (op.kind == FermionKind::Number) {
        if (cls != SymmetryClass::SpinBalanced) throw ResponseError("number operator outside the spin-balanced class");
        amps.density[um] = eigenstate_weights(minus.unnormalized(), eig, cls, amps.electrons);
        return;
    }
    if (cls == SymmetryClass::SpinBalanced) throw ResponseError("creation or annihilation mapped to the spin-balanced class");
    amps.hole[um] = eigenstate_weights(plus.unnormalized(), eig, cls, amps.electrons - 1);
    amps.electron[um] = eigenstate_weights(minus.unnormalized(), eig, cls, amps.electrons + 1);
}

std::vector<double> offdiagonal_weights(const ConditionalState &state, const EigenSystem &eig) {
    return eigenstate_weights(state.unnormalized(), eig, SymmetryClass::SpinBalanced, count_of(balanced(eig).front()));
}

std::vector<cd> recombine_offdiagonal(const std::vector<double> &t_plus_pq, const std::vector<double> &t_minus_pq,
                                      const std::vector<double> &t_plus_qp, const std::vector<double> &t_minus_qp) {
    const std::size_t n = t_plus_pq.size();
    if (t_minus_pq.size() != n || t_plus_qp.size() != n || t_minus_qp.size() != n) {
        throw ResponseError("off-diagonal recombination needs both orderings over the same eigenstates");
    }
    const cd w = std::polar(1.0, kPi / 4);
    std::vector<cd> out(n);
    for (std::size_t l = 0; l < n; ++l) out[l] = std::conj(w) * (t_plus_pq[l] - t_minus_pq[l]) + w * (t_plus_qp[l] - t_minus_qp[l]);
    return out;
}

TransitionAmplitudes exact_amplitudes(const EigenSystem &eig) {
    TransitionAmplitudes a = empty_amplitudes(eig);
    const Eigen::VectorXcd &psi0 = eig.ground_state;
    std::array<Eigen::VectorXcd, 4> n_psi;
    for (int m = 0; m < 4; ++m) {
        const auto um = static_cast<std::size_t>(m);
        const Eigen::VectorXcd up = fermion_matrix(FermionOp::from_index(m, FermionKind::Create)) * psi0;
        const Eigen::VectorXcd down = fermion_matrix(FermionOp::from_index(m, FermionKind::Annihilate)) * psi0;
        const auto &states = mode_class(eig, m);
        for (std::size_t l = 0; l < states.size(); ++l) {
            if (count_of(states[l]) == a.electrons + 1) a.electron[um][l] = std::norm(states[l].state.dot(up));
            if (count_of(states[l]) == a.electrons - 1) a.hole[um][l] = std::norm(states[l].state.dot(down));
        }
        n_psi[um] = fermion_matrix(FermionOp::from_index(m, FermionKind::Number)) * psi0;
    }
    const auto &states = balanced(eig);
    for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
            std::vector<cd> w(states.size(), 0.0);
            for (std::size_t l = 0; l < states.size(); ++l) {
                if (count_of(states[l]) != a.electrons) continue;
                // <psi0| n_p |l><l| n_q |psi0>
                w[l] = std::conj(states[l].state.dot(n_psi[static_cast<std::size_t>(p)])) * states[l].state.dot(n_psi[static_cast<std::size_t>(q)]);
            }
            if (p == q) {
                for (std::size_t l = 0; l < w.size(); ++l) a.density[static_cast<std::size_t>(p)][l] = w[l].real();
            } else {
                a.density_offdiag[{p, q}] = w;
            }
        }
    }
    return a;
}

FrequencySeries greens_function(const TransitionAmplitudes &amps, const EigenSystem &eig, int mode, const std::vector<double> &grid,
                                double eta) {
    check_mode(mode);
    check_grid(grid, eta);
    const auto &states = mode_class(eig, mode);
    const auto um = static_cast<std::size_t>(mode);
    if (amps.electron[um].size() != states.size() || amps.hole[um].size() != states.size()) {
        throw ResponseError("amplitudes of mode " + mode_label(mode) + " do not match the eigensystem");
    }
    FrequencySeries g{grid, std::vector<cd>(grid.size(), 0.0), eta};
    const double e0 = amps.ground_energy;
    for (std::size_t l = 0; l < states.size(); ++l) {
        const double be = amps.electron[um][l], bh = amps.hole[um][l];
        if (be == 0.0 && bh == 0.0) continue;
        const double el = states[l].energy;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (be != 0.0) g.values[k] += be / cd(grid[k] + e0 - el, eta);
            if (bh != 0.0) g.values[k] += bh / cd(grid[k] - e0 + el, eta);
        }
    }
    return g;
}

FrequencySeries spectral_function(const std::vector<FrequencySeries> &diagonal) {
    if (diagonal.empty()) throw ResponseError("spectral function needs at least one diagonal component");
    FrequencySeries a{diagonal.front().omega, std::vector<cd>(diagonal.front().size(), 0.0), diagonal.front().eta};
    for (const auto &g : diagonal) {
        check_same_grid(a, g);
        for (std::size_t k = 0; k < g.size(); ++k) a.values[k] += -g.values[k].imag() / kPi;
    }
    return a;
}

double spectral_weight(const TransitionAmplitudes &amps, int mode) {
    check_mode(mode);
    double s = 0.0;
    for (double w : amps.electron[static_cast<std::size_t>(mode)]) s += w;
    for (double w : amps.hole[static_cast<std::size_t>(mode)]) s += w;
    return s;
}

namespace {

// Spin-summed weights of the (p, q) spatial pair, listing missing components.
std::vector<cd> pair_weights(const TransitionAmplitudes &amps, const EigenSystem &eig, int p, int q) {
    if (p < 0 || p > 1 || q < 0 || q > 1) throw ResponseError("spatial orbital index out of range");
    const std::size_t n = balanced(eig).size();
    std::vector<cd> total(n, 0.0);
    std::string missing;
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            const int a = 2 * p + s, b = 2 * q + t;
            if (a == b) {
                const auto &d = amps.density[static_cast<std::size_t>(a)];
                if (d.size() != n) {
                    missing += " " + mode_label(a);
                    continue;
                }
                for (std::size_t l = 0; l < n; ++l) total[l] += d[l];
            } else {
                const auto it = amps.density_offdiag.find({a, b});
                if (it == amps.density_offdiag.end() || it->second.size() != n) {
                    missing += " (" + mode_label(a) + "," + mode_label(b) + ")";
                    continue;
                }
                for (std::size_t l = 0; l < n; ++l) total[l] += it->second[l];
            }
        }
    }
    if (!missing.empty()) throw ResponseError("missing circuit contributions:" + missing);
    return total;
}

}  // namespace

ResponseSeries response_function(const TransitionAmplitudes &amps, const EigenSystem &eig, int p, int q, const std::vector<double> &grid,
                                 double eta) {
    check_grid(grid, eta);
    const auto w = pair_weights(amps, eig, p, q);
    const auto &states = balanced(eig);
    ResponseSeries r{{grid, std::vector<cd>(grid.size(), 0.0), eta}, w.front()};
    for (std::size_t l = 1; l < states.size(); ++l) {
        if (w[l] == 0.0) continue;
        const double gap = states[l].energy - amps.ground_energy;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            r.chi.values[k] += w[l] / cd(grid[k] - gap, eta) + std::conj(w[l] / cd(-grid[k] - gap, eta));
        }
    }
    return r;
}

FrequencySeries response_function_raw(const TransitionAmplitudes &amps, const EigenSystem &eig, int p, int q, const std::vector<double> &grid,
                                      double eta) {
    check_grid(grid, eta);
    const auto w = pair_weights(amps, eig, p, q);
    const auto &states = balanced(eig);
    FrequencySeries r{grid, std::vector<cd>(grid.size(), 0.0), eta};
    for (std::size_t l = 0; l < states.size(); ++l) {
        if (w[l] == 0.0) continue;
        const double gap = states[l].energy - amps.ground_energy;
        for (std::size_t k = 0; k < grid.size(); ++k) r.values[k] += w[l] / cd(grid[k] - gap, eta);
    }
    return r;
}

double rms_error(const FrequencySeries &a, const FrequencySeries &b, SeriesPart part) {
    check_same_grid(a, b);
    if (a.size() == 0) throw ResponseError("empty series");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const cd d = a.values[k] - b.values[k];
        sum += part == SeriesPart::Real ? d.real() * d.real() : part == SeriesPart::Imag ? d.imag() * d.imag() : std::norm(d);
    }
    return std::sqrt(sum / static_cast<double>(a.size()));
}

std::vector<double> hilbert_real_part(const FrequencySeries &s) {
    const std::size_t n = s.size();
    if (n < 3) throw ResponseError("Hilbert transform needs at least three samples");
    const double h = s.omega[1] - s.omega[0];
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs(s.omega[k] - s.omega[k - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw ResponseError("Hilbert transform needs a uniform grid");
        }
    }
    // Maclaurin's rule: principal value from the samples an odd number of
    // steps away, so the singular point is never evaluated.
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = (i % 2 == 0 ? 1 : 0); k < n; k += 2) sum += s.values[k].imag() / (s.omega[k] - s.omega[i]);
        out[i] = 2.0 * h * sum / kPi;
    }
    return out;
}

std::string series_csv(const FrequencySeries &s, const std::string &comment) {
    std::ostringstream o;
    o.precision(15);
    o << "# units: omega in eV, values in 1/eV, eta = " << s.eta << " eV";
    if (!comment.empty()) o << "; " << comment;
    o << "\nomega_eV,re,im\n";
    for (std::size_t k = 0; k < s.size(); ++k) o << s.omega[k] << "," << s.values[k].real() << "," << s.values[k].imag() << "\n";
    return o.str();
}

}  // namespace lcuresp
