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

// Local rewrites, scheduling and gate census.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "lcuresp/circuit.hpp"

namespace lcuresp {

namespace {

constexpr double kPi = std::numbers::pi;

bool touches(const Gate &g, int q) { return std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end(); }

bool same_pair(const Gate &a, const Gate &b) {
    return (a.qubits[0] == b.qubits[0] && a.qubits[1] == b.qubits[1]) || (a.qubits[0] == b.qubits[1] && a.qubits[1] == b.qubits[0]);
}

bool is_identity_1q(const Eigen::Matrix2cd &u) { return std::abs(std::abs(u.trace()) - 2.0) < 1e-12; }

// Removes SWAP pairs on the same wires that only have 1q gates between them
// on those wires; the 1q gates are relabelled across the removed swap.
bool cancel_swaps(std::vector<Gate> &gs) {
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (gs[i].kind != GateKind::Swap) continue;
        const int a = gs[i].qubits[0], b = gs[i].qubits[1];
        std::vector<std::size_t> between;
        for (std::size_t j = i + 1; j < gs.size(); ++j) {
            if (!touches(gs[j], a) && !touches(gs[j], b)) continue;
            if (gs[j].arity() == 1) {
                between.push_back(j);
                continue;
            }
            if (gs[j].kind == GateKind::Swap && same_pair(gs[i], gs[j])) {
                for (auto k : between) gs[k].qubits[0] = gs[k].qubits[0] == a ? b : a;
                gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(j));
                gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(i));
                return true;
            }
            break;
        }
    }
    return false;
}

bool merge_single(std::vector<Gate> &gs, int n) {
    bool changed = false;
    std::vector<Gate> out;
    std::vector<std::ptrdiff_t> last(static_cast<std::size_t>(n), -1);
    for (auto &g : gs) {
        if (g.arity() == 1) {
            const int q = g.qubits[0];
            if (last[q] >= 0) {
                auto &prev = out[static_cast<std::size_t>(last[q])];
                prev.single = (g.single * prev.single).eval();
                prev.name = name_1q(prev.single);
                changed = true;
                continue;
            }
            last[q] = static_cast<std::ptrdiff_t>(out.size());
            out.push_back(std::move(g));
        } else {
            for (int q : g.qubits) last[q] = -1;
            out.push_back(std::move(g));
        }
    }
    const auto before = out.size();
    std::erase_if(out, [](const Gate &g) { return g.kind == GateKind::Single && is_identity_1q(g.single); });
    changed = changed || out.size() != before;
    gs = std::move(out);
    return changed;
}

std::optional<double> diag_angle(const Gate &g) {
    switch (g.kind) {
    case GateKind::CZ:
        return kPi;
    case GateKind::CS:
        return kPi / 2;
    case GateKind::CSdg:
        return -kPi / 2;
    default:
        return std::nullopt;
    }
}

// Merges back-to-back CZ/CS/CS^dag on the same pair. A CS or CS^dag result is
// only kept where one of the inputs already had that kind, since those gates
// are native on specific pairs only.
bool merge_diagonal_2q(std::vector<Gate> &gs, int n) {
    std::vector<std::ptrdiff_t> last(static_cast<std::size_t>(n), -1);
    for (std::size_t j = 0; j < gs.size(); ++j) {
        const Gate &g = gs[j];
        if (g.arity() == 2 && diag_angle(g)) {
            const auto i = last[g.qubits[0]];
            if (i >= 0 && i == last[g.qubits[1]] && diag_angle(gs[i]) && same_pair(gs[i], g)) {
                const double total = std::remainder(*diag_angle(gs[i]) + *diag_angle(g), 2 * kPi);
                std::optional<GateKind> kind;
                bool drop = false;
                if (std::abs(total) < 1e-9) {
                    drop = true;
                } else if (std::abs(std::abs(total) - kPi) < 1e-9) {
                    kind = GateKind::CZ;
                } else {
                    const GateKind want = total > 0 ? GateKind::CS : GateKind::CSdg;
                    if (gs[i].kind == want || g.kind == want) kind = want;
                }
                if (drop || kind) {
                    gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(j));
                    if (drop) {
                        gs.erase(gs.begin() + i);
                    } else {
                        gs[static_cast<std::size_t>(i)].kind = *kind;
                    }
                    return true;
                }
            }
        }
        for (int q : g.qubits) last[q] = static_cast<std::ptrdiff_t>(j);
    }
    return false;
}

// Folds gates that act only inside the prep pair, up to the first gate that
// couples the pair to another wire, into the dense prep matrix.
bool absorb_into_prep(std::vector<Gate> &gs) {
    bool changed = false;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (gs[i].kind != GateKind::DensePrep) continue;
        const int a = gs[i].qubits[0], b = gs[i].qubits[1];
        for (std::size_t j = i + 1; j < gs.size();) {
            const Gate &g = gs[j];
            const bool on_a = touches(g, a), on_b = touches(g, b);
            if (!on_a && !on_b) {
                ++j;
                continue;
            }
            const bool inside = std::all_of(g.qubits.begin(), g.qubits.end(), [&](int q) { return q == a || q == b; });
            if (!inside) break;
            Eigen::MatrixXcd m;
            if (g.arity() == 1) {
                const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
                m = g.qubits[0] == a ? Eigen::MatrixXcd(Eigen::kroneckerProduct(g.single, id)) : Eigen::MatrixXcd(Eigen::kroneckerProduct(id, g.single));
            } else {
                m = g.matrix();
                if (g.qubits[0] == b) {
                    Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
                    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
                    m = swap * m * swap;
                }
            }
            gs[i].dense = (m * gs[i].dense).eval();
            gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(j));
            changed = true;
        }
    }
    return changed;
}

void simplify(std::vector<Gate> &gs, int n) {
    for (bool changed = true; changed;) {
        changed = false;
        while (cancel_swaps(gs)) changed = true;
        changed = merge_single(gs, n) || changed;
        while (merge_diagonal_2q(gs, n)) changed = true;
        changed = absorb_into_prep(gs) || changed;
    }
}

// Multi-qubit gates keep their relative order in exclusive moments; each
// single-qubit gate goes to the earliest single-qubit moment after the last
// gate on its wire.
std::vector<Moment> schedule(const std::vector<Gate> &gs, int n) {
    std::vector<Moment> moments;
    std::vector<std::ptrdiff_t> last(static_cast<std::size_t>(n), -1);
    std::ptrdiff_t last_multi = -1;
    for (const auto &g : gs) {
        if (g.arity() > 1) {
            std::ptrdiff_t pos = last_multi;
            for (int q : g.qubits) pos = std::max(pos, last[q]);
            ++pos;
            moments.insert(moments.begin() + pos, Moment{{g}});
            for (auto &l : last) {
                if (l >= pos) ++l;
            }
            for (int q : g.qubits) last[q] = pos;
            last_multi = pos;
            continue;
        }
        const int q = g.qubits[0];
        std::ptrdiff_t pos = last[q] + 1;
        while (pos < static_cast<std::ptrdiff_t>(moments.size()) && moments[static_cast<std::size_t>(pos)].is_multi_qubit()) ++pos;
        if (pos == static_cast<std::ptrdiff_t>(moments.size())) moments.emplace_back();
        moments[static_cast<std::size_t>(pos)].gates.push_back(g);
        last[q] = pos;
    }
    for (auto &m : moments) {
        std::sort(m.gates.begin(), m.gates.end(), [](const Gate &a, const Gate &b) { return a.qubits[0] < b.qubits[0]; });
    }
    return moments;
}

}  // namespace

Circuit transpile(const Circuit &c) {
    const int n = c.num_qubits();
    auto gs = c.gates();
    simplify(gs, n);
    Circuit out(n, c.qubit_names(), c.name());
    for (auto &m : schedule(gs, n)) out.append_moment(std::move(m));
    out.validate();
    return out;
}

GateCensus gate_census(const Circuit &c) {
    GateCensus g;
    for (const auto &m : c.moments()) {
        const bool prep_moment = m.is_multi_qubit() && m.gates.front().kind == GateKind::DensePrep;
        if (!prep_moment && !m.is_virtual_only()) ++g.depth;
        for (const auto &gate : m.gates) {
            switch (gate.kind) {
            case GateKind::Single:
                (gate.is_virtual_z() ? g.n_virtual_z : g.n_1q)++;
                break;
            case GateKind::CZ:
                ++g.n_cz;
                ++g.n_2q;
                break;
            case GateKind::CS:
                ++g.n_cs;
                ++g.n_2q;
                break;
            case GateKind::CSdg:
                ++g.n_csdg;
                ++g.n_2q;
                break;
            case GateKind::CZPhi:
                ++g.n_2q;
                break;
            case GateKind::Swap:
                ++g.n_swap;
                ++g.n_2q;
                break;
            case GateKind::IToffoli:
                ++g.n_itoffoli;
                break;
            case GateKind::DensePrep:
                g.prep_2q += 3;
                break;
            }
        }
    }
    return g;
}

std::string census_csv_header() { return "circuit,depth,n_1q,n_2q,n_itoffoli"; }

std::string census_csv_row(const std::string &label, const GateCensus &g) {
    std::ostringstream s;
    // Pair labels such as "0u,0d" carry a comma.
    if (label.find(',') != std::string::npos) s << '"' << label << '"';
    else s << label;
    s << "," << g.depth << "," << g.n_1q << "," << g.n_2q << "," << g.n_itoffoli;
    return s.str();
}

}  // namespace lcuresp
