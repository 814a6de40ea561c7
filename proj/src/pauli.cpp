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

#include "lcuresp/pauli.hpp"

#include <array>
#include <stdexcept>

namespace lcuresp {

namespace {

using cd = std::complex<double>;

// Product table for single letters: result letter and phase exponent.
constexpr std::array<std::array<std::pair<Pauli, int>, 4>, 4> kLetterProduct = {{
    {{{Pauli::I, 0}, {Pauli::X, 0}, {Pauli::Y, 0}, {Pauli::Z, 0}}},
    {{{Pauli::X, 0}, {Pauli::I, 0}, {Pauli::Z, 1}, {Pauli::Y, 3}}},
    {{{Pauli::Y, 0}, {Pauli::Z, 3}, {Pauli::I, 0}, {Pauli::X, 1}}},
    {{{Pauli::Z, 0}, {Pauli::Y, 1}, {Pauli::X, 3}, {Pauli::I, 0}}},
}};

Phase phase_from_complex(cd z) {
    if (std::abs(z - cd(1, 0)) < 1e-12) return Phase::one();
    if (std::abs(z - cd(0, 1)) < 1e-12) return Phase::i();
    if (std::abs(z - cd(-1, 0)) < 1e-12) return Phase::minus_one();
    if (std::abs(z - cd(0, -1)) < 1e-12) return Phase::minus_i();
    throw std::invalid_argument("scalar is not a unit phase");
}

PauliString single(std::size_t n, std::size_t q, Pauli p) {
    std::vector<Pauli> letters(n, Pauli::I);
    letters[q] = p;
    return {Phase::one(), std::move(letters)};
}

PauliString pair_string(std::size_t n, std::size_t q0, Pauli p0, std::size_t q1, Pauli p1) {
    std::vector<Pauli> letters(n, Pauli::I);
    letters[q0] = p0;
    letters[q1] = p1;
    return {Phase::one(), std::move(letters)};
}

// A Clifford given by its Heisenberg images of X_q and Z_q.
struct CliffordImages {
    std::vector<PauliString> x, z;
};

CliffordImages identity_images(std::size_t n) {
    CliffordImages c;
    for (std::size_t q = 0; q < n; ++q) {
        c.x.push_back(single(n, q, Pauli::X));
        c.z.push_back(single(n, q, Pauli::Z));
    }
    return c;
}

CliffordImages cnot_images(std::size_t n, std::size_t control, std::size_t target) {
    auto c = identity_images(n);
    c.x[control] = pair_string(n, control, Pauli::X, target, Pauli::X);
    c.z[target] = pair_string(n, control, Pauli::Z, target, Pauli::Z);
    return c;
}

CliffordImages swap_images(std::size_t n, std::size_t a, std::size_t b) {
    auto c = identity_images(n);
    std::swap(c.x[a], c.x[b]);
    std::swap(c.z[a], c.z[b]);
    return c;
}

PauliString conjugate(const PauliString &p, const CliffordImages &c) {
    const std::size_t n = p.size();
    PauliString out = PauliString::identity(n).with_phase(p.phase());
    for (std::size_t q = 0; q < n; ++q) {
        switch (p[q]) {
        case Pauli::I:
            break;
        case Pauli::X:
            out = out * c.x[q];
            break;
        case Pauli::Z:
            out = out * c.z[q];
            break;
        case Pauli::Y:  // Y = i X Z
            out = out * c.x[q] * c.z[q] * PauliString::identity(n).with_phase(Phase::i());
            break;
        }
    }
    return out;
}

enum class Step { Cnot, Swap };
struct TransformStep {
    Step kind;
    std::size_t a, b;
};

// Gate order of application (the rightmost factor of the operator product first).
std::vector<TransformStep> transform_steps(SymmetrySector s) {
    switch (s) {
    case SymmetrySector::UpSpin:
        return {{Step::Cnot, 2, 0}, {Step::Cnot, 3, 1}};
    case SymmetrySector::DownSpin:
        return {{Step::Cnot, 2, 0}, {Step::Cnot, 3, 1}, {Step::Swap, 2, 3}};
    case SymmetrySector::SpinBalanced:
        return {{Step::Cnot, 2, 0}, {Step::Cnot, 3, 1}, {Step::Cnot, 2, 3}};
    }
    throw std::logic_error("unknown sector");
}

int bit_of(std::uint64_t bits, std::size_t q, std::size_t n) { return static_cast<int>((bits >> (n - 1 - q)) & 1U); }

std::uint64_t representative(SymmetrySector s) {
    switch (s) {
    case SymmetrySector::UpSpin:
        return 0b1110;
    case SymmetrySector::DownSpin:
        return 0b1101;
    case SymmetrySector::SpinBalanced:
        return 0b1100;
    }
    throw std::logic_error("unknown sector");
}

}  // namespace

char pauli_char(Pauli p) {
    static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
    return kChars[static_cast<int>(p)];
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    switch (p) {
    case Pauli::I:
        m << 1, 0, 0, 1;
        break;
    case Pauli::X:
        m << 0, 1, 1, 0;
        break;
    case Pauli::Y:
        m << 0, cd(0, -1), cd(0, 1), 0;
        break;
    case Pauli::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

cd Phase::value() const {
    static const std::array<cd, 4> kValues = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    return kValues[k_];
}

std::string Phase::to_string() const {
    static const std::array<const char *, 4> kText = {"", "i", "-", "-i"};
    return kText[k_];
}

PauliString PauliString::parse(std::string_view text) {
    int k = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') k += 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        k += 1;
        ++pos;
    }
    std::vector<Pauli> letters;
    for (; pos < text.size(); ++pos) {
        switch (text[pos]) {
        case 'I':
            letters.push_back(Pauli::I);
            break;
        case 'X':
            letters.push_back(Pauli::X);
            break;
        case 'Y':
            letters.push_back(Pauli::Y);
            break;
        case 'Z':
            letters.push_back(Pauli::Z);
            break;
        default:
            throw std::invalid_argument("bad Pauli string: '" + std::string(text) + "'");
        }
    }
    if (letters.empty()) throw std::invalid_argument("empty Pauli string");
    return {Phase(k), std::move(letters)};
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (auto l : letters_) w += (l != Pauli::I);
    return w;
}

std::pair<cd, std::uint64_t> PauliString::apply_to_basis(std::uint64_t index) const {
    const std::size_t n = letters_.size();
    cd amp = phase_.value();
    std::uint64_t out = index;
    for (std::size_t q = 0; q < n; ++q) {
        const std::uint64_t mask = std::uint64_t{1} << (n - 1 - q);
        const bool one = (index & mask) != 0;
        switch (letters_[q]) {
        case Pauli::I:
            break;
        case Pauli::X:
            out ^= mask;
            break;
        case Pauli::Y:
            out ^= mask;
            amp *= one ? cd(0, -1) : cd(0, 1);
            break;
        case Pauli::Z:
            if (one) amp = -amp;
            break;
        }
    }
    return {amp, out};
}

Eigen::MatrixXcd PauliString::matrix() const {
    const std::uint64_t dim = std::uint64_t{1} << letters_.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        auto [amp, row] = apply_to_basis(col);
        m(row, col) = amp;
    }
    return m;
}

std::string PauliString::to_string() const {
    std::string s = phase_.to_string();
    for (auto l : letters_) s.push_back(pauli_char(l));
    return s;
}

PauliString pauli_mul(const PauliString &a, const PauliString &b) {
    if (a.size() != b.size()) throw std::invalid_argument("pauli_mul: length mismatch");
    Phase phase = a.phase() * b.phase();
    std::vector<Pauli> letters(a.size());
    for (std::size_t q = 0; q < a.size(); ++q) {
        auto [l, k] = kLetterProduct[static_cast<int>(a[q])][static_cast<int>(b[q])];
        letters[q] = l;
        phase *= Phase(k);
    }
    return {phase, std::move(letters)};
}

bool commutes(const PauliString &a, const PauliString &b) {
    if (a.size() != b.size()) throw std::invalid_argument("commutes: length mismatch");
    int anti = 0;
    for (std::size_t q = 0; q < a.size(); ++q) {
        if (a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q]) ++anti;
    }
    return anti % 2 == 0;
}

std::vector<PauliString> all_pauli_strings(std::size_t n) {
    std::vector<PauliString> out;
    const std::size_t total = std::size_t{1} << (2 * n);
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Pauli> letters(n);
        for (std::size_t q = 0; q < n; ++q) {
            letters[q] = static_cast<Pauli>((code >> (2 * (n - 1 - q))) & 3U);
        }
        out.emplace_back(Phase::one(), std::move(letters));
    }
    return out;
}

std::string FermionOp::orbital_label() const { return std::to_string(orbital) + (spin == Spin::Up ? "u" : "d"); }

FermionOp FermionOp::from_index(int spin_orbital, FermionKind kind) {
    if (spin_orbital < 0 || spin_orbital > 3) throw std::invalid_argument("spin orbital index out of range");
    return {spin_orbital / 2, spin_orbital % 2 == 0 ? Spin::Up : Spin::Down, kind};
}

PauliString jw_x(int qubit, std::size_t n) {
    std::vector<Pauli> letters(n, Pauli::I);
    for (int k = 0; k < qubit; ++k) letters[k] = Pauli::Z;
    letters[qubit] = Pauli::X;
    return {Phase::one(), std::move(letters)};
}

PauliString jw_y(int qubit, std::size_t n) {
    auto p = jw_x(qubit, n);
    auto letters = p.letters();
    letters[qubit] = Pauli::Y;
    return {Phase::one(), std::move(letters)};
}

std::vector<LcuTerm> jordan_wigner(const FermionOp &op) {
    const int q = op.qubit();
    switch (op.kind) {
    case FermionKind::Annihilate:
        return {{cd(0.5, 0), jw_x(q)}, {cd(0, 0.5), jw_y(q)}};
    case FermionKind::Create:
        return {{cd(0.5, 0), jw_x(q)}, {cd(0, -0.5), jw_y(q)}};
    case FermionKind::Number: {
        std::vector<Pauli> z(4, Pauli::I);
        z[q] = Pauli::Z;
        return {{cd(0.5, 0), PauliString::identity(4)}, {cd(-0.5, 0), PauliString(Phase::one(), z)}};
    }
    }
    throw std::logic_error("unknown fermion kind");
}

std::string to_string(SymmetrySector s) {
    switch (s) {
    case SymmetrySector::UpSpin:
        return "up-spin";
    case SymmetrySector::DownSpin:
        return "down-spin";
    case SymmetrySector::SpinBalanced:
        return "spin-balanced";
    }
    return "?";
}

SymmetrySector sector_of(const FermionOp &op) {
    if (op.kind == FermionKind::Number) return SymmetrySector::SpinBalanced;
    return op.spin == Spin::Up ? SymmetrySector::UpSpin : SymmetrySector::DownSpin;
}

std::pair<int, int> sector_parities(SymmetrySector s) {
    switch (s) {
    case SymmetrySector::UpSpin:
        return {1, -1};
    case SymmetrySector::DownSpin:
        return {-1, 1};
    case SymmetrySector::SpinBalanced:
        return {-1, -1};
    }
    throw std::logic_error("unknown sector");
}

PauliString z2_conjugate(const PauliString &pauli, SymmetrySector sector) {
    if (pauli.size() != 4) throw std::invalid_argument("z2_conjugate: expected a four-qubit string");
    PauliString out = pauli;
    for (const auto &step : transform_steps(sector)) {
        out = conjugate(out, step.kind == Step::Cnot ? cnot_images(4, step.a, step.b) : swap_images(4, step.a, step.b));
    }
    if (sector == SymmetrySector::DownSpin) out = out.with_phase(out.phase() * Phase::minus_one());
    return out;
}

std::uint64_t z2_permute_bits(std::uint64_t bits, SymmetrySector transform) {
    if (bits > 15) throw std::invalid_argument("z2_permute_bits: expected a 4-bit index");
    std::array<int, 4> b{};
    for (std::size_t q = 0; q < 4; ++q) b[q] = bit_of(bits, q, 4);
    for (const auto &step : transform_steps(transform)) {
        if (step.kind == Step::Cnot) {
            b[step.b] ^= b[step.a];
        } else {
            std::swap(b[step.a], b[step.b]);
        }
    }
    return (b[0] << 3) | (b[1] << 2) | (b[2] << 1) | b[3];
}

std::uint64_t z2_fixed_bits(SymmetrySector sector, SymmetrySector transform) {
    return z2_permute_bits(representative(sector), transform) >> 2;
}

PauliString z2_transform_pauli(const PauliString &pauli, SymmetrySector sector) {
    const PauliString conj = z2_conjugate(pauli, sector);
    const std::uint64_t bra = z2_fixed_bits(sector, sector);
    const std::uint64_t ket = z2_fixed_bits(SymmetrySector::SpinBalanced, sector);
    const PauliString head(Phase::one(), {conj[0], conj[1]});
    auto [amp, image] = head.apply_to_basis(ket);
    if (image != bra) {
        throw std::invalid_argument("z2_transform_pauli: " + pauli.to_string() + " does not connect the ground state to the " +
                                    to_string(sector) + " sector");
    }
    return {conj.phase() * phase_from_complex(amp), {conj[2], conj[3]}};
}

std::optional<SymmetrySector> basis_sector(std::uint64_t bits) {
    const int up_parity = bit_of(bits, 0, 4) ^ bit_of(bits, 2, 4);
    const int down_parity = bit_of(bits, 1, 4) ^ bit_of(bits, 3, 4);
    // <ZIZI> = -1 exactly when the up-spin occupation is odd.
    if (!up_parity && down_parity) return SymmetrySector::UpSpin;
    if (up_parity && !down_parity) return SymmetrySector::DownSpin;
    if (up_parity && down_parity) return SymmetrySector::SpinBalanced;
    return std::nullopt;
}

std::uint64_t taper_index(std::uint64_t bits, SymmetrySector state_sector, SymmetrySector transform) {
    auto sector = basis_sector(bits);
    if (!sector || *sector != state_sector) {
        throw std::invalid_argument("taper_index: basis state does not carry the " + to_string(state_sector) + " symmetry");
    }
    const std::uint64_t permuted = z2_permute_bits(bits, transform);
    if ((permuted >> 2) != z2_fixed_bits(state_sector, transform)) {
        throw std::logic_error("taper_index: transformation does not fix the leading qubits");
    }
    return permuted & 3U;
}

std::string z2_transform_state(std::string_view bits, SymmetrySector sector) {
    if (bits.size() != 4) throw std::invalid_argument("z2_transform_state: expected four bits");
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("z2_transform_state: expected a bitstring");
        index = (index << 1) | static_cast<std::uint64_t>(c - '0');
    }
    const std::uint64_t t = taper_index(index, sector, sector);
    return {static_cast<char>('0' + ((t >> 1) & 1U)), static_cast<char>('0' + (t & 1U))};
}

std::pair<PauliString, PauliString> lcu_pair(const FermionOp &op) {
    const SymmetrySector sector = sector_of(op);
    const int q = op.qubit();
    if (op.kind == FermionKind::Number) {
        std::vector<Pauli> z(4, Pauli::I);
        z[q] = Pauli::Z;
        return {PauliString::identity(2), z2_transform_pauli(PauliString(Phase::one(), z), sector)};
    }
    return {z2_transform_pauli(jw_x(q), sector), z2_transform_pauli(jw_y(q).with_phase(Phase::i()), sector)};
}

}  // namespace lcuresp
