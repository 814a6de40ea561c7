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

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lcuresp {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Eigen::Matrix2cd pauli_matrix(Pauli p);

/// Element of the group {+1, +i, -1, -i}, stored as the exponent k of i^k.
class Phase {
  public:
    constexpr Phase() = default;
    constexpr explicit Phase(int quarter_turns) : k_(static_cast<std::uint8_t>(((quarter_turns % 4) + 4) % 4)) {}

    static constexpr Phase one() { return Phase(0); }
    static constexpr Phase i() { return Phase(1); }
    static constexpr Phase minus_one() { return Phase(2); }
    static constexpr Phase minus_i() { return Phase(3); }

    constexpr int quarter_turns() const { return k_; }
    std::complex<double> value() const;
    std::string to_string() const;  // "", "i", "-", "-i"

    constexpr Phase operator*(Phase o) const { return Phase(k_ + o.k_); }
    constexpr Phase &operator*=(Phase o) {
        k_ = static_cast<std::uint8_t>((k_ + o.k_) % 4);
        return *this;
    }
    constexpr bool operator==(const Phase &) const = default;

  private:
    std::uint8_t k_ = 0;
};

/// Phased tensor product of single-qubit Paulis. Letter 0 acts on the most
/// significant bit of a computational-basis index.
class PauliString {
  public:
    PauliString() = default;
    PauliString(Phase phase, std::vector<Pauli> letters) : phase_(phase), letters_(std::move(letters)) {}

    static PauliString identity(std::size_t n) { return {Phase::one(), std::vector<Pauli>(n, Pauli::I)}; }

    /// Parses strings such as "XIII", "-iYZ", "iZZYI", "+ZI".
    static PauliString parse(std::string_view text);

    Phase phase() const { return phase_; }
    const std::vector<Pauli> &letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    Pauli operator[](std::size_t q) const { return letters_[q]; }

    PauliString with_phase(Phase p) const { return {p, letters_}; }
    PauliString unsigned_part() const { return {Phase::one(), letters_}; }
    std::size_t weight() const;
    bool is_identity_letters() const { return weight() == 0; }

    /// Acts on a computational basis index; returns (phase, image index).
    std::pair<std::complex<double>, std::uint64_t> apply_to_basis(std::uint64_t index) const;

    Eigen::MatrixXcd matrix() const;
    std::string to_string() const;

    bool operator==(const PauliString &) const = default;

  private:
    Phase phase_;
    std::vector<Pauli> letters_;
};

/// Product a*b with exact phase. Throws std::invalid_argument on length mismatch.
PauliString pauli_mul(const PauliString &a, const PauliString &b);
inline PauliString operator*(const PauliString &a, const PauliString &b) { return pauli_mul(a, b); }

bool commutes(const PauliString &a, const PauliString &b);

/// All 4^n unit-phase Pauli strings in lexicographic I<X<Y<Z order.
std::vector<PauliString> all_pauli_strings(std::size_t n);

enum class Spin : std::uint8_t { Up, Down };
enum class FermionKind : std::uint8_t { Create, Annihilate, Number };

/// Fermionic operator on the two-orbital model. Spin orbitals are ordered
/// 0up, 0down, 1up, 1down, which is also the qubit order.
struct FermionOp {
    int orbital = 0;
    Spin spin = Spin::Up;
    FermionKind kind = FermionKind::Number;

    int qubit() const { return 2 * orbital + (spin == Spin::Down ? 1 : 0); }
    /// "0u", "0d", "1u", "1d"
    std::string orbital_label() const;

    static FermionOp from_index(int spin_orbital, FermionKind kind);
};

struct LcuTerm {
    std::complex<double> coefficient;
    PauliString pauli;
};

/// Jordan-Wigner image on four qubits. The occupied state of a mode is |1>,
/// so annihilate maps to (Xbar + i Ybar)/2 and create to (Xbar - i Ybar)/2;
/// number maps to (I - Z)/2.
std::vector<LcuTerm> jordan_wigner(const FermionOp &op);

/// The Z-string dressed X and Y strings of a mode.
PauliString jw_x(int qubit, std::size_t n = 4);
PauliString jw_y(int qubit, std::size_t n = 4);

enum class SymmetrySector : std::uint8_t { UpSpin, DownSpin, SpinBalanced };

std::string to_string(SymmetrySector s);

/// Sector reached from the ground state by applying op.
SymmetrySector sector_of(const FermionOp &op);

/// (<ZIZI>, <IZIZ>) of the sector.
std::pair<int, int> sector_parities(SymmetrySector s);

/// Conjugates a four-qubit string by the sector's CNOT/SWAP transformation,
/// including the overall -1 of the down-spin sector. No truncation.
PauliString z2_conjugate(const PauliString &pauli, SymmetrySector sector);

/// Conjugates and truncates qubits 0-1 against the sector's fixed bra bits and
/// the ground-state ket bits 11. Throws std::invalid_argument when the
/// contraction vanishes.
PauliString z2_transform_pauli(const PauliString &pauli, SymmetrySector sector);

/// Applies the sector's permutation to a 4-bit basis index (bit 3 is qubit 0).
std::uint64_t z2_permute_bits(std::uint64_t bits, SymmetrySector transform);

/// Leading two bits that every state of `sector` carries after `transform`.
std::uint64_t z2_fixed_bits(SymmetrySector sector, SymmetrySector transform);

/// Tapered 2-bit index of a 4-bit index under the given transformation.
/// Throws if the leading bits after the transformation are not those of a
/// state of `state_sector`.
std::uint64_t taper_index(std::uint64_t bits, SymmetrySector state_sector, SymmetrySector transform);

/// String form: "1110" -> "10". Validates that bits lie in the sector.
std::string z2_transform_state(std::string_view bits, SymmetrySector sector);

/// Symmetry class of a 4-bit basis state; empty for the (+1,+1) parity block.
std::optional<SymmetrySector> basis_sector(std::uint64_t bits);

/// Tapered pair (V0, V1) of the diagonal LCU circuit for op. The ancilla-0
/// branch applies (V0 + V1)/2 and the ancilla-1 branch (V0 - V1)/2. For a
/// creation/annihilation mode this is (X~, (iY)~), so a0=0 gives the
/// annihilated state and a0=1 the created one; for a number operator it is
/// (I, Z~) and a0=1 gives n|psi>.
std::pair<PauliString, PauliString> lcu_pair(const FermionOp &op);

}  // namespace lcuresp
