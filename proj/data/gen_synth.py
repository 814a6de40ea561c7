# Copyright 2026 The lcuresp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the synthetic two-orbital Hamiltonians synth-A and synth-B.

Modes are 0u, 0d, 1u, 1d on qubits 0..3 (qubit 0 is the most significant
bit); the occupied state of a mode is |1>. The Hamiltonian is built in the
Fock basis and expanded in Pauli strings.
"""

import itertools
import sys

import numpy as np

I2 = np.eye(2)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def annihilator(mode):
    m = np.zeros((16, 16))
    bit = 1 << (3 - mode)
    for k in range(16):
        if k & bit:
            sign = -1 if bin(k >> (4 - mode)).count("1") % 2 else 1
            m[k ^ bit, k] = sign
    return m


def build(eps, hop, u, v, j):
    a = [annihilator(m) for m in range(4)]
    c = [x.T for x in a]
    n = [c[m] @ a[m] for m in range(4)]
    h = np.zeros((16, 16))
    for p in range(2):
        for s in range(2):
            h += eps[p] * n[2 * p + s]
        h += u[p] * n[2 * p] @ n[2 * p + 1]
    for s in range(2):
        h += hop * (c[s] @ a[2 + s] + c[2 + s] @ a[s])
    h += v * (n[0] + n[1]) @ (n[2] + n[3])
    # Direct exchange, spin flip and pair hopping.
    h += -j * (n[0] @ n[2] + n[1] @ n[3])
    h += -j * (c[0] @ a[1] @ c[3] @ a[2] + c[2] @ a[3] @ c[1] @ a[0])
    h += j * (c[0] @ c[1] @ a[3] @ a[2] + c[2] @ c[3] @ a[1] @ a[0])
    return h


def pauli_terms(h):
    terms = []
    for word in itertools.product("IXYZ", repeat=4):
        m = PAULI[word[0]]
        for w in word[1:]:
            m = np.kron(m, PAULI[w])
        coeff = np.trace(m.conj().T @ h) / 16
        if abs(coeff) > 1e-12:
            assert abs(coeff.imag) < 1e-12
            terms.append(("".join(word), coeff.real))
    return terms


FIXTURES = {
    "synth-A": dict(eps=(-9.0, -1.5), hop=0.0, u=(6.0, 4.5), v=2.0, j=0.9),
    "synth-B": dict(eps=(-9.0, -1.5), hop=-1.8, u=(6.0, 4.5), v=2.0, j=0.9),
}


def main(outdir):
    for name, params in FIXTURES.items():
        terms = pauli_terms(build(**params))
        with open(f"{outdir}/{name}.ham", "w") as f:
            f.write(f"# {name}: two-orbital, four-spin-orbital model Hamiltonian (eV)\n")
            f.write("# " + ", ".join(f"{k}={v}" for k, v in params.items()) + "\n")
            for word, coeff in terms:
                f.write(f"{coeff:.12f} {word}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
