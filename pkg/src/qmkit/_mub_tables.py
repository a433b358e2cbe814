"""Mutually unbiased bases for the supported dimensions {2, 3, 4, 5, 7}.

Odd prime dimensions use the quadratic Gauss-sum construction
(components omega^(a m^2 + k m)/sqrt(d)); d = 2 uses the three Pauli
eigenbases; the prime-power case d = 4 is a hard-coded published table.
Each entry is a list of d+1 unitary matrices whose columns are the basis
vectors.
"""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedDimension

SUPPORTED_DIMS = (2, 3, 4, 5, 7)


def _qubit_bases() -> list[np.ndarray]:
    s = 1 / np.sqrt(2)
    return [
        np.eye(2, dtype=complex),
        np.array([[s, s], [s, -s]], dtype=complex),
        np.array([[s, s], [1j * s, -1j * s]], dtype=complex),
    ]


def _odd_prime_bases(d: int) -> list[np.ndarray]:
    om = np.exp(2j * np.pi / d)
    bases = [np.eye(d, dtype=complex)]
    for a in range(d):
        B = np.empty((d, d), dtype=complex)
        for k in range(d):
            for m in range(d):
                B[m, k] = om ** ((a * m * m + k * m) % d) / np.sqrt(d)
        bases.append(B)
    return bases


def _d4_bases() -> list[np.ndarray]:
    i = 1j
    rows = [
        [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -1, 1, -1]],
        [[1, -1, -i, -i], [1, -1, i, i], [1, 1, i, -i], [1, 1, -i, i]],
        [[1, -i, -i, -1], [1, -i, i, 1], [1, i, i, -1], [1, i, -i, 1]],
        [[1, -i, -1, -i], [1, -i, 1, i], [1, i, 1, -i], [1, i, -1, i]],
    ]
    bases = [np.eye(4, dtype=complex)]
    for tab in rows:
        # rows of the table are the basis vectors; store them as columns
        bases.append(0.5 * np.array(tab, dtype=complex).T)
    return bases


def mub_bases(d: int) -> list[np.ndarray]:
    """The d+1 mutually unbiased bases of dimension d (columns = vectors)."""
    if d == 2:
        return _qubit_bases()
    if d == 4:
        return _d4_bases()
    if d in (3, 5, 7):
        return _odd_prime_bases(d)
    raise UnsupportedDimension(
        f"MUB sets are available for d in {SUPPORTED_DIMS}, got {d}"
    )
