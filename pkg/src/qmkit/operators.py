"""Factory functions for the built-in operators: identity, spin, Pauli,
ladder, displacement and squeezing (hbar = 1 throughout)."""

from __future__ import annotations

import numpy as np

from .errors import InvalidParameter, InvalidQuantumNumber
from .qcore import QuantumObject, mat_exp

_AXES = ("x", "y", "z", "+", "-")


def identity(d: int) -> QuantumObject:
    """d-dimensional identity matrix."""
    if d < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {d}")
    return QuantumObject(np.eye(d, dtype=complex))


def _check_spin(s) -> int:
    """Validate spin s in {0, 1/2, 1, ...}; return 2s as int."""
    two_s = round(2 * s)
    if abs(2 * s - two_s) > 1e-9 or two_s < 0:
        raise InvalidQuantumNumber(f"spin must be a non-negative half-integer, got {s}")
    return int(two_s)


def spin(s, axis: str | None = None):
    """Spin-s operator(s) in the basis m = s, s-1, ..., -s.

    With ``axis`` in {'x','y','z','+','-'} returns that single matrix;
    without it returns the (Sx, Sy, Sz) triple.
    """
    two_s = _check_spin(s)
    d = two_s + 1
    ms = np.array([s - i for i in range(d)], dtype=float)
    sz = np.diag(ms).astype(complex)
    sp = np.zeros((d, d), dtype=complex)
    for i in range(1, d):
        m = ms[i]
        sp[i - 1, i] = np.sqrt(s * (s + 1) - m * (m + 1))
    sm = sp.conj().T
    if axis is None:
        return (
            QuantumObject((sp + sm) / 2),
            QuantumObject((sp - sm) / 2j),
            QuantumObject(sz),
        )
    if axis == "x":
        return QuantumObject((sp + sm) / 2)
    if axis == "y":
        return QuantumObject((sp - sm) / 2j)
    if axis == "z":
        return QuantumObject(sz)
    if axis == "+":
        return QuantumObject(sp)
    if axis == "-":
        return QuantumObject(sm)
    raise InvalidParameter(f"axis must be one of {_AXES}, got {axis!r}")


def pauli(axis: str) -> QuantumObject:
    """2x2 Pauli matrix for axis in {'x','y','z','+','-'}."""
    mats = {
        "x": [[0, 1], [1, 0]],
        "y": [[0, -1j], [1j, 0]],
        "z": [[1, 0], [0, -1]],
        "+": [[0, 1], [0, 0]],
        "-": [[0, 0], [1, 0]],
    }
    if axis not in mats:
        raise InvalidParameter(f"axis must be one of {_AXES}, got {axis!r}")
    return QuantumObject(np.array(mats[axis], dtype=complex))


def lowering(d: int) -> QuantumObject:
    """Truncated annihilation operator: a|n> = sqrt(n)|n-1>."""
    if d < 2:
        raise InvalidParameter(f"dimension must be >= 2, got {d}")
    a = np.zeros((d, d), dtype=complex)
    for n in range(1, d):
        a[n - 1, n] = np.sqrt(n)
    return QuantumObject(a)


def raising(d: int) -> QuantumObject:
    """Truncated creation operator, the adjoint of :func:`lowering`."""
    return QuantumObject(lowering(d).data.conj().T)


def displacement(d: int, alpha: complex) -> QuantumObject:
    """Displacement operator exp(alpha a^dag - alpha* a) at cutoff d.

    Built by exponentiating the truncated generator, so the result is
    exactly unitary at any cutoff (accuracy vs. the infinite-dimensional
    operator still needs d well above |alpha|^2).
    """
    if d < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {d}")
    if d == 1:
        return identity(1)
    a = lowering(d).data
    gen = alpha * a.conj().T - np.conj(alpha) * a
    return mat_exp(QuantumObject(gen))


def squeezing(d: int, beta: complex) -> QuantumObject:
    """Squeezing operator exp((beta* a^2 - beta a^dag^2)/2) at cutoff d."""
    if d < 2:
        raise InvalidParameter(f"dimension must be >= 2, got {d}")
    a = lowering(d).data
    ad = a.conj().T
    gen = (np.conj(beta) * (a @ a) - beta * (ad @ ad)) / 2.0
    return mat_exp(QuantumObject(gen))
