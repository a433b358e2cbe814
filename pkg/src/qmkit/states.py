"""State factories: computational/Zeeman bases, oscillator states, spin
coherent states, entangled qubit families, and the two noise channels."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import as_rng
from .errors import (
    IndexOutOfRange,
    InvalidParameter,
    InvalidQuantumNumber,
)
from .operators import _check_spin, displacement, lowering, squeezing
from .qcore import Kind, QuantumObject, dot, normalize, to_operator


def basis(d: int, k: int) -> QuantumObject:
    """Computational basis ket |k> in d dimensions."""
    if d < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {d}")
    if not (0 <= k < d):
        raise IndexOutOfRange(f"index {k} outside 0..{d - 1}")
    v = np.zeros((d, 1), dtype=complex)
    v[k, 0] = 1.0
    return QuantumObject(v)


def dual_basis(d: int, k: int) -> QuantumObject:
    """Dual (bra) of :func:`basis`."""
    return QuantumObject(basis(d, k).data.conj().T)


def zeeman(j, m) -> QuantumObject:
    """Zeeman / Dicke basis ket |j, m>, dimension 2j+1, ordered m = j..-j."""
    two_j = _check_spin(j)
    two_m = round(2 * m)
    if abs(2 * m - two_m) > 1e-9 or (two_j - two_m) % 2 != 0 or abs(two_m) > two_j:
        raise InvalidQuantumNumber(f"m={m} invalid for j={j}")
    return basis(two_j + 1, (two_j - int(two_m)) // 2)


def coherent(d: int, alpha: complex) -> QuantumObject:
    """Coherent state truncated at d Fock levels and renormalized."""
    if d < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {d}")
    alpha = complex(alpha)
    amps = np.empty(d, dtype=complex)
    amps[0] = 1.0
    for n in range(1, d):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    amps *= math.exp(-abs(alpha) ** 2 / 2)
    return normalize(QuantumObject(amps.reshape(-1, 1)))


def squeezed(d: int, alpha: complex, beta: complex) -> QuantumObject:
    """Displaced squeezed vacuum D(alpha) S(beta) |0>, renormalized."""
    if d < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {d}")
    if d == 1:
        return basis(1, 0)
    vac = basis(d, 0)
    st = dot(displacement(d, alpha), squeezing(d, beta), vac)
    return normalize(st)


def position_state(d: int, x: float) -> QuantumObject:
    """Eigenstate of the truncated quadrature (a + a^dag)/sqrt(2) nearest to x."""
    if d < 2:
        raise InvalidParameter(f"dimension must be >= 2, got {d}")
    a = lowering(d).data
    xop = (a + a.conj().T) / math.sqrt(2)
    vals, vecs = np.linalg.eigh(xop)
    i = int(np.argmin(np.abs(vals - x)))
    v = vecs[:, i]
    k = int(np.argmax(np.abs(v)))
    v = v * (abs(v[k]) / v[k])
    return QuantumObject(v.reshape(-1, 1))


def spin_coherent(j, theta: float, phi: float) -> QuantumObject:
    """Spin-j coherent state pointing along (theta, phi).

    Amplitude on |j, m> is
    sqrt(C(2j, j-m)) cos^(j+m)(theta/2) sin^(j-m)(theta/2) e^{-i(j-m) phi}.
    """
    two_j = _check_spin(j)
    d = two_j + 1
    amps = np.empty(d, dtype=complex)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    for i in range(d):
        # i = j - m
        amps[i] = (
            math.sqrt(math.comb(two_j, i))
            * c ** (two_j - i)
            * s**i
            * np.exp(-1j * i * phi)
        )
    return QuantumObject(amps.reshape(-1, 1))


def random_haar(d: int, rng=None) -> QuantumObject:
    """Haar-random ket: normalized vector of i.i.d. standard complex Gaussians."""
    if d < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {d}")
    g = as_rng(rng)
    v = g.normal(size=d) + 1j * g.normal(size=d)
    return normalize(QuantumObject(v.reshape(-1, 1)))


def ghz(n: int) -> QuantumObject:
    """GHZ state (|0...0> + |1...1>)/sqrt(2) on n qubits."""
    if n < 1:
        raise InvalidQuantumNumber(f"need n >= 1 qubits, got {n}")
    d = 2**n
    v = np.zeros((d, 1), dtype=complex)
    v[0, 0] = v[d - 1, 0] = 1 / math.sqrt(2)
    return QuantumObject(v)


def w(n: int) -> QuantumObject:
    """W state: equal superposition of the n one-hot bitstrings."""
    if n < 1:
        raise InvalidQuantumNumber(f"need n >= 1 qubits, got {n}")
    v = np.zeros((2**n, 1), dtype=complex)
    for i in range(n):
        v[1 << (n - 1 - i), 0] = 1 / math.sqrt(n)
    return QuantumObject(v)


def dicke(n: int, k: int) -> QuantumObject:
    """Dicke state: equal superposition of all weight-k bitstrings on n qubits."""
    if n < 1:
        raise InvalidQuantumNumber(f"need n >= 1 qubits, got {n}")
    if not (0 <= k <= n):
        raise InvalidQuantumNumber(f"excitation count {k} outside 0..{n}")
    v = np.zeros((2**n, 1), dtype=complex)
    amp = 1 / math.sqrt(math.comb(n, k))
    for idx in range(2**n):
        if bin(idx).count("1") == k:
            v[idx, 0] = amp
    return QuantumObject(v)


def add_random_noise(psi: QuantumObject, mean: float = 0.0, stdev: float = 0.0,
                     rng=None) -> QuantumObject:
    """Perturb each amplitude by a complex Gaussian delta = a + ib, renormalize.

    a and b are independent Normal(mean, stdev) draws; the perturbed vector
    is rescaled to unit norm.
    """
    psi = QuantumObject(psi)
    if psi.kind is not Kind.KET:
        raise InvalidParameter("random amplitude noise is defined for kets")
    if stdev < 0:
        raise InvalidParameter(f"stdev must be >= 0, got {stdev}")
    g = as_rng(rng)
    d = psi.dim
    delta = g.normal(mean, stdev, size=d) + 1j * g.normal(mean, stdev, size=d)
    return normalize(QuantumObject(psi.data.reshape(-1) + delta))


def add_white_noise(state: QuantumObject, p: float = 0.0) -> QuantumObject:
    """Mix a state with the maximally mixed one: (1-p) rho + p I/d.

    Kets are first promoted to density matrices, so the input may be pure
    or mixed.
    """
    if not (0.0 <= p <= 1.0):
        raise InvalidParameter(f"white-noise weight must be in [0, 1], got {p}")
    rho = to_operator(state).data
    d = rho.shape[0]
    return QuantumObject((1 - p) * rho + p * np.eye(d) / d)


@dataclass(frozen=True)
class NoiseSpec:
    """Declarative noise channel used by the CLI.

    variant 'random_amplitude' carries (mean, stdev) of the complex
    amplitude noise; variant 'white' carries the mixing weight p.
    """

    variant: str
    mean: float = 0.0
    stdev: float = 0.0
    p: float = 0.0

    def __post_init__(self):
        if self.variant not in ("random_amplitude", "white"):
            raise InvalidParameter(f"unknown noise variant {self.variant!r}")
        if self.variant == "white" and not (0.0 <= self.p <= 1.0):
            raise InvalidParameter(f"white-noise weight must be in [0, 1], got {self.p}")
        if self.variant == "random_amplitude" and self.stdev < 0:
            raise InvalidParameter(f"stdev must be >= 0, got {self.stdev}")

    def apply(self, state: QuantumObject, rng=None) -> QuantumObject:
        if self.variant == "white":
            return add_white_noise(state, self.p)
        return add_random_noise(state, self.mean, self.stdev, rng)
