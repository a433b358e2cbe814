"""Measurement engine: probabilities, post-measurement states, the four
built-in measurement sets, and the two stochastic simulation back-ends.

A measurement set is an ordered collection of PSD operators with optional
grouping metadata; each declared group is one complete POVM (its elements
resolve the identity).  The mc back-end estimates every outcome frequency
by accept/reject over uniform draws; the cdf back-end draws outcomes by
inverse-transform sampling of the per-group distribution using stratified
uniforms, which is what makes it the more accurate of the two at equal
shot budget.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._mub_tables import mub_bases
from ._mub_tables import SUPPORTED_DIMS as MUB_DIMS
from ._rng import as_rng
from ._sic_fiducials import fiducial
from ._sic_fiducials import SUPPORTED_DIMS as SIC_DIMS
from .errors import (
    DimensionMismatch,
    InvalidDistribution,
    InvalidParameter,
    NotHermitian,
    OutcomeImpossible,
)
from .qcore import QuantumObject, density_matrix

PSD_TOL = 1e-10
COMPLETENESS_TOL = 1e-8

# single-qubit polarization kets: horizontal/vertical, diagonal/antidiagonal,
# left/right circular
_POL = {
    "H": np.array([1, 0], dtype=complex),
    "V": np.array([0, 1], dtype=complex),
    "D": np.array([1, 1], dtype=complex) / np.sqrt(2),
    "A": np.array([1, -1], dtype=complex) / np.sqrt(2),
    "L": np.array([1, 1j], dtype=complex) / np.sqrt(2),
    "R": np.array([1, -1j], dtype=complex) / np.sqrt(2),
}


@dataclass(frozen=True)
class MeasurementSet:
    """Ordered POVM elements plus the partition into completeness groups.

    ``groups`` lists index tuples; the elements of each tuple sum to the
    identity.  Sets without a completeness structure (e.g. Stoke) leave it
    empty.
    """

    kind: str
    elements: tuple[QuantumObject, ...]
    groups: tuple[tuple[int, ...], ...] = ()

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def validate(self, psd_tol: float = PSD_TOL,
                 completeness_tol: float = COMPLETENESS_TOL) -> None:
        """Check PSD-ness of every element and completeness of every group."""
        d = self.dim
        for i, e in enumerate(self.elements):
            if e.shape != (d, d):
                raise DimensionMismatch(f"element {i} has shape {e.shape}, want ({d},{d})")
            if not e.is_hermitian():
                raise NotHermitian(f"element {i} is not Hermitian")
            lo = np.linalg.eigvalsh(e.data).min()
            if lo < -psd_tol:
                raise InvalidParameter(f"element {i} has eigenvalue {lo:.3e} < -{psd_tol}")
        eye = np.eye(d)
        for g, idx in enumerate(self.groups):
            s = sum(self.elements[i].data for i in idx)
            dev = np.max(np.abs(s - eye))
            if dev > completeness_tol:
                raise InvalidParameter(f"group {g} misses identity by {dev:.3e}")


@dataclass(frozen=True)
class MeasurementOutcome:
    """Outcome probabilities aligned with the element order, plus the
    conditional post-measurement states when Kraus operators were given
    (None at impossible outcomes)."""

    probabilities: np.ndarray
    post_states: tuple[QuantumObject | None, ...] | None = None


@dataclass(frozen=True)
class SamplerBackend:
    """Configuration of an outcome simulator.

    method 'mc' runs accept/reject with ``iterations`` uniform draws per
    element; method 'cdf' inverse-transform samples each group.  The seed
    fixes the whole sampling stream, so equal configuration and inputs
    replay bit-exactly.  ``iterations`` doubles as the default shot budget
    when the caller does not pass one.
    """

    method: str
    seed: int = 0
    iterations: int = 1000

    def __post_init__(self):
        if self.method not in ("mc", "cdf"):
            raise InvalidParameter(f"backend method must be 'mc' or 'cdf', got {self.method!r}")
        if self.iterations < 1:
            raise InvalidParameter(f"iteration count must be >= 1, got {self.iterations}")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def probabilities(state, observables) -> np.ndarray:
    """tr(E_k rho) for each operator E_k, as real numbers.

    ``observables`` may be a MeasurementSet or any sequence of operators.
    For POVM elements the result is the outcome distribution; for Hermitian
    observables it is the expectation values.  An imaginary residue above
    1e-10 (non-Hermitian operator on a state) raises.
    """
    rho = density_matrix(state)
    if isinstance(observables, MeasurementSet):
        elements = observables.elements
    else:
        elements = [QuantumObject(o) for o in observables]
    out = np.empty(len(elements), dtype=float)
    for i, e in enumerate(elements):
        if e.data.shape != rho.shape:
            raise DimensionMismatch(
                f"operator {i} has shape {e.data.shape}, state has {rho.shape}"
            )
        v = np.einsum("ij,ji->", e.data, rho)
        if abs(v.imag) > 1e-10:
            raise NotHermitian(f"tr(E rho) has imaginary residue {v.imag:.3e}")
        out[i] = v.real
    return out


def post_measurement_state(state, kraus) -> tuple[QuantumObject, float]:
    """Conditional state M rho M^dag / p and its probability p = tr(M^dag M rho)."""
    rho = density_matrix(state)
    m = QuantumObject(kraus).data
    if m.shape != rho.shape:
        raise DimensionMismatch(f"kraus shape {m.shape}, state shape {rho.shape}")
    p = float(np.real(np.einsum("ij,ji->", m.conj().T @ m, rho)))
    if p <= 1e-14:
        raise OutcomeImpossible(f"outcome probability {p:.3e} is (numerically) zero")
    return QuantumObject(m @ rho @ m.conj().T / p), p


def measure(state, kraus_ops: Sequence) -> MeasurementOutcome:
    """Full general measurement: probabilities and conditional states."""
    rho = density_matrix(state)
    mats = [QuantumObject(m).data for m in kraus_ops]
    probs = np.array(
        [np.real(np.einsum("ij,ji->", m.conj().T @ m, rho)) for m in mats]
    )
    posts: list[QuantumObject | None] = []
    for m, p in zip(mats, probs):
        posts.append(QuantumObject(m @ rho @ m.conj().T / p) if p > 1e-14 else None)
    return MeasurementOutcome(probabilities=probs, post_states=tuple(posts))


def _projector(vec: np.ndarray) -> QuantumObject:
    return QuantumObject(np.outer(vec, vec.conj()))


def build_pauli_set(n: int) -> MeasurementSet:
    """Pauli measurement set on n qubits: 6^n projectors in 3^n POVM groups.

    Single-qubit factors run over H, V, D, A, L, R in that order; groups
    pair the two outcomes of each of the 3^n basis choices.
    """
    if n < 1:
        raise InvalidParameter(f"need n >= 1 qubits, got {n}")
    order = "HVDALR"
    kets = [_POL[c] for c in order]
    elements = []
    for combo in itertools.product(range(6), repeat=n):
        v = kets[combo[0]]
        for c in combo[1:]:
            v = np.kron(v, kets[c])
        elements.append(_projector(v))
    groups = []
    for bases_combo in itertools.product(range(3), repeat=n):
        idx = []
        for bits in itertools.product(range(2), repeat=n):
            digits = [2 * b + o for b, o in zip(bases_combo, bits)]
            k = 0
            for dgt in digits:
                k = 6 * k + dgt
            idx.append(k)
        groups.append(tuple(idx))
    return MeasurementSet(kind="pauli", elements=tuple(elements), groups=tuple(groups))


def build_stoke_set(n: int) -> MeasurementSet:
    """Stoke polarization set on n qubits: 4^n projectors (H, V, D, R factors).

    The four single-qubit projectors do not resolve the identity, so no
    completeness groups are declared.
    """
    if n < 1:
        raise InvalidParameter(f"need n >= 1 qubits, got {n}")
    kets = [_POL[c] for c in "HVDR"]
    elements = []
    for combo in itertools.product(range(4), repeat=n):
        v = kets[combo[0]]
        for c in combo[1:]:
            v = np.kron(v, kets[c])
        elements.append(_projector(v))
    return MeasurementSet(kind="stoke", elements=tuple(elements), groups=())


def build_mub_set(d: int) -> MeasurementSet:
    """Mutually unbiased bases set: d+1 groups of d rank-1 projectors.

    Supported at d in {2, 3, 4, 5, 7}.
    """
    bases = mub_bases(d)
    elements = []
    groups = []
    for B in bases:
        start = len(elements)
        for k in range(d):
            elements.append(_projector(B[:, k]))
        groups.append(tuple(range(start, start + d)))
    return MeasurementSet(kind="mub", elements=tuple(elements), groups=tuple(groups))


def weyl_displacement(d: int, j: int, k: int) -> QuantumObject:
    """Weyl-Heisenberg displacement D_{j,k} on C^d.

    D_{j,k} = e^{i pi j k / d} sum_m omega^{j m} |k+m mod d><m| with
    omega = exp(2 pi i / d); the half-integer power of omega is taken on
    the principal branch.  All D_{j,k} are unitary.
    """
    if not (0 <= j < d and 0 <= k < d):
        raise InvalidParameter(f"need 0 <= j,k < d, got j={j}, k={k}, d={d}")
    om = np.exp(2j * np.pi / d)
    mat = np.zeros((d, d), dtype=complex)
    for m in range(d):
        mat[(k + m) % d, m] = om ** (j * m)
    return QuantumObject(np.exp(1j * np.pi * j * k / d) * mat)


_VERIFIED_SIC: set[int] = set()


def build_sic_set(d: int) -> MeasurementSet:
    """Symmetric informationally complete POVM: d^2 elements, one group.

    Elements are (1/d) |h_jk><h_jk| with |h_jk> = D_{j,k} |phi_d> over the
    embedded fiducial vectors (d in 2..8).  The first build at each
    dimension re-verifies the pairwise overlap condition
    |<h|h'>|^2 = 1/(d+1) before the set is handed out.
    """
    phi = fiducial(d)
    vecs = [weyl_displacement(d, j, k).data @ phi for j in range(d) for k in range(d)]
    if d not in _VERIFIED_SIC:
        target = 1.0 / (d + 1)
        for a in range(len(vecs)):
            for b in range(a + 1, len(vecs)):
                ov = abs(np.vdot(vecs[a], vecs[b])) ** 2
                if abs(ov - target) > 1e-6:
                    raise InvalidParameter(
                        f"embedded d={d} fiducial fails the SIC condition: "
                        f"|overlap|^2 = {ov:.3e}, want {target:.3e}"
                    )
        _VERIFIED_SIC.add(d)
    elements = tuple(QuantumObject(np.outer(v, v.conj()) / d) for v in vecs)
    return MeasurementSet(kind="sic", elements=elements,
                          groups=(tuple(range(d * d)),))


_BUILDERS: dict[str, Callable[[int], MeasurementSet]] = {
    "pauli": build_pauli_set,
    "stoke": build_stoke_set,
    "mub": build_mub_set,
    "sic": build_sic_set,
}


def sample_mc(p: float, iterations: int, rng=None) -> float:
    """Accept/reject frequency estimate of a probability p.

    Draws ``iterations`` uniforms and returns the fraction falling below
    p.  The endpoints are exact: p = 0 gives 0.0 and p = 1 gives 1.0.
    """
    if not (0.0 <= p <= 1.0):
        raise InvalidParameter(f"probability must be in [0, 1], got {p}")
    if iterations < 1:
        raise InvalidParameter(f"iterations must be >= 1, got {iterations}")
    g = as_rng(rng)
    return float(np.count_nonzero(g.random(iterations) < p)) / iterations


def sample_cdf_continuous(inverse_cdf: Callable, shots: int, rng=None) -> np.ndarray:
    """Inverse-transform draws y_i = F^{-1}(r_i) from i.i.d. uniforms."""
    if shots < 1:
        raise InvalidParameter(f"shots must be >= 1, got {shots}")
    g = as_rng(rng)
    return np.asarray(inverse_cdf(g.random(shots)))


def sample_cdf_discrete(probs, shots: int, rng=None) -> np.ndarray:
    """Outcome counts from inverse-transform sampling of a discrete distribution.

    Uses stratified uniforms r_i = (i + u_i)/shots, so each count deviates
    from shots * p_k by at most one stratum; zero-probability outcomes are
    never produced.  Counts always sum to ``shots``.
    """
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidDistribution("probability vector must be 1-d and non-empty")
    if np.min(p) < -1e-12:
        raise InvalidDistribution(f"negative probability {np.min(p):.3e}")
    if abs(p.sum() - 1.0) > 1e-8:
        raise InvalidDistribution(f"probabilities sum to {p.sum():.10f}, not 1")
    if shots < 1:
        raise InvalidParameter(f"shots must be >= 1, got {shots}")
    g = as_rng(rng)
    p = np.clip(p, 0.0, None)
    cum = np.cumsum(p / p.sum())
    r = (np.arange(shots) + g.random(shots)) / shots
    # scale keeps r strictly inside the support so zero-width (p = 0)
    # intervals can never be hit, even at the top boundary
    idx = np.searchsorted(cum, r * cum[-1], side="right")
    return np.bincount(idx, minlength=p.size)


def measure_and_sample(state, mset: MeasurementSet, backend: SamplerBackend,
                       shots: int | None = None) -> np.ndarray:
    """Simulated outcome frequencies aligned with the set's elements.

    Exact probabilities are computed first, then simulated per back-end:
    'mc' estimates each element independently; 'cdf' samples each declared
    group as one discrete distribution (ungrouped elements fall back to a
    two-outcome {E, 1-E} distribution).  ``shots`` defaults to the
    backend's iteration count.
    """
    probs = probabilities(state, mset)
    n = shots if shots is not None else backend.iterations
    if n < 1:
        raise InvalidParameter(f"shots must be >= 1, got {n}")
    g = backend.rng()
    freqs = np.zeros(len(mset), dtype=float)
    if backend.method == "mc":
        for k, p in enumerate(probs):
            freqs[k] = sample_mc(min(max(p, 0.0), 1.0), n, g)
        return freqs
    covered: set[int] = set()
    for idx in mset.groups:
        pg = np.clip(probs[list(idx)], 0.0, None)
        counts = sample_cdf_discrete(pg / pg.sum(), n, g)
        for i, k in enumerate(idx):
            freqs[k] = counts[i] / n
        covered.update(idx)
    for k, p in enumerate(probs):
        if k in covered:
            continue
        p = min(max(p, 0.0), 1.0)
        counts = sample_cdf_discrete(np.array([1.0 - p, p]), n, g)
        freqs[k] = counts[1] / n
    return freqs


def timed_measurement(state, mset) -> tuple[np.ndarray, float]:
    """Probabilities plus the wall-clock seconds spent computing them."""
    t0 = time.perf_counter()
    probs = probabilities(state, mset)
    return probs, time.perf_counter() - t0
