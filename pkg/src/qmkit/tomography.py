"""State tomography: simulate measurement data, reconstruct by linear
inversion with a PSD projection, and score with trace distance / fidelity."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NotPositive,
    RankDeficientSet,
)
from .measurement import MeasurementSet, SamplerBackend, measure_and_sample, probabilities
from .qcore import Kind, QuantumObject, density_matrix, mat_sqrt


def trace_distance_pure(psi, phi) -> float:
    """sqrt(1 - |<phi|psi>|^2) for two unit kets."""
    a = QuantumObject(psi)
    b = QuantumObject(phi)
    if a.kind is not Kind.KET or b.kind is not Kind.KET:
        raise DimensionMismatch("trace_distance_pure expects two kets")
    if a.shape != b.shape:
        raise DimensionMismatch(f"kets of dimension {a.dim} vs {b.dim}")
    ov = np.vdot(b.data.reshape(-1), a.data.reshape(-1))
    return float(np.sqrt(max(0.0, 1.0 - abs(ov) ** 2)))


def trace_distance(rho, sigma) -> float:
    """(1/2) tr |rho - sigma| for Hermitian operators (kets are promoted)."""
    a = density_matrix(rho)
    b = density_matrix(sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"operators of shape {a.shape} vs {b.shape}")
    diff = a - b
    vals = np.linalg.eigvalsh((diff + diff.conj().T) / 2)
    return float(0.5 * np.sum(np.abs(vals)))


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0, 1]."""
    a = density_matrix(rho)
    b = density_matrix(sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"operators of shape {a.shape} vs {b.shape}")
    sq = mat_sqrt(QuantumObject(a)).data
    inner = sq @ b @ sq
    vals = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    if np.min(vals) < -1e-8:
        raise NotPositive(f"fidelity operand has eigenvalue {np.min(vals):.3e}")
    f = float(np.sum(np.sqrt(np.clip(vals, 0.0, None))))
    return min(max(f, 0.0), 1.0)


def _traceless_hermitian_basis(d: int) -> list[np.ndarray]:
    """Orthonormal (Hilbert-Schmidt) basis of traceless Hermitian d x d matrices."""
    out = []
    for i in range(d):
        for jj in range(i + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[i, jj] = m[jj, i] = 1 / np.sqrt(2)
            out.append(m)
            m = np.zeros((d, d), dtype=complex)
            m[i, jj] = -1j / np.sqrt(2)
            m[jj, i] = 1j / np.sqrt(2)
            out.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        for i in range(l):
            m[i, i] = 1.0
        m[l, l] = -l
        out.append(m / np.sqrt(l * (l + 1)))
    return out


def reconstruct_linear_inversion(freqs, mset: MeasurementSet) -> QuantumObject:
    """Least-squares inversion of tr(E_k rho) = f_k over unit-trace Hermitian
    matrices, followed by a PSD projection.

    Frequencies of grouped sets are renormalized per group first.  The
    projection clips negative eigenvalues to zero and renormalizes the
    trace.  Raises :class:`RankDeficientSet` when the elements do not span
    the traceless operator space.
    """
    f = np.asarray(freqs, dtype=float).copy()
    if len(f) != len(mset):
        raise DimensionMismatch(f"{len(f)} frequencies for {len(mset)} elements")
    for idx in mset.groups:
        s = f[list(idx)].sum()
        if s > 0:
            f[list(idx)] /= s
    d = mset.dim
    basis = _traceless_hermitian_basis(d)
    M = np.empty((len(mset), len(basis)), dtype=float)
    offset = np.empty(len(mset), dtype=float)
    for k, e in enumerate(mset.elements):
        offset[k] = np.trace(e.data).real / d
        for a, B in enumerate(basis):
            M[k, a] = np.real(np.einsum("ij,ji->", e.data, B))
    if np.linalg.matrix_rank(M) < d * d - 1:
        raise RankDeficientSet(
            f"{mset.kind} set with {len(mset)} elements does not determine a "
            f"{d}-dimensional state"
        )
    x, *_ = np.linalg.lstsq(M, f - offset, rcond=None)
    rho = np.eye(d, dtype=complex) / d
    for a, B in enumerate(basis):
        rho += x[a] * B
    vals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    vals = np.clip(vals, 0.0, None)
    vals /= vals.sum()
    return QuantumObject((vecs * vals) @ vecs.conj().T)


Estimator = Callable[[Sequence[float], MeasurementSet], QuantumObject]


@dataclass(frozen=True)
class TomographyRun:
    """One reconstruction: inputs, result, and its two scores."""

    true_state: QuantumObject
    set_kind: str
    shots: int | None            # None means exact probabilities
    backend: str                 # 'exact', 'mc' or 'cdf'
    seed: int
    reconstructed: QuantumObject
    fidelity: float
    trace_distance: float

    @property
    def dimension(self) -> int:
        return self.true_state.shape[0]

    def report(self) -> dict:
        """Flat report used by the JSON/CSV interfaces."""
        return {
            "dimension": self.dimension,
            "set_kind": self.set_kind,
            "shots": self.shots if self.shots is not None else "exact",
            "backend": self.backend,
            "seed": self.seed,
            "fidelity": self.fidelity,
            "trace_distance": self.trace_distance,
        }


def run_tomography(true_state, mset: MeasurementSet, shots: int | None = None,
                   backend: SamplerBackend | None = None,
                   estimator: Estimator | None = None) -> TomographyRun:
    """Simulate, reconstruct and score one tomography experiment.

    ``shots = None`` bypasses sampling and feeds exact probabilities to the
    estimator (default: linear inversion + PSD projection).
    """
    rho_true = QuantumObject(density_matrix(true_state))
    if shots is None:
        freqs = probabilities(rho_true, mset)
        backend_name, seed = "exact", 0
    else:
        if backend is None:
            backend = SamplerBackend(method="cdf", seed=0)
        freqs = measure_and_sample(rho_true, mset, backend, shots)
        backend_name, seed = backend.method, backend.seed
    est = estimator if estimator is not None else reconstruct_linear_inversion
    rec = est(freqs, mset)
    return TomographyRun(
        true_state=rho_true,
        set_kind=mset.kind,
        shots=shots,
        backend=backend_name,
        seed=seed,
        reconstructed=rec,
        fidelity=fidelity(rho_true, rec),
        trace_distance=trace_distance(rho_true, rec),
    )


_REPORT_COLUMNS = ("dimension", "set_kind", "shots", "backend", "seed",
                   "fidelity", "trace_distance")


def report_lines(runs: Sequence[TomographyRun]) -> list[str]:
    """CSV content: one row per run, floats at 17 significant digits."""
    lines = ["# " + ",".join(_REPORT_COLUMNS)]
    for r in runs:
        rep = r.report()
        cells = []
        for c in _REPORT_COLUMNS:
            v = rep[c]
            cells.append(f"{v:.17g}" if isinstance(v, float) else str(v))
        lines.append(",".join(cells))
    return lines


def write_reports_csv(runs: Sequence[TomographyRun], path) -> None:
    Path(path).write_text("\n".join(report_lines(runs)) + "\n",
                          encoding="utf-8", newline="\n")


def write_reports_json(runs: Sequence[TomographyRun], path) -> None:
    reports = [r.report() for r in runs]
    payload = reports[0] if len(reports) == 1 else reports
    Path(path).write_text(json.dumps(payload, indent=2) + "\n",
                          encoding="utf-8", newline="\n")
