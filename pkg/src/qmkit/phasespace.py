"""Husimi and Wigner quasi-probability maps on planar and spherical grids,
plus the angular-momentum utilities they need (Clebsch-Gordan coefficients
and spherical harmonics).

Grid values are stored row-major with the slow index being y (planar) or
theta (spherical); the CSV grid format mirrors that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
import scipy.special

from .errors import (
    DimensionMismatch,
    InvalidParameter,
    InvalidQuantumNumber,
)
from .operators import displacement
from .qcore import QuantumObject, density_matrix
from .states import spin_coherent


# ---------------------------------------------------------------------------
# angular-momentum utilities
# ---------------------------------------------------------------------------

def _twice(x, name: str) -> int:
    t = round(2 * x)
    if abs(2 * x - t) > 1e-9:
        raise InvalidQuantumNumber(f"{name}={x} is not a half-integer")
    return int(t)


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> (Condon-Shortley).

    Computed by the Racah sum in exact rational arithmetic, so it is
    accurate at any angular momentum the factorials can express.  Returns
    0 for violated selection rules; raises for non-half-integer inputs.
    """
    tj1, tm1 = _twice(j1, "j1"), _twice(m1, "m1")
    tj2, tm2 = _twice(j2, "j2"), _twice(m2, "m2")
    tJ, tM = _twice(J, "J"), _twice(M, "M")
    if tj1 < 0 or tj2 < 0 or tJ < 0:
        raise InvalidQuantumNumber("angular momenta must be non-negative")
    # selection rules (violations yield a vanishing coefficient)
    if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or (tJ + tM) % 2:
        return 0.0
    if tm1 + tm2 != tM:
        return 0.0
    if tJ > tj1 + tj2 or tJ < abs(tj1 - tj2) or (tj1 + tj2 + tJ) % 2:
        return 0.0
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tM) > tJ:
        return 0.0

    def f(twice_val: int) -> int:
        return math.factorial(twice_val // 2)

    pref = Fraction(tJ + 1)
    pref *= Fraction(
        f(tj1 + tj2 - tJ) * f(tj1 - tj2 + tJ) * f(-tj1 + tj2 + tJ),
        f(tj1 + tj2 + tJ + 2),
    )
    pref *= Fraction(
        f(tJ + tM) * f(tJ - tM) * f(tj1 - tm1) * f(tj1 + tm1)
        * f(tj2 - tm2) * f(tj2 + tm2)
    )
    k_min = max(0, (tj2 - tJ - tm1) // 2, (tj1 + tm2 - tJ) // 2)
    k_max = min((tj1 + tj2 - tJ) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        den = (
            math.factorial(k)
            * f(tj1 + tj2 - tJ - 2 * k)
            * f(tj1 - tm1 - 2 * k)
            * f(tj2 + tm2 - 2 * k)
            * f(tJ - tj2 + tm1 + 2 * k)
            * f(tJ - tj1 - tm2 + 2 * k)
        )
        total += Fraction(-1 if k % 2 else 1, den)
    if total == 0:
        return 0.0
    mag = math.sqrt(float(pref * total * total))
    return mag if total > 0 else -mag


def spherical_harmonic(k: int, q: int, theta, phi):
    """Orthonormal spherical harmonic Y_kq(theta, phi), Condon-Shortley phase.

    ``theta`` is the polar (colatitude) angle; scalar and array arguments
    are both accepted.
    """
    if k != int(k) or q != int(q):
        raise InvalidQuantumNumber(f"k={k}, q={q} must be integers")
    k, q = int(k), int(q)
    if k < 0 or abs(q) > k:
        raise InvalidQuantumNumber(f"need 0 <= |q| <= k, got k={k}, q={q}")
    return scipy.special.sph_harm_y(k, q, theta, phi)


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlanarGrid:
    """Rectangular grid in alpha = x + iy."""

    x_range: tuple[float, float] = (-3.0, 3.0)
    y_range: tuple[float, float] = (-3.0, 3.0)
    nx: int = 61
    ny: int = 61

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise InvalidParameter("planar grid needs at least 2 points per axis")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_range[0], self.x_range[1], self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y_range[0], self.y_range[1], self.ny)


@dataclass(frozen=True)
class SphericalGrid:
    """Grid over the sphere, theta in [0, pi], phi in [0, 2 pi]."""

    theta_range: tuple[float, float] = (0.0, math.pi)
    phi_range: tuple[float, float] = (0.0, 2.0 * math.pi)
    ntheta: int = 61
    nphi: int = 61

    def __post_init__(self):
        if self.ntheta < 2 or self.nphi < 2:
            raise InvalidParameter("spherical grid needs at least 2 points per axis")
        if not (0.0 <= self.theta_range[0] <= self.theta_range[1] <= math.pi + 1e-12):
            raise InvalidParameter(f"theta range {self.theta_range} not within [0, pi]")
        if not (0.0 <= self.phi_range[0] <= self.phi_range[1] <= 2 * math.pi + 1e-12):
            raise InvalidParameter(f"phi range {self.phi_range} not within [0, 2 pi]")

    @property
    def thetas(self) -> np.ndarray:
        return np.linspace(self.theta_range[0], self.theta_range[1], self.ntheta)

    @property
    def phis(self) -> np.ndarray:
        return np.linspace(self.phi_range[0], self.phi_range[1], self.nphi)


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Evaluated map: axis1 is the slow coordinate (y or theta), axis2 the
    fast one (x or phi), values has shape (len(axis1), len(axis2))."""

    kind: str    # husimi | wigner
    coords: str  # planar | spherical
    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray


def grid_lines(grid: PhaseSpaceGrid) -> list[str]:
    """Grid file content: one comment header, then coord1,coord2,value rows.

    Rows run in row-major order (slow coordinate outermost), matching the
    values layout.  All floats carry 17 significant digits.
    """
    lines = [
        f"# kind={grid.kind} coords={grid.coords} "
        f"n1={len(grid.axis1)} n2={len(grid.axis2)}"
    ]
    for i, c1 in enumerate(grid.axis1):
        for j, c2 in enumerate(grid.axis2):
            lines.append(f"{c1:.17g},{c2:.17g},{grid.values[i, j]:.17g}")
    return lines


def write_grid(grid: PhaseSpaceGrid, path) -> None:
    Path(path).write_text("\n".join(grid_lines(grid)) + "\n",
                          encoding="utf-8", newline="\n")


def read_grid(path) -> PhaseSpaceGrid:
    """Parse a grid file produced by :func:`write_grid`."""
    text = Path(path).read_text(encoding="utf-8").strip().splitlines()
    header = text[0].lstrip("# ").split()
    meta = dict(kv.split("=") for kv in header)
    n1, n2 = int(meta["n1"]), int(meta["n2"])
    rows = np.array([[float(v) for v in line.split(",")] for line in text[1:]])
    if rows.shape[0] != n1 * n2:
        raise InvalidParameter(f"grid file has {rows.shape[0]} rows, expected {n1 * n2}")
    return PhaseSpaceGrid(
        kind=meta["kind"],
        coords=meta["coords"],
        axis1=rows[::n2, 0].copy(),
        axis2=rows[:n2, 1].copy(),
        values=rows[:, 2].reshape(n1, n2),
    )


# ---------------------------------------------------------------------------
# planar maps
# ---------------------------------------------------------------------------

def _coherent_matrix(d: int, alphas: np.ndarray) -> np.ndarray:
    """Rows are truncated, renormalized coherent vectors for each alpha."""
    out = np.empty((alphas.size, d), dtype=complex)
    out[:, 0] = 1.0
    for n in range(1, d):
        out[:, n] = out[:, n - 1] * alphas / math.sqrt(n)
    out *= np.exp(-np.abs(alphas) ** 2 / 2)[:, None]
    out /= np.linalg.norm(out, axis=1)[:, None]
    return out


def husimi_planar(rho, grid: PlanarGrid = PlanarGrid()) -> PhaseSpaceGrid:
    """Husimi function Q(alpha) = <alpha|rho|alpha> / pi on a planar grid.

    Coherent states are truncated at the state's own dimension, so the
    caller controls accuracy through the cutoff of ``rho``.
    """
    dm = density_matrix(rho)
    d = dm.shape[0]
    xs, ys = grid.xs, grid.ys
    alphas = (xs[None, :] + 1j * ys[:, None]).reshape(-1)
    c = _coherent_matrix(d, alphas)
    q = np.real(np.einsum("pi,ij,pj->p", c.conj(), dm, c)) / math.pi
    return PhaseSpaceGrid("husimi", "planar", ys, xs, q.reshape(grid.ny, grid.nx))


def wigner_planar(rho, grid: PlanarGrid = PlanarGrid()) -> PhaseSpaceGrid:
    """Wigner function from the displaced-number-state series,
    W(alpha) = (2/pi) sum_k (-1)^k <alpha,k|rho|alpha,k>, truncated at the
    state's dimension."""
    dm = density_matrix(rho)
    d = dm.shape[0]
    xs, ys = grid.xs, grid.ys
    signs = (-1.0) ** np.arange(d)
    vals = np.empty((grid.ny, grid.nx), dtype=float)
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            dd = displacement(d, x + 1j * y).data
            diag = np.einsum("ik,ij,jk->k", dd.conj(), dm, dd)
            vals[i, j] = 2.0 / math.pi * float(np.real(signs @ diag))
    return PhaseSpaceGrid("wigner", "planar", ys, xs, vals)


# ---------------------------------------------------------------------------
# spherical maps
# ---------------------------------------------------------------------------

def _spin_j(dm: np.ndarray) -> float:
    d = dm.shape[0]
    if dm.shape[0] != dm.shape[1]:
        raise DimensionMismatch(f"need a square density matrix, got {dm.shape}")
    return (d - 1) / 2.0


def husimi_spherical(rho, grid: SphericalGrid = SphericalGrid()) -> PhaseSpaceGrid:
    """Spin Husimi function Q(theta, phi) = <theta,phi|rho|theta,phi> / pi."""
    dm = density_matrix(rho)
    j = _spin_j(dm)
    thetas, phis = grid.thetas, grid.phis
    vals = np.empty((grid.ntheta, grid.nphi), dtype=float)
    for a, th in enumerate(thetas):
        for b, ph in enumerate(phis):
            v = spin_coherent(j, th, ph).data.reshape(-1)
            vals[a, b] = float(np.real(v.conj() @ dm @ v)) / math.pi
    return PhaseSpaceGrid("husimi", "spherical", thetas, phis, vals)


def spherical_multipole(rho, k: int, q: int) -> complex:
    """Multipole component rho_kq = sum_{m} rho_{m, m-q} (-1)^{j-m-q}
    <j, m; j, -(m-q) | k, q> of a spin state."""
    dm = density_matrix(rho)
    j = _spin_j(dm)
    tj = round(2 * j)
    total = 0.0 + 0.0j
    for i in range(tj + 1):
        m = j - i                      # row index i = j - m
        m2 = m - q                     # column must satisfy m - m' = q
        i2 = round(j - m2)
        if not (0 <= i2 <= tj):
            continue
        cg = clebsch_gordan(j, m, j, -m2, k, q)
        if cg == 0.0:
            continue
        total += dm[i, i2] * (-1.0) ** round(j - m - q) * cg
    return total


def wigner_spherical(rho, grid: SphericalGrid = SphericalGrid()) -> PhaseSpaceGrid:
    """Spherical Wigner map W(theta, phi) = sum_{k=0}^{2j} sum_q rho_kq Y_kq.

    The multipole expansion uses the Clebsch-Gordan contraction of
    :func:`spherical_multipole`; for Hermitian input the imaginary residue
    of the sum is at roundoff level and only the real part is returned.
    """
    dm = density_matrix(rho)
    j = _spin_j(dm)
    tj = round(2 * j)
    thetas, phis = grid.thetas, grid.phis
    TH, PH = np.meshgrid(thetas, phis, indexing="ij")
    acc = np.zeros(TH.shape, dtype=complex)
    for k in range(0, tj + 1):
        for q in range(-k, k + 1):
            r_kq = spherical_multipole(dm, k, q)
            if abs(r_kq) < 1e-300:
                continue
            acc += r_kq * spherical_harmonic(k, q, TH, PH)
    return PhaseSpaceGrid("wigner", "spherical", thetas, phis, np.real(acc))
