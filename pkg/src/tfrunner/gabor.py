"""Time-frequency shifts M_w T_tau f and numerical independence of Gabor systems.

Independence is scored by the smallest eigenvalue of the Gram matrix of
the shifted functions, computed by trapezoidal quadrature on [-T, T].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DetNotOne, InputError
from .models import FunctionModel
from .rational import ExactReal

__all__ = [
    "TFPoint",
    "PointSet",
    "SampledSystem",
    "Score",
    "DEFAULT_WINDOW",
    "DEFAULT_SAMPLES",
    "NULL_THRESHOLD",
    "sample_grid",
    "tf_shift_eval",
    "sampled_system",
    "gram_matrix",
    "independence_score",
    "normalize_origin",
    "apply_metaplectic",
    "FOURIER_ROTATION",
    "dependence_residual",
    "combination_values",
]

DEFAULT_WINDOW = 16.0
DEFAULT_SAMPLES = 2**14
#: min eigenvalue <= NULL_THRESHOLD * trace declares numerical dependence
NULL_THRESHOLD = 1e-8

FOURIER_ROTATION = ((0.0, -1.0), (1.0, 0.0))


@dataclass(frozen=True)
class TFPoint:
    """A time shift ``tau`` and a frequency shift ``omega`` (float or ExactReal)."""

    tau: float
    omega: float | ExactReal = 0.0

    def __post_init__(self):
        object.__setattr__(self, "tau", float(self.tau))
        if not isinstance(self.omega, ExactReal):
            object.__setattr__(self, "omega", float(self.omega))
        if not (math.isfinite(self.tau) and math.isfinite(float(self.omega))):
            raise InputError("time-frequency points must be finite")

    @property
    def w(self) -> float:
        return float(self.omega)

    def __sub__(self, other: "TFPoint") -> "TFPoint":
        return TFPoint(self.tau - other.tau, self.omega - other.omega)

    def to_json(self) -> dict:
        om = self.omega.to_json() if isinstance(self.omega, ExactReal) else self.omega
        return {"tau": self.tau, "omega": om}


class PointSet(tuple):
    """An ordered collection of pairwise distinct TFPoints."""

    def __new__(cls, points: Iterable = ()):
        pts = tuple(p if isinstance(p, TFPoint) else TFPoint(*p) for p in points)
        keys = [(p.tau, p.w) for p in pts]
        if len(set(keys)) != len(keys):
            raise InputError("points must be pairwise distinct")
        return super().__new__(cls, pts)

    @property
    def points(self) -> tuple[TFPoint, ...]:
        return tuple(self)

    @property
    def taus(self) -> np.ndarray:
        return np.array([p.tau for p in self])

    @property
    def omegas(self) -> np.ndarray:
        return np.array([p.w for p in self])

    @property
    def exact(self) -> bool:
        return len(self) > 0 and all(isinstance(p.omega, ExactReal) for p in self)

    def translated(self, shift: TFPoint) -> "PointSet":
        return PointSet(p - shift for p in self)

    def to_json(self) -> dict:
        return {"points": [p.to_json() for p in self]}

    def __repr__(self):
        return "PointSet(" + ", ".join(f"({p.tau:g}, {p.omega if isinstance(p.omega, ExactReal) else format(p.omega, 'g')})" for p in self) + ")"


def sample_grid(T: float = DEFAULT_WINDOW, n: int = DEFAULT_SAMPLES) -> np.ndarray:
    if T <= 0:
        raise InputError("window half-width T must be positive")
    if n < 2:
        raise InputError("need at least two samples")
    return np.linspace(-T, T, n)


def tf_shift_eval(f: FunctionModel, p: TFPoint, grid) -> np.ndarray:
    """Samples of e^{2 pi i w t} f(t - tau) on ``grid``."""
    t = np.asarray(grid, dtype=float)
    return np.exp(2j * math.pi * p.w * t) * f(t - p.tau)


class SampledSystem(NamedTuple):
    grid: np.ndarray
    vectors: np.ndarray  # shape (len(points), len(grid))


def sampled_system(f: FunctionModel, points: PointSet, T=DEFAULT_WINDOW, n=DEFAULT_SAMPLES) -> SampledSystem:
    grid = sample_grid(T, n)
    return SampledSystem(grid, np.array([tf_shift_eval(f, p, grid) for p in points]))


def _trapezoid_weights(grid: np.ndarray) -> np.ndarray:
    w = np.full(grid.shape, grid[1] - grid[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def gram_matrix(f: FunctionModel, points: PointSet, T: float = DEFAULT_WINDOW, n: int = DEFAULT_SAMPLES) -> np.ndarray:
    """G[j, k] = int conj(g_j) g_k over [-T, T] by the trapezoidal rule."""
    grid, vecs = sampled_system(f, PointSet(points), T, n)
    w = _trapezoid_weights(grid)
    g = (vecs.conj() * w) @ vecs.T
    return 0.5 * (g + g.conj().T)


class Score(NamedTuple):
    min_eigenvalue: float
    trace: float
    null_vector: np.ndarray | None
    residual: float | None
    min_eigenvector: np.ndarray

    @property
    def relative(self) -> float:
        return self.min_eigenvalue / self.trace if self.trace else 0.0

    @property
    def dependent(self) -> bool:
        return self.null_vector is not None


def independence_score(
    f: FunctionModel,
    points: PointSet,
    T: float = DEFAULT_WINDOW,
    n: int = DEFAULT_SAMPLES,
    null_threshold: float = NULL_THRESHOLD,
) -> Score:
    """Smallest Gram eigenvalue, plus a unit null vector when it is below threshold.

    The residual is the quadrature L^2 norm of sum c_j g_j, evaluated from
    the samples rather than from the eigenvalue.
    """
    points = PointSet(points)
    grid, vecs = sampled_system(f, points, T, n)
    w = _trapezoid_weights(grid)
    g = (vecs.conj() * w) @ vecs.T
    g = 0.5 * (g + g.conj().T)
    evals, evecs = np.linalg.eigh(g)
    lam = float(evals[0])
    trace = float(np.real(np.trace(g)))
    vec = evecs[:, 0]
    # fix the phase so the largest entry is real positive (deterministic output)
    k = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[k]) / vec[k])
    null, residual = None, None
    if lam <= null_threshold * trace:
        null = vec / np.linalg.norm(vec)
        comb = null @ vecs
        residual = float(math.sqrt(max(float(np.sum(w * np.abs(comb) ** 2)), 0.0)))
    return Score(lam, trace, null, residual, vec)


def normalize_origin(f: FunctionModel, points: PointSet):
    """Translate so the point with least omega (then least tau) becomes (0, 0).

    Returns ``(shift, translated_points, shifted_f)`` where shifted_f is
    T_tau0 f.  Translation only multiplies every shifted function by the
    same unimodular factor, so coefficient vectors carry over unchanged.
    """
    points = PointSet(points)
    if not points:
        raise InputError("empty point set")
    shift = min(points, key=lambda p: (p.w, p.tau))
    return shift, points.translated(shift), f.shifted(shift.tau)


def apply_metaplectic(points: PointSet, A) -> PointSet:
    """Map each (tau, omega) by the 2x2 matrix A with det A = 1.

    Only the point set is transformed; no action on f is modeled here.
    Exact frequencies survive when the matrix keeps omega rational in omega.
    """
    a = np.asarray(A, dtype=float)
    if a.shape != (2, 2):
        raise InputError("A must be 2x2")
    if abs(np.linalg.det(a) - 1.0) > 1e-12:
        raise DetNotOne(f"det A = {np.linalg.det(a):.15g}")
    out = []
    for p in PointSet(points):
        tau = a[0, 0] * p.tau + a[0, 1] * p.w
        om = a[1, 0] * p.tau + a[1, 1] * p.w
        if isinstance(p.omega, ExactReal) and a[1, 0] == 0 and a[1, 1] == 1.0:
            om = p.omega
        out.append(TFPoint(tau, om))
    return PointSet(out)


def _nonorigin(points) -> tuple[np.ndarray, np.ndarray]:
    pts = [p if isinstance(p, TFPoint) else TFPoint(*p) for p in points]
    pts = [p for p in pts if not (p.tau == 0.0 and p.w == 0.0)]
    return np.array([p.tau for p in pts]), np.array([p.w for p in pts])


def dependence_residual(f: FunctionModel, points, coeffs: Sequence[complex], t) -> float | np.ndarray:
    """|f(t) - sum_k c_k e^{2 pi i w_k t} f(t - tau_k)| over the non-origin points.

    The origin (0, 0), if listed, is skipped; coefficients follow the
    remaining points in order.
    """
    taus, oms = _nonorigin(points)
    c = np.asarray(coeffs, dtype=complex)
    if c.shape != taus.shape:
        raise InputError(f"{c.size} coefficients for {taus.size} non-origin points")
    t_arr = np.asarray(t, dtype=float)
    tt = t_arr[..., None]
    rhs = np.sum(c * np.exp(2j * math.pi * oms * tt) * f(tt - taus), axis=-1)
    out = np.abs(f(t_arr) - rhs)
    return out if out.ndim else float(out)


def combination_values(f: FunctionModel, points: PointSet, coeffs: Sequence[complex], t) -> np.ndarray:
    """sum_j a_j e^{2 pi i w_j t} f(t - tau_j) at the sample times ``t``."""
    points = PointSet(points)
    a = np.asarray(coeffs, dtype=complex)
    if a.size != len(points):
        raise InputError("one coefficient per point is required")
    tt = np.asarray(t, dtype=float)[..., None]
    return np.sum(a * np.exp(2j * math.pi * points.omegas * tt) * f(tt - points.taus), axis=-1)
