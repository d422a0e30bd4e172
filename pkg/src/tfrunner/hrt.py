"""Refuting linear dependences of small Gabor systems with ultimately positive f.

A hypothesised dependence is a coefficient vector ``a`` (one entry per
point) with ``sum_j a_j M_{w_j} T_{tau_j} f = 0``.  After translating one
point to the origin it reads

    R(t) = f(t) - sum_k c_k e^{2 pi i w_k t} f(t - tau_k) = 0,

and each branch below looks for a time t* past the positivity onset where
some real or imaginary part of R(t*) is forced to have a strict sign.  The
reported ``margin`` is exactly that signed part, so ``|R(t*)| >= margin``
and a positive margin refutes the given coefficients.

Four-point systems are split by the order pattern of their sorted
frequencies (Cases 1-5); larger systems whose frequencies have at most one
integer relation go through :func:`verify_theorem_1_4`.
"""

from __future__ import annotations

import cmath
import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple, Sequence

import numpy as np

from .errors import (
    BadSequence,
    BudgetExhausted,
    InputError,
    PreconditionNotMet,
    ScanFailure,
    SmallRelation,
)
from .gabor import (
    DEFAULT_SAMPLES,
    DEFAULT_WINDOW,
    NULL_THRESHOLD,
    PointSet,
    TFPoint,
    combination_values,
    dependence_residual,
    independence_score,
    normalize_origin,
)
from .models import FunctionModel
from .rational import (
    ExactReal,
    affine_dimension,
    float_relation_basis,
    float_relation_guess,
    heuristic_affine_dimension,
    is_proportional_123,
    relation_lattice,
)
from .runners import RunnerInstance, find_lonely_time, first_sign_window, select_spectator
from .torus import ApproxTask, kronecker_witness, torus_norm

__all__ = [
    "Verdict",
    "CaseTag",
    "VerifyConfig",
    "RelationSystem",
    "WitnessReport",
    "PerturbationResult",
    "Case3Reduction",
    "TrigPolyCheck",
    "Case5Feasibility",
    "KhinchinResult",
    "classify_4pt",
    "perturbation_phis",
    "refute_dependence",
    "case2_claim_refute",
    "case3_reduce",
    "case3_refute",
    "case4_trig_poly_check",
    "case4_refute",
    "case5_refute",
    "case5_feasibility",
    "khinchin_average_check",
    "verify_theorem_1_4",
    "verify_4pt",
]

log = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


class Verdict(str, enum.Enum):
    REFUTED = "RefutedDependence"
    DEPENDENT = "NumericallyDependent"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CaseTag:
    tag: str
    subcase: str | None = None

    def to_json(self) -> dict:
        return {"tag": self.tag, "subcase": self.subcase}


@dataclass(frozen=True)
class VerifyConfig:
    scan_budget: int = 2_000_000
    max_span: float = 4096.0
    window: float = DEFAULT_WINDOW
    samples: int = DEFAULT_SAMPLES
    null_threshold: float = NULL_THRESHOLD
    identity_tol: float = 1e-9
    equality_tol: float = 1e-12
    relation_tol: float = 1e-9
    height_bound: int = 64
    lonely_bonus: float = 1e-3
    coeff_zero_tol: float = 1e-14

    @property
    def grid_step(self) -> float:
        return 2 * self.window / (self.samples - 1)


DEFAULT_CONFIG = VerifyConfig()


# ----------------------------------------------------------------------------
# relation systems and reports


@dataclass(frozen=True)
class RelationSystem:
    """f(t) = sum_k coeffs[k] e^{2 pi i w_k t} f(t - tau_k) over the non-origin ``points``."""

    f: FunctionModel
    points: PointSet
    coeffs: tuple[complex, ...]

    def value(self, t) -> complex | np.ndarray:
        t_arr = np.asarray(t, dtype=float)
        tt = t_arr[..., None]
        c = np.asarray(self.coeffs, dtype=complex)
        rhs = np.sum(c * np.exp(2j * math.pi * self.points.omegas * tt) * self.f(tt - self.points.taus), axis=-1)
        out = self.f(t_arr) - rhs
        return complex(out) if np.ndim(out) == 0 else out

    def residual(self, t) -> float:
        return dependence_residual(self.f, self.points, self.coeffs, t)

    def conjugated(self) -> "RelationSystem":
        pts = PointSet(TFPoint(p.tau, -p.omega) for p in self.points)
        return RelationSystem(self.f, pts, tuple(complex(c).conjugate() for c in self.coeffs))

    @property
    def taus(self) -> np.ndarray:
        return self.points.taus

    @property
    def omegas(self) -> np.ndarray:
        return self.points.omegas

    def start_time(self, config: VerifyConfig) -> float:
        """First time past which every f(t - tau_k), k including 0, is positive."""
        return self.f.onset + max(0.0, float(self.taus.max(initial=0.0))) + config.grid_step

    def to_json(self) -> dict:
        return {
            "function": self.f.to_json(),
            "points": self.points.to_json()["points"],
            "coeffs": [[c.real, c.imag] for c in map(complex, self.coeffs)],
        }


@dataclass
class WitnessReport:
    case: CaseTag | None
    verdict: Verdict
    witness_time: float | None = None
    margin: float = 0.0
    details: dict = field(default_factory=dict)
    system: RelationSystem | None = None
    original_residual: float | None = None

    @property
    def refuted(self) -> bool:
        return self.verdict is Verdict.REFUTED

    def reverify(self) -> float:
        """Residual of the stored relation at the witness time."""
        if self.system is None or self.witness_time is None:
            raise InputError("report carries no witness")
        return float(self.system.residual(self.witness_time))

    def to_json(self) -> dict:
        return {
            "case": self.case.to_json() if self.case else None,
            "verdict": self.verdict.value,
            "witness_time": self.witness_time,
            "margin": self.margin,
            "original_residual": self.original_residual,
            "details": _jsonable(self.details),
            "system": self.system.to_json() if self.system else None,
        }


def _jsonable(obj: Any):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, enum.Enum):
        return obj.value
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


# ----------------------------------------------------------------------------
# small helpers


def _phase(c: complex) -> float:
    """theta in [0, 1) with c = |c| e^{2 pi i theta}."""
    return (cmath.phase(c) / TWO_PI) % 1.0


def _omega_equal(a, b, tol: float) -> bool:
    if isinstance(a, ExactReal) and isinstance(b, ExactReal):
        return (a - b).is_zero()
    return abs(float(a) - float(b)) <= tol


def _affine_dim(omegas: Sequence, config: VerifyConfig) -> tuple[int, bool]:
    if omegas and all(isinstance(w, ExactReal) for w in omegas):
        return affine_dimension(list(omegas)), False
    return heuristic_affine_dimension([float(w) for w in omegas], config.height_bound, config.relation_tol), True


def _relations(omegas: Sequence, config: VerifyConfig):
    if omegas and all(isinstance(w, ExactReal) for w in omegas):
        return relation_lattice(list(omegas))
    return float_relation_basis([float(w) for w in omegas], config.height_bound, config.relation_tol)


def _relation_form(f: FunctionModel, points: PointSet, a: np.ndarray, origin: int) -> RelationSystem:
    """Translate ``points[origin]`` to (0, 0) and divide by its coefficient."""
    shift = points[origin]
    pts = PointSet(p - shift for i, p in enumerate(points) if i != origin)
    c = tuple(complex(-a[i] / a[origin]) for i in range(len(points)) if i != origin)
    return RelationSystem(f.shifted(shift.tau), pts, c)


def _origin_index(points: PointSet) -> int:
    return min(range(len(points)), key=lambda i: (points[i].w, points[i].tau))


def _report(case, system, t, margin, details, original, *, branch) -> WitnessReport:
    details = dict(details)
    details["branch"] = branch
    ok = t is not None and margin > 0 and math.isfinite(margin)
    report = WitnessReport(
        case,
        Verdict.REFUTED if ok else Verdict.INCONCLUSIVE,
        witness_time=None if t is None else float(t),
        margin=float(margin) if t is not None else 0.0,
        details=details,
        system=system,
    )
    if t is not None and original is not None:
        f, pts, a = original
        report.original_residual = float(abs(combination_values(f, pts, a, t)))
    if not ok:
        details.setdefault("reason", "no witness with positive margin")
    return report


def _inconclusive(case, system, details, original, *, branch, reason) -> WitnessReport:
    details = dict(details, reason=reason)
    return _report(case, system, None, 0.0, details, original, branch=branch)


def _shift_into(t: float, period: float, start: float) -> float:
    """t + k * period with the least k making it >= start."""
    k = math.ceil((start - t) / period)
    return t + k * period


def _prepare(f: FunctionModel, points, coeffs, config: VerifyConfig):
    points = PointSet(points)
    if not points:
        raise InputError("empty point set")
    if coeffs is None:
        score = independence_score(f, points, config.window, config.samples, config.null_threshold)
        a = score.min_eigenvector
    else:
        a = np.asarray(coeffs, dtype=complex).reshape(-1)
    if a.size != len(points):
        raise InputError(f"{a.size} coefficients for {len(points)} points")
    if not np.any(np.abs(a) > 0):
        raise InputError("all coefficients vanish")
    return points, a


def _identity_check(f, points: PointSet, a, config: VerifyConfig) -> dict | None:
    """Gram certificate when sum a_j g_j vanishes on the window (a genuine identity)."""
    grid = np.linspace(-config.window, config.window, 4097)
    extra = np.linspace(f.onset, f.onset + 4 * config.window, 4097)
    t = np.concatenate([grid, extra])
    vals = np.abs(combination_values(f, points, a, t))
    scale = float(np.sum(np.abs(a)) * np.max(np.abs(f(t))))
    if scale == 0 or vals.max() > config.identity_tol * scale:
        return None
    score = independence_score(f, points, config.window, config.samples, config.null_threshold)
    return {
        "combination_max_abs": float(vals.max()),
        "combination_scale": scale,
        "gram_min_eigenvalue": score.min_eigenvalue,
        "gram_trace": score.trace,
        "gram_relative": score.relative,
        "gram_dependent": score.dependent,
        "function_flags": f.flags,
    }


def _dependent_report(case, details) -> WitnessReport:
    details = dict(details, branch="identity")
    return WitnessReport(case, Verdict.DEPENDENT, None, 0.0, details, None)


def _pointwise_witness(case, system: RelationSystem, lo: float, hi: float, details, original, *, branch, n=8193):
    """Witness at the grid maximum of |R| on [lo, hi]; used where no sign argument applies."""
    t = np.linspace(lo, hi, n)
    vals = np.abs(system.value(t))
    k = int(np.argmax(vals))
    scale = float(np.max(np.abs(system.f(t)))) * (1 + float(np.sum(np.abs(system.coeffs))))
    if vals[k] <= 1e-12 * max(scale, 1e-300):
        return _inconclusive(case, system, details, original, branch=branch, reason="combination vanishes on the scanned window")
    return _report(case, system, float(t[k]), float(vals[k]), details, original, branch=branch)


def _half_line_report(case, f, points, a, config, original) -> WitnessReport:
    """f lives on a half-line: such systems are independent outright."""
    origin = _origin_index(points)
    system = _relation_form(f, points, a, origin)
    lo = system.f.onset + float(min(0.0, system.taus.min(initial=0.0))) - 1.0
    hi = system.start_time(config) + 4.0
    details = {"note": "f is supported on a half-line; independent for every finite point set"}
    return _pointwise_witness(case, system, lo, hi, details, original, branch="half_line_shortcut")


def _margin(system: RelationSystem, t: float, part: str, orientation: float, rotation: complex = 1.0) -> float:
    val = rotation * system.value(t)
    return orientation * (val.real if part == "re" else val.imag)


# ----------------------------------------------------------------------------
# classification


def _sorted_pattern(points: PointSet, config: VerifyConfig):
    order = sorted(range(len(points)), key=lambda i: (points[i].w, points[i].tau))
    oms = [points[i].omega for i in order]
    pattern = tuple("=" if _omega_equal(x, y, config.equality_tol) else "<" for x, y in zip(oms, oms[1:]))
    return order, pattern


_PATTERNS = {
    ("<", "<", "<"): "Case1",
    ("=", "<", "<"): "Case2",
    ("<", "=", "<"): "Case2",
    ("<", "<", "="): "Case2",
    ("=", "=", "<"): "Case3",
    ("<", "=", "="): "Case3",
    ("=", "=", "="): "Case4",
    ("=", "<", "="): "Case5",
}


def classify_4pt(points, config: VerifyConfig = DEFAULT_CONFIG) -> CaseTag:
    """Case 1-5 from the equality pattern of the sorted frequencies.

    Case 1 is refined by the affine dimension of the frequencies; Case 5 by
    whether the two time gaps are commensurable.
    """
    points = PointSet(points)
    if len(points) != 4:
        raise InputError("classify_4pt needs exactly four points")
    _, pts, _ = normalize_origin(_DUMMY, points)
    order, pattern = _sorted_pattern(pts, config)
    tag = _PATTERNS[pattern]
    sub = None
    oms = [pts[i].omega for i in order]
    if tag == "Case1":
        dim, _ = _affine_dim(oms, config)
        if dim >= 2:
            sub = "Case1AffineDimHigh"
        else:
            d = [w - oms[0] for w in oms[1:]]
            sub = "Case1Extremal123" if is_proportional_123(*d, tol=config.equality_tol) else "Case1Generic"
    elif tag == "Case5":
        p = [pts[i] for i in order]
        gap1 = abs(p[1].tau - p[0].tau)
        gap = abs(p[3].tau - p[2].tau)
        rel = float_relation_guess([gap, gap1], 10_000, config.relation_tol)
        sub = "Case5Rational" if rel is not None else "Case5Irrational"
    return CaseTag(tag, sub)


class _Dummy(FunctionModel):
    def shifted(self, tau):
        return self


_DUMMY = _Dummy()


# ----------------------------------------------------------------------------
# phase perturbation for a single relation


@dataclass(frozen=True)
class PerturbationResult:
    phis: tuple[float, ...]
    alpha_residual: float

    def to_json(self):
        return {"phis": list(self.phis), "alpha_residual": self.alpha_residual}


def perturbation_phis(p: Sequence[int], alpha: float) -> PerturbationResult:
    """Shifts phi_k, |phi_k| < 1/4, with sum p_k phi_k = -alpha mod 1.

    phi_k = beta * sign(p_k), beta = a / sum|p_k| where a is the
    representative of -alpha in [-1/2, 1/2].  Needs sum |p_k| >= 3 unless
    no shift is required.
    """
    p = [int(x) for x in p]
    if not any(p):
        raise InputError("relation must be nonzero")
    weight = sum(abs(x) for x in p)
    target = -alpha - round(-alpha)
    if weight <= 2 and abs(target) > 1e-15:
        raise SmallRelation(f"sum |p_k| = {weight} is too small; reduce the point set instead")
    beta = target / weight
    phis = tuple(beta * (x > 0) - beta * (x < 0) for x in p)
    total = math.fsum(pk * ph for pk, ph in zip(p, phis)) + alpha
    return PerturbationResult(phis, abs(total - round(total)))


# ----------------------------------------------------------------------------
# the sign-window refutation (Case 1 and the independent branch)


def refute_dependence(
    f: FunctionModel,
    points,
    coeffs: Sequence[complex],
    mode: str = "auto",
    window_start: float | None = None,
    config: VerifyConfig = DEFAULT_CONFIG,
    case: CaseTag | None = None,
    _original=None,
) -> WitnessReport:
    """Refute f(t) = sum_k c_k e^{2 pi i w_k t} f(t - tau_k) by a sign window.

    ``points`` are the non-origin points (an origin entry is dropped) and
    ``coeffs`` their nonzero coefficients.  ``mode``:

    * ``real`` -- all cos(2 pi (w_k t + theta_k)) <= 0, so Re R(t) >= f(t) > 0;
    * ``imag`` -- all sin(...) < 0, so Im R(t) > 0;
    * ``auto`` -- real, except that frequencies proportional to 1:2:3 go
      through the three-spectator choice, and other commensurable positive
      frequencies use the lonely-runner search with target 1/4 + bonus.
    """
    pts = PointSet(p for p in PointSet(points) if not (p.tau == 0 and p.w == 0))
    c = np.asarray(coeffs, dtype=complex)
    if c.size != len(pts):
        raise InputError("one coefficient per non-origin point is required")
    if np.any(np.abs(c) == 0):
        raise InputError("coefficients must be nonzero; drop the corresponding points first")
    if mode not in ("auto", "real", "imag"):
        raise InputError("mode must be auto, real or imag")
    system = RelationSystem(f, pts, tuple(complex(x) for x in c))
    if _original is None:
        # the relation itself, written as a combination with coefficients (1, -c)
        _original = (f, PointSet([TFPoint(0.0, 0.0), *pts]), np.concatenate([[1.0], -c]))
    start = system.start_time(config)
    if window_start is not None:
        start = max(start, window_start)
    thetas = [_phase(x) for x in c]
    oms = list(pts.omegas)
    details: dict = {"thetas": thetas, "search_start": start, "mode": mode}

    if mode == "auto" and len(oms) == 3 and min(oms) > 0 and len(set(oms)) == 3:
        order = np.argsort(oms)
        vel = [pts[i].omega for i in order]
        starts = [thetas[i] for i in order]
        if is_proportional_123(*vel, tol=config.equality_tol):
            return _spectator_branch(case, system, vel, starts, start, details, _original)
        dim, _ = _affine_dim([vel[0] * 0] + list(vel), config)
        if dim == 1:
            return _lonely_branch(case, system, vel, starts, start, details, config, _original)

    if mode == "imag":
        win = first_sign_window(oms, thetas, "sin", "lt", start, 0.0, config.max_span)
        details["sign_window"] = win
        if win is None:
            return _inconclusive(case, system, details, _original, branch="sign_window_imag", reason="no sign window within max_span")
        t = 0.5 * (win[0] + win[1])
        return _report(case, system, t, _margin(system, t, "im", 1.0), details, _original, branch="sign_window_imag")

    win = first_sign_window(oms, thetas, "cos", "le", start, 0.0, config.max_span)
    details["sign_window"] = win
    if win is None:
        return _inconclusive(case, system, details, _original, branch="sign_window_real", reason="no sign window within max_span")
    t = 0.5 * (win[0] + win[1])
    return _report(case, system, t, _margin(system, t, "re", 1.0), details, _original, branch="sign_window_real")


def _spectator_branch(case, system, vel, starts, start, details, original):
    inst = RunnerInstance(tuple(float(v) for v in vel), tuple(starts))
    try:
        verdict = select_spectator(inst)
    except ScanFailure as exc:
        return _inconclusive(case, system, details, original, branch="spectator", reason=str(exc))
    period = 1.0 / inst.velocities[0]
    lo, hi = verdict.witness_interval
    t = _shift_into(0.5 * (lo + hi), period, start)
    details["spectator"] = verdict.to_json()
    k = verdict.spectator.value
    if k == "one":
        margin = _margin(system, t, "re", 1.0)
    elif k == "i":
        margin = _margin(system, t, "im", 1.0)
    else:
        margin = _margin(system, t, "im", -1.0)
    return _report(case, system, t, margin, details, original, branch=f"spectator_{k}")


def _lonely_branch(case, system, vel, starts, start, details, config, original):
    inst = RunnerInstance(tuple(float(v) for v in vel), tuple(starts))
    targets = (0.25 + config.lonely_bonus, 0.25)
    for target in targets:
        try:
            hit = find_lonely_time(inst, target, start, config.scan_budget)
        except BudgetExhausted:
            log.info("lonely search at target %.6g exhausted; falling back", target)
            continue
        details["lonely_target"] = target
        details["lonely_margin"] = hit.margin
        return _report(case, system, hit.t, _margin(system, hit.t, "re", 1.0), details, original, branch="lonely_runner_real")
    return _inconclusive(case, system, details, original, branch="lonely_runner_real", reason="lonely-runner scan exhausted")


# ----------------------------------------------------------------------------
# single-relation pipeline (at most one relation among the frequencies)


def _drop_zero(points: PointSet, a: np.ndarray, config: VerifyConfig):
    keep = np.abs(a) > config.coeff_zero_tol * np.abs(a).max()
    return PointSet(p for p, k in zip(points, keep) if k), a[keep], int((~keep).sum())


def verify_theorem_1_4(
    f: FunctionModel,
    points,
    coeffs: Sequence[complex] | None = None,
    config: VerifyConfig = DEFAULT_CONFIG,
) -> WitnessReport:
    """Refute a dependence of N+1 shifts whose frequencies have affine dimension >= N-1.

    Independent frequencies use the real-part sign window; a single relation
    p with sum|p| >= 3 uses phase perturbation plus simultaneous
    approximation; sum|p| in {1, 2} (a repeated frequency) is reduced by
    moving the repeated pair to frequency zero.  Without ``coeffs`` the
    minimal Gram eigenvector is used.
    """
    points, a = _prepare(f, points, coeffs, config)
    original = (f, points, a)
    ident = _identity_check(f, points, a, config)
    if ident is not None:
        return _dependent_report(None, ident)
    if not f.ultimately_positive:
        raise PreconditionNotMet("f must be ultimately positive")
    n = len(points) - 1
    dim, heur = _affine_dim([p.omega for p in points], config)
    if dim < n - 1:
        raise PreconditionNotMet(f"affine dimension {dim} < N - 1 = {n - 1}")
    if f.half_line:
        return _half_line_report(None, f, points, a, config, original)
    sub, b, dropped = _drop_zero(points, a, config)
    report = _single_relation_core(None, f, sub, b, config, original)
    report.details.setdefault("affine_dimension", dim)
    report.details["heuristic"] = heur
    if dropped:
        report.details["dropped_zero_coefficients"] = dropped
    return report


def _single_relation_core(case, f, points: PointSet, a: np.ndarray, config: VerifyConfig, original) -> WitnessReport:
    origin = _origin_index(points)
    system = _relation_form(f, points, a, origin)
    if len(system.points) == 0:
        return _pointwise_witness(case, system, f.onset - 4, f.onset + 4, {}, original, branch="single_point")
    oms = [p.omega for p in system.points]
    lattice = _relations(oms, config)
    details: dict = {"relations": [list(p) for p in lattice], "heuristic": lattice.heuristic}
    if lattice.rank == 0:
        rep = refute_dependence(system.f, system.points, system.coeffs, "real", None, config, case, original)
        rep.details.update(details)
        rep.details["branch"] = "independent_" + rep.details["branch"]
        return rep
    if lattice.rank > 1:
        raise PreconditionNotMet(f"{lattice.rank} independent relations among the frequencies")
    p = lattice.basis_vectors[0]
    weight = sum(abs(x) for x in p)
    details["relation"] = list(p)
    if weight >= 3:
        return _perturbation_branch(case, system, p, details, config, original)
    return _reduction_branch(case, f, points, a, origin, p, details, config, original)


def _perturbation_branch(case, system: RelationSystem, p, details, config, original):
    c = system.coeffs
    # e^{2 pi i theta_k} = i |c_k| / c_k puts c_k e^{2 pi i theta_k} on the positive imaginary axis
    thetas = [(0.25 - _phase(x)) % 1.0 for x in c]
    alpha = math.fsum(pk * th for pk, th in zip(p, thetas))
    pert = perturbation_phis(p, alpha)
    targets = [(th + ph) % 1.0 for th, ph in zip(thetas, pert.phis)]
    eps = 0.5 * (0.25 - max(abs(x) for x in pert.phis))
    start = system.start_time(config)
    details.update(thetas=thetas, alpha=alpha, perturbation=pert.to_json(), epsilon=eps, targets=targets)
    lambdas = tuple(pt.omega for pt in system.points)
    task = ApproxTask(lambdas, tuple(targets), eps, start, config.scan_budget, config.relation_tol, config.height_bound)
    try:
        wit = kronecker_witness(task)
    except BadSequence as exc:
        return _inconclusive(case, system, details, original, branch="perturbation", reason=f"targets classified bad: {exc}")
    except BudgetExhausted as exc:
        return _inconclusive(case, system, details, original, branch="perturbation", reason=str(exc))
    details["approximation_error"] = wit.achieved_error
    return _report(case, system, wit.t, _margin(system, wit.t, "im", -1.0), details, original, branch="perturbation")


def _reduction_branch(case, f, points, a, origin, p, details, config, original):
    # the relation says two frequencies coincide (one of them possibly the origin's)
    others = [i for i in range(len(points)) if i != origin]
    support = [others[k] for k, x in enumerate(p) if x]
    if len(support) == 1:
        pair = (origin, support[0])
    elif len(support) == 2 and p[others.index(support[0])] == -p[others.index(support[1])]:
        pair = tuple(support)
    else:
        raise PreconditionNotMet(f"relation {p} does not identify two equal frequencies")
    i, j = sorted(pair, key=lambda k: points[k].tau)
    system = _relation_form(f, points, a, i)
    rest = [k for k in range(len(points)) if k != i]
    j_pos = rest.index(j)
    d = -system.coeffs[j_pos]
    conj = d.imag > 0
    if conj:
        system = system.conjugated()
        d = d.conjugate()
    details.update(pair=[i, j], wlog_conjugated=conj, d=d)
    idx = [k for k in range(len(system.points)) if k != j_pos]
    if not idx:
        start = system.start_time(config)
        return _pointwise_witness(case, system, start - 4, start + 4, details, original, branch="reduction_pair_only")
    thetas = [(0.25 - _phase(system.coeffs[k])) % 1.0 for k in idx]
    lambdas = tuple(system.points[k].omega for k in idx)
    eps = 0.1
    start = system.start_time(config)
    details.update(thetas=thetas, epsilon=eps)
    task = ApproxTask(lambdas, tuple(thetas), eps, start, config.scan_budget, config.relation_tol, config.height_bound)
    try:
        wit = kronecker_witness(task)
    except (BadSequence, BudgetExhausted) as exc:
        return _inconclusive(case, system, details, original, branch="reduction", reason=str(exc))
    details["approximation_error"] = wit.achieved_error
    return _report(case, system, wit.t, _margin(system, wit.t, "im", -1.0), details, original, branch="reduction")


# ----------------------------------------------------------------------------
# Case 2: two equal frequencies, two distinct others


def _equal_groups(points: PointSet, config: VerifyConfig):
    order, pattern = _sorted_pattern(points, config)
    groups, cur = [], [order[0]]
    for k, sym in enumerate(pattern):
        if sym == "=":
            cur.append(order[k + 1])
        else:
            groups.append(cur)
            cur = [order[k + 1]]
    groups.append(cur)
    return groups


def case2_claim_refute(
    f: FunctionModel,
    points,
    coeffs: Sequence[complex] | None = None,
    config: VerifyConfig = DEFAULT_CONFIG,
    case: CaseTag | None = None,
) -> WitnessReport:
    """Two points share a frequency, the other two have distinct frequencies.

    The shared pair is moved to frequency zero, so R(t) = f(t) + d f(t - tau_1)
    - c_2 e(...) f(t - tau_2) - c_3 e(...) f(t - tau_3).  After conjugating so
    that Im d >= 0, a two-runner lonely time (spectator at i, distance 1/3)
    gives sin(2 pi (w_k t + theta_k)) <= -1/2 for both k, whence Im R > 0.
    """
    points, a = _prepare(f, points, coeffs, config)
    case = case or CaseTag("Case2")
    original = (f, points, a)
    if f.half_line:
        return _half_line_report(case, f, points, a, config, original)
    groups = _equal_groups(points, config)
    pair = next((g for g in groups if len(g) == 2), None)
    if pair is None or len(groups) != 3:
        raise InputError("point set does not have the two-equal-frequencies pattern")
    i, j = sorted(pair, key=lambda k: points[k].tau)
    system = _relation_form(f, points, a, i)
    rest = [k for k in range(4) if k != i]
    j_pos = rest.index(j)
    d = -system.coeffs[j_pos]
    conj = d.imag < 0
    if conj:
        system = system.conjugated()
        d = d.conjugate()
    details: dict = {"pair": [i, j], "wlog_conjugated": conj, "d": d}
    idx = [k for k in range(3) if k != j_pos]
    oms = [float(system.omegas[k]) for k in idx]
    thetas = [_phase(system.coeffs[k]) for k in idx]
    start = system.start_time(config)
    details.update(frequencies=oms, thetas=thetas, search_start=start)
    t = None
    if abs(abs(oms[0]) - abs(oms[1])) > config.equality_tol:
        order = np.argsort(np.abs(oms))
        vel = tuple(abs(oms[k]) for k in order)
        starts = tuple(math.copysign(1.0, oms[k]) * (thetas[k] - 0.25) for k in order)
        try:
            hit = find_lonely_time(RunnerInstance(vel, starts), 1.0 / 3.0 - 1e-9, start, config.scan_budget)
            t = hit.t
            details["method"] = "two_runner_lonely_time"
            details["lonely_margin"] = hit.margin
        except BudgetExhausted:
            log.info("two-runner search exhausted; trying sign windows")
    if t is None:
        for slack in (0.5, 0.0):
            win = first_sign_window(oms, thetas, "sin", "lt", start, slack, config.max_span)
            if win is not None:
                t = 0.5 * (win[0] + win[1])
                details["method"] = f"sign_window_slack_{slack}"
                break
    if t is None:
        return _inconclusive(case, system, details, original, branch="case2_claim", reason="no time with both sines negative")
    details["sines"] = [math.sin(TWO_PI * (w * t + th)) for w, th in zip(oms, thetas)]
    return _report(case, system, t, _margin(system, t, "im", 1.0), details, original, branch="case2_claim")


# ----------------------------------------------------------------------------
# Case 3: three equal frequencies


@dataclass(frozen=True)
class Case3Reduction:
    """The real identity c1' f(t-tau1) + c2' f(t-tau2) = |c3| sin(2 pi (w3 t + theta3)) f(t-tau3).

    ``points`` / ``coeffs`` encode it as a four-term combination that must
    vanish: (tau1, 0), (tau2, 0), (tau3, w3), (tau3, -w3).
    """

    points: PointSet
    coeffs: tuple[complex, ...]
    real_coeffs: tuple[float, float]
    amplitude: float
    omega3: float
    theta3: float
    taus: tuple[float, float, float]
    analytic: bool
    system: RelationSystem
    wlog_conjugated: bool = False

    def lhs(self, t):
        f = self.system.f
        return self.real_coeffs[0] * f(np.asarray(t) - self.taus[0]) + self.real_coeffs[1] * f(np.asarray(t) - self.taus[1])

    def rhs(self, t):
        t = np.asarray(t, dtype=float)
        return self.amplitude * np.sin(TWO_PI * (self.omega3 * t + self.theta3)) * self.system.f(t - self.taus[2])


def case3_reduce(
    points,
    coeffs: Sequence[complex],
    f: FunctionModel | None = None,
    config: VerifyConfig = DEFAULT_CONFIG,
) -> Case3Reduction:
    """Imaginary part of the Case 3 relation, rewritten over four shifts.

    ``analytic`` is set when both zero-frequency coefficients are real: the
    left side then vanishes and the oscillating right side cannot.
    """
    from .models import Gaussian

    f = f if f is not None else Gaussian()
    points, a = _prepare(f, points, coeffs, config)
    groups = _equal_groups(points, config)
    triple = next((g for g in groups if len(g) == 3), None)
    if triple is None or len(groups) != 2:
        raise InputError("point set does not have the three-equal-frequencies pattern")
    triple = sorted(triple, key=lambda k: points[k].tau)
    i = triple[0]
    system = _relation_form(f, points, a, i)
    rest = [k for k in range(4) if k != i]
    zpos = [rest.index(k) for k in triple[1:]]
    opos = next(k for k in range(3) if k not in zpos)
    d1, d2 = (-system.coeffs[k] for k in zpos)
    c3 = system.coeffs[opos]
    tau1, tau2 = (float(system.taus[k]) for k in zpos)
    tau3 = float(system.taus[opos])
    w3 = float(system.omegas[opos])
    amp, th3 = abs(c3), _phase(c3)
    tol = config.coeff_zero_tol * max(1.0, abs(d1), abs(d2), amp)
    pts = PointSet([(tau1, 0.0), (tau2, 0.0), (tau3, w3), (tau3, -w3)])
    e = cmath.exp(2j * math.pi * th3)
    comb = (d1.imag, d2.imag, -amp * e / 2j, amp * e.conjugate() / 2j)
    analytic = abs(d1.imag) <= tol and abs(d2.imag) <= tol and amp > tol
    return Case3Reduction(pts, comb, (d1.imag, d2.imag), amp, w3, th3, (tau1, tau2, tau3), analytic, system)


def case3_refute(
    f: FunctionModel,
    points,
    coeffs: Sequence[complex] | None = None,
    config: VerifyConfig = DEFAULT_CONFIG,
    case: CaseTag | None = None,
) -> WitnessReport:
    """Refute via the reduced identity: find t where its two sides have opposite signs."""
    points, a = _prepare(f, points, coeffs, config)
    case = case or CaseTag("Case3")
    original = (f, points, a)
    if f.half_line:
        return _half_line_report(case, f, points, a, config, original)
    red = case3_reduce(points, a, f, config)
    system = red.system
    start = system.start_time(config)
    details: dict = {
        "reduced_points": red.points.to_json()["points"],
        "reduced_coeffs": list(red.coeffs),
        "analytic": red.analytic,
        "search_start": start,
    }
    period = 1.0 / abs(red.omega3)
    if red.analytic:
        # sin = -1 makes Im R = |c3| f(t - tau3) > 0
        t = _shift_into((0.75 - red.theta3) / red.omega3, period, start)
        return _report(case, system, t, _margin(system, t, "im", 1.0), details, original, branch="case3_analytic")
    # Im R(t) = lhs(t) - rhs(t); take a window where rhs has the sign opposite to lhs
    lo = start
    while lo - start < config.max_span:
        for sign, orient in (("lt", 1.0), ("gt", -1.0)):
            win = first_sign_window([red.omega3], [red.theta3], "sin", sign, lo, 0.5, 2 * period)
            if win is None:
                continue
            t = 0.5 * (win[0] + win[1])
            lhs = float(red.lhs(t))
            if orient * lhs >= 0:
                details["rhs_sign"] = sign
                return _report(case, system, t, _margin(system, t, "im", orient), details, original, branch="case3_sign_opposition")
        lo += period
    return _inconclusive(case, system, details, original, branch="case3_sign_opposition", reason="no sign opposition within max_span")


# ----------------------------------------------------------------------------
# Case 4: all frequencies equal


class TrigPolyCheck(NamedTuple):
    is_nonvanishing: bool
    max_modulus_t: float
    max_modulus: float


def case4_trig_poly_check(
    coeffs: Sequence[complex], taus: Sequence[float], m: int = 4096, window: float | None = None, tol: float = 1e-9
) -> TrigPolyCheck:
    """Evaluate P(x) = sum c_j e^{2 pi i tau_j x} on m points of [-window, window].

    Nonvanishing (with the argmax) when max |P| exceeds ``tol * sum|c_j|``.
    The grid is offset by an irrational fraction of its step so that it
    avoids the rational zeros typical of integer shifts.
    """
    c = np.asarray(coeffs, dtype=complex)
    tau = np.asarray(taus, dtype=float)
    if c.shape != tau.shape:
        raise InputError("one shift per coefficient")
    if not np.any(np.abs(c) > 0):
        raise InputError("all coefficients vanish")
    if window is None:
        gaps = np.abs(tau[:, None] - tau[None, :])
        gaps = gaps[gaps > 0]
        window = min(2.0 / gaps.min(), 1e4) if gaps.size else 1.0
    step = 2 * window / (m - 1)
    x = -window + step * (np.arange(m) + (math.sqrt(5) - 1) / 2 % 1)
    vals = np.abs(np.exp(2j * math.pi * np.outer(x, tau)) @ c)
    k = int(np.argmax(vals))
    return TrigPolyCheck(bool(vals[k] > tol * np.abs(c).sum()), float(x[k]), float(vals[k]))


def case4_refute(
    f: FunctionModel,
    points,
    coeffs: Sequence[complex] | None = None,
    config: VerifyConfig = DEFAULT_CONFIG,
    case: CaseTag | None = None,
) -> WitnessReport:
    """All points on one horizontal line: sum a_j f(t - tau_j) = 0 up to a common phase.

    The Fourier side gives f^ times a trigonometric polynomial in the
    frequency variable; the polynomial check is recorded and the witness
    time is the maximum of |R| on a grid (no sign argument is needed).
    """
    points, a = _prepare(f, points, coeffs, config)
    case = case or CaseTag("Case4")
    original = (f, points, a)
    if f.half_line:
        return _half_line_report(case, f, points, a, config, original)
    origin = _origin_index(points)
    system = _relation_form(f, points, a, origin)
    taus = [0.0] + list(system.taus)
    poly = case4_trig_poly_check([1.0] + [-c for c in system.coeffs], taus)
    details = {"trig_poly": poly._asdict(), "function_flags": f.flags}
    if not poly.is_nonvanishing:
        return _inconclusive(case, system, details, original, branch="case4", reason="coefficient recovery failure: P vanishes")
    span = 4.0 + 2.0 * float(np.abs(system.taus).max(initial=0.0))
    center = system.f.onset
    return _pointwise_witness(case, system, center - span, center + span, details, original, branch="case4_trig_poly")


# ----------------------------------------------------------------------------
# Case 5: two pairs of equal frequencies


@dataclass(frozen=True)
class Case5Feasibility:
    feasible: bool
    C0: float | None = None
    reason: str = ""
    gap: float = 0.0
    tag: str | None = None
    growth: dict | None = None

    def to_json(self):
        return {"feasible": self.feasible, "C0": self.C0, "reason": self.reason, "gap": self.gap, "tag": self.tag, "growth": self.growth}


def _growth_witness(c, C, tau, tau1, gap, limit=1_000_000):
    """(m, n) with a shift h > 0 and factor G > 1 in f(t + h) = G f(t)."""
    k = np.arange(1, limit + 1, dtype=float)
    if gap < 0:
        n = k
        m = np.floor(n * tau / tau1) + 1
        h = m * tau1 - n * tau
        logg = m * math.log(c) - n * math.log(C)
    else:
        m = k
        n = np.floor(m * tau1 / tau) + 1
        h = n * tau - m * tau1
        logg = n * math.log(C) - m * math.log(c)
    good = np.flatnonzero((logg > 0) & (h > 0))
    if not good.size:
        return None
    i = good[0]
    return {"m": int(m[i]), "n": int(n[i]), "shift": float(h[i]), "log_factor": float(logg[i])}


def case5_feasibility(c: float, C: float, tau: float, tau1: float, tol: float = 1e-10) -> Case5Feasibility:
    """Can f(t) = C f(t - tau) and f(t) = c f(t - tau1) both hold for an L^2, ultimately positive f?

    Only if C^tau1 = c^tau, and then f(t) = K C0^t for large t with
    C0 = C^(1/tau).  Otherwise the two equations combine into f(t + h) =
    G f(t) with h > 0 and G > 1, which no such f satisfies.
    """
    for name, v in (("c", c), ("C", C), ("tau", tau), ("tau1", tau1)):
        if not v > 0:
            raise InputError(f"{name} must be positive")
    if c >= 1 or C >= 1:
        return Case5Feasibility(False, None, "not square-integrable", 0.0, "decay")
    gap = tau1 * math.log(C) - tau * math.log(c)
    if abs(gap) <= tol:
        return Case5Feasibility(True, C ** (1.0 / tau), "exponential tail", gap, None)
    rational = float_relation_guess([tau, tau1], 10_000, 1e-9) is not None
    tag = "C^n != c^m" if rational else "C^{-n}c^m>1"
    reason = "commensurable shifts force C^n = c^m" if rational else "irrational shift ratio: growth contradiction"
    return Case5Feasibility(False, None, reason, gap, tag, _growth_witness(c, C, tau, tau1, gap))


class KhinchinResult(NamedTuple):
    empirical_average: float
    integral: float
    deviation: float
    alpha: float
    rational_ratio: bool


def khinchin_average_check(
    C0: float, tau: float, tau1: float, t0: float = 0.0, N: int = 10_000, x: float = 0.5, K: float = 1.0
) -> KhinchinResult:
    """Birkhoff average of F(x) = |K C0^(t0 + tau1 x)|^2 along x + n tau/tau1 against its integral.

    For an irrational ratio the average tends to the integral.  A rational
    ratio is flagged: the orbit is finite and the average converges to the
    orbit mean instead.
    """
    if not 0 < C0 < 1:
        raise InputError("C0 must lie in (0, 1)")
    if N < 1:
        raise InputError("N must be >= 1")
    alpha = tau / tau1
    n = np.arange(1, N + 1, dtype=float)
    xs = np.mod(x + n * alpha, 1.0)
    F = (K * np.power(C0, t0 + tau1 * xs)) ** 2
    avg = float(np.mean(F))
    L = math.log(C0)
    integral = K * K * C0 ** (2 * t0) * (C0 ** (2 * tau1) - 1.0) / (2 * tau1 * L)
    rational = float_relation_guess([alpha, 1.0], 1000, 1e-12) is not None
    return KhinchinResult(avg, integral, abs(avg - integral), alpha, rational)


def case5_refute(
    f: FunctionModel,
    points,
    coeffs: Sequence[complex] | None = None,
    config: VerifyConfig = DEFAULT_CONFIG,
    case: CaseTag | None = None,
) -> WitnessReport:
    """Two frequency pairs: R(t) = f(t) + d f(t-tau1) - (c2 f(t-tau2) + c3 f(t-tau3)) e^{2 pi i w t}.

    After conjugating to Im d >= 0: if the phases of c2, c3 are not
    antipodal both sines are negative on a window (Im R > 0).  If they are
    antipodal and Im d > 0, dividing by the common oscillation leaves two
    sines that are again jointly negative.  If Im d = 0 the relation splits
    into two functional equations; their feasibility, the half-line check
    (commensurable shifts) or the equidistribution check (incommensurable)
    are recorded and the witness is a point where |R| is largest.
    """
    points, a = _prepare(f, points, coeffs, config)
    case = case or CaseTag("Case5")
    original = (f, points, a)
    if f.half_line:
        return _half_line_report(case, f, points, a, config, original)
    groups = _equal_groups(points, config)
    if [len(g) for g in groups] != [2, 2]:
        raise InputError("point set does not have the two-pairs pattern")
    low, high = groups
    i, j = sorted(low, key=lambda k: points[k].tau)
    k2, k3 = sorted(high, key=lambda k: points[k].tau)
    system = _relation_form(f, points, a, i)
    rest = [k for k in range(4) if k != i]
    pj, p2, p3 = rest.index(j), rest.index(k2), rest.index(k3)
    d = -system.coeffs[pj]
    conj = d.imag < 0
    if conj:
        system = system.conjugated()
        d = d.conjugate()
    c2, c3 = system.coeffs[p2], system.coeffs[p3]
    w = float(system.omegas[p2])
    th2, th3 = _phase(c2), _phase(c3)
    tau1 = float(system.taus[pj])
    tau2, tau3 = float(system.taus[p2]), float(system.taus[p3])
    start = system.start_time(config)
    antipodal = torus_norm(th2 - th3 - 0.5) <= 1e-9
    details: dict = {"wlog_conjugated": conj, "d": d, "thetas": [th2, th3], "antipodal": antipodal, "search_start": start}
    tol = config.coeff_zero_tol * max(1.0, abs(d))

    if not antipodal:
        win = first_sign_window([w, w], [th2, th3], "sin", "lt", start, 0.0, config.max_span)
        details["sign_window"] = win
        if win is None:
            return _inconclusive(case, system, details, original, branch="case5_generic", reason="no window")
        t = 0.5 * (win[0] + win[1])
        return _report(case, system, t, _margin(system, t, "im", 1.0), details, original, branch="case5_generic")

    if d.imag > tol:
        th1 = _phase(d)
        win = first_sign_window([w, w], [th2, th2 - th1], "sin", "lt", start, 0.0, config.max_span)
        details.update(theta1=th1, sign_window=win)
        if win is None:
            return _inconclusive(case, system, details, original, branch="case5_antipodal", reason="no window")
        t = 0.5 * (win[0] + win[1])
        rot = cmath.exp(-2j * math.pi * (w * t + th2))
        return _report(case, system, t, _margin(system, t, "im", 1.0, rot), details, original, branch="case5_antipodal")

    # Im d = 0: f(t) = C f(t - tau) and f(t) = c f(t - tau1) for large t
    c_small = -d.real
    C_big = abs(c3) / abs(c2)
    tau = tau3 - tau2
    details.update(c=c_small, C=C_big, tau=tau, tau1=tau1)
    if c_small > 0:
        feas = case5_feasibility(c_small, C_big, tau, tau1)
        details["feasibility"] = feas.to_json()
        if feas.feasible:
            rel = float_relation_guess([tau, tau1], 10_000, config.relation_tol)
            if rel is not None:
                details["half_line_check"] = _half_line_factor_check(system.f, feas.C0, tau, tau1, rel, config)
            else:
                kh1 = khinchin_average_check(feas.C0, tau, tau1, system.f.onset, 10_000)
                kh2 = khinchin_average_check(feas.C0, tau, tau1, system.f.onset, 100_000)
                details["khinchin"] = {"N": [10_000, 100_000], "deviation": [kh1.deviation, kh2.deviation]}
    else:
        details["feasibility"] = {"feasible": False, "reason": "c <= 0 contradicts ultimate positivity"}
    span = 4.0 + 2.0 * max(abs(tau1), abs(tau2), abs(tau3))
    return _pointwise_witness(case, system, start - span, start + span, details, original, branch="case5_functional")


def _half_line_factor_check(f, C0, tau, tau1, rel, config):
    """Tail fraction of g(t) = f(t) - c' f(t - tau') right of the positivity onset."""
    p, q = abs(rel[0]), abs(rel[1])
    # p tau = q tau1 up to sign; tau = m tau', tau1 = n tau'
    m, n = q, p
    g_step = tau / m
    cprime = C0**g_step
    t = np.linspace(f.onset - 4 * config.window, f.onset + 4 * config.window, 16385)
    g = f(t) - cprime * f(t - g_step)
    total = float(np.sum(g**2))
    tail = float(np.sum(g[t >= f.onset + g_step] ** 2))
    frac = tail / total if total > 0 else 0.0
    return {"m": int(m), "n": int(n), "step": g_step, "c_prime": cprime, "tail_fraction": frac, "half_line": frac <= 1e-8}


# ----------------------------------------------------------------------------
# four-point driver


def verify_4pt(
    f: FunctionModel,
    points,
    coeffs: Sequence[complex] | None = None,
    config: VerifyConfig = DEFAULT_CONFIG,
) -> WitnessReport:
    """Normalize, classify and dispatch a four-point dependence to its case.

    A combination that vanishes identically on the sampling window is
    reported as NumericallyDependent together with the Gram certificate
    (possible only for f outside L^2).  Zero coefficients shrink the system
    before dispatch.
    """
    points, a = _prepare(f, points, coeffs, config)
    if len(points) != 4:
        raise InputError("verify_4pt needs exactly four points")
    if not f.ultimately_positive:
        raise PreconditionNotMet("f must be ultimately positive")
    original = (f, points, a)
    tag = classify_4pt(points, config)
    ident = _identity_check(f, points, a, config)
    if ident is not None:
        return _dependent_report(tag, ident)
    if f.half_line:
        return _half_line_report(tag, f, points, a, config, original)
    sub, b, dropped = _drop_zero(points, a, config)
    if dropped:
        report = _verify_reduced(tag, f, sub, b, config, original)
        report.details["dropped_zero_coefficients"] = dropped
        return report
    if tag.tag == "Case1":
        if tag.subcase == "Case1AffineDimHigh":
            return _single_relation_core(tag, f, points, a, config, original)
        origin = _origin_index(points)
        system = _relation_form(f, points, a, origin)
        return refute_dependence(system.f, system.points, system.coeffs, "auto", None, config, tag, original)
    if tag.tag == "Case2":
        return case2_claim_refute(f, points, a, config, tag)
    if tag.tag == "Case3":
        return case3_refute(f, points, a, config, tag)
    if tag.tag == "Case4":
        return case4_refute(f, points, a, config, tag)
    return case5_refute(f, points, a, config, tag)


def _verify_reduced(tag, f, points: PointSet, a, config, original) -> WitnessReport:
    """Fewer than four active points: one frequency line, or the at-most-one-relation pipeline."""
    oms = [p.omega for p in points]
    if all(_omega_equal(w, oms[0], config.equality_tol) for w in oms):
        origin = _origin_index(points)
        system = _relation_form(f, points, a, origin)
        span = 4.0 + 2.0 * float(np.abs(system.taus).max(initial=0.0))
        return _pointwise_witness(tag, system, system.f.onset - span, system.f.onset + span, {}, original, branch="reduced_single_line")
    return _single_relation_core(tag, f, points, a, config, original)
