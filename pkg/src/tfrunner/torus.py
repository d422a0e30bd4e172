"""Simultaneous approximation on R/Z.

``classify_sequence`` decides whether targets x_j can be approached by
t * lambda_j simultaneously (every integer relation of the lambdas must
carry over to the x_j mod 1); ``kronecker_witness`` then finds such a t by
a deterministic grid scan.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import BadSequence, BudgetExhausted, InputError
from .rational import ExactReal, RelationLattice, float_relation_basis, relation_lattice

__all__ = [
    "torus_norm",
    "ApproxTask",
    "SequenceKind",
    "SequenceVerdict",
    "Witness",
    "classify_sequence",
    "kronecker_witness",
    "scan_threads",
    "scan_for_witness",
    "RELATION_TOL",
]

RELATION_TOL = 1e-9
_CHUNK = 1 << 16


def torus_norm(x):
    """Distance to the nearest integer; works on scalars and arrays."""
    if np.isscalar(x):
        x = float(x)
        return abs(x - round(x))
    x = np.asarray(x, dtype=float)
    return np.abs(x - np.rint(x))


def scan_threads() -> int:
    """Worker cap for grid scans, from ``TFRUNNER_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("TFRUNNER_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ApproxTask:
    lambdas: tuple
    targets: tuple[float, ...]
    epsilon: float
    window_start: float = 0.0
    scan_budget: int = 2_000_000
    relation_tol: float = RELATION_TOL
    height_bound: int = 64

    def __post_init__(self):
        lambdas = tuple(l if isinstance(l, ExactReal) else float(l) for l in self.lambdas)
        targets = tuple(float(x) for x in self.targets)
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "targets", targets)
        if len(lambdas) != len(targets):
            raise InputError("need one target per frequency")
        if not lambdas:
            raise InputError("empty task")
        if not 0 < self.epsilon <= 0.5:
            raise InputError("epsilon must lie in (0, 1/2]")
        if self.scan_budget < 1:
            raise InputError("scan_budget must be positive")
        kinds = {isinstance(l, ExactReal) for l in lambdas}
        if len(kinds) > 1:
            raise InputError("mix of exact and float frequencies")

    @property
    def exact(self) -> bool:
        return isinstance(self.lambdas[0], ExactReal)

    @property
    def float_lambdas(self) -> np.ndarray:
        return np.array([float(l) for l in self.lambdas])


class SequenceKind(str, enum.Enum):
    GOOD = "Good"
    BAD = "Bad"


@dataclass(frozen=True)
class SequenceVerdict:
    kind: SequenceKind
    violating_relation: tuple[int, ...] | None = None
    defect: float | None = None
    heuristic: bool = False
    relations: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def good(self) -> bool:
        return self.kind is SequenceKind.GOOD

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "violating_relation": list(self.violating_relation) if self.violating_relation else None,
            "defect": self.defect,
            "heuristic": self.heuristic,
            "relations": [list(p) for p in self.relations],
        }


class Witness(NamedTuple):
    t: float
    achieved_error: float


def _lattice(task: ApproxTask) -> RelationLattice:
    if task.exact:
        return relation_lattice(task.lambdas)
    return float_relation_basis(task.float_lambdas, task.height_bound, task.relation_tol)


def classify_sequence(task: ApproxTask) -> SequenceVerdict:
    """Good iff every basis relation p of the lambdas has sum p_j x_j = 0 mod 1.

    With ExactReal lambdas the relations are exact; the congruence on the
    float targets is still checked to ``task.relation_tol``.  Float lambdas
    use the lattice-reduction heuristic and the verdict is flagged.
    """
    lattice = _lattice(task)
    x = task.targets
    for p in lattice:
        defect = torus_norm(math.fsum(pj * xj for pj, xj in zip(p, x)))
        if defect > task.relation_tol:
            return SequenceVerdict(SequenceKind.BAD, p, defect, lattice.heuristic, lattice.basis_vectors)
    return SequenceVerdict(SequenceKind.GOOD, None, None, lattice.heuristic, lattice.basis_vectors)


def _max_error(lam: np.ndarray, x: np.ndarray, t: np.ndarray) -> np.ndarray:
    return torus_norm(np.outer(t, lam) - x).max(axis=1)


def _first_hit(lam, x, eps, alpha, step, k0, k1):
    k = np.arange(k0, k1, dtype=np.float64)
    t = alpha + step * k
    err = _max_error(lam, x, t)
    hits = np.flatnonzero(err <= eps)
    if hits.size:
        i = hits[0]
        return float(t[i]), float(err[i])
    return None


def scan_for_witness(lam, x, eps: float, alpha: float, budget: int, span0: float | None = None):
    """Uniform scan of [alpha, alpha + span] at step eps / (4 max|lambda|), doubling span.

    Returns the minimal grid hit as a Witness; raises BudgetExhausted.
    Classification is not consulted -- callers decide whether that is wise.
    """
    lam = np.asarray(lam, dtype=float)
    x = np.asarray(x, dtype=float)
    lam_max = float(np.max(np.abs(lam)))
    if lam_max == 0.0:
        err = float(torus_norm(x).max())
        if err <= eps:
            return Witness(float(alpha), err)
        raise BudgetExhausted("all frequencies vanish and the targets are not integers")
    step = eps / (4.0 * lam_max)
    nonzero = np.abs(lam[lam != 0])
    span = span0 if span0 is not None else max(1.0, 1.0 / float(nonzero.min()))
    threads = scan_threads()
    done = 0
    while done < budget:
        k_end = min(int(math.ceil(span / step)) + 1, budget)
        chunks = [(k, min(k + _CHUNK, k_end)) for k in range(done, k_end, _CHUNK)]
        if threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for i in range(0, len(chunks), threads):
                    batch = chunks[i : i + threads]
                    results = pool.map(lambda c: _first_hit(lam, x, eps, alpha, step, *c), batch)
                    # batch order is t order, so the first non-None is the minimal t
                    for res in results:
                        if res is not None:
                            return Witness(*res)
        else:
            for c in chunks:
                res = _first_hit(lam, x, eps, alpha, step, *c)
                if res is not None:
                    return Witness(*res)
        done = k_end
        span *= 2.0
    raise BudgetExhausted(f"no witness among {budget} samples (step {step:.3g})")


def kronecker_witness(task: ApproxTask) -> Witness:
    """Find t >= window_start with max_j ||t lambda_j - x_j|| <= epsilon.

    Raises BadSequence if the targets violate a relation (no such t can
    exist for small epsilon), BudgetExhausted if the scan runs dry.
    """
    verdict = classify_sequence(task)
    if not verdict.good:
        raise BadSequence(verdict)
    return scan_for_witness(
        task.float_lambdas, np.array(task.targets), task.epsilon, task.window_start, task.scan_budget
    )
