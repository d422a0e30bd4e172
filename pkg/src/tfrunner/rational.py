"""Exact linear algebra over Q for sets of real frequencies.

Reals are represented as rational coefficient vectors over a declared
basis (``RealBasis``).  The basis is *assumed* to be linearly independent
over Q -- that is a contract with the caller, never checked.  Given that,
integer relations, affine dimensions and free-module decompositions are
decided exactly with integer column reduction.

Float inputs are handled separately by :func:`float_relation_guess`, a
lattice-reduction heuristic whose negative answers prove nothing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence

from .errors import InputError

__all__ = [
    "RealBasis",
    "ExactReal",
    "RelationLattice",
    "affine_dimension",
    "relation_lattice",
    "subgroup_basis",
    "is_proportional_123",
    "float_relation_guess",
    "float_relation_basis",
    "heuristic_affine_dimension",
    "rank_over_q",
    "lll_reduce",
]

_LABEL_NAMESPACE = {
    "sqrt": math.sqrt,
    "log": math.log,
    "exp": math.exp,
    "pi": math.pi,
    "e": math.e,
    "__builtins__": {},
}


def _eval_label(label: str) -> float:
    """Numeric value of a symbolic label such as ``"sqrt2"`` or ``"sqrt(3)"``."""
    expr = re.sub(r"^sqrt(\d+)$", r"sqrt(\1)", label.strip())
    expr = expr.replace("^", "**")
    try:
        return float(eval(expr, _LABEL_NAMESPACE))  # noqa: S307 - restricted namespace
    except Exception as exc:
        raise InputError(f"cannot evaluate basis label {label!r}; pass float_values") from exc


@dataclass(frozen=True)
class RealBasis:
    """Symbolic reals declared linearly independent over Q.

    The first label is always the unit ``"1"``.
    """

    labels: tuple[str, ...]
    float_values: tuple[float, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        values = tuple(float(v) for v in self.float_values)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "float_values", values)
        if not labels or labels[0] != "1":
            raise InputError("first basis label must be '1'")
        if len(set(labels)) != len(labels):
            raise InputError("basis labels must be distinct")
        if len(values) != len(labels):
            raise InputError("one float value per label is required")
        if values[0] != 1.0:
            raise InputError("float value of the unit label must be 1.0")

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "RealBasis":
        labels = tuple(labels)
        if not labels or labels[0] != "1":
            labels = ("1",) + tuple(l for l in labels if l != "1")
        return cls(labels, tuple(_eval_label(l) for l in labels))

    @classmethod
    def rationals(cls) -> "RealBasis":
        return cls(("1",), (1.0,))

    def __len__(self):
        return len(self.labels)

    def element(self, *coeffs) -> "ExactReal":
        """Build an ExactReal from coefficients (missing trailing ones are zero)."""
        coeffs = list(coeffs) + [0] * (len(self) - len(coeffs))
        return ExactReal(self, tuple(Fraction(c) for c in coeffs))

    def rational(self, q) -> "ExactReal":
        return self.element(Fraction(q))

    def unit(self, label: str) -> "ExactReal":
        coeffs = [0] * len(self)
        coeffs[self.labels.index(label)] = 1
        return self.element(*coeffs)

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "float_values": list(self.float_values)}

    @classmethod
    def from_json(cls, obj: dict) -> "RealBasis":
        if "float_values" in obj:
            return cls(tuple(obj["labels"]), tuple(obj["float_values"]))
        return cls.from_labels(obj["labels"])


@dataclass(frozen=True)
class ExactReal:
    """A real number sum_i coeffs[i] * basis[i] with exact rational coefficients."""

    basis: RealBasis
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != len(self.basis):
            raise InputError(
                f"{len(coeffs)} coefficients for a basis of size {len(self.basis)}"
            )

    def _check(self, other: "ExactReal"):
        if other.basis.labels != self.basis.labels:
            raise InputError("ExactReal values live over different bases")

    def _coerce(self, other) -> "ExactReal":
        if isinstance(other, ExactReal):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return self.basis.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExactReal(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ExactReal(self.basis, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, q):
        if not isinstance(q, (int, Rational)):
            return NotImplemented
        q = Fraction(q)
        return ExactReal(self.basis, tuple(a * q for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, q):
        if not isinstance(q, (int, Rational)):
            return NotImplemented
        return self * (1 / Fraction(q))

    def __float__(self):
        return float(sum(float(c) * v for c, v in zip(self.coeffs, self.basis.float_values)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self):
        terms = []
        for c, label in zip(self.coeffs, self.basis.labels):
            if c:
                terms.append(str(c) if label == "1" else f"{c}*{label}")
        return "ExactReal(" + (" + ".join(terms) or "0") + ")"

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis.labels),
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict, basis: RealBasis | None = None) -> "ExactReal":
        labels = tuple(obj["basis"])
        if basis is None or basis.labels != labels:
            basis = RealBasis.from_labels(labels)
        coeffs = tuple(Fraction(int(n), int(d)) for n, d in obj["coeffs"])
        return cls(basis, coeffs)


@dataclass(frozen=True)
class RelationLattice:
    """Z-basis of {p in Z^n : sum p_j lambda_j = 0}; each vector primitive."""

    basis_vectors: tuple[tuple[int, ...], ...]
    heuristic: bool = False

    @property
    def rank(self) -> int:
        return len(self.basis_vectors)

    def __iter__(self):
        return iter(self.basis_vectors)

    def __len__(self):
        return len(self.basis_vectors)


# ----------------------------------------------------------------------------
# integer column reduction


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b) if a and b else max(a, b)


def _as_exact_list(values: Sequence[ExactReal]) -> list[ExactReal]:
    values = list(values)
    if not values:
        raise InputError("at least one value is required")
    for v in values:
        if not isinstance(v, ExactReal):
            raise InputError(f"expected ExactReal, got {type(v).__name__}")
    size = len(values[0].basis)
    for v in values[1:]:
        if len(v.basis) != size:
            raise InputError("mismatched basis lengths")
        values[0]._check(v)
    return values


def _integer_matrix(values: Sequence[ExactReal]) -> tuple[list[list[int]], int]:
    """Basis-by-values integer matrix D * [coeffs], with D the common denominator."""
    denom = reduce(_lcm, (c.denominator for v in values for c in v.coeffs), 1)
    rows = len(values[0].basis)
    mat = [[int(v.coeffs[i] * denom) for v in values] for i in range(rows)]
    return mat, denom


def _column_echelon(mat: list[list[int]], ncols: int):
    """Unimodular column reduction ``A @ U = H``.

    Returns (H, U, U_inv, rank).  The first ``rank`` columns of H are in
    echelon form, the rest are zero, so ``U[:, rank:]`` spans the integer
    kernel and ``U_inv[:rank]`` holds coordinates on the column lattice.
    """
    a = [row[:] for row in mat]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    uinv = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def add_col(dst, src, q):
        # col_dst -= q * col_src ; inverse: row_src += q * row_dst
        for row in a:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]
        r_src, r_dst = uinv[src], uinv[dst]
        for k in range(ncols):
            r_src[k] += q * r_dst[k]

    def swap_col(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]
        uinv[i], uinv[j] = uinv[j], uinv[i]

    def negate_col(i):
        for row in a:
            row[i] = -row[i]
        for row in u:
            row[i] = -row[i]
        uinv[i] = [-x for x in uinv[i]]

    pivot = 0
    for row in a:
        if pivot == ncols:
            break
        while True:
            nz = [j for j in range(pivot, ncols) if row[j] != 0]
            if not nz:
                break
            j_min = min(nz, key=lambda j: abs(row[j]))
            if j_min != pivot:
                swap_col(pivot, j_min)
            done = True
            for j in range(pivot + 1, ncols):
                if row[j]:
                    add_col(j, pivot, row[j] // row[pivot])
                    if row[j]:
                        done = False
            if done:
                break
        if row[pivot] == 0:
            continue
        if row[pivot] < 0:
            negate_col(pivot)
        pivot += 1
    return a, u, uinv, pivot


def rank_over_q(values: Sequence[ExactReal]) -> int:
    """Dimension of the Q-span of ``values``."""
    values = _as_exact_list(values)
    mat, _ = _integer_matrix(values)
    return _column_echelon(mat, len(values))[3]


def affine_dimension(omegas: Sequence[ExactReal]) -> int:
    """Dimension over Q of span{w - w0 : w in omegas}.

    >>> b = RealBasis.from_labels(["1", "sqrt2", "sqrt3"])
    >>> affine_dimension([b.rational(0), b.rational(1), b.unit("sqrt2"), b.unit("sqrt3")])
    3
    """
    omegas = _as_exact_list(omegas)
    if len(omegas) == 1:
        return 0
    base = omegas[0]
    return rank_over_q([w - base for w in omegas[1:]])


# ----------------------------------------------------------------------------
# lattice reduction


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """Exact LLL reduction of linearly independent integer row vectors."""
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n <= 1:
        return b

    def dot(x, y):
        return sum(xi * yi for xi, yi in zip(x, y))

    def gram_schmidt():
        bstar, mu, norms = [], [[Fraction(0)] * n for _ in range(n)], []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bstar[j])) / norms[j] if norms[j] else Fraction(0)
                v = [vi - mu[i][j] * bj for vi, bj in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(dot(v, v))
        return mu, norms

    mu, norms = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, norms = gram_schmidt()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return b


def _normalize_sign(p: Sequence[int]) -> tuple[int, ...]:
    p = list(p)
    g = reduce(math.gcd, (abs(x) for x in p), 0)
    if g > 1:
        p = [x // g for x in p]
    for x in p:
        if x:
            if x < 0:
                p = [-y for y in p]
            break
    return tuple(p)


def _sort_key(p):
    return (sum(abs(x) for x in p), max(abs(x) for x in p), [-x for x in p])


def relation_lattice(lambdas: Sequence[ExactReal]) -> RelationLattice:
    """Primitive Z-basis of the integer relations sum p_j lambda_j = 0.

    The kernel basis comes from unimodular column reduction, so it spans the
    saturated lattice; it is then LLL-reduced for short vectors.  Each vector
    is primitive with its first nonzero entry positive.
    """
    lambdas = _as_exact_list(lambdas)
    n = len(lambdas)
    mat, _ = _integer_matrix(lambdas)
    _, u, _, rank = _column_echelon(mat, n)
    kernel = [[u[i][j] for i in range(n)] for j in range(rank, n)]
    if len(kernel) > 1:
        kernel = lll_reduce(kernel)
    vectors = sorted((_normalize_sign(p) for p in kernel), key=_sort_key)
    return RelationLattice(tuple(vectors))


def subgroup_basis(lambdas: Sequence[ExactReal]) -> tuple[list[ExactReal], list[list[int]]]:
    """Free Z-basis of the additive group generated by ``lambdas``.

    Returns ``(generators, coords)`` with the generators linearly independent
    over Q and ``lambdas[j] == sum_i coords[j][i] * generators[i]`` exactly.
    """
    lambdas = _as_exact_list(lambdas)
    n = len(lambdas)
    basis = lambdas[0].basis
    mat, denom = _integer_matrix(lambdas)
    h, _, uinv, rank = _column_echelon(mat, n)
    generators = [
        ExactReal(basis, tuple(Fraction(h[i][j], denom) for i in range(len(basis))))
        for j in range(rank)
    ]
    coords = [[uinv[i][j] for i in range(rank)] for j in range(n)]
    return generators, coords


def _as_float_or_exact(v):
    return v if isinstance(v, ExactReal) else float(v)


def is_proportional_123(v1, v2, v3, *, tol: float = 1e-9, height_bound: int = 64) -> bool:
    """True iff (v1, v2, v3) = c * (1, 2, 3) for some c > 0.

    Exact for ExactReal inputs (zero tolerance); floats fall back to the
    relation heuristic and are only as good as ``tol``.
    """
    vals = [_as_float_or_exact(v) for v in (v1, v2, v3)]
    fl = [float(v) for v in vals]
    if len(set(fl)) < 3:
        raise InputError("velocities must be pairwise distinct")
    if all(isinstance(v, ExactReal) for v in vals):
        a, b, c = vals
        diffs = [b - 2 * a, c - 3 * a]
        return fl[0] > 0 and relation_lattice(diffs).rank == 2
    a, b, c = fl
    scale = max(abs(a), abs(b), abs(c), 1.0)
    return a > 0 and abs(b - 2 * a) <= tol * scale and abs(c - 3 * a) <= tol * scale


# ----------------------------------------------------------------------------
# float heuristics


def _reduced_embedding(x: Sequence[float], height_bound: int, tol: float) -> list[list[int]]:
    n = len(x)
    scale = height_bound * math.sqrt(n) / tol
    rows = [[int(i == j) for j in range(n)] + [int(round(scale * xi))] for i, xi in enumerate(x)]
    return lll_reduce(rows)


def _float_candidates(x, height_bound, tol):
    out = []
    for row in _reduced_embedding(x, height_bound, tol):
        p = _normalize_sign(row[:-1])
        if not any(p) or max(abs(v) for v in p) > height_bound:
            continue
        if abs(math.fsum(pi * xi for pi, xi in zip(p, x))) <= tol:
            out.append(p)
    return sorted(set(out), key=_sort_key)


def float_relation_guess(x: Sequence[float], height_bound: int, tol: float = 1e-9) -> tuple[int, ...] | None:
    """Guess a small integer relation among floats by lattice reduction.

    Returns ``p`` with ``|sum p_j x_j| <= tol`` and ``max |p_j| <= height_bound``
    or None.  None is *not* a proof that no such relation exists.
    """
    if height_bound < 1:
        raise InputError("height_bound must be >= 1")
    x = [float(v) for v in x]
    if not x:
        raise InputError("empty input")
    cands = _float_candidates(x, height_bound, tol)
    return cands[0] if cands else None


def float_relation_basis(x: Sequence[float], height_bound: int = 64, tol: float = 1e-9) -> RelationLattice:
    """Heuristic relation lattice for floats (flagged ``heuristic=True``)."""
    x = [float(v) for v in x]
    cands = _float_candidates(x, height_bound, tol)
    chosen: list[tuple[int, ...]] = []
    for p in cands:
        trial = chosen + [p]
        if _int_rank(trial) == len(trial):
            chosen = trial
    return RelationLattice(tuple(chosen), heuristic=True)


def _int_rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    ncols = len(rows)
    mat = [[r[i] for r in rows] for i in range(len(rows[0]))]
    return _column_echelon(mat, ncols)[3]


def heuristic_affine_dimension(omegas: Sequence[float], height_bound: int = 64, tol: float = 1e-9) -> int:
    """Affine dimension of float frequencies via the relation heuristic."""
    omegas = [float(w) for w in omegas]
    if len(omegas) <= 1:
        return 0
    diffs = [w - omegas[0] for w in omegas[1:]]
    return len(diffs) - float_relation_basis(diffs, height_bound, tol).rank
