"""Evaluable test functions f for Gabor systems.

Every model knows where it becomes positive for good (``onset``), whether
it is square integrable, and how to translate itself, so that T_tau f is
again a model of the same kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import ClassVar

import numpy as np

from .errors import InputError

__all__ = [
    "FunctionModel",
    "Gaussian",
    "OneSidedExpDecay",
    "TwoPlusCos",
    "HalfLine",
    "ExpPure",
    "Tabulated",
    "model_from_json",
]


class FunctionModel:
    """Base class; subclasses are frozen dataclasses."""

    kind: ClassVar[str] = ""
    square_integrable: ClassVar[bool] = True
    #: supported on a right half-line [onset, inf)
    half_line: ClassVar[bool] = False

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = self._eval(t)
        return out if out.ndim else float(out)

    def _eval(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def ultimately_positive(self) -> bool:
        return True

    @property
    def onset(self) -> float:
        """A t0 with f(t) > 0 for every t >= t0."""
        raise NotImplementedError

    def shifted(self, tau: float) -> "FunctionModel":
        """The model of T_tau f, t -> f(t - tau)."""
        raise NotImplementedError

    @property
    def flags(self) -> dict:
        return {
            "ultimately_positive": self.ultimately_positive,
            "square_integrable": self.square_integrable,
            "half_line": self.half_line,
        }

    def to_json(self) -> dict:
        from dataclasses import asdict

        d = {"kind": self.kind}
        d.update({k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(self).items()})
        return d


@dataclass(frozen=True)
class Gaussian(FunctionModel):
    """exp(-pi ((t - center) / width)^2)."""

    center: float = 0.0
    width: float = 1.0
    kind: ClassVar[str] = "gaussian"

    def __post_init__(self):
        if self.width <= 0:
            raise InputError("width must be positive")

    def _eval(self, t):
        return np.exp(-math.pi * ((t - self.center) / self.width) ** 2)

    @property
    def onset(self):
        # positive everywhere; the center keeps witness searches where f is not tiny
        return self.center

    def shifted(self, tau):
        return replace(self, center=self.center + tau)


@dataclass(frozen=True)
class OneSidedExpDecay(FunctionModel):
    """exp(-rate (t - t0)) for t >= t0.

    Left of t0 the function is exp(left_rate (t - t0)) when ``left_rate`` is
    set (a positive ramp, so f > 0 everywhere) and zero when it is None
    (then f lives on a half-line).
    """

    t0: float = 0.0
    rate: float = 1.0
    left_rate: float | None = 1.0
    kind: ClassVar[str] = "one_sided_exp"

    def __post_init__(self):
        if self.rate <= 0:
            raise InputError("rate must be positive")
        if self.left_rate is not None and self.left_rate <= 0:
            raise InputError("left_rate must be positive or None")

    @property
    def half_line(self):  # type: ignore[override]
        return self.left_rate is None

    def _eval(self, t):
        d = t - self.t0
        right = np.exp(-self.rate * np.maximum(d, 0.0))
        if self.left_rate is None:
            left = np.zeros_like(d)
        else:
            left = np.exp(self.left_rate * np.minimum(d, 0.0))
        return np.where(d >= 0, right, left)

    @property
    def onset(self):
        return self.t0

    def shifted(self, tau):
        return replace(self, t0=self.t0 + tau)


@dataclass(frozen=True)
class TwoPlusCos(FunctionModel):
    """2 + cos(2 pi (t - shift)); positive and periodic, not in L^2."""

    shift: float = 0.0
    kind: ClassVar[str] = "two_plus_cos"
    square_integrable: ClassVar[bool] = False

    def _eval(self, t):
        return 2.0 + np.cos(2 * math.pi * (t - self.shift))

    @property
    def onset(self):
        return self.shift

    def shifted(self, tau):
        return replace(self, shift=self.shift + tau)


_PROFILES = ("exp", "gauss")


@dataclass(frozen=True)
class HalfLine(FunctionModel):
    """A positive profile on [t0, inf), zero to the left."""

    t0: float = 0.0
    profile: str = "exp"
    scale: float = 1.0
    kind: ClassVar[str] = "half_line"
    half_line: ClassVar[bool] = True

    def __post_init__(self):
        if self.profile not in _PROFILES:
            raise InputError(f"profile must be one of {_PROFILES}")
        if self.scale <= 0:
            raise InputError("scale must be positive")

    def _eval(self, t):
        d = (t - self.t0) / self.scale
        if self.profile == "exp":
            val = np.exp(-np.maximum(d, 0.0))
        else:
            val = np.exp(-math.pi * d**2)
        return np.where(d >= 0, val, 0.0)

    @property
    def onset(self):
        return self.t0

    def shifted(self, tau):
        return replace(self, t0=self.t0 + tau)


@dataclass(frozen=True)
class ExpPure(FunctionModel):
    """K * C0**t on all of R; not square integrable."""

    K: float = 1.0
    C0: float = 0.5
    kind: ClassVar[str] = "exp_pure"
    square_integrable: ClassVar[bool] = False

    def __post_init__(self):
        if self.C0 <= 0:
            raise InputError("C0 must be positive")

    def _eval(self, t):
        return self.K * np.power(self.C0, t)

    @property
    def ultimately_positive(self):
        return self.K > 0

    @property
    def onset(self):
        return 0.0

    def shifted(self, tau):
        return replace(self, K=self.K * self.C0 ** (-tau))


@dataclass(frozen=True)
class Tabulated(FunctionModel):
    """Linear interpolation of samples, zero outside the grid."""

    grid: tuple[float, ...] = ()
    values: tuple[float, ...] = ()
    kind: ClassVar[str] = "tabulated"

    def __post_init__(self):
        grid = tuple(float(g) for g in self.grid)
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if len(grid) < 2 or len(grid) != len(values):
            raise InputError("need matching grid and values with at least two samples")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InputError("grid must be increasing")

    def _eval(self, t):
        return np.interp(t, self.grid, self.values, left=0.0, right=0.0)

    @property
    def ultimately_positive(self):
        # vanishes beyond the grid
        return False

    @property
    def onset(self):
        vals = np.asarray(self.values)
        bad = np.flatnonzero(vals <= 0)
        return self.grid[bad[-1] + 1] if bad.size and bad[-1] + 1 < len(vals) else self.grid[0]

    def shifted(self, tau):
        return replace(self, grid=tuple(g + tau for g in self.grid))


_KINDS = {cls.kind: cls for cls in (Gaussian, OneSidedExpDecay, TwoPlusCos, HalfLine, ExpPure, Tabulated)}


def model_from_json(obj: dict) -> FunctionModel:
    obj = dict(obj)
    kind = obj.pop("kind", None)
    if kind not in _KINDS:
        raise InputError(f"unknown function kind {kind!r}; expected one of {sorted(_KINDS)}")
    try:
        return _KINDS[kind](**obj)
    except TypeError as exc:
        raise InputError(str(exc)) from exc
