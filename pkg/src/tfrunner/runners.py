"""Runners on the unit circle: lonely times, sign windows, spectator choice.

Positions live on [0, 1) (track length 1).  A spectator at 1, i or -i sits
at parameter 0, 1/4 or 3/4.  Every set we need -- times at which all
runners are at least some distance from a point, or at which all
``cos/sin(2 pi (w t + theta))`` share a sign -- is an intersection of
periodic arcs, which :func:`arc_intersection` computes exactly.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import BudgetExhausted, InputError, ScanFailure
from .rational import ExactReal, is_proportional_123
from .torus import torus_norm

__all__ = [
    "RunnerInstance",
    "Spectator",
    "SpectatorVerdict",
    "LonelyTime",
    "runner_margin",
    "margin_profile",
    "find_lonely_time",
    "sign_window",
    "first_sign_window",
    "select_spectator",
    "spectator_measures",
    "arc_intersection",
]

log = logging.getLogger(__name__)

Interval = tuple[float, float]


@dataclass(frozen=True)
class RunnerInstance:
    velocities: tuple[float, ...]
    starts: tuple[float, ...]
    exact_velocities: tuple[ExactReal, ...] | None = None

    def __post_init__(self):
        vel = tuple(float(v) for v in self.velocities)
        starts = tuple(float(s) for s in self.starts)
        object.__setattr__(self, "velocities", vel)
        object.__setattr__(self, "starts", starts)
        if not vel:
            raise InputError("at least one runner is required")
        if len(starts) != len(vel):
            raise InputError("one starting point per runner is required")
        if any(v <= 0 for v in vel):
            raise InputError("velocities must be positive")
        if any(b <= a for a, b in zip(vel, vel[1:])):
            raise InputError("velocities must be strictly increasing")
        if self.exact_velocities is not None and len(self.exact_velocities) != len(vel):
            raise InputError("exact velocities do not match")

    @classmethod
    def from_exact(cls, velocities: Sequence[ExactReal], starts: Sequence[float]) -> "RunnerInstance":
        return cls(tuple(float(v) for v in velocities), tuple(starts), tuple(velocities))

    @property
    def n(self) -> int:
        return len(self.velocities)


class LonelyTime(NamedTuple):
    t: float
    margin: float


def runner_margin(inst: RunnerInstance, t: float) -> float:
    """min_j ||s_j + t v_j||, the distance of the closest runner to 0."""
    pos = np.asarray(inst.starts) + t * np.asarray(inst.velocities)
    return float(torus_norm(pos).min())


def margin_profile(inst: RunnerInstance, t_start: float, t_stop: float, step: float):
    """Sampled margins on a uniform grid; returns ``(t, margin)`` arrays."""
    n = int(math.floor((t_stop - t_start) / step)) + 1
    t = t_start + step * np.arange(n)
    pos = np.asarray(inst.starts)[None, :] + np.outer(t, inst.velocities)
    return t, torus_norm(pos).min(axis=1)


# ----------------------------------------------------------------------------
# exact arc intersections


def _arc_times(freq: float, phase: float, a: float, b: float, lo: float, hi: float) -> list[Interval]:
    """Times in [lo, hi] with frac(freq * t + phase) in [a, b], 0 <= a <= b <= 1."""
    if freq == 0.0:
        u = phase - math.floor(phase)
        return [(lo, hi)] if a <= u <= b else []
    u0, u1 = freq * lo + phase, freq * hi + phase
    ulo, uhi = min(u0, u1), max(u0, u1)
    m = np.arange(math.floor(ulo) - 1, math.floor(uhi) + 1, dtype=float)
    left = np.maximum(m + a, ulo)
    right = np.minimum(m + b, uhi)
    keep = left <= right
    left, right = left[keep], right[keep]
    t_left = (left - phase) / freq
    t_right = (right - phase) / freq
    if freq < 0:
        t_left, t_right = t_right[::-1], t_left[::-1]
    t_left = np.clip(t_left, lo, hi)
    t_right = np.clip(t_right, lo, hi)
    return list(zip(t_left.tolist(), t_right.tolist()))


def _intersect(xs: list[Interval], ys: list[Interval]) -> list[Interval]:
    out, i, j = [], 0, 0
    while i < len(xs) and j < len(ys):
        lo = max(xs[i][0], ys[j][0])
        hi = min(xs[i][1], ys[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if xs[i][1] < ys[j][1]:
            i += 1
        else:
            j += 1
    return out


def _merge(xs: list[Interval]) -> list[Interval]:
    out: list[Interval] = []
    for lo, hi in xs:
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def arc_intersection(freqs, phases, arcs, lo: float, hi: float) -> list[Interval]:
    """Times in [lo, hi] where every frac(w_k t + phase_k) lies in its arc (a_k, b_k).

    Arcs are closed sub-intervals of [0, 1]; the result is a sorted list of
    closed intervals (possibly degenerate).
    """
    result: list[Interval] | None = None
    for w, ph, (a, b) in zip(freqs, phases, arcs):
        cur = _merge(_arc_times(float(w), float(ph), a, b, lo, hi))
        result = cur if result is None else _intersect(result, cur)
        if not result:
            return []
    return result or []


def _lonely_arcs(inst: RunnerInstance, target: float, spectator: float = 0.0):
    phases = [s - spectator for s in inst.starts]
    return inst.velocities, phases, [(target, 1.0 - target)] * inst.n


# ----------------------------------------------------------------------------
# lonely times


def _best_point(inst, intervals: list[Interval]) -> LonelyTime:
    lo, hi = intervals[0]
    cands = [lo, 0.5 * (lo + hi), hi]
    margins = [runner_margin(inst, t) for t in cands]
    k = int(np.argmax(margins))
    # prefer the midpoint on ties: it sits strictly inside the window
    if margins[1] >= margins[k]:
        k = 1
    return LonelyTime(cands[k], margins[k])


def find_lonely_time(
    inst: RunnerInstance,
    target: float,
    window_start: float = 0.0,
    budget: int = 2_000_000,
    span: float | None = None,
) -> LonelyTime:
    """First t >= window_start (on the scan order) with runner_margin >= target.

    A uniform grid of step 1/(8 v_n n) flags cells where the margin is within
    the Lipschitz slack v_n * step / 2 of ``target``; the margin is exact on
    those cells via arc intersection, so no solution inside the scanned span
    can be missed.  With ``span`` given, exactly [window_start, window_start
    + span] is scanned; otherwise the span doubles from one lap of the
    slowest runner until ``budget`` grid samples are used.
    """
    if not 0 < target <= 0.5:
        raise InputError("target must lie in (0, 1/2]")
    v = np.asarray(inst.velocities)
    s = np.asarray(inst.starts)
    vmax = float(v.max())
    step = 1.0 / (8.0 * vmax * inst.n)
    slack = vmax * step / 2.0 + 1e-12
    freqs, phases, arcs = _lonely_arcs(inst, target)
    fixed_span = span is not None
    cur_span = span if fixed_span else 1.0 / float(v.min())
    done = 0
    while done < budget:
        k_end = min(int(math.ceil(cur_span / step)) + 1, budget)
        for k0 in range(done, k_end, 1 << 16):
            k1 = min(k0 + (1 << 16), k_end)
            t = window_start + step * np.arange(k0, k1, dtype=float)
            m = torus_norm(s[None, :] + np.outer(t, v)).min(axis=1)
            flags = m >= target - slack
            if not flags.any():
                continue
            idx = np.flatnonzero(flags)
            breaks = np.flatnonzero(np.diff(idx) > 1)
            run_starts = np.concatenate(([idx[0]], idx[breaks + 1]))
            run_ends = np.concatenate((idx[breaks], [idx[-1]]))
            for i0, i1 in zip(run_starts, run_ends):
                lo = max(window_start, float(t[i0]) - step / 2)
                hi = float(t[i1]) + step / 2
                found = arc_intersection(freqs, phases, arcs, lo, hi)
                if found:
                    hit = _best_point(inst, found)
                    if hit.margin >= target - 1e-12:
                        return hit
        done = k_end
        if fixed_span:
            break
        cur_span *= 2.0
    raise BudgetExhausted(f"no lonely time with margin {target} after {done} samples")


# ----------------------------------------------------------------------------
# sign windows

_TRIGS = ("cos", "sin")
_SIGNS = ("le", "lt", "ge", "gt")


def _sign_arc(trig: str, sign: str, slack: float) -> tuple[float, float, float]:
    """(phase shift, a, b) such that the sign condition is frac(u + shift) in [a, b]."""
    if trig not in _TRIGS:
        raise InputError(f"trig must be one of {_TRIGS}")
    if sign not in _SIGNS:
        raise InputError(f"sign must be one of {_SIGNS}")
    if not 0 <= slack < 1:
        raise InputError("slack must lie in [0, 1)")
    shift = -0.25 if trig == "sin" else 0.0
    if sign in ("le", "lt"):
        a = math.acos(-slack) / (2 * math.pi)
        return shift, a, 1.0 - a
    b = math.acos(slack) / (2 * math.pi)
    return shift + b, 0.0, 2 * b


def sign_window(
    freqs: Sequence[float],
    phases: Sequence[float],
    trig: str = "cos",
    sign: str = "le",
    window_start: float = 0.0,
    span: float = 1.0,
    slack: float = 0.0,
    budget: int | None = None,
) -> list[Interval]:
    """Maximal windows in [window_start, window_start + span] where all factors agree in sign.

    Factor k is ``trig(2 pi (freqs[k] t + phases[k]))``.  ``sign`` is one of
    ``le``/``lt`` (value <= -slack / < -slack) or ``ge``/``gt`` (value >=
    slack / > slack).  Only windows of positive length are returned, so the
    strict and non-strict forms differ only at endpoints.  ``budget`` caps
    the number of windows returned.  Frequencies of any sign are accepted;
    a zero frequency makes its factor constant.
    """
    shift, a, b = _sign_arc(trig, sign, slack)
    ph = [p + shift for p in phases]
    found = arc_intersection(freqs, ph, [(a, b)] * len(freqs), window_start, window_start + span)
    found = [(lo, hi) for lo, hi in found if hi > lo]
    if budget is not None:
        found = found[:budget]
    return found


def first_sign_window(
    freqs,
    phases,
    trig: str = "cos",
    sign: str = "le",
    window_start: float = 0.0,
    slack: float = 0.0,
    max_span: float = 4096.0,
    min_length: float = 0.0,
) -> Interval | None:
    """Earliest sign window after ``window_start``, doubling the span up to ``max_span``."""
    nz = [abs(w) for w in freqs if w != 0]
    span = 1.0 / min(nz) if nz else 1.0
    lo = window_start
    while True:
        wins = sign_window(freqs, phases, trig, sign, lo, span, slack)
        wins = [w for w in wins if w[1] - w[0] > min_length]
        if wins:
            return wins[0]
        lo += span
        if lo - window_start >= max_span:
            return None
        span *= 2.0


# ----------------------------------------------------------------------------
# three spectators for the extremal 1:2:3 configuration


class Spectator(str, enum.Enum):
    ONE = "one"
    I = "i"
    MINUS_I = "minus_i"

    @property
    def position(self) -> float:
        return {"one": 0.0, "i": 0.25, "minus_i": 0.75}[self.value]


@dataclass(frozen=True)
class SpectatorVerdict:
    spectator: Spectator
    witness_interval: Interval
    margin: float
    measures: dict

    def to_json(self) -> dict:
        return {
            "spectator": self.spectator.value,
            "witness_interval": list(self.witness_interval),
            "margin": self.margin,
            "measures": {k.value: m for k, m in self.measures.items()},
        }


def _check_123(inst: RunnerInstance):
    if inst.n != 3:
        raise InputError("spectator analysis needs exactly three runners")
    vel = inst.exact_velocities or inst.velocities
    if not is_proportional_123(*vel):
        raise InputError("velocities are not proportional to 1:2:3")


def _spectator_windows(inst: RunnerInstance, spectator: Spectator) -> list[Interval]:
    period = 1.0 / inst.velocities[0]
    freqs, phases, arcs = _lonely_arcs(inst, 0.25, spectator.position)
    wins = arc_intersection(freqs, phases, arcs, 0.0, 2 * period)
    return [(lo, hi) for lo, hi in wins if hi > lo and lo < period]


def spectator_measures(inst: RunnerInstance) -> dict:
    """Lebesgue measure, within one period, of the times lonely for each spectator."""
    _check_123(inst)
    period = 1.0 / inst.velocities[0]
    out = {}
    for k in Spectator:
        wins = _spectator_windows(inst, k)
        out[k] = sum(min(hi, period) - lo for lo, hi in wins)
    return out


def select_spectator(inst: RunnerInstance) -> SpectatorVerdict:
    """Pick a spectator at 1, i or -i whose lonely set contains an open interval.

    Velocities must be proportional to 1:2:3.  The returned interval is the
    longest one over a period (ties go to the order one, i, -i); all three
    runners stay strictly more than 1/4 away from the spectator on it.
    """
    _check_123(inst)
    period = 1.0 / inst.velocities[0]
    best = None
    measures = {}
    for k in Spectator:
        wins = _spectator_windows(inst, k)
        measures[k] = sum(min(hi, period) - lo for lo, hi in wins)
        for lo, hi in wins:
            if best is None or hi - lo > best[2][1] - best[2][0] + 1e-15:
                best = (k, None, (lo, hi))
    if best is None:
        raise ScanFailure("no spectator has a lonely interval; this contradicts the 1:2:3 analysis")
    k, _, (lo, hi) = best
    mid = 0.5 * (lo + hi)
    pos = np.asarray(inst.starts) + mid * np.asarray(inst.velocities) - k.position
    margin = float(torus_norm(pos).min()) - 0.25
    return SpectatorVerdict(k, (lo, hi), margin, measures)
