"""Command line front end: ``tfrunner <command> ...``.

Every command writes one JSON document to stdout (or CSV where asked).
Exit codes: 0 success, 2 numerical dependence, 3 inconclusive, 64 usage
or input error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .errors import BadSequence, BudgetExhausted, InputError, PreconditionNotMet, ScanFailure, TFRunnerError
from .gabor import DEFAULT_SAMPLES, DEFAULT_WINDOW, NULL_THRESHOLD, PointSet, independence_score, sampled_system
from .hrt import Verdict, VerifyConfig, classify_4pt, verify_4pt, verify_theorem_1_4
from .models import TwoPlusCos
from .rational import (
    affine_dimension,
    float_relation_basis,
    heuristic_affine_dimension,
    relation_lattice,
    subgroup_basis,
)
from .runners import RunnerInstance, find_lonely_time, margin_profile, select_spectator
from .serialize import dumps, load_basis, load_coeffs, load_function, load_points, parse_csv_values
from .torus import ApproxTask, classify_sequence, scan_for_witness

EXIT_OK = 0
EXIT_DEPENDENT = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RunConfig:
    relation_tol: float = 1e-9
    equality_tol: float = 1e-12
    height_bound: int = 64
    scan_budget: int = 2_000_000
    window: float = DEFAULT_WINDOW
    samples: int = DEFAULT_SAMPLES
    null_threshold: float = NULL_THRESHOLD
    exact: str | None = None
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        checks = [
            (0 < self.relation_tol < 1, "--relation-tol must lie in (0, 1)"),
            (0 < self.equality_tol < 1, "--equality-tol must lie in (0, 1)"),
            (self.height_bound >= 1, "--height-bound must be >= 1"),
            (self.scan_budget >= 1, "--budget must be >= 1"),
            (self.window > 0, "--window must be positive"),
            (self.samples >= 2, "--samples must be >= 2"),
            (0 < self.null_threshold < 1, "--null-threshold must lie in (0, 1)"),
            (self.fmt in ("json", "csv"), "--format must be json or csv"),
        ]
        for ok, msg in checks:
            if not ok:
                raise UsageError(msg)

    @classmethod
    def from_args(cls, ns) -> "RunConfig":
        return cls(
            relation_tol=ns.relation_tol,
            equality_tol=ns.equality_tol,
            height_bound=ns.height_bound,
            scan_budget=ns.budget,
            window=ns.window,
            samples=ns.samples,
            null_threshold=ns.null_threshold,
            exact=ns.exact,
            fmt=ns.format,
            seed=ns.seed,
        )

    def basis(self):
        return load_basis(self.exact) if self.exact else None

    def verify_config(self) -> VerifyConfig:
        return VerifyConfig(
            scan_budget=self.scan_budget,
            window=self.window,
            samples=self.samples,
            null_threshold=self.null_threshold,
            equality_tol=self.equality_tol,
            relation_tol=self.relation_tol,
            height_bound=self.height_bound,
        )


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--exact", metavar="BASIS.json", help="read values as exact combinations over this basis")
    g.add_argument("--relation-tol", type=float, default=1e-9)
    g.add_argument("--equality-tol", type=float, default=1e-12)
    g.add_argument("--height-bound", type=int, default=64)
    g.add_argument("--budget", type=int, default=2_000_000, help="scan sample budget")
    g.add_argument("--window", type=float, default=DEFAULT_WINDOW, help="quadrature half-width T")
    g.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="quadrature samples n")
    g.add_argument("--null-threshold", type=float, default=NULL_THRESHOLD)
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="tfrunner", description="Torus approximation, lonely runners and Gabor independence.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("affine-dim", parents=[common], help="affine dimension over Q of a frequency set")
    p.add_argument("--omegas", required=True)

    p = sub.add_parser("relations", parents=[common], help="integer relation lattice")
    p.add_argument("--lambdas", required=True)

    p = sub.add_parser("approx", parents=[common], help="simultaneous approximation on the torus")
    p.add_argument("--lambdas", required=True)
    p.add_argument("--targets", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.0)

    p = sub.add_parser("runner", parents=[common], help="shifted lonely-runner witness")
    p.add_argument("--velocities", required=True)
    p.add_argument("--starts", required=True)
    p.add_argument("--target", type=float, default=0.25)
    p.add_argument("--window-start", type=float, default=0.0)
    p.add_argument("--scan-csv", metavar="OUT.csv", help="also write (t, margin) samples")
    p.add_argument("--scan-stop", type=float, help="end of the CSV scan (default: one lap of the slowest runner)")
    p.add_argument("--scan-step", type=float, default=1e-3)

    p = sub.add_parser("spectator", parents=[common], help="spectator choice for 1:2:3 velocities")
    p.add_argument("--velocities", required=True)
    p.add_argument("--starts", required=True)

    p = sub.add_parser("gabor", help="Gram-matrix independence scoring")
    gsub = p.add_subparsers(dest="action", parser_class=_Parser)
    gsub.required = True
    for name in ("score", "samples"):
        q = gsub.add_parser(name, parents=[common])
        q.add_argument("--function", required=True)
        q.add_argument("--lambda", dest="lam", required=True)
        if name == "samples":
            q.add_argument("--csv", metavar="OUT.csv", help="write samples here instead of stdout")

    p = sub.add_parser("hrt", help="refute dependences of small Gabor systems")
    hsub = p.add_subparsers(dest="action", parser_class=_Parser)
    hsub.required = True
    q = hsub.add_parser("verify", parents=[common])
    q.add_argument("--function", required=True)
    q.add_argument("--lambda", dest="lam", required=True)
    q.add_argument("--coeffs")
    q = hsub.add_parser("classify", parents=[common])
    q.add_argument("--lambda", dest="lam", required=True)

    p = sub.add_parser("demo", help="worked demonstrations")
    dsub = p.add_subparsers(dest="action", parser_class=_Parser)
    dsub.required = True
    q = dsub.add_parser("counterexample", parents=[common], help="f = 2 + cos(2 pi t) with six shifts")
    q.add_argument("--a", type=float, default=0.3)
    q = dsub.add_parser("runners", parents=[common], help="random shifted three-runner instances")
    q.add_argument("--count", type=int, default=20)
    q.add_argument("--target", type=float, default=0.25 - 1e-9)
    return parser


# ----------------------------------------------------------------------------
# commands


def _floats(text: str) -> list[float]:
    return [float(x) for x in parse_csv_values(text)]


def cmd_affine_dim(ns, cfg: RunConfig, out):
    basis = cfg.basis()
    oms = parse_csv_values(ns.omegas, basis)
    if basis is not None:
        dim, heur = affine_dimension(oms), False
    else:
        dim, heur = heuristic_affine_dimension(oms, cfg.height_bound, cfg.relation_tol), True
    return {"affine_dimension": dim, "heuristic": heur}, EXIT_OK


def cmd_relations(ns, cfg: RunConfig, out):
    basis = cfg.basis()
    lam = parse_csv_values(ns.lambdas, basis)
    if basis is not None:
        lat = relation_lattice(lam)
        gens, coords = subgroup_basis(lam)
        report = {
            "relations": [list(p) for p in lat],
            "heuristic": False,
            "generators": [g.to_json() for g in gens],
            "coords": [list(map(int, c)) for c in coords],
        }
    else:
        lat = float_relation_basis(lam, cfg.height_bound, cfg.relation_tol)
        report = {"relations": [list(p) for p in lat], "heuristic": True}
    return report, EXIT_OK


def cmd_approx(ns, cfg: RunConfig, out):
    basis = cfg.basis()
    lam = parse_csv_values(ns.lambdas, basis)
    task = ApproxTask(tuple(lam), tuple(_floats(ns.targets)), ns.eps, ns.alpha, cfg.scan_budget, cfg.relation_tol, cfg.height_bound)
    verdict = classify_sequence(task)
    report = {"verdict": verdict.to_json(), "witness": None}
    if not verdict.good:
        return report, EXIT_OK
    try:
        wit = scan_for_witness(task.float_lambdas, np.array(task.targets), task.epsilon, task.window_start, task.scan_budget)
    except BudgetExhausted as exc:
        report["inconclusive"] = str(exc)
        return report, EXIT_INCONCLUSIVE
    report["witness"] = {"t": wit.t, "achieved_error": wit.achieved_error}
    return report, EXIT_OK


def cmd_runner(ns, cfg: RunConfig, out):
    inst = RunnerInstance(tuple(_floats(ns.velocities)), tuple(_floats(ns.starts)))
    if ns.scan_csv:
        stop = ns.scan_stop if ns.scan_stop is not None else ns.window_start + 1.0 / inst.velocities[0]
        if ns.scan_step <= 0 or stop <= ns.window_start:
            raise UsageError("need --scan-step > 0 and --scan-stop after --window-start")
        t, m = margin_profile(inst, ns.window_start, stop, ns.scan_step)
        _write_csv(ns.scan_csv, ["t", "margin"], zip(t, m))
    try:
        hit = find_lonely_time(inst, ns.target, ns.window_start, cfg.scan_budget)
    except BudgetExhausted as exc:
        return {"witness": None, "inconclusive": str(exc)}, EXIT_INCONCLUSIVE
    return {"witness": {"t": hit.t, "margin": hit.margin}, "target": ns.target}, EXIT_OK


def cmd_spectator(ns, cfg: RunConfig, out):
    basis = cfg.basis()
    vel = parse_csv_values(ns.velocities, basis)
    starts = _floats(ns.starts)
    inst = RunnerInstance.from_exact(vel, starts) if basis is not None else RunnerInstance(tuple(vel), tuple(starts))
    try:
        verdict = select_spectator(inst)
    except ScanFailure as exc:
        return {"spectator": None, "inconclusive": str(exc)}, EXIT_INCONCLUSIVE
    return verdict.to_json(), EXIT_OK


def _score_report(score, cfg: RunConfig) -> dict:
    rep = {
        "min_eigenvalue": score.min_eigenvalue,
        "trace": score.trace,
        "relative": score.relative,
        "dependent": score.dependent,
        "window": cfg.window,
        "samples": cfg.samples,
        "null_threshold": cfg.null_threshold,
        "null_vector": None,
        "residual": score.residual,
    }
    if score.null_vector is not None:
        rep["null_vector"] = [[float(c.real), float(c.imag)] for c in score.null_vector]
    return rep


def cmd_gabor(ns, cfg: RunConfig, out):
    f = load_function(ns.function)
    pts = load_points(ns.lam, cfg.basis())
    if ns.action == "score":
        score = independence_score(f, pts, cfg.window, cfg.samples, cfg.null_threshold)
        rep = _score_report(score, cfg)
        rep["function_flags"] = f.flags
        return rep, EXIT_DEPENDENT if score.dependent else EXIT_OK
    grid, vecs = sampled_system(f, pts, cfg.window, cfg.samples)
    header = ["t"] + [f"re_{k}" for k in range(len(pts))] + [f"im_{k}" for k in range(len(pts))]
    rows = (np.concatenate([[t], v.real, v.imag]) for t, v in zip(grid, vecs.T))
    if ns.csv:
        _write_csv(ns.csv, header, rows)
        return {"csv": ns.csv, "rows": int(grid.size), "columns": header}, EXIT_OK
    _write_csv_stream(out, header, rows)
    return None, EXIT_OK


_VERDICT_EXIT = {Verdict.REFUTED: EXIT_OK, Verdict.DEPENDENT: EXIT_DEPENDENT, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}


def cmd_hrt(ns, cfg: RunConfig, out):
    pts = load_points(ns.lam, cfg.basis())
    vcfg = cfg.verify_config()
    if ns.action == "classify":
        if len(pts) != 4:
            raise InputError("classify needs exactly four points")
        return classify_4pt(pts, vcfg).to_json(), EXIT_OK
    f = load_function(ns.function)
    coeffs = load_coeffs(ns.coeffs) if ns.coeffs else None
    if len(pts) == 4:
        report = verify_4pt(f, pts, coeffs, vcfg)
    else:
        report = verify_theorem_1_4(f, pts, coeffs, vcfg)
    return report.to_json(), _VERDICT_EXIT[report.verdict]


def counterexample_points(a: float) -> PointSet:
    return PointSet([(0.0, 0.0), (0.0, -1.0), (0.0, 1.0), (a, 0.0), (a, -1.0), (a, 1.0)])


def cmd_demo(ns, cfg: RunConfig, out):
    if ns.action == "counterexample":
        f = TwoPlusCos()
        pts = counterexample_points(ns.a)
        score = independence_score(f, pts, cfg.window, cfg.samples, cfg.null_threshold)
        rep = _score_report(score, cfg)
        rep.update(a=ns.a, function=f.to_json(), points=pts.to_json()["points"], reproduced=bool(score.dependent))
        return rep, EXIT_OK if score.dependent else EXIT_INCONCLUSIVE
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for _ in range(ns.count):
        v = np.sort(rng.choice(np.arange(1, 20), size=3, replace=False)).astype(float)
        s = rng.random(3)
        inst = RunnerInstance(tuple(v), tuple(s))
        try:
            hit = find_lonely_time(inst, ns.target, 0.0, cfg.scan_budget)
            rows.append({"velocities": list(v), "starts": list(s), "t": hit.t, "margin": hit.margin})
        except BudgetExhausted:
            rows.append({"velocities": list(v), "starts": list(s), "t": None, "margin": None})
    solved = sum(r["t"] is not None for r in rows)
    return {"seed": cfg.seed, "target": ns.target, "solved": solved, "count": ns.count, "instances": rows}, EXIT_OK


def _write_csv(path, header, rows):
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            _write_csv_stream(fh, header, rows)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from exc


def _write_csv_stream(fh, header, rows):
    w = csv.writer(fh)
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) for x in r])


_COMMANDS = {
    "affine-dim": cmd_affine_dim,
    "relations": cmd_relations,
    "approx": cmd_approx,
    "runner": cmd_runner,
    "spectator": cmd_spectator,
    "gabor": cmd_gabor,
    "hrt": cmd_hrt,
    "demo": cmd_demo,
}


def dispatch(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = RunConfig.from_args(ns) if hasattr(ns, "relation_tol") else RunConfig()
        report, code = _COMMANDS[ns.command](ns, cfg, out)
    except UsageError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    except (InputError, PreconditionNotMet) as exc:
        print(f"tfrunner: error: {exc}", file=err)
        return EXIT_USAGE
    except BadSequence as exc:
        print(f"tfrunner: {exc}", file=err)
        return EXIT_USAGE
    except TFRunnerError as exc:
        print(f"tfrunner: {exc}", file=err)
        return EXIT_INCONCLUSIVE
    if report is not None:
        if cfg.fmt == "csv":
            w = csv.writer(out)
            w.writerow(["key", "value"])
            w.writerows(_flatten(report))
        else:
            out.write(dumps(report))
    return code


def _flatten(obj, prefix=""):
    """(dotted key, scalar) rows of a JSON report, in sorted key order."""
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}.{i}" if prefix else str(i))
    else:
        yield prefix, "" if obj is None else obj


def main() -> None:
    sys.exit(dispatch())
