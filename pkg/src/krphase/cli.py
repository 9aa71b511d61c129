"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 gap closed, 3 cross-check discrepancy.
Reals are written to JSON as decimal strings.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .bloch import ModelSpec, beta, flatten, gap, hamiltonian, near_closing, phi, phi_tilde
from .bloch import closing_set, random_points
from .clifford import build_rep, check_relations
from .errors import GapClosed, Inconclusive
from .invariants import closed_form, kr_class, pullback_stacked
from .oracle import DEGREE_ORIENTATION, degree_numeric
from .symmetry import CARTAN_LABELS, build_symmetry_ops, classify

EXIT_OK, EXIT_USAGE, EXIT_GAP, EXIT_DISCREPANCY = 0, 1, 2, 3


def _real(x):
    return repr(float(x))


def default_grid(d):
    return 128 if d <= 2 else 64 if d == 3 else 32


@dataclass
class RunConfig:
    subcommand: str
    d: int = 1
    m: float = 0.0
    axes: tuple = None
    extra_b: int = 0
    grid_n: int = None
    tol: float = 1e-12
    max_d: int = 3
    fmt: str = "json"

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("--d must be at least 1")
        if self.grid_n is None:
            self.grid_n = default_grid(self.d)
        if self.grid_n < 2 or self.grid_n % 2:
            raise ValueError("--grid must be even and at least 2")
        if self.axes is not None and not set(self.axes) <= set(range(1, self.d + 1)):
            raise ValueError(f"--axes must be a subset of 1..{self.d}")


def _emit(payload, fmt, out):
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
        return
    for key, val in payload.items():
        if isinstance(val, dict):
            val = json.dumps(val, ensure_ascii=False)
        out.write(f"{key:>16}  {val}\n")


def _vec_dict(vec):
    d = vec.to_dict()
    d.pop("sign_convention")
    d.pop("coefficient")
    return d


def cmd_compute(cfg, out=sys.stdout):
    spec = ModelSpec(cfg.d, cfg.m, cfg.axes, cfg.extra_b)
    if near_closing(spec.k, spec.m):
        raise GapClosed(f"m={spec.m} lies in the closing set {closing_set(spec.k)}")
    vec = kr_class(spec)
    notes = []
    problems = []

    base = closed_form(spec.k, spec.m)
    if spec.extra_b:
        base = replace(base, coefficient="Z2")
    cf = pullback_stacked(base, spec.axes, spec.d)
    if cf.magnitudes() != vec.magnitudes():
        problems.append("closed form magnitudes differ from enumeration")
    if cf.strong != vec.strong:
        problems.append("closed-form strong sign (-1)^(d+p) differs from enumeration")
    if vec.p is not None:
        notes.append(f"interval index p={vec.p}; lower-end label n=d-1-p={spec.k - 1 - vec.p}")

    degree = None
    if spec.full and not spec.extra_b and spec.d <= 3:
        try:
            res = degree_numeric(spec, max(cfg.grid_n, 32), max_grid=4 * max(cfg.grid_n, 32))
        except Inconclusive as exc:
            problems.append(str(exc))
        else:
            degree = {
                "raw": f"{res.raw:.12g}",
                "rounded": res.rounded,
                "residual": f"{res.residual:.3g}",
                "grid_n": res.grid_n,
            }
            if res.rounded != DEGREE_ORIENTATION * vec.strong:
                problems.append(
                    f"degree {res.rounded} != {DEGREE_ORIENTATION} * strong ({vec.strong})"
                )
            notes.append("degree = -strong: each preimage of S has local degree -(-1)^sign(z)")

    payload = vec.to_dict()
    payload["closed_form"] = _vec_dict(cf)
    payload["degree"] = degree
    payload["notes"] = notes
    payload["discrepancies"] = problems
    _emit(payload, cfg.fmt, out)
    for p in problems:
        print(f"discrepancy: {p}", file=sys.stderr)
    return EXIT_DISCREPANCY if problems else EXIT_OK


def cmd_gap(cfg, out=sys.stdout):
    spec = ModelSpec(cfg.d, cfg.m, cfg.axes)
    value = gap(spec, cfg.grid_n)
    closing = near_closing(spec.k, spec.m)
    payload = {
        "d": spec.d,
        "m": _real(spec.m),
        "axes": list(spec.axes),
        "grid_n": cfg.grid_n,
        "gap": _real(value),
        "closing_set": closing_set(spec.k),
        "in_closing_set": closing,
        "status": "m in closing set" if closing else "gapped",
    }
    _emit(payload, cfg.fmt, out)
    return EXIT_OK


def cmd_classify(a, b, cartan=False, fmt="json", out=sys.stdout):
    cls = classify(a, b, CARTAN_LABELS if cartan else None)
    _emit(cls.to_dict(a, b), fmt, out)
    return EXIT_OK


def _suite_clifford(tol, max_n=6):
    worst = 0.0
    for n in range(1, max_n + 1):
        for a in range(n + 1):
            rep = check_relations(build_rep(a, n - a), tol)
            worst = max([worst] + list(rep.residuals.values()))
            if not rep.passed:
                return False, worst
    return True, worst


def _suite_bloch(tol, max_d):
    worst = 0.0
    rng = np.random.default_rng(20260101)
    for d in range(1, max_d + 1):
        spec = ModelSpec(d, 0.5 + (d % 2) * 0.25)
        rep = spec.rep
        for k in random_points(spec, 100, rng):
            H = hamiltonian(spec, k)
            r2 = float(phi_tilde(spec, k) @ phi_tilde(spec, k))
            worst = max(
                worst,
                np.linalg.norm(H @ H - r2 * np.eye(rep.dim)),
                np.linalg.norm(H - H.conj().T),
                np.linalg.norm(rep.grading @ H @ rep.grading + H),
                np.linalg.norm(rep.real(H) - hamiltonian(spec, -k)),
                np.linalg.norm(flatten(spec, k) - beta(rep, np.pad(phi(spec, k), (0, rep.n - d - 1)))),
            )
    return worst < tol, worst


def _suite_gap(tol, max_d):
    for d in range(1, max_d + 1):
        spec = ModelSpec(d, 0)
        for c in closing_set(d):
            if gap(spec.with_mass(c), 8) != 0.0:
                return False, c
        for c in closing_set(d)[:-1]:
            if not gap(spec.with_mass(c + 1), 8) > 0.01:
                return False, c + 1
    return True, 0.0


def _suite_oracle(tol, max_d):
    for d in range(1, min(max_d, 3) + 1):
        for m in [c + 1 for c in closing_set(d)[:-1]] + [d + 1.0, -d - 1.0]:
            spec = ModelSpec(d, m)
            strong = kr_class(spec).strong
            res = degree_numeric(spec, default_grid(d), max_grid=256)
            if res.rounded != DEGREE_ORIENTATION * strong:
                return False, res.residual
            cf = closed_form(d, m)
            if cf.magnitudes() != kr_class(spec).magnitudes() or cf.strong != strong:
                return False, 0.0
    return True, 0.0


def _suite_symmetry(tol, max_n=6):
    worst = 0.0
    for n in range(1, max_n + 1):
        for a in range(n + 1):
            cls = classify(a, n - a)
            ops = build_symmetry_ops(a, n - a)
            got = (ops.theta_squared(), ops.xi is not None, ops.xi_theta_squared())
            if got != (cls.theta_sq, cls.chiral_present, cls.xi_theta_sq):
                return False, worst
    return True, worst


def cmd_check(cfg, out=sys.stdout):
    suites = [
        ("clifford-relations", lambda: _suite_clifford(cfg.tol)),
        ("bloch-identities", lambda: _suite_bloch(cfg.tol, cfg.max_d)),
        ("gap-closing-set", lambda: _suite_gap(cfg.tol, cfg.max_d)),
        ("oracle-vs-enumeration", lambda: _suite_oracle(cfg.tol, cfg.max_d)),
        ("symmetry-table", lambda: _suite_symmetry(cfg.tol)),
    ]
    results = []
    for name, run in suites:
        t0 = time.perf_counter()
        ok, worst = run()
        results.append({"suite": name, "pass": bool(ok), "worst": _real(worst), "seconds": f"{time.perf_counter() - t0:.3f}"})
        if not ok:
            _emit({"backend": kernels.BACKEND, "suites": results, "failed": name}, cfg.fmt, out)
            print(f"check failed: {name}", file=sys.stderr)
            return EXIT_DISCREPANCY
    _emit({"backend": kernels.BACKEND, "suites": results, "failed": None}, cfg.fmt, out)
    return EXIT_OK


def _axes(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad axes list {text!r}")


def build_parser():
    p = argparse.ArgumentParser(prog="krphase", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    def model_args(sp):
        sp.add_argument("--d", type=int, required=True, help="torus dimension")
        sp.add_argument("--m", type=float, required=True, help="mass parameter")
        sp.add_argument("--axes", type=_axes, default=None, help="active axes, e.g. 1,3")
        sp.add_argument("--grid", type=int, default=None, dest="grid_n")
        sp.add_argument("--format", choices=("json", "table"), default="json", dest="fmt")

    c = sub.add_parser("compute", help="invariant vector with cross-checks")
    model_args(c)
    c.add_argument("--extra-b", type=int, default=0, choices=(0, 1, 2))

    g = sub.add_parser("gap", help="spectral gap on a grid")
    model_args(g)

    k = sub.add_parser("classify", help="symmetry class of Cliff_{a,b}")
    k.add_argument("--a", type=int, required=True)
    k.add_argument("--b", type=int, required=True)
    k.add_argument("--cartan", action="store_true", help="add the Cartan label annotation")
    k.add_argument("--format", choices=("json", "table"), default="json", dest="fmt")

    ch = sub.add_parser("check", help="run the self-test battery")
    ch.add_argument("--max-d", type=int, default=3)
    ch.add_argument("--tol", type=float, default=1e-12)
    ch.add_argument("--format", choices=("json", "table"), default="json", dest="fmt")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.subcommand == "classify":
            return cmd_classify(args.a, args.b, args.cartan, args.fmt, out)
        if args.subcommand == "check":
            cfg = RunConfig("check", tol=args.tol, max_d=args.max_d, fmt=args.fmt)
            return cmd_check(cfg, out)
        cfg = RunConfig(
            args.subcommand,
            d=args.d,
            m=args.m,
            axes=args.axes,
            extra_b=getattr(args, "extra_b", 0),
            grid_n=args.grid_n,
            fmt=args.fmt,
        )
        if args.subcommand == "compute":
            return cmd_compute(cfg, out)
        return cmd_gap(cfg, out)
    except GapClosed as exc:
        print(f"gap closed: {exc}", file=sys.stderr)
        return EXIT_GAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
