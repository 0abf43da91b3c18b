"""Command-line front end.

Exit codes: 0 success, 2 bad flags or parameters, 3 internal verification
failure.  Diagnostics go to stderr, results to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import binomsys, checks
from .errors import InvalidParams, JetSplitError, ShapeMismatch, Unsupported
from .exactfield import FieldSpec
from .jetmatrices import LEFT, RIGHT, JetParams, transition, untwisted_transition
from .splitting import SplittingType, birkhoff_split, oracle_split, verify_certificate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3

_USAGE_ERRORS = (InvalidParams, Unsupported, ShapeMismatch)


class VerificationFailure(JetSplitError):
    pass


@dataclass(frozen=True)
class SplitReport:
    n: int
    k: int
    characteristic: int
    side: str
    splitting: SplittingType
    certificate_verified: bool
    oracle_checked: bool
    ms: int

    def to_json(self) -> dict:
        return {
            "params": {"n": self.n, "k": self.k, "characteristic": self.characteristic, "side": self.side},
            "degrees": list(self.splitting.degrees),
            "multiplicities": self.splitting.multiplicities(),
            "certificate_verified": self.certificate_verified,
            "oracle_checked": self.oracle_checked,
            "ms": self.ms,
        }


@dataclass(frozen=True)
class TableReport:
    k: int
    n_values: tuple[int, ...]
    chars: tuple[int, ...]
    side: str
    grid: dict[str, list[list[str]]]
    differ: list[tuple[int, int]]

    def __post_init__(self) -> None:
        for rows in self.grid.values():
            if len(rows) != len(self.n_values) or any(len(r) != len(self.chars) for r in rows):
                raise ShapeMismatch("table grid does not match its axes")

    def to_json(self) -> dict:
        return {
            "axes": {
                "n": list(self.n_values),
                "chars": list(self.chars),
                "k": self.k,
                "side": self.side,
            },
            "grid": {s: self.grid[s] for s in sorted(self.grid)},
            "differ": [{"n": n, "char": c} for n, c in self.differ],
        }

    def to_text(self) -> str:
        sides = sorted(self.grid)
        header = ["n"] + [f"char {c}" for c in self.chars]
        body = []
        for i, n in enumerate(self.n_values):
            row = [str(n)]
            for j, c in enumerate(self.chars):
                cell = " / ".join(self.grid[s][i][j] for s in sides)
                if (n, c) in self.differ:
                    cell += " *"
                row.append(cell)
            body.append(row)
        widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in body]
        if len(sides) > 1:
            lines.append(f"cells are {' / '.join(sides)}; * marks a left/right difference")
        return "\n".join(lines)


def _field(char: int) -> FieldSpec:
    return FieldSpec(char)


def split_report(n: int, k: int, char: int, side: str, timing: bool = True) -> SplitReport:
    field = _field(char)
    params = JetParams(n, k, field, side)
    start = time.perf_counter()
    m = transition(params)
    st, cert = birkhoff_split(m)
    if not verify_certificate(m, cert):
        raise VerificationFailure(f"certificate rejected for {params}")
    oracle = oracle_split(m)
    if oracle != st:
        raise VerificationFailure(f"factorization gave {st}, section count gave {oracle}")
    if char == 0 and side == LEFT and binomsys.char0_split(n, k) != st:
        raise VerificationFailure("linear-system route disagrees with factorization")
    ms = round((time.perf_counter() - start) * 1000) if timing else 0
    return SplitReport(n, k, char, side, st, True, True, ms)


def _cell(args: tuple[int, int, int, str]) -> str:
    n, k, char, side = args
    st, _ = birkhoff_split(transition(JetParams(n, k, _field(char), side)))
    return str(st)


def table_report(k: int, n_min: int, n_max: int, chars: Sequence[int], side: str, jobs: int = 1) -> TableReport:
    if not 1 <= k <= n_min <= n_max:
        raise InvalidParams(f"need 1 <= k <= n-min <= n-max, got k={k}, n-min={n_min}, n-max={n_max}")
    for c in chars:
        _field(c)
    if side == "both":
        # right-module matrices exist only for k = 1
        sides = [LEFT, RIGHT] if k == 1 else [LEFT]
    else:
        sides = [side]
    if RIGHT in sides and k != 1:
        raise InvalidParams("the right module structure is only available for k = 1")
    n_values = tuple(range(n_min, n_max + 1))
    tasks = [(n, k, c, s) for s in sides for n in n_values for c in chars]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_cell, tasks))
    else:
        cells = [_cell(t) for t in tasks]
    width = len(chars)
    per_side = len(n_values) * width
    grid = {}
    for si, s in enumerate(sides):
        flat = cells[si * per_side:(si + 1) * per_side]
        grid[s] = [flat[i * width:(i + 1) * width] for i in range(len(n_values))]
    differ = []
    if len(sides) == 2:
        for i, n in enumerate(n_values):
            for j, c in enumerate(chars):
                if grid[LEFT][i][j] != grid[RIGHT][i][j]:
                    differ.append((n, c))
    return TableReport(k, n_values, tuple(chars), side, grid, differ)


def _emit(obj: dict, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj))
    else:
        print(text)


def cmd_transition(a: argparse.Namespace) -> int:
    field = _field(a.char)
    if a.untwisted:
        if a.side != LEFT:
            raise InvalidParams("--untwisted has no right-module variant")
        m = untwisted_transition(a.k, field)
        params = {"k": a.k, "characteristic": a.char, "untwisted": True}
    else:
        if a.n is None:
            raise InvalidParams("--n is required unless --untwisted is given")
        m = transition(JetParams(a.n, a.k, field, a.side))
        params = {"n": a.n, "k": a.k, "characteristic": a.char, "side": a.side}
    _emit({"params": params, "matrix": m.to_json()}, a.format, m.pretty())
    return EXIT_OK


def cmd_split(a: argparse.Namespace) -> int:
    rep = split_report(a.n, a.k, a.char, a.side, timing=not a.no_timing)
    text = f"{rep.splitting}  (certificate verified, oracle agrees, {rep.ms} ms)"
    _emit(rep.to_json(), a.format, text)
    return EXIT_OK


def cmd_solve(a: argparse.Namespace) -> int:
    field = _field(a.char)
    system = binomsys.build_system(a.n, a.k, a.r, field)
    sol = binomsys.solve_system(system)
    c = binomsys.c_row(a.n, a.k, sol.x, field) if sol.x is not None else None
    A = [[str(v) for v in row] for row in system.A]
    b = [str(v) for v in system.b]
    x = [str(v) for v in sol.x] if sol.x is not None else None
    crow = [str(v) for v in c] if c is not None else None
    obj = {
        "params": {"n": a.n, "k": a.k, "r": a.r, "characteristic": a.char},
        "A": A,
        "b": b,
        "status": sol.status,
        "x": x,
        "c": crow,
    }
    lines = [f"A_{a.r} ="]
    lines += ["  [" + ", ".join(row) + "]" for row in A]
    lines.append(f"b_{a.r} = (" + ", ".join(b) + ")")
    lines.append(f"status: {sol.status}")
    lines.append("x = " + ("(" + ", ".join(x) + ")" if x is not None else "none"))
    if crow is not None:
        lines.append(f"c^{a.r} = (" + ", ".join(crow) + ")")
        if sol.x[a.r] == 0:
            lines.append(f"note: x_{{{a.r},{a.r}}} = 0")
    _emit(obj, a.format, "\n".join(lines))
    return EXIT_OK


def cmd_table(a: argparse.Namespace) -> int:
    rep = table_report(a.k, a.n_min, a.n_max, a.chars, a.side, a.jobs)
    _emit(rep.to_json(), a.format, rep.to_text())
    return EXIT_OK


def cmd_verify(a: argparse.Namespace) -> int:
    names = list(checks.SUITES) if a.suite == "all" else [a.suite]
    results = []
    for suite, chk in checks.run_suites(names, seed=a.seed):
        results.append((suite, chk))
        if a.format == "text":
            mark = "PASS" if chk.passed else "FAIL"
            tail = f": {chk.detail}" if not chk.passed and chk.detail else ""
            print(f"{mark}  [{suite}] {chk.label}{tail}", flush=True)
    ok = all(c.passed for _, c in results)
    failed = sum(not c.passed for _, c in results)
    if a.format == "json":
        print(json.dumps({
            "checks": [
                {"suite": s, "label": c.label, "passed": c.passed, "detail": c.detail}
                for s, c in results
            ],
            "passed": ok,
        }))
    else:
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if ok else EXIT_VERIFY


def _chars(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jetsplit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("transition", help="print a transition matrix")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--char", type=int, default=0)
    p.add_argument("--side", choices=[LEFT, RIGHT], default=LEFT)
    p.add_argument("--untwisted", action="store_true", help="matrix of P^k itself")
    common(p)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("split", help="splitting type with certificate and oracle check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--char", type=int, default=0)
    p.add_argument("--side", choices=[LEFT, RIGHT], default=LEFT)
    p.add_argument("--no-timing", action="store_true", help="report ms as 0 for reproducible output")
    common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("solve", help="solve the linear system A_r x = b_r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--char", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="splitting types over a grid of n and characteristics")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--chars", type=_chars, default=[0, 2, 3, 5])
    p.add_argument("--side", choices=[LEFT, RIGHT, "both"], default="both")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the built-in verification suites")
    p.add_argument("--suite", choices=["all", *checks.SUITES], default="all")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"jetsplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except JetSplitError as exc:
        print(f"jetsplit: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def run() -> None:
    sys.exit(main())
