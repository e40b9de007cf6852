"""``sos``: generate, predict, verify and plot Sós permutation shapes.

Exit status: 0 ok, 1 bad input or domain error, 2 a checked bound failed,
3 a resource cap was hit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterable, Optional, Sequence

from .lattice import ORACLE_GUARD, lattice_dump, lattice_length_oracle
from .numeric import DomainError, ResourceError, fmt, parse_alpha
from .predictor import (TrivialShape, Verification, construct_k_paths, shape_prediction,
                        verify_prediction)
from .schensted import arm_leg, rsk, shape
from .sosperm import ENUMERATE_CAP, check_three_gap, farey_interval, iter_sos, sos_permutation
from . import render

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_RESOURCE = 0, 1, 2, 3
COMMANDS = ("perm", "shape", "predict", "verify", "scan", "enumerate", "lattice-dump", "plot")
FORMATS = ("text", "csv", "json", "svg")
SCAN_COLUMNS = ("n", "alpha_id", "arm", "leg", "arm_lo", "arm_hi", "leg_lo", "leg_hi",
                "x0", "y0", "slope1", "slope2", "max_dist")
ENUM_COLUMNS = ("n", "a", "b", "c", "d", "width", "permutation")
DUMP_COLUMNS = ("x", "y", "l_plus", "l_minus")
TABLEAU_LIMIT = 60


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    alpha: Optional[str] = None
    n: Optional[int] = None
    n_from: Optional[int] = None
    n_to: Optional[int] = None
    n_step: int = 1
    n_log2_from: Optional[float] = None
    n_log2_to: Optional[float] = None
    n_log2_step: float = 1.0
    format: Optional[str] = None
    digits: int = 12
    jobs: int = 1
    out: Optional[str] = None
    report: Optional[str] = None
    cap: int = ENUMERATE_CAP
    k: Optional[int] = None
    greene: bool = False
    lsvk: bool = False
    normalize: bool = False
    check: bool = False

    def to_argv(self) -> list[str]:
        """Command line that parses back to this config."""
        argv = [self.command]
        default = RunConfig(self.command)
        for f in fields(self):
            if f.name == "command":
                continue
            value = getattr(self, f.name)
            if value == getattr(default, f.name):
                continue
            flag = "--" + f.name.replace("_", "-")
            if isinstance(value, bool):
                argv.append(flag)
            else:
                argv += [flag, str(value)]
        return argv

    def ns(self) -> list[int]:
        """The requested values of n, in order, without repeats."""
        if self.n is not None:
            return [self.n]
        if self.n_from is not None and self.n_to is not None:
            return list(range(self.n_from, self.n_to + 1, self.n_step))
        if self.n_log2_from is not None and self.n_log2_to is not None:
            count = int(round((self.n_log2_to - self.n_log2_from) / self.n_log2_step)) + 1
            seen: dict[int, None] = {}
            for t in range(count):
                seen[int(round(2 ** (self.n_log2_from + t * self.n_log2_step)))] = None
            return list(seen)
        raise DomainError("give --n, --n-from/--n-to, or --n-log2-from/--n-log2-to")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sos", description="Schensted shapes of Sós permutations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "perm": "print w(n, alpha), its Farey interval and the three-gap check",
        "shape": "print w(n, alpha), its shape and (for small n) both tableaux",
        "predict": "arm/leg intervals, corner and two-slope boundary",
        "verify": "compare predictions with actual shapes; exit 2 on any violation",
        "scan": "one row of predicted and actual data per n",
        "enumerate": "every Sós permutation of length n",
        "lattice-dump": "lattice lengths of every point of L_{a,b}",
        "plot": "staircase with the predicted boundary",
    }
    for name in COMMANDS:
        s = sub.add_parser(name, help=helps[name])
        s.add_argument("--alpha", help="p/q, cf:[0;a1,...], e, golden, sqrt2 or surd:(p+sqrt(d))/q")
        s.add_argument("--n", type=int)
        s.add_argument("--n-from", type=int)
        s.add_argument("--n-to", type=int)
        s.add_argument("--n-step", type=int, default=1)
        s.add_argument("--n-log2-from", type=float)
        s.add_argument("--n-log2-to", type=float)
        s.add_argument("--n-log2-step", type=float, default=1.0)
        s.add_argument("--format", choices=FORMATS)
        s.add_argument("--digits", type=int, default=12)
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--out", help="write to this file instead of stdout")
        s.add_argument("--report", help="directory for CSV, SVG and PNG output")
        s.add_argument("--cap", type=int, default=ENUMERATE_CAP, help="enumeration size cap")
        s.add_argument("--k", type=int, help="(predict) also build the k-path certificate")
        s.add_argument("--greene", action="store_true",
                       help="(verify) also check Greene sums, lin(k) and the corner")
        s.add_argument("--lsvk", action="store_true", help="(plot) overlay the random-permutation curve")
        s.add_argument("--normalize", action="store_true", help="(plot) scale axes by 1/sqrt(n)")
        s.add_argument("--check", action="store_true", help="(lattice-dump) compare with the DP oracle")
    return p


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    return RunConfig(**vars(ns))


# ---------------------------------------------------------------------------
# helpers


def _dec(x, digits: int) -> str:
    """Exact values rounded to ``digits`` places; blank for missing ones."""
    if x is None:
        return ""
    return fmt(Fraction(x), digits)


def _need_alpha(cfg: RunConfig):
    if not cfg.alpha:
        raise DomainError(f"{cfg.command} needs --alpha")
    return parse_alpha(cfg.alpha)


def _csv(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _scan_row(n: int, alpha_id: str, v: Verification, digits: int) -> dict:
    row = dict.fromkeys(SCAN_COLUMNS, "")
    row.update(n=n, alpha_id=alpha_id, arm=v.arm, leg=v.leg)
    p = v.prediction
    if p is not None:
        d = lambda x: _dec(x, digits)
        row.update(arm_lo=d(p.arm_bounds[0]), arm_hi=d(p.arm_bounds[1]),
                   leg_lo=d(p.leg_bounds[0]), leg_hi=d(p.leg_bounds[1]),
                   x0=d(p.x0), y0=d(p.y0), slope1=d(p.slopes[0]), slope2=d(p.slopes[1]),
                   max_dist=f"{v.max_dist:.{digits}g}")
    return row


def _verification_json(n: int, alpha_id: str, v: Verification, digits: int) -> dict:
    out: dict[str, Any] = _scan_row(n, alpha_id, v, digits)
    out["shape"] = str(v.shape)
    if v.prediction is not None:
        out["argmax_x"] = f"{v.argmax_x:.{digits}g}"
        out["worst_row_deviation"] = _dec(v.worst_row, digits)
        out["worst_column_deviation"] = _dec(v.worst_col, digits)
    out["ok"] = v.ok
    out["violations"] = v.violations
    return out


def _map(cfg: RunConfig, fn: Callable[[int], Any]) -> list:
    ns = cfg.ns()
    if cfg.jobs > 1 and len(ns) > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(fn, ns))
    return [fn(n) for n in ns]


# ---------------------------------------------------------------------------
# commands; each returns (text, status)


def cmd_perm(cfg: RunConfig) -> tuple[str, int]:
    alpha = _need_alpha(cfg)
    n = cfg.ns()[0]
    w = sos_permutation(n, alpha)
    iv = farey_interval(n, alpha)
    gap = check_three_gap(w, iv)
    fmt_ = cfg.format or "text"
    if fmt_ == "json":
        return _json({"n": n, "alpha": cfg.alpha, "permutation": str(w), "interval": str(iv),
                      "endpoint": iv.endpoint, "three_gap": str(gap)}), EXIT_OK
    if fmt_ == "csv":
        return _csv(ENUM_COLUMNS, [(n, iv.a, iv.b, iv.c, iv.d, str(iv.width), str(w))]), EXIT_OK
    lines = [str(w), f"interval {iv}{' (alpha is the left endpoint)' if iv.endpoint else ''}",
             f"three-gap {gap}"]
    return "\n".join(lines) + "\n", EXIT_OK if gap else EXIT_VERIFY


def cmd_shape(cfg: RunConfig) -> tuple[str, int]:
    alpha = _need_alpha(cfg)
    n = cfg.ns()[0]
    w = sos_permutation(n, alpha)
    lam = shape(w)
    arm, leg = arm_leg(w)
    pair = rsk(w) if n <= TABLEAU_LIMIT else None
    fmt_ = cfg.format or "text"
    if fmt_ == "json":
        obj = {"n": n, "alpha": cfg.alpha, "permutation": str(w), "shape": str(lam),
               "arm": arm, "leg": leg}
        if pair is not None:
            obj.update(P=[list(r) for r in pair.P], Q=[list(r) for r in pair.Q])
        return _json(obj), EXIT_OK
    if fmt_ == "csv":
        return _csv(("n", "alpha_id", "arm", "leg", "shape"), [(n, cfg.alpha, arm, leg, str(lam))]), EXIT_OK
    if fmt_ == "svg":
        return render.shape_svg(lam, title=f"w({n}, {cfg.alpha})"), EXIT_OK
    lines = [str(w), str(lam)]
    if pair is not None:
        lines += ["P", pair.french("P"), "Q", pair.french("Q")]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_predict(cfg: RunConfig) -> tuple[str, int]:
    alpha = _need_alpha(cfg)
    n = cfg.ns()[0]
    d = lambda x: _dec(x, cfg.digits)
    try:
        p = shape_prediction(n, alpha)
    except TrivialShape as t:
        obj = {"n": n, "alpha": cfg.alpha, "trivial": t.kind, "shape": str(t.partition)}
        return (_json(obj) if cfg.format == "json" else f"{t}\nshape {t.partition}\n"), EXIT_OK
    f = p.frame
    (c1, m1), (c2, m2) = p.pieces
    obj = {
        "n": n, "alpha": cfg.alpha, "proxy": f"{f.a}/{f.N}", "case": f.case_tag, "h": f.h,
        "star": f.star, "x": [str(v) for v in f.x_vec], "y": [str(v) for v in f.y_vec],
        "arm_interval": [str(v) for v in p.arm_bounds], "leg_interval": [str(v) for v in p.leg_bounds],
        "x0": str(p.x0), "y0": str(p.y0),
        "L": [{"from": str(p.domain[0]), "to": str(p.x0), "intercept": str(c1), "slope": str(m1)},
              {"from": str(p.x0), "to": str(p.domain[1]), "intercept": str(c2), "slope": str(m2)}],
        "slopes": [d(m1), d(m2)],
        "rows": [{"k": k, "center": d(p.row_center(k))} for k in range(1, p.row_range + 1)],
        "row_radius": d(p.row_radius),
        "columns": [{"k": k, "center": d(p.col_center(k))} for k in range(1, p.col_range + 1)],
        "column_radius": d(p.col_radius),
    }
    status = EXIT_OK
    if cfg.k is not None:
        cert = construct_k_paths(f, cfg.k)
        obj["certificate"] = {"k": cert.k, "J": str(cert.J), "variant": cert.variant,
                              "size": cert.size, "greene_bound": cert.greene_bound,
                              "chain_lengths": [len(c) for c in cert.chains],
                              "ok": cert.ok, "problems": cert.problems}
        status = EXIT_OK if cert.ok else EXIT_VERIFY
    fmt_ = cfg.format or "text"
    if fmt_ == "json":
        return _json(obj), status
    if fmt_ == "csv":
        cols = [c for c in SCAN_COLUMNS if c not in ("arm", "leg", "max_dist")]
        row = [n, cfg.alpha, d(p.arm_bounds[0]), d(p.arm_bounds[1]), d(p.leg_bounds[0]),
               d(p.leg_bounds[1]), d(p.x0), d(p.y0), d(m1), d(m2)]
        return _csv(cols, [row]), status
    lines = [f"frame  case {f.case_tag}, x = {f.x_vec}, y = {f.y_vec} (proxy {f.a}/{f.N})",
             f"arm    ({p.arm_bounds[0]}, {p.arm_bounds[1]}]",
             f"leg    ({p.leg_bounds[0]}, {p.leg_bounds[1]}]",
             f"corner ({p.x0}, {p.y0})",
             f"L(x) = {c1} + ({m1})x on [0, {p.x0}]",
             f"L(x) = {c2} + ({m2})x on [{p.x0}, {p.domain[1]}]",
             f"slopes {d(m1)} {d(m2)}"]
    if cfg.k is not None:
        c = obj["certificate"]
        lines.append(f"k = {c['k']}: |S| = {c['size']}, bound {c['greene_bound']}, "
                     f"{'verified' if c['ok'] else '; '.join(c['problems'])}")
    return "\n".join(lines) + "\n", status


def _verify_all(cfg: RunConfig, greene: bool) -> list[tuple[int, Verification]]:
    alpha = _need_alpha(cfg)
    return _map(cfg, lambda n: (n, verify_prediction(n, alpha, greene=greene)))


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    results = _verify_all(cfg, cfg.greene)
    status = EXIT_OK if all(v.ok for _, v in results) else EXIT_VERIFY
    fmt_ = cfg.format or "text"
    if fmt_ == "json":
        objs = [_verification_json(n, cfg.alpha, v, cfg.digits) for n, v in results]
        return _json(objs[0] if len(objs) == 1 else objs), status
    if fmt_ == "csv":
        cols = SCAN_COLUMNS + ("ok",)
        rows = [[*_scan_row(n, cfg.alpha, v, cfg.digits).values(), v.ok] for n, v in results]
        return _csv(cols, rows), status
    lines = []
    for n, v in results:
        head = f"n = {n}: shape arm {v.arm}, leg {v.leg}"
        if v.max_dist is not None:
            head += f", max distance {v.max_dist:.4f}"
        lines.append(head + (" ok" if v.ok else " FAILED"))
        lines += [f"  {msg}" for msg in v.violations]
    return "\n".join(lines) + "\n", status


def cmd_scan(cfg: RunConfig) -> tuple[str, int]:
    results = _verify_all(cfg, False)
    rows = [_scan_row(n, cfg.alpha, v, cfg.digits) for n, v in results]
    table = _csv(SCAN_COLUMNS, [r.values() for r in rows])
    if cfg.report:
        out = Path(cfg.report)
        out.mkdir(parents=True, exist_ok=True)
        (out / "scan.csv").write_text(table)
        exps = [math.log2(n) for n, _ in results]
        arm = [v.arm / math.sqrt(n) for n, v in results]
        leg = [v.leg / math.sqrt(n) for n, v in results]
        title = f"alpha = {cfg.alpha}"
        (out / "armleg.svg").write_text(render.armleg_svg(exps, arm, leg, title))
        render.armleg_png(out / "armleg.png", exps, arm, leg, title)
    fmt_ = cfg.format or "csv"
    if fmt_ == "json":
        return _json(rows), EXIT_OK
    if fmt_ == "svg":
        exps = [math.log2(n) for n, _ in results]
        return render.armleg_svg(exps, [v.arm / math.sqrt(n) for n, v in results],
                                 [v.leg / math.sqrt(n) for n, v in results]), EXIT_OK
    return table, EXIT_OK


def cmd_enumerate(cfg: RunConfig) -> tuple[str, int]:
    n = cfg.ns()[0]
    rows = [(n, iv.a, iv.b, iv.c, iv.d, str(iv.width), str(w)) for iv, w in iter_sos(n, cfg.cap)]
    if (cfg.format or "csv") == "json":
        return _json([dict(zip(ENUM_COLUMNS, r)) for r in rows]), EXIT_OK
    return _csv(ENUM_COLUMNS, rows), EXIT_OK


def cmd_lattice_dump(cfg: RunConfig) -> tuple[str, int]:
    alpha = _need_alpha(cfg)
    if not alpha.is_rational:
        raise DomainError("lattice-dump needs a rational --alpha a/b")
    a, b = alpha.value.numerator, alpha.value.denominator
    rows = lattice_dump(a, b)
    status = EXIT_OK
    if cfg.check:
        oracle = lattice_length_oracle(a, b, ORACLE_GUARD)
        if any(oracle[(x, y)] != (lp, lm) for x, y, lp, lm in rows):
            status = EXIT_VERIFY
    if (cfg.format or "csv") == "json":
        return _json([dict(zip(DUMP_COLUMNS, r)) for r in rows]), status
    return _csv(DUMP_COLUMNS, rows), status


def cmd_plot(cfg: RunConfig) -> tuple[str, int]:
    alpha = _need_alpha(cfg)
    n = cfg.ns()[0]
    lam = shape(sos_permutation(n, alpha))
    try:
        pred = shape_prediction(n, alpha)
    except TrivialShape:
        pred = None
    title = f"w({n}, {cfg.alpha})"
    svg = render.shape_svg(lam, pred, cfg.lsvk, cfg.normalize, title)
    if cfg.report:
        out = Path(cfg.report)
        out.mkdir(parents=True, exist_ok=True)
        (out / "shape.svg").write_text(svg)
        render.shape_png(out / "shape.png", lam, pred, cfg.lsvk, cfg.normalize, title)
    if cfg.out and cfg.out.endswith(".png"):
        render.shape_png(cfg.out, lam, pred, cfg.lsvk, cfg.normalize, title)
        return "", EXIT_OK
    return svg, EXIT_OK


HANDLERS = {"perm": cmd_perm, "shape": cmd_shape, "predict": cmd_predict, "verify": cmd_verify,
            "scan": cmd_scan, "enumerate": cmd_enumerate, "lattice-dump": cmd_lattice_dump,
            "plot": cmd_plot}


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if cfg.jobs < 1:
        print("sos: --jobs must be at least 1", file=stderr)
        return EXIT_DOMAIN
    try:
        text, status = HANDLERS[cfg.command](cfg)
    except ResourceError as e:
        print(f"sos: {e}", file=stderr)
        return EXIT_RESOURCE
    except DomainError as e:
        print(f"sos: {e}", file=stderr)
        return EXIT_DOMAIN
    if text:
        if cfg.out and not (cfg.command == "plot" and cfg.out.endswith(".png")):
            Path(cfg.out).write_text(text)
        else:
            stdout.write(text)
    if status == EXIT_VERIFY:
        print("sos: verification failed", file=stderr)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    cfg = parse_config(sys.argv[1:] if argv is None else argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
