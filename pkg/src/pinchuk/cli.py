"""Command-line front end: ``pinchuk <verify|fiber|classify|curve|plot|sturm> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from typing import Sequence

from .elimination import resultant, sylvester_resultant
from .fibers import (ClassifyResult, FiberReport, classify, curve_reduction,
                     curve_resultant, discriminant_at, exceptional_set, real_fiber,
                     zariski_extra_point)
from .intervals import Interval
from .parsing import PolySyntaxError, parse_poly
from .polynomial import MultiPoly
from .render import Window, curve_samples, figure, write_curve_csv
from .roots import DEFAULT_EPS, IsolatingInterval, count_real_roots, isolate_real_roots, refine
from .system import IdentityCheck, verify_identities
from .univariate import UniPoly

SCHEMA = 1


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    """Parse ``num/den`` or an integer; floats are rejected on purpose."""
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def qstr(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _interval(lo, hi) -> list[str]:
    return [qstr(lo), qstr(hi)]


def _param(p) -> dict:
    if isinstance(p, IsolatingInterval):
        return {"interval": _interval(p.lo, p.hi)}
    return {"exact": qstr(p)}


def fiber_json(r: FiberReport) -> dict:
    pre = []
    for p in r.preimages:
        pre.append({"x": _interval(p.x.lo, p.x.hi), "y": _interval(p.y.lo, p.y.hi),
                    "source": p.source})
    return {
        "real_count": r.real_count,
        "complex_count": r.complex_count,
        "preimages": pre,
        "escaping_roots": [_interval(iv.lo, iv.hi) for iv in r.escaping],
        "boundary_contribution": r.boundary_contribution,
        "fbar_zero_multiplicity": r.m0,
    }


def classify_json(c: ClassifyResult) -> dict:
    return {"kind": c.kind.value, "side_parity": c.side_parity,
            "curve_params": [_param(p) for p in c.curve_params],
            "expected_fiber_count": c.expected_fiber_count}


def _fmt_iv(iv: Interval) -> str:
    # exact endpoints go to --json; text shows the box to float precision
    if iv.lo == iv.hi:
        return qstr(iv.lo)
    return f"{float(iv.mid):.12g} (width {float(iv.hi - iv.lo):.1e})"


# -- verification suite ----------------------------------------------------------------

def cross_checks() -> list[IdentityCheck]:
    """Elimination checks beyond the polynomial identities."""
    out = []
    R = curve_resultant()
    alpha, beta = curve_reduction()
    a, b = MultiPoly.gens("a", "b")
    al, be = alpha.to_multi(("a", "b")), beta.to_multi(("a", "b"))
    closed = (al - b) ** 2 - be ** 2 * (a + 1)
    out.append(IdentityCheck("Res_s(s^2+2s-a, Phi2(s)-b) = (alpha-b)^2 - beta^2(1+a)",
                             (R - closed).is_zero()))

    s = MultiPoly.gens("s", "a")[0]
    p1 = s ** 3 - 2 * s + 1
    p2 = s ** 2 * 3 + 5
    sub = resultant(p1.with_variables(("s", "a")), p2.with_variables(("s", "a")), "s")
    syl = sylvester_resultant(p1.with_variables(("s", "a")), p2.with_variables(("s", "a")), "s")
    out.append(IdentityCheck("subresultant PRS = Sylvester determinant", sub == syl,
                             f"{sub} vs {syl}"))

    d = discriminant_at(3, 3142)
    out.append(IdentityCheck("D(3, 3142) != 0", d != 0, f"D = {d}"))
    d0 = [discriminant_at(0, bv) for bv in (-5, 2, Fraction(7, 3))]
    out.append(IdentityCheck("D(0, b) = 0", all(v == 0 for v in d0), ", ".join(map(str, d0))))

    za, zb = zariski_extra_point()
    out.append(IdentityCheck("Zariski extra point has a = -104/75", za == Fraction(-104, 75),
                             f"({za}, {zb})"))
    try:
        exceptional_set()
        out.append(IdentityCheck("fibers over K are empty", True))
    except AssertionError as exc:
        out.append(IdentityCheck("fibers over K are empty", False, str(exc)))
    return out


# -- subcommands --------------------------------------------------------------------

def cmd_verify(args) -> tuple[int, dict, str]:
    checks = verify_identities() + cross_checks()
    ok = all(c.passed for c in checks)
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
             for c in checks]
    lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    result = {"checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                         for c in checks],
              "passed": ok}
    return (0 if ok else 1), result, "\n".join(lines)


def _need_point(args) -> tuple[Fraction, Fraction]:
    if args.point is None:
        raise UsageError("--point a b is required")
    return args.point[0], args.point[1]


def cmd_fiber(args) -> tuple[int, dict, str]:
    a0, b0 = _need_point(args)
    r = real_fiber(a0, b0, args.eps)
    lines = [f"target ({a0}, {b0})",
             f"real preimages: {r.real_count}",
             f"complex preimages: {r.complex_count}"]
    for p in r.preimages:
        lines.append(f"  [{p.source}] x = {_fmt_iv(p.x)}, y = {_fmt_iv(p.y)}")
    if r.escaping:
        lines.append(f"escaping roots: {len(r.escaping)}")
        for iv in r.escaping:
            lines.append(f"  fbar = {_fmt_iv(iv.interval())}")
    return 0, fiber_json(r), "\n".join(lines)


def cmd_classify(args) -> tuple[int, dict, str]:
    a0, b0 = _need_point(args)
    c = classify(a0, b0)
    text = f"({a0}, {b0}): {c.kind.value}"
    if c.side_parity:
        text += f", {c.side_parity} side"
    text += f", expected real fiber {c.expected_fiber_count}"
    return 0, classify_json(c), text


def cmd_curve(args) -> tuple[int, dict, str]:
    if args.samples < 2 or not args.s_from < args.s_to:
        raise UsageError("curve needs --from < --to and --samples >= 2")
    samples = curve_samples(args.s_from, args.s_to, args.samples)
    if args.out:
        write_curve_csv(args.out, samples)
        text = f"wrote {len(samples)} samples to {args.out}"
    else:
        text = "\n".join(["s,a,b"] + [",".join(qstr(v) for v in row) for row in samples])
    result = {"samples": len(samples), "out": args.out,
              "first": [qstr(v) for v in samples[0]], "last": [qstr(v) for v in samples[-1]]}
    return 0, result, text


def cmd_plot(args) -> tuple[int, dict, str]:
    if not args.out:
        raise UsageError("plot needs --out path")
    x0, y0, x1, y1 = args.window or (-10, -10, 10, 10)
    try:
        w = Window(x0, y0, x1, y1, args.resolution)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = figure(args.out, w)
    text = (f"wrote {args.out}: {summary['preimage_components']} F^-1(C) components, "
            f"{summary['A1_components']} A1 pieces, {summary['A2_components']} A2 pieces")
    return 0, dict(summary, out=args.out), text


def cmd_sturm(args) -> tuple[int, dict, str]:
    if not args.poly:
        raise UsageError("sturm needs --poly")
    names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", args.poly)))
    if len(names) > 1:
        raise UsageError(f"sturm needs a univariate polynomial, got variables {names}")
    var = names[0] if names else "x"
    try:
        mp = parse_poly(args.poly, [var])
    except PolySyntaxError as exc:
        raise UsageError(str(exc)) from None
    p = UniPoly.from_multi(mp, var)
    if not p:
        raise UsageError("the zero polynomial has no isolated roots")
    roots = [refine(iv, args.eps) for iv in isolate_real_roots(p)]
    n = count_real_roots(p)
    lines = [f"{p}: {n} distinct real roots"]
    for iv in roots:
        lines.append(f"  {_fmt_iv(iv.interval())}")
    result = {"polynomial": str(p), "count": n,
              "roots": [_interval(iv.lo, iv.hi) for iv in roots]}
    return 0, result, "\n".join(lines)


COMMANDS = {"verify": cmd_verify, "fiber": cmd_fiber, "classify": cmd_classify,
            "curve": cmd_curve, "plot": cmd_plot, "sturm": cmd_sturm}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pinchuk", description="Exact checks of Pinchuk's map F = (p, q).")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--point", nargs=2, type=rational, metavar=("A", "B"))
    ap.add_argument("--eps", type=rational, default=DEFAULT_EPS)
    ap.add_argument("--window", nargs=4, type=rational, metavar=("X0", "Y0", "X1", "Y1"))
    ap.add_argument("--resolution", type=int, default=512)
    ap.add_argument("--from", dest="s_from", type=rational, default=Fraction(-4))
    ap.add_argument("--to", dest="s_to", type=rational, default=Fraction(2))
    ap.add_argument("--samples", type=int, default=121)
    ap.add_argument("--out")
    ap.add_argument("--poly")
    ap.add_argument("--json", action="store_true")
    return ap


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.eps <= 0:
            raise UsageError("--eps must be positive")
        started = time.perf_counter()
        code, result, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"pinchuk: error: {exc}", file=stderr)
        return 2
    if args.json:
        report = {"schema": SCHEMA, "command": args.command,
                  "inputs": _inputs(args), "result": result,
                  "seconds": round(time.perf_counter() - started, 3)}
        print(json.dumps(report, indent=2), file=stdout)
    else:
        print(text, file=stdout)
    return code


def _inputs(args) -> dict:
    out = {}
    if args.point is not None:
        out["point"] = [qstr(v) for v in args.point]
    if args.command in ("fiber", "sturm"):
        out["eps"] = qstr(args.eps)
    if args.command == "plot":
        out["window"] = [qstr(v) for v in (args.window or (-10, -10, 10, 10))]
        out["resolution"] = args.resolution
    if args.command == "curve":
        out.update({"from": qstr(args.s_from), "to": qstr(args.s_to), "samples": args.samples})
    if args.poly is not None:
        out["poly"] = args.poly
    return out


def main() -> None:
    sys.exit(run())
