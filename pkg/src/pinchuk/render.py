"""Pictures of the map: the curve C, the curves F^{-1}(C), A1, A2, and the regions.

Every sign that decides a label or a region colour is computed in exact
integer arithmetic; floats only appear in the coordinates that get drawn.

F^{-1}(C) is traced by pulling back parameter samples of C: each Phi(s) with
s outside {-1, 0} has exactly one real preimage, found from the genuine
factor of W.  The three parameter intervals give the three components.  The
grid contour of the pulled-back side parity R(F(x, y)), where
R(a, b) = (alpha(a) - b)^2 - beta(a)^2 (1 + a), is kept for the region
colouring; it cannot separate the components, which run closer together
than any practical grid spacing.  A1 and A2 are the zero sets of the two
factors of f - h(h+1) = (x t + 1)(t^2 + y).
"""

from __future__ import annotations

import csv
import functools
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import formulas
from .fibers import Kind, _genuine_preimage, classify, curve, curve_reduction, phi, split_W
from .polynomial import MultiPoly, integer_grid_values
from .roots import isolate_real_roots
from .system import XY, build_system


@dataclass(frozen=True)
class Window:
    x_min: Fraction
    y_min: Fraction
    x_max: Fraction
    y_max: Fraction
    resolution: int = 512

    def __post_init__(self):
        for name in ("x_min", "y_min", "x_max", "y_max"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("window needs x_min < x_max and y_min < y_max")
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")

    @property
    def dx(self) -> Fraction:
        return (self.x_max - self.x_min) / (self.resolution - 1)

    @property
    def dy(self) -> Fraction:
        return (self.y_max - self.y_min) / (self.resolution - 1)

    def xs(self) -> list[Fraction]:
        return [self.x_min + i * self.dx for i in range(self.resolution)]

    def ys(self) -> list[Fraction]:
        return [self.y_min + j * self.dy for j in range(self.resolution)]

    def integer_nodes(self) -> tuple[list[int], list[int], int]:
        """Node coordinates as integers over one common denominator."""
        den = math.lcm(self.x_min.denominator, self.dx.denominator,
                       self.y_min.denominator, self.dy.denominator)
        xs = [int(x * den) for x in self.xs()]
        ys = [int(y * den) for y in self.ys()]
        return xs, ys, den


@dataclass
class Polyline:
    label: str
    points: list[tuple[float, float]]
    component: int = 0

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a polyline needs at least two points")
        if not all(math.isfinite(x) and math.isfinite(y) for x, y in self.points):
            raise ValueError("non-finite coordinate in polyline")


# -- curve C ------------------------------------------------------------------------------

def curve_samples(s0, s1, n: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """n exact samples (s, a, b) of Phi at uniform parameter steps."""
    s0, s1 = Fraction(s0), Fraction(s1)
    if not s0 < s1 or n < 2:
        raise ValueError("need s0 < s1 and n >= 2")
    step = (s1 - s0) / (n - 1)
    out = []
    for i in range(n):
        s = s0 + i * step
        a, b = phi(s)
        out.append((s, a, b))
    return out


def sample_curve(s0, s1, n: int) -> Polyline:
    return Polyline("C", [(float(a), float(b)) for _, a, b in curve_samples(s0, s1, n)])


def write_curve_csv(path, samples: Iterable[tuple[Fraction, Fraction, Fraction]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["s", "a", "b"])
        for row in samples:
            w.writerow([_fmt(v) for v in row])


def write_grid_csv(path, window: Window, labels: Sequence[Sequence[str]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "label"])
        for y, row in zip(window.ys(), labels):
            for x, lab in zip(window.xs(), row):
                w.writerow([_fmt(x), _fmt(y), lab])


def _fmt(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# -- exact sign fields ----------------------------------------------------------------------

def _int_coeffs(poly_coeffs: Sequence) -> tuple[list[int], int]:
    den = math.lcm(*(Fraction(c).denominator for c in poly_coeffs)) if poly_coeffs else 1
    return [int(Fraction(c) * den) for c in poly_coeffs], den


def parity_field(window: Window) -> list[list[int]]:
    """Integers whose signs are the signs of R(F(x, y)) at the window nodes.

    Negative means F(x, y) is on the odd side of C, zero means on C (or at
    the isolated extra point of its Zariski closure).
    """
    s = build_system()
    xs, ys, den = window.integer_nodes()
    P, Sp = integer_grid_values(s.p, xs, ys, den)
    Qv, Sq = integer_grid_values(s.q, xs, ys, den)
    alpha, beta = curve_reduction()
    al, la = _int_coeffs(alpha.coeffs)
    be, lb = _int_coeffs(beta.coeffs)
    L = math.lcm(la, lb)
    al = [c * (L // la) for c in al]
    be = [c * (L // lb) for c in be]
    da = max(len(al), len(be)) - 1
    spow = [Sp ** k for k in range(da + 1)]
    al_h = [c * spow[da - k] for k, c in enumerate(al)]
    be_h = [c * spow[da - k] for k, c in enumerate(be)]
    LSd = L * spow[da]
    out = []
    for prow, qrow in zip(P, Qv):
        row = []
        for a, b in zip(prow, qrow):
            # with S = Sp: L S^d alpha(a/S) = sum al_k a^k S^(d-k)
            x = 0
            for c in reversed(al_h):
                x = x * a + c
            z = 0
            for c in reversed(be_h):
                z = z * a + c
            # R * (L S^d Sq)^2 * S = S (Sq X - L S^d b Sq)^2 / ... kept in integers:
            diff = Sq * x - LSd * b
            zz = Sq * z
            row.append(Sp * diff * diff - zz * zz * (Sp + a))
        out.append(row)
    return out


def a_factor_fields(window: Window) -> tuple[list[list[int]], list[list[int]]]:
    """Exact values (up to a positive scale) of x t + 1 and t^2 + y at the nodes."""
    x, y = MultiPoly.gens(*XY)
    t = formulas.t_of(x, y)
    xs, ys, den = window.integer_nodes()
    g1, _ = integer_grid_values(x * t + 1, xs, ys, den)
    g2, _ = integer_grid_values(t * t + y, xs, ys, den)
    return g1, g2


# -- marching squares -----------------------------------------------------------------------

def _crossing(v0, v1) -> float:
    # fraction of the way from node 0 to node 1 where the linear interpolant vanishes
    if v0 == 0:
        return 0.0
    if v1 == 0:
        return 1.0
    return float(Fraction(v0, v0 - v1))


def marching_squares(values: Sequence[Sequence[int]]) -> list[list[tuple[float, float]]]:
    """Zero-level contour of an exact field as connected polylines in index space.

    Points are (i, j) = (column, row) coordinates; polylines are returned in
    the order their first cell is visited (row-major).  Saddle cells are
    resolved with the sign of the sum of the four corners.
    """
    nrow, ncol = len(values), len(values[0])
    pos = [[1 if v > 0 else 0 for v in row] for row in values]

    def edge_point(key):
        (r0, c0), (r1, c1) = key
        t = _crossing(values[r0][c0], values[r1][c1])
        return (c0 + (c1 - c0) * t, r0 + (r1 - r0) * t)

    adjacency: dict = {}
    first_seen: dict = {}
    order = 0

    def link(e1, e2):
        nonlocal order
        for e in (e1, e2):
            if e not in first_seen:
                first_seen[e] = order
                order += 1
        adjacency.setdefault(e1, []).append(e2)
        adjacency.setdefault(e2, []).append(e1)

    for r in range(nrow - 1):
        for c in range(ncol - 1):
            corners = ((r, c), (r, c + 1), (r + 1, c + 1), (r + 1, c))
            bits = [pos[rr][cc] for rr, cc in corners]
            if all(bits) or not any(bits):
                continue
            edges = []
            for k in range(4):
                a, b = corners[k], corners[(k + 1) % 4]
                if bits[k] != bits[(k + 1) % 4]:
                    edges.append(tuple(sorted((a, b))))
            if len(edges) == 2:
                link(edges[0], edges[1])
            else:
                centre = sum(values[rr][cc] for rr, cc in corners)
                # edges are in corner order: (0-1), (1-2), (2-3), (3-0)
                if (centre > 0) == bool(bits[0]):
                    link(edges[0], edges[1])
                    link(edges[2], edges[3])
                else:
                    link(edges[0], edges[3])
                    link(edges[1], edges[2])

    seen = set()
    polylines = []
    for start in sorted(adjacency, key=first_seen.__getitem__):
        if start in seen:
            continue
        # walk to one end of the chain (or around a loop), then trace forward
        comp = _collect(start, adjacency)
        ends = [e for e in comp if len(adjacency[e]) == 1]
        begin = min(ends, key=first_seen.__getitem__) if ends else start
        path = [begin]
        seen.add(begin)
        prev, cur = None, begin
        while True:
            nxt = [e for e in adjacency[cur] if e != prev and e not in seen]
            if not nxt:
                if not ends and len(path) > 2 and begin in adjacency[cur]:
                    path.append(begin)
                break
            prev, cur = cur, nxt[0]
            seen.add(cur)
            path.append(cur)
        seen.update(comp)
        polylines.append([edge_point(e) for e in path])
    return polylines


def _collect(start, adjacency) -> set:
    stack, comp = [start], {start}
    while stack:
        e = stack.pop()
        for n in adjacency[e]:
            if n not in comp:
                comp.add(n)
                stack.append(n)
    return comp


def _to_plane(window: Window, pts) -> list[tuple[float, float]]:
    x0, y0 = float(window.x_min), float(window.y_min)
    dx, dy = float(window.dx), float(window.dy)
    return [(x0 + i * dx, y0 + j * dy) for i, j in pts]


# -- the preimage of C ------------------------------------------------------------------------

PREIMAGE = "F-1(C)"


# parameter intervals of C minus K, as maps from tau in (0, 1)
BRANCHES = (
    ("s<-1", lambda tau: -1 - tau / (1 - tau)),
    ("-1<s<0", lambda tau: tau - 1),
    ("s>0", lambda tau: tau / (1 - tau)),
)
_MAX_DEPTH = 40


@functools.lru_cache(maxsize=None)
def preimage_point(s: Fraction, eps: Fraction = Fraction(1, 2 ** 24)) -> tuple[float, float]:
    """The unique real preimage of Phi(s), s not in {-1, 0}, to within ``eps``."""
    s = Fraction(s)
    if s in (0, -1):
        raise ValueError("Phi(s) for s in {-1, 0} has no real preimage")
    a, b = phi(s)
    roots = isolate_real_roots(split_W(a, b).genuine)
    if len(roots) != 1:
        raise ArithmeticError(f"expected one preimage of Phi({s}), found {len(roots)}")
    pre = _genuine_preimage(roots[0], a, Fraction(eps))
    return float(pre.x.mid), float(pre.y.mid)


def _initial_taus() -> list[Fraction]:
    taus = {Fraction(k, 64) for k in range(1, 64)}
    for j in range(7, 31):
        taus.add(Fraction(1, 2 ** j))
        taus.add(1 - Fraction(1, 2 ** j))
    return sorted(taus)


def trace_branch(w: Window, to_s) -> list[list[tuple[float, float]]]:
    """Pieces of one branch of F^{-1}(C) inside the window, in parameter order.

    Samples are bisected in the parameter until consecutive points that
    could touch the window are at most one grid cell apart.
    """
    box = (float(w.x_min), float(w.y_min), float(w.x_max), float(w.y_max))
    cell = float(max(w.dx, w.dy))
    eps = Fraction(1, 2 ** 24)
    while eps > min(w.dx, w.dy) / 64:
        eps /= 2 ** 8
    cache: dict[Fraction, tuple[float, float]] = {}

    def point(tau: Fraction) -> tuple[float, float]:
        if tau not in cache:
            cache[tau] = preimage_point(to_s(tau), eps)
        return cache[tau]

    def inside(p) -> bool:
        return box[0] <= p[0] <= box[2] and box[1] <= p[1] <= box[3]

    def near(p, q) -> bool:
        return not (max(p[0], q[0]) < box[0] or min(p[0], q[0]) > box[2]
                    or max(p[1], q[1]) < box[1] or min(p[1], q[1]) > box[3])

    taus = _initial_taus()
    if inside(point(taus[0])) or inside(point(taus[-1])):
        raise ArithmeticError("window too large: a branch end did not leave it")
    samples: list[Fraction] = []
    stack = [(taus[i], taus[i + 1], 0) for i in range(len(taus) - 1)][::-1]
    while stack:
        lo, hi, depth = stack.pop()
        p, q = point(lo), point(hi)
        if depth < _MAX_DEPTH and near(p, q) and math.dist(p, q) > cell:
            mid = (lo + hi) / 2
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
        else:
            samples.append(lo)
    samples.append(taus[-1])

    pieces: list[list[tuple[float, float]]] = []
    current: list[tuple[float, float]] = []
    prev = None
    for tau in samples:
        p = point(tau)
        if inside(p):
            if not current and prev is not None:
                current.append(_clip(prev, p, box))
            current.append(p)
        elif current:
            current.append(_clip(p, current[-1], box))
            pieces.append(current)
            current = []
        prev = p
    if current:
        pieces.append(current)
    return [pc for pc in pieces if len(pc) >= 2]


def _clip(outside, inside, box) -> tuple[float, float]:
    """Point where the segment from ``inside`` to ``outside`` meets the box edge."""
    (x0, y0), (x1, y1) = inside, outside
    t = 1.0
    for lo, hi, a, b in ((box[0], box[2], x0, x1), (box[1], box[3], y0, y1)):
        if b < lo:
            t = min(t, (lo - a) / (b - a))
        elif b > hi:
            t = min(t, (hi - a) / (b - a))
    return x0 + t * (x1 - x0), y0 + t * (y1 - y0)


def preimage_curve(w: Window) -> list[Polyline]:
    """F^{-1}(C) components (label ``F-1(C)``) plus the curves A1 and A2."""
    out = []
    comp = 0
    for _, to_s in BRANCHES:
        for pts in trace_branch(w, to_s):
            out.append(Polyline(PREIMAGE, pts, comp))
            comp += 1
    g1, g2 = a_factor_fields(w)
    for label, field_ in (("A1", g1), ("A2", g2)):
        k = 0
        for pts in marching_squares(field_):
            if len(pts) >= 2:
                out.append(Polyline(label, _to_plane(w, pts), k))
                k += 1
    return out


def count_components(curves: Iterable[Polyline], label: str = PREIMAGE) -> int:
    return sum(1 for c in curves if c.label == label)


def domain_parity_grid(w: Window) -> list[list[str]]:
    """Side label of F(x, y) at every node: ``even``, ``odd`` or ``on``."""
    return [["odd" if v < 0 else ("on" if v == 0 else "even") for v in row]
            for row in parity_field(w)]


def classify_grid(w: Window) -> list[list[str]]:
    """Exact classification of every target-plane node, e.g. ``OFF_CURVE:odd``.

    The sign of R decides the side wherever it is nonzero; nodes with R = 0
    go through :func:`classify`.
    """
    alpha, beta = curve_reduction()
    rows = []
    for y in w.ys():
        row = []
        for x in w.xs():
            r = (alpha(x) - y) ** 2 - beta(x) ** 2 * (1 + x)
            if r:
                row.append("OFF_CURVE:odd" if r < 0 else "OFF_CURVE:even")
                continue
            res = classify(x, y)
            row.append(f"{res.kind.value}:{res.side_parity}" if res.kind is Kind.OFF_CURVE
                       else res.kind.value)
        rows.append(row)
    return rows


# -- SVG --------------------------------------------------------------------------------------

STYLE = {
    "C": ("#000000", 1.6),
    PREIMAGE: ("#c0392b", 1.4),
    "A1": ("#2471a3", 1.2),
    "A2": ("#1e8449", 1.2),
}
REGION_FILL = {"even": "#f2f2f2", "odd": "#fde9c9", "on": "#999999"}


def _num(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".") if math.isfinite(v) else "0"


@dataclass
class Panel:
    window: Window
    curves: list[Polyline]
    grid: list[list[str]] | None = None
    marks: list[tuple[float, float]] = field(default_factory=list)
    title: str = ""


def _panel_group(parent, panel: Panel, ox: float, size: float) -> None:
    w = panel.window
    x0, x1 = float(w.x_min), float(w.x_max)
    y0, y1 = float(w.y_min), float(w.y_max)

    def project(x: float, y: float) -> tuple[float, float]:
        px = ox + (x - x0) / (x1 - x0) * size
        py = size - (y - y0) / (y1 - y0) * size
        return px, py

    g = ET.SubElement(parent, "g", {"id": panel.title or "panel"})
    if panel.title:
        t = ET.SubElement(g, "text", {"x": _num(ox + 4), "y": "14", "font-size": "12"})
        t.text = panel.title
    clip_id = f"clip-{panel.title or 'panel'}"
    clip = ET.SubElement(g, "clipPath", {"id": clip_id})
    ET.SubElement(clip, "rect", {"x": _num(ox), "y": "0", "width": _num(size),
                                 "height": _num(size)})
    if panel.grid:
        layer = ET.SubElement(g, "g", {"id": f"{panel.title}-regions", "stroke": "none"})
        nrow, ncol = len(panel.grid), len(panel.grid[0])
        cw, ch = size / ncol, size / nrow
        for r, row in enumerate(panel.grid):
            for c, lab in enumerate(row):
                key = lab.split(":")[-1] if lab.startswith("OFF_CURVE") else (
                    lab if lab in REGION_FILL else "on")
                ET.SubElement(layer, "rect", {
                    "x": _num(ox + c * cw), "y": _num(size - (r + 1) * ch),
                    "width": _num(cw), "height": _num(ch), "fill": REGION_FILL[key]})
    by_label: dict[str, list[Polyline]] = {}
    for pl in panel.curves:
        by_label.setdefault(pl.label, []).append(pl)
    for label in sorted(by_label):
        colour, width = STYLE.get(label, ("#555555", 1.0))
        layer = ET.SubElement(g, "g", {"id": f"{panel.title}-{label}", "fill": "none",
                                       "stroke": colour, "stroke-width": _num(width),
                                       "clip-path": f"url(#{clip_id})"})
        for pl in by_label[label]:
            pts = [project(x, y) for x, y in pl.points]
            d = "M " + " L ".join(f"{_num(px)} {_num(py)}" for px, py in pts)
            ET.SubElement(layer, "path", {"d": d, "data-component": str(pl.component)})
    if panel.marks:
        layer = ET.SubElement(g, "g", {"id": f"{panel.title}-K", "fill": "#000000"})
        for x, y in panel.marks:
            px, py = project(x, y)
            ET.SubElement(layer, "circle", {"cx": _num(px), "cy": _num(py), "r": "3"})
    ET.SubElement(g, "rect", {"x": _num(ox), "y": "0", "width": _num(size),
                              "height": _num(size), "fill": "none", "stroke": "#000000"})


def render_svg(panels: Sequence[Panel], size: float = 400.0) -> bytes:
    gap = 20.0
    width = len(panels) * size + (len(panels) - 1) * gap
    root = ET.Element("svg", {"xmlns": "http://www.w3.org/2000/svg", "version": "1.1",
                              "width": _num(width), "height": _num(size),
                              "viewBox": f"0 0 {_num(width)} {_num(size)}"})
    for k, panel in enumerate(panels):
        _panel_group(root, panel, k * (size + gap), size)
    ET.indent(root)
    return b'<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="utf-8")


def emit_svg(curves: list[Polyline], grid: list[list[str]] | None, path,
             window: Window | None = None, marks: Sequence[tuple[float, float]] = ()) -> None:
    """Write one panel: a layer per curve label, optional region grid and marked points."""
    if window is None:
        xs = [x for c in curves for x, _ in c.points] or [0.0, 1.0]
        ys = [y for c in curves for _, y in c.points] or [0.0, 1.0]
        window = Window(Fraction(min(xs)), Fraction(min(ys)),
                        Fraction(max(xs)) + (1 if max(xs) == min(xs) else 0),
                        Fraction(max(ys)) + (1 if max(ys) == min(ys) else 0), 2)
    data = render_svg([Panel(window, curves, grid, list(marks))])
    with open(path, "wb") as fh:
        fh.write(data)


DEFAULT_DOMAIN = Window(-10, -10, 10, 10, 512)


def default_target_window(resolution: int = 48) -> Window:
    """a in [-2, 10]; b spanning the arc Phi([-3, 1]) through (3, 8406) and (3, 3142)."""
    bs = [b for _, _, b in curve_samples(-3, 1, 81)]
    lo, hi = min(bs), max(bs)
    margin = (hi - lo) / 10
    return Window(-2, lo - margin, 10, hi + margin, resolution)


def figure(path, domain: Window = DEFAULT_DOMAIN, target: Window | None = None,
           region_resolution: int = 64) -> dict:
    """Write the domain/target plot pair and return a summary of what was drawn."""
    target = target or default_target_window()
    domain_curves = preimage_curve(domain)
    region_window = Window(domain.x_min, domain.y_min, domain.x_max, domain.y_max,
                           region_resolution)
    domain_panel = Panel(domain, domain_curves, domain_parity_grid(region_window),
                         title="domain")
    s_half = Fraction(7, 2)
    c_line = sample_curve(-1 - s_half, -1 + s_half, 801)
    k_marks = [(float(a), float(b)) for a, b in curve().K]
    target_panel = Panel(target, [c_line], classify_grid(target), k_marks,
                         title="target")
    data = render_svg([domain_panel, target_panel])
    with open(path, "wb") as fh:
        fh.write(data)
    return {"preimage_components": count_components(domain_curves),
            "A1_components": count_components(domain_curves, "A1"),
            "A2_components": count_components(domain_curves, "A2"),
            "paths": len(domain_curves) + 1}
