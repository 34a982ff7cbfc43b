"""Rectangular-grid sampling of expressions, contour extraction and CSV export."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .wirtinger import Expression

__all__ = [
    "Grid",
    "ScalarField",
    "Polyline",
    "ContourSet",
    "sample",
    "marching_squares",
    "pick_levels",
    "export_field_csv",
    "export_contours_csv",
    "parse_field_csv",
]

_ORIGIN_RADIUS = 1e-9  # nodes this close to z=0 are masked for singular expressions


@dataclass(frozen=True)
class Grid:
    """Node-centered rectangular lattice; nx, ny count nodes (odd counts hit axes)."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int = 201
    ny: int = 201

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid ranges must be nonempty")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("node counts must be at least 2")

    @property
    def hx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def hy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Meshgrid arrays X, Y with shape (nx, ny), indexing 'ij'."""
        return np.meshgrid(self.xs(), self.ys(), indexing="ij")

    def refined(self) -> "Grid":
        """Same domain with halved spacing (node sets nest)."""
        return Grid(self.x_min, self.x_max, self.y_min, self.y_max,
                    2 * self.nx - 1, 2 * self.ny - 1)


@dataclass
class ScalarField:
    """Sampled real values plus a per-node validity mask (True = valid)."""

    grid: Grid
    values: np.ndarray
    mask: np.ndarray

    def valid_values(self) -> np.ndarray:
        return self.values[self.mask]


def sample(e: Expression, grid: Grid) -> ScalarField:
    """Sample a real-valued expression on the grid.

    Nodes within 1e-9 of the origin are masked when the expression has poles
    or log factors; for expressions whose value jumps across the negative real
    axis, the node row nearest that ray is masked one node wide.
    """
    if not e.is_real():
        raise ValueError("only real-valued expressions can be sampled")
    X, Y = grid.nodes()
    raw = e.eval_grid(X, Y)
    mask = np.ones(raw.shape, dtype=bool)
    if e.has_singular_terms():
        mask &= np.hypot(X, Y) > _ORIGIN_RADIUS
    if e.has_branch_jump():
        on_axis_row = np.abs(Y) < 0.5 * grid.hy * (1.0 - 1e-9)
        mask &= ~((X < 0) & on_axis_row)
    mask &= np.isfinite(raw.real) & np.isfinite(raw.imag)
    bad = np.abs(raw.imag[mask])
    if bad.size and bad.max() >= 1e-10:
        raise ValueError(f"sampled expression is not numerically real "
                         f"(max |Im| = {bad.max():.3e})")
    values = raw.real.copy()
    values[~mask] = np.nan
    return ScalarField(grid, values, mask)


@dataclass
class Polyline:
    level: float
    points: list
    closed: bool


@dataclass
class ContourSet:
    levels: tuple
    polylines: list  # of Polyline, deterministic order


def _edge_crossing(kind, ix, iy, xs, ys, v0, v1, level):
    t = (level - v0) / (v1 - v0)
    if kind == "h":
        return (xs[ix] + t * (xs[ix + 1] - xs[ix]), ys[iy])
    return (xs[ix], ys[iy] + t * (ys[iy + 1] - ys[iy]))


def marching_squares(field: ScalarField, levels) -> ContourSet:
    """Standard 16-case cell contouring with linear edge interpolation.

    Saddle cells are disambiguated by the cell-center average; cells touching a
    masked node are skipped; segments sharing an edge crossing are stitched into
    polylines.  Output order is deterministic.
    """
    xs, ys = field.grid.xs(), field.grid.ys()
    v = field.values
    m = field.mask
    polylines: list[Polyline] = []
    for level in levels:
        segments = []  # pairs of edge keys
        coords = {}    # edge key -> (x, y)
        for ix in range(field.grid.nx - 1):
            for iy in range(field.grid.ny - 1):
                if not (m[ix, iy] and m[ix + 1, iy] and m[ix, iy + 1] and m[ix + 1, iy + 1]):
                    continue
                c00, c10 = v[ix, iy], v[ix + 1, iy]
                c01, c11 = v[ix, iy + 1], v[ix + 1, iy + 1]
                case = ((c00 > level) | (c10 > level) << 1
                        | (c11 > level) << 2 | (c01 > level) << 3)
                if case in (0, 15):
                    continue
                # edge keys around this cell
                bottom = ("h", ix, iy)
                top = ("h", ix, iy + 1)
                left = ("v", ix, iy)
                right = ("v", ix + 1, iy)

                def cross(key):
                    if key not in coords:
                        kind, jx, jy = key
                        if kind == "h":
                            coords[key] = _edge_crossing("h", jx, jy, xs, ys,
                                                         v[jx, jy], v[jx + 1, jy], level)
                        else:
                            coords[key] = _edge_crossing("v", jx, jy, xs, ys,
                                                         v[jx, jy], v[jx, jy + 1], level)
                    return key

                pairs = {
                    1: [(left, bottom)], 2: [(bottom, right)], 3: [(left, right)],
                    4: [(right, top)], 6: [(bottom, top)], 7: [(left, top)],
                    8: [(top, left)], 9: [(bottom, top)], 11: [(bottom, left)],
                    12: [(right, left)], 13: [(right, bottom)], 14: [(top, bottom)],
                }
                if case in (5, 10):
                    center = 0.25 * (c00 + c10 + c01 + c11)
                    if (center > level) == (case == 5):
                        segs = [(left, bottom), (right, top)] if case == 5 \
                            else [(bottom, right), (top, left)]
                    else:
                        segs = [(left, top), (right, bottom)] if case == 5 \
                            else [(bottom, left), (top, right)]
                else:
                    segs = pairs[case]
                for a, b in segs:
                    segments.append((cross(a), cross(b)))

        polylines.extend(_stitch(segments, coords, level))
    return ContourSet(tuple(float(l) for l in levels), polylines)


def _stitch(segments, coords, level) -> list[Polyline]:
    """Join segments sharing edge crossings into chains; open chains first."""
    adjacency: dict = {}
    for si, (a, b) in enumerate(segments):
        adjacency.setdefault(a, []).append((si, b))
        adjacency.setdefault(b, []).append((si, a))
    used = [False] * len(segments)
    out = []

    def walk(start):
        chain = [start]
        node = start
        while True:
            step = next(((si, other) for si, other in adjacency[node] if not used[si]), None)
            if step is None:
                break
            si, other = step
            used[si] = True
            chain.append(other)
            node = other
        return chain

    open_ends = sorted(k for k, nbrs in adjacency.items() if len(nbrs) == 1)
    for start in open_ends:
        if all(used[si] for si, _ in adjacency[start]):
            continue
        chain = walk(start)
        out.append(Polyline(float(level), [coords[k] for k in chain], closed=False))
    for start in sorted(adjacency):
        if all(used[si] for si, _ in adjacency[start]):
            continue
        chain = walk(start)
        closed = chain[0] == chain[-1] and len(chain) > 2
        out.append(Polyline(float(level), [coords[k] for k in chain], closed=closed))
    return out


def pick_levels(field: ScalarField, count: int) -> list[float]:
    """`count` evenly spaced levels strictly inside the valid value range."""
    if count < 1:
        raise ValueError("count must be at least 1")
    vals = field.valid_values()
    if vals.size == 0:
        raise ValueError("field is entirely masked")
    lo, hi = float(vals.min()), float(vals.max())
    if hi <= lo:
        return []
    return [lo + (hi - lo) * k / (count + 1) for k in range(1, count + 1)]


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def export_field_csv(field: ScalarField, destination) -> None:
    """Write `x,y,value` rows (deterministic node order; masked nodes as nan)."""
    xs, ys = field.grid.xs(), field.grid.ys()
    with open(destination, "w", encoding="utf-8") as fh:
        fh.write("x,y,value\n")
        for iy in range(field.grid.ny):
            for ix in range(field.grid.nx):
                val = field.values[ix, iy] if field.mask[ix, iy] else math.nan
                fh.write(f"{_fmt(xs[ix])},{_fmt(ys[iy])},{_fmt(val)}\n")


def parse_field_csv(source) -> list[tuple[float, float, float]]:
    with open(source, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "x,y,value":
            raise ValueError(f"unexpected field csv header: {header!r}")
        return [tuple(float(tok) for tok in line.strip().split(","))
                for line in fh if line.strip()]


def export_contours_csv(contours: ContourSet, destination) -> None:
    """Write `level,poly_id,x,y` rows in deterministic polyline order."""
    with open(destination, "w", encoding="utf-8") as fh:
        fh.write("level,poly_id,x,y\n")
        for pid, poly in enumerate(contours.polylines):
            for (x, y) in poly.points:
                fh.write(f"{_fmt(poly.level)},{pid},{_fmt(x)},{_fmt(y)}\n")
