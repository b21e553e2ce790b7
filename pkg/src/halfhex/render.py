"""Drawing configurations as walker paths or as lozenge tilings.

Geometry lives on the skewed lattice with vertices (t, x).  A walker at
time t and position x sits on the vertical unit edge {t} x [x, x+1].  The
unit triangles are::

    lower(t, x) = (t, x), (t+1, x), (t+1, x+1)
    upper(t, x) = (t, x), (t, x+1), (t+1, x+1)

and the three lozenge types are

* ``stay``  at (t, x): lower(t, x) + upper(t, x)      walker stays at x
* ``jump``  at (t, x): upper(t, x) + lower(t, x+1)    walker moves x -> x+1
* ``empty`` at (t, x): lower(t-1, x) + upper(t, x)    site (t, x) of the region has no walker

The 60-degree picture is the affine image (t, x) -> (t*sqrt(3)/2, x - t/2),
applied only when writing SVG.
"""
from __future__ import annotations

import math
from typing import Dict, List, NamedTuple, Tuple

from .ensemble import Configuration, check_configuration
from .errors import InvalidInput

Point = Tuple[int, int]
Triangle = Tuple[str, int, int]

MODES = ("paths", "lozenges")
FORMATS = ("ascii", "svg")

_FILL = {"stay": "#f4d35e", "jump": "#ee964b", "empty": "#0d3b66"}
_ASCII = {"stay": "-", "jump": "/", "empty": "|"}


class Lozenge(NamedTuple):
    kind: str
    t: int
    x: int

    @property
    def triangles(self) -> Tuple[Triangle, Triangle]:
        t, x = self.t, self.x
        if self.kind == "stay":
            return ("lower", t, x), ("upper", t, x)
        if self.kind == "jump":
            return ("upper", t, x), ("lower", t, x + 1)
        return ("lower", t - 1, x), ("upper", t, x)

    @property
    def vertices(self) -> Tuple[Point, Point, Point, Point]:
        t, x = self.t, self.x
        if self.kind == "stay":
            return (t, x), (t + 1, x), (t + 1, x + 1), (t, x + 1)
        if self.kind == "jump":
            return (t, x), (t + 1, x + 1), (t + 1, x + 2), (t, x + 1)
        return (t - 1, x), (t, x), (t + 1, x + 1), (t, x + 1)


def lozenges(config: Configuration) -> List[Lozenge]:
    """The tiling that corresponds to ``config``, in a fixed deterministic order."""
    check_configuration(config)
    spec = config.infer_spec()
    tiles: List[Lozenge] = []
    for t in range(spec.N):
        for a, b in zip(config.positions[t], config.positions[t + 1]):
            tiles.append(Lozenge("stay" if a == b else "jump", t, a))
    for t in spec.interior_times:
        occupied = set(config.positions[t])
        tiles.extend(Lozenge("empty", t, x) for x in spec.reachable(t) if x not in occupied)
    tiles.sort(key=lambda z: (z.t, z.x, z.kind))
    return tiles


def _project(p: Point) -> Tuple[float, float]:
    t, x = p
    return t * math.sqrt(3) / 2, x - t / 2


def _svg(shapes: List[str], points: List[Tuple[float, float]], scale: float) -> str:
    xs = [p[0] for p in points] or [0.0]
    ys = [p[1] for p in points] or [0.0]
    pad = 0.5
    min_x, max_x = min(xs) - pad, max(xs) + pad
    min_y, max_y = min(ys) - pad, max(ys) + pad
    width, height = (max_x - min_x) * scale, (max_y - min_y) * scale
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="{min_x:.4f} {-max_y:.4f} {max_x - min_x:.4f} {max_y - min_y:.4f}">'
    )
    return "\n".join([head, *shapes, "</svg>"]) + "\n"


def _fmt(p: Tuple[float, float]) -> str:
    # SVG's y axis points down
    return f"{p[0]:.4f},{-p[1]:.4f}"


def render_lozenges_svg(config: Configuration, scale: float = 20.0) -> str:
    shapes, pts = [], []
    for tile in lozenges(config):
        proj = [_project(v) for v in tile.vertices]
        pts.extend(proj)
        shapes.append(
            f'<polygon class="{tile.kind}" points="{" ".join(_fmt(p) for p in proj)}" '
            f'fill="{_FILL[tile.kind]}" stroke="black" stroke-width="0.03"/>'
        )
    return _svg(shapes, pts, scale)


def render_paths_svg(config: Configuration, scale: float = 20.0) -> str:
    check_configuration(config)
    shapes, pts = [], []
    for i in range(config.n):
        proj = [_project((t, row[i])) for t, row in enumerate(config.positions)]
        # walker sits at the midpoint of its vertical edge
        proj = [(px, py + 0.5) for px, py in proj]
        pts.extend(proj)
        shapes.append(
            f'<polyline class="walker" points="{" ".join(_fmt(p) for p in proj)}" '
            f'fill="none" stroke="black" stroke-width="0.1"/>'
        )
    return _svg(shapes, pts, scale)


def render_paths_ascii(config: Configuration) -> str:
    """Rows are positions (highest first), columns are times; '#' marks a walker."""
    check_configuration(config)
    lo = min(config.positions[0])
    hi = max(config.positions[-1])
    occ = config.occupied()
    lines = [f"# paths n={config.n} N={config.N} xmin={lo} xmax={hi}"]
    for x in range(hi, lo - 1, -1):
        lines.append("".join("#" if (t, x) in occ else "." for t in range(config.N + 1)))
    return "\n".join(lines) + "\n"


def parse_paths_ascii(text: str) -> Configuration:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# paths"):
        raise InvalidInput("missing '# paths' header")
    fields: Dict[str, int] = {}
    for tok in lines[0].split()[2:]:
        key, _, val = tok.partition("=")
        fields[key] = int(val)
    lo, hi, N = fields["xmin"], fields["xmax"], fields["N"]
    grid = lines[1:]
    if len(grid) != hi - lo + 1 or any(len(row) != N + 1 for row in grid):
        raise InvalidInput("path grid does not match its header")
    positions = []
    for t in range(N + 1):
        positions.append(tuple(sorted(hi - r for r, row in enumerate(grid) if row[t] == "#")))
    config = Configuration(tuple(positions))
    check_configuration(config)
    return config


def render_lozenges_ascii(config: Configuration) -> str:
    """Character per lozenge anchor: '-' stay, '/' jump, '|' empty site."""
    tiles = lozenges(config)
    lo = min(z.x for z in tiles) if tiles else 1
    hi = max(z.x for z in tiles) if tiles else 1
    cells = {(z.t, z.x): _ASCII[z.kind] for z in tiles}
    lines = [f"# lozenges n={config.n} N={config.N} count={len(tiles)}"]
    for x in range(hi, lo - 1, -1):
        lines.append("".join(cells.get((t, x), " ") for t in range(config.N)).rstrip())
    return "\n".join(lines) + "\n"


def render(config: Configuration, mode: str = "lozenges", fmt: str = "svg") -> str:
    if mode not in MODES:
        raise InvalidInput(f"mode must be one of {MODES}, got {mode!r}")
    if fmt not in FORMATS:
        raise InvalidInput(f"format must be one of {FORMATS}, got {fmt!r}")
    if mode == "paths":
        return render_paths_svg(config) if fmt == "svg" else render_paths_ascii(config)
    return render_lozenges_svg(config) if fmt == "svg" else render_lozenges_ascii(config)
