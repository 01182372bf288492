"""Deterministic SVG pictures of domains, wave fronts and caustics (y axis up)."""

import math
from dataclasses import dataclass, field

FINAL_COLOR = "#c0392b"
EDGE_COLOR = "#1f3a93"
FRONT_COLOR = "#7f8c8d"


@dataclass
class RenderSpec:
    size: int = 480
    margin: int = 24
    scale: float = None  # pixels per unit; fitted to the picture when None
    base_width: float = 1.2
    width_step: float = 1.3
    labels: bool = False
    times: list = field(default_factory=list)  # wave fronts to overlay

    def __post_init__(self):
        if self.scale is not None and self.scale <= 0:
            raise ValueError("scale must be positive")

    def stroke(self, weight):
        """Stroke width in pixels; strictly increasing in the weight."""
        return self.base_width + self.width_step * (weight - 1)


def _n(x):
    return f"{x:.6g}"


def _bbox(points):
    xs = [float(p[0]) for p in points]
    ys = [float(p[1]) for p in points]
    if not xs:
        return (0.0, 1.0, 0.0, 1.0)
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    if x1 - x0 < 1e-9:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-9:
        y0, y1 = y0 - 0.5, y1 + 0.5
    return (x0, x1, y0, y1)


def render(spec=None, polygon=None, fronts=(), caustic=None, points=None, title=""):
    """Return SVG text.  fronts is a list of vertex lists; points an (n, 2) array."""
    spec = spec or RenderSpec()
    pts = []
    if polygon is not None:
        pts += list(polygon)
    for f in fronts:
        pts += list(f)
    if caustic is not None:
        pts += [v.pos for v in caustic.vertices]
    if points is not None:
        pts += [tuple(p) for p in points]
    x0, x1, y0, y1 = _bbox(pts)
    inner = spec.size - 2 * spec.margin
    s = spec.scale or inner / max(x1 - x0, y1 - y0)
    tx = spec.margin - s * x0
    ty = spec.margin + s * y1
    diag = math.hypot(x1 - x0, y1 - y0)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.size}" height="{spec.size}" '
           f'viewBox="0 0 {spec.size} {spec.size}">']
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<rect width="100%" height="100%" fill="white"/>')
    out.append(f'<g transform="matrix({_n(s)} 0 0 {_n(-s)} {_n(tx)} {_n(ty)})" fill="none" '
               'stroke-linejoin="round" stroke-linecap="round">')

    def poly(vs, color, width, closed=True, extra=""):
        coords = " ".join(f"{_n(float(p[0]))},{_n(float(p[1]))}" for p in vs)
        tag = "polygon" if closed and len(vs) > 2 else "polyline"
        out.append(f'<{tag} points="{coords}" stroke="{color}" stroke-width="{_n(width / s)}"{extra}/>')

    if polygon is not None:
        poly(polygon, "black", spec.stroke(1))
    for f in fronts:
        poly(f, FRONT_COLOR, 0.8, extra=' stroke-dasharray="{0} {0}"'.format(_n(3 / s)))
    if points is not None:
        r = 1.6 / s
        for p in points:
            out.append(f'<circle cx="{_n(float(p[0]))}" cy="{_n(float(p[1]))}" r="{_n(r)}" '
                       'fill="black" stroke="none"/>')
    if caustic is not None:
        for e in sorted(caustic.edges, key=lambda e: (e.final, e.weight, e.id)):
            a = caustic.vertices[e.source].pos
            if e.target is None:
                b = (float(a[0]) + diag * e.direction[0], float(a[1]) + diag * e.direction[1])
            else:
                b = caustic.vertices[e.target].pos
            color = FINAL_COLOR if e.final else EDGE_COLOR
            width = spec.stroke(e.weight) + (1.0 if e.final else 0.0)
            poly([a, b], color, width, closed=False,
                 extra=f' data-weight="{e.weight}"' + (' data-final="1"' if e.final else ""))
        if spec.labels:
            for e in caustic.edges:
                if e.weight > 1 and e.target is not None:
                    a, b = caustic.vertices[e.source].pos, caustic.vertices[e.target].pos
                    mx, my = (float(a[0]) + float(b[0])) / 2, (float(a[1]) + float(b[1])) / 2
                    out.append(f'<text transform="matrix({_n(1 / s)} 0 0 {_n(-1 / s)} {_n(mx)} {_n(my)})" '
                               f'font-size="11" fill="black" stroke="none">{e.weight}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
