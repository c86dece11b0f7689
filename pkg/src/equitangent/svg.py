"""Minimal deterministic SVG 1.1 writer.

Fixed number formatting and insertion-order output keep files
byte-identical across runs.  The y axis is flipped at write time so the
mathematical orientation (y up) renders upright without transforms.
"""

from .geom import Point

_FMT = "{:.6f}"


def _f(x: float) -> str:
    s = _FMT.format(float(x))
    return "0.000000" if s == "-0.000000" else s


class SvgCanvas:
    def __init__(self) -> None:
        self.elements: list[str] = []
        self._xs: list[float] = []
        self._ys: list[float] = []

    def _track(self, pts) -> None:
        for p in pts:
            self._xs.append(p.x)
            self._ys.append(-p.y)

    def path(
        self,
        pts: list[Point],
        stroke: str = "#000000",
        width: float = 0.01,
        closed: bool = False,
        elem_id: str | None = None,
        dashed: bool = False,
    ) -> None:
        if len(pts) < 2:
            return
        self._track(pts)
        d = "M " + " L ".join(f"{_f(p.x)} {_f(-p.y)}" for p in pts)
        if closed:
            d += " Z"
        ident = f' id="{elem_id}"' if elem_id else ""
        dash = ' stroke-dasharray="0.05 0.05"' if dashed else ""
        self.elements.append(
            f'<path{ident} d="{d}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_f(width)}"{dash}/>'
        )

    def circle(self, c: Point, r: float, fill: str = "#000000", elem_id: str | None = None) -> None:
        self._track([Point(c.x - r, c.y - r), Point(c.x + r, c.y + r)])
        ident = f' id="{elem_id}"' if elem_id else ""
        self.elements.append(
            f'<circle{ident} cx="{_f(c.x)}" cy="{_f(-c.y)}" r="{_f(r)}" fill="{fill}"/>'
        )

    def text(self, p: Point, s: str, size: float = 0.1, fill: str = "#000000") -> None:
        self._track([p])
        self.elements.append(
            f'<text x="{_f(p.x)}" y="{_f(-p.y)}" font-size="{_f(size)}" '
            f'font-family="sans-serif" fill="{fill}">{s}</text>'
        )

    def to_string(self, margin_frac: float = 0.05) -> str:
        if not self._xs:
            xmin = ymin = 0.0
            xmax = ymax = 1.0
        else:
            xmin, xmax = min(self._xs), max(self._xs)
            ymin, ymax = min(self._ys), max(self._ys)
        w = max(xmax - xmin, 1e-9)
        h = max(ymax - ymin, 1e-9)
        m = margin_frac * max(w, h)
        header = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{_f(xmin - m)} {_f(ymin - m)} {_f(w + 2 * m)} {_f(h + 2 * m)}">\n'
        )
        return header + "\n".join(self.elements) + "\n</svg>\n"

    def write(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_string())
