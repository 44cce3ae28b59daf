"""
Grid Distortion Rendering - SVG Images of the Piecewise Map
Draws the image of a Cartesian grid under the map, coloured by region, with
the trapezoid and rectangle outlines
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np
from lxml import etree

from ..geometry.shapes import RegionTag, Trapezoid, Window, classify_xy
from ..mapping.qcmap import default_view_window, forward_xy
from ..utils.config import DEFAULT_OUTPUT_CONFIG, OutputConfig
from ..utils.exceptions import DomainError

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
MIN_SAMPLES_PER_SEGMENT = 64
MARGIN = 0.25

REGION_COLOURS = {
    RegionTag.G1: "#1f77b4",
    RegionTag.G2: "#ff7f0e",
    RegionTag.G3: "#2ca02c",
    RegionTag.G4: "#9467bd",
    RegionTag.G5: "#7f7f7f",
}

STYLE = "\n".join(
    [f"polyline.{tag.name} {{ stroke: {colour}; }}" for tag, colour in REGION_COLOURS.items()]
    + [
        "polyline { fill: none; stroke-width: 1; }",
        "polygon.trapezoid { fill: none; stroke: #d62728; stroke-width: 2; stroke-dasharray: 6 3; }",
        "polygon.rectangle { fill: none; stroke: #000000; stroke-width: 2; }",
    ]
)


def _num(value: float) -> str:
    return format(float(value), ".17g")


@dataclass(frozen=True)
class GridSegment:
    """One edge of the Cartesian grid in the source plane."""
    x0: float
    y0: float
    x1: float
    y1: float

    def sample(self, n: int) -> Tuple[np.ndarray, np.ndarray]:
        s = np.linspace(0.0, 1.0, n)
        return self.x0 + (self.x1 - self.x0) * s, self.y0 + (self.y1 - self.y0) * s

    @property
    def midpoint(self) -> Tuple[float, float]:
        return 0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1)


def grid_segments(window: Window, density: int) -> Iterator[GridSegment]:
    """Horizontal then vertical edges of a density x density grid of cells."""
    xs = np.linspace(window.x_min, window.x_max, density + 1)
    ys = np.linspace(window.y_min, window.y_max, density + 1)
    for y in ys:
        for x0, x1 in zip(xs[:-1], xs[1:]):
            yield GridSegment(float(x0), float(y), float(x1), float(y))
    for x in xs:
        for y0, y1 in zip(ys[:-1], ys[1:]):
            yield GridSegment(float(x), float(y0), float(x), float(y1))


class GridDistortionRenderer:
    """
    Renders the image of a grid under the piecewise map as an SVG 1.1 document.

    Screen coordinates are (u - u_min, v_max - v) * scale, so the y-axis
    points down as SVG expects; the viewBox covers every drawn point.
    """

    def __init__(
        self,
        trapezoid: Trapezoid,
        window: Optional[Window] = None,
        density: Optional[int] = None,
        samples: Optional[int] = None,
        config: Optional[OutputConfig] = None,
    ):
        """
        Initialize the renderer.

        Args:
            trapezoid: Trapezoid defining the map
            window: Source window of the grid, [-3d, 3d] x [-2, 3] by default
            density: Grid cells per axis
            samples: Points per rendered segment, at least 64
            config: OutputConfig

        Raises:
            DomainError: If density < 1 or samples < 64
        """
        self.config = config or DEFAULT_OUTPUT_CONFIG
        self.t = trapezoid
        self.window = window or default_view_window(trapezoid)
        self.density = self.config.SVG_GRID_DENSITY if density is None else density
        self.samples = self.config.SVG_SAMPLES_PER_SEGMENT if samples is None else samples
        if self.density < 1:
            raise DomainError(f"grid density must be at least 1, got {self.density}")
        if self.samples < MIN_SAMPLES_PER_SEGMENT:
            raise DomainError(f"need at least {MIN_SAMPLES_PER_SEGMENT} samples per segment, got {self.samples}")

    def _images(self) -> List[Tuple[GridSegment, RegionTag, bool, np.ndarray, np.ndarray]]:
        images = []
        for segment in grid_segments(self.window, self.density):
            x, y = segment.sample(self.samples)
            u, v, _, _ = forward_xy(self.t, x, y)
            code, left = classify_xy(self.t, *segment.midpoint)
            images.append((segment, RegionTag(int(code)), bool(left), u, v))
        return images

    def render(self) -> bytes:
        """
        Build the SVG document.

        Returns:
            UTF-8 encoded SVG, byte-identical for identical inputs
        """
        images = self._images()
        outline_t = [(p.x, p.y) for p in self.t.vertices()]
        outline_r = [(p.x, p.y) for p in self.t.image_vertices()]

        us = np.concatenate([u for *_, u, _ in images] + [np.array([p[0] for p in outline_t])])
        vs = np.concatenate([v for *_, v in images] + [np.array([p[1] for p in outline_t])])
        u_min, u_max = float(us.min()) - MARGIN, float(us.max()) + MARGIN
        v_min, v_max = float(vs.min()) - MARGIN, float(vs.max()) + MARGIN
        scale = self.config.SVG_SCALE

        def screen(u, v):
            return (np.asarray(u) - u_min) * scale, (v_max - np.asarray(v)) * scale

        def points_attr(u, v) -> str:
            sx, sy = screen(u, v)
            return " ".join(f"{a:.6f},{b:.6f}" for a, b in zip(np.atleast_1d(sx), np.atleast_1d(sy)))

        width, height = (u_max - u_min) * scale, (v_max - v_min) * scale
        root = etree.Element(f"{{{SVG_NS}}}svg", nsmap={None: SVG_NS})
        root.set("version", "1.1")
        root.set("width", f"{width:.6f}")
        root.set("height", f"{height:.6f}")
        root.set("viewBox", f"0 0 {width:.6f} {height:.6f}")
        root.set("data-alpha", _num(self.t.alpha))
        root.set("data-d", _num(self.t.d))
        root.set("data-c", _num(self.t.c))
        root.set("data-scale", _num(scale))
        root.set("data-u-min", _num(u_min))
        root.set("data-v-max", _num(v_max))

        etree.SubElement(root, f"{{{SVG_NS}}}title").text = (
            f"Image of a {self.density}x{self.density} grid, alpha={self.t.alpha:g}, d={self.t.d:g}"
        )
        etree.SubElement(root, f"{{{SVG_NS}}}style", {"type": "text/css"}).text = STYLE

        grid = etree.SubElement(root, f"{{{SVG_NS}}}g", {"id": "grid"})
        for segment, tag, left, u, v in images:
            etree.SubElement(grid, f"{{{SVG_NS}}}polyline", {
                "class": tag.name,
                "data-side": "left" if left else "right",
                "data-x0": _num(segment.x0),
                "data-y0": _num(segment.y0),
                "data-x1": _num(segment.x1),
                "data-y1": _num(segment.y1),
                "data-u0": _num(u[0]),
                "data-v0": _num(v[0]),
                "data-u1": _num(u[-1]),
                "data-v1": _num(v[-1]),
                "points": points_attr(u, v),
            })

        outlines = etree.SubElement(root, f"{{{SVG_NS}}}g", {"id": "outlines"})
        for name, vertices in (("trapezoid", outline_t), ("rectangle", outline_r)):
            etree.SubElement(outlines, f"{{{SVG_NS}}}polygon", {
                "class": name,
                "data-vertices": " ".join(f"{_num(x)},{_num(y)}" for x, y in vertices),
                "points": points_attr([x for x, _ in vertices], [y for _, y in vertices]),
            })

        logger.info(f"Rendered {len(images)} grid segments for {self.t}")
        return etree.tostring(root, pretty_print=True, xml_declaration=True, encoding="UTF-8")


def render_grid_svg(
    t: Trapezoid,
    window: Optional[Window] = None,
    density: Optional[int] = None,
    samples: Optional[int] = None,
) -> bytes:
    """Render the grid-distortion SVG with the default output configuration."""
    return GridDistortionRenderer(t, window=window, density=density, samples=samples).render()
