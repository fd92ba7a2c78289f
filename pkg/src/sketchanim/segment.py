"""Figure mask extraction from a grayscale drawing photo.

The pipeline: resize to a working width, adaptive threshold, morphological
close and dilate, flood fill from the image edges, keep the largest
connected component. A corner-walk contour tracer bridges the final mask
to the triangulated mesh.

Masks are (H, W) bool arrays. Foreground uses 8-connectivity and
background 4-connectivity unless configured otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from . import raster

# 4-neighbour structuring element for background labeling
CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], bool)
FULL = np.ones((3, 3), bool)


class EmptyMaskError(ValueError):
    """Raised when an operation needs foreground and the mask has none."""


@dataclass(frozen=True)
class SegmentParams:
    target_width: int = 400
    block_radius: int = 8
    c: float = 115.0
    kernel: int = 3
    connectivity: int = 8
    dark_on_light: bool = True

    def __post_init__(self):
        if self.target_width <= 0:
            raise ValueError("target_width must be positive")
        if self.block_radius < 1:
            raise ValueError("block_radius must be >= 1")
        if self.kernel % 2 == 0 or self.kernel < 1:
            raise ValueError("kernel must be odd")
        if self.connectivity not in (4, 8):
            raise ValueError("connectivity must be 4 or 8")


def _gaussian_kernel1d(radius: int) -> np.ndarray:
    ksize = 2 * radius + 1
    sigma = 0.3 * ((ksize - 1) * 0.5 - 1) + 0.8
    x = np.arange(ksize, dtype=np.float64) - radius
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return k / k.sum()


def adaptive_threshold(gray: np.ndarray, p: SegmentParams) -> np.ndarray:
    """Foreground where the pixel is more than `c` below (or above, for
    light-on-dark input) its Gaussian-weighted neighborhood mean.

    The window is (2*block_radius+1) square with border replication.
    """
    if gray.size == 0:
        raise ValueError("empty image")
    k = _gaussian_kernel1d(p.block_radius)
    g = gray.astype(np.float64)
    mean = ndimage.correlate1d(g, k, axis=0, mode="nearest")
    mean = ndimage.correlate1d(mean, k, axis=1, mode="nearest")
    if p.dark_on_light:
        return g < mean - p.c
    return g > mean + p.c


def _structure(kernel: int) -> np.ndarray:
    return np.ones((kernel, kernel), bool)


def morph_dilate(mask: np.ndarray, kernel: int = 3) -> np.ndarray:
    return ndimage.binary_dilation(mask, _structure(kernel), border_value=0)


def morph_erode(mask: np.ndarray, kernel: int = 3) -> np.ndarray:
    # border_value=1 pads with foreground so closing never shrinks the
    # mask at the image edge
    return ndimage.binary_erosion(mask, _structure(kernel), border_value=1)


def morph_close(mask: np.ndarray, kernel: int = 3) -> np.ndarray:
    return morph_erode(morph_dilate(mask, kernel), kernel)


def fill_holes(mask: np.ndarray) -> np.ndarray:
    """Fill every background region not reachable from the image border.

    Background connectivity is 4, the dual of 8-connected foreground.
    """
    bg_labels, n = ndimage.label(~mask, structure=CROSS)
    if n == 0:
        return mask.copy()
    border = np.concatenate(
        [bg_labels[0], bg_labels[-1], bg_labels[:, 0], bg_labels[:, -1]]
    )
    outside = np.unique(border[border != 0])
    keep_bg = np.isin(bg_labels, outside) & (bg_labels != 0)
    return ~keep_bg


def largest_component(mask: np.ndarray, connectivity: int = 8) -> np.ndarray:
    """Keep only the largest connected foreground component.

    Area ties go to the component containing the earliest pixel in
    row-major order.
    """
    structure = FULL if connectivity == 8 else CROSS
    labels, n = ndimage.label(mask, structure=structure)
    if n == 0:
        raise EmptyMaskError("mask has no foreground")
    areas = np.bincount(labels.ravel())[1:]
    best_area = areas.max()
    candidates = np.flatnonzero(areas == best_area) + 1
    if len(candidates) > 1:
        flat = labels.ravel()
        first = [np.flatnonzero(flat == lab)[0] for lab in candidates]
        winner = candidates[int(np.argmin(first))]
    else:
        winner = candidates[0]
    return labels == winner


def extract_mask(gray: np.ndarray, p: SegmentParams | None = None) -> np.ndarray:
    """Run the full mask pipeline on a cropped grayscale drawing."""
    p = p or SegmentParams()
    resized = raster.resize_to_width(gray, p.target_width)
    m = adaptive_threshold(resized, p)
    m = morph_close(m, p.kernel)
    m = morph_dilate(m, p.kernel)
    m = fill_holes(m)
    return largest_component(m, p.connectivity)


def reapply_fill_rules(mask: np.ndarray, connectivity: int = 8) -> np.ndarray:
    """Restore mask validity after a manual edit: fill holes, then keep
    the largest component. Idempotent."""
    return largest_component(fill_holes(mask), connectivity)


def encode_mask_png(mask: np.ndarray) -> bytes:
    return raster.encode_png(mask.astype(np.uint8) * 255)


def decode_mask_png(data: bytes) -> np.ndarray:
    img = raster.decode_image(data)
    return raster.to_grayscale(img) > 127


# ---------------------------------------------------------------------------
# Boundary tracing
#
# The walk moves along pixel-corner lattice points keeping foreground on
# its right, which yields a closed polygon with positive shoelace area
# equal to the pixel count. Diagonal pinch corners turn left (pass
# through), so an 8-connected component traces as a single polygon; the
# pinch corner repeats in the output but no edges cross.

_RIGHT = {(1, 0): (0, 1), (0, 1): (-1, 0), (-1, 0): (0, -1), (0, -1): (1, 0)}
_LEFT = {v: k for k, v in _RIGHT.items()}


def _ahead_pixels(cx, cy, d):
    """Pixels flanking the edge from corner (cx, cy) toward direction d:
    (right-side pixel, left-side pixel)."""
    dx, dy = d
    rx, ry = _RIGHT[d]
    lx, ly = _LEFT[d]
    ar = (cx + (dx + rx - 1) // 2, cy + (dy + ry - 1) // 2)
    al = (cx + (dx + lx - 1) // 2, cy + (dy + ly - 1) // 2)
    return ar, al


def trace_contour(mask: np.ndarray, epsilon: float = 1.0) -> np.ndarray:
    """Trace the outer boundary of the foreground as an (N, 2) float array
    of (x, y) corner points, positive shoelace orientation, optionally
    simplified with Douglas-Peucker tolerance `epsilon`."""
    ys, xs = np.nonzero(mask)
    if len(ys) == 0:
        raise EmptyMaskError("cannot trace empty mask")
    h, w = mask.shape

    def fg(px, py):
        return 0 <= px < w and 0 <= py < h and mask[py, px]

    # topmost-leftmost foreground pixel; its top-left corner is always a
    # genuine turn (arrive heading north, leave heading east)
    y0 = int(ys.min())
    x0 = int(xs[ys == y0].min())
    start = ((x0, y0), (1, 0))
    corner, d = start
    verts = [corner]
    closed = False
    for step in range(4 * (w + 1) * (h + 1) + 4):
        ar, al = _ahead_pixels(corner[0], corner[1], d)
        fr, fl = fg(*ar), fg(*al)
        if fr and not fl:
            d_out = d  # straight
        elif fr and fl:
            d_out = _LEFT[d]
        elif not fr and not fl:
            d_out = _RIGHT[d]
        else:
            d_out = _LEFT[d]  # diagonal pinch: keep 8-connected region whole
        if step > 0 and (corner, d_out) == start:
            closed = True
            break
        if d_out != d:
            verts.append(corner)
        d = d_out
        corner = (corner[0] + d[0], corner[1] + d[1])
    if not closed:
        raise RuntimeError("contour walk failed to close")

    poly = np.asarray(verts, dtype=np.float64)
    if epsilon > 0 and len(poly) > 4:
        poly = _simplify_closed(poly, epsilon)
    return poly


def _perp_distances(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ab = b - a
    L = np.hypot(*ab)
    if L == 0:
        return np.hypot(*(pts - a).T)
    rel = pts - a
    return np.abs(ab[0] * rel[:, 1] - ab[1] * rel[:, 0]) / L


def _dp_chain(pts: np.ndarray, epsilon: float) -> np.ndarray:
    """Douglas-Peucker on an open chain; keeps both endpoints."""
    if len(pts) < 3:
        return pts
    keep = np.zeros(len(pts), bool)
    keep[0] = keep[-1] = True
    stack = [(0, len(pts) - 1)]
    while stack:
        i, j = stack.pop()
        if j <= i + 1:
            continue
        dists = _perp_distances(pts[i + 1 : j], pts[i], pts[j])
        k = int(np.argmax(dists))
        if dists[k] > epsilon:
            keep[i + 1 + k] = True
            stack.append((i, i + 1 + k))
            stack.append((i + 1 + k, j))
    return pts[keep]


def _simplify_closed(poly: np.ndarray, epsilon: float) -> np.ndarray:
    # split the ring at the start vertex and the vertex farthest from it,
    # simplify both chains, and rejoin
    far = int(np.argmax(np.hypot(*(poly - poly[0]).T)))
    if far == 0:
        return poly
    a = _dp_chain(poly[: far + 1], epsilon)
    b = _dp_chain(np.vstack([poly[far:], poly[:1]]), epsilon)
    return np.vstack([a[:-1], b[:-1]])


def polygon_area(poly: np.ndarray) -> float:
    """Signed shoelace area; positive for this module's winding."""
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
