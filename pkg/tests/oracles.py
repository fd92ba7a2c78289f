"""Brute-force reference implementations used only by tests.

Everything here is written the slow, obvious way (explicit BFS over
deques, per-pixel set algebra, nested loops) so that it shares no code
path with the package under test.
"""

from collections import deque

import numpy as np

N4 = ((0, 1), (0, -1), (1, 0), (-1, 0))
N8 = N4 + ((1, 1), (1, -1), (-1, 1), (-1, -1))


def bfs_fill_holes(mask):
    """Flood background from every border pixel (4-connectivity); any
    background cell never reached becomes foreground."""
    h, w = mask.shape
    reached = np.zeros((h, w), bool)
    q = deque()
    for x in range(w):
        for y in (0, h - 1):
            if not mask[y, x] and not reached[y, x]:
                reached[y, x] = True
                q.append((y, x))
    for y in range(h):
        for x in (0, w - 1):
            if not mask[y, x] and not reached[y, x]:
                reached[y, x] = True
                q.append((y, x))
    while q:
        y, x = q.popleft()
        for dy, dx in N4:
            ny, nx = y + dy, x + dx
            if 0 <= ny < h and 0 <= nx < w and not mask[ny, nx] and not reached[ny, nx]:
                reached[ny, nx] = True
                q.append((ny, nx))
    return mask | ~reached


def bfs_components(mask, connectivity=8):
    """List of foreground components as sets of (y, x), in discovery
    order scanning row-major."""
    h, w = mask.shape
    nbrs = N8 if connectivity == 8 else N4
    seen = np.zeros((h, w), bool)
    comps = []
    for y in range(h):
        for x in range(w):
            if mask[y, x] and not seen[y, x]:
                comp = set()
                seen[y, x] = True
                q = deque([(y, x)])
                while q:
                    cy, cx = q.popleft()
                    comp.add((cy, cx))
                    for dy, dx in nbrs:
                        ny, nx = cy + dy, cx + dx
                        if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and not seen[ny, nx]:
                            seen[ny, nx] = True
                            q.append((ny, nx))
                comps.append(comp)
    return comps


def bfs_largest(mask, connectivity=8):
    """Largest component; ties go to the earliest row-major pixel, which
    is the first discovered by the row-major scan."""
    comps = bfs_components(mask, connectivity)
    if not comps:
        return None
    best = max(comps, key=len)  # max() keeps the first of equals
    out = np.zeros_like(mask)
    for y, x in best:
        out[y, x] = True
    return out


def set_dilate(mask, kernel=3):
    """Dilation as a union of shifted copies, clipped to bounds."""
    h, w = mask.shape
    r = kernel // 2
    fg = {(y, x) for y in range(h) for x in range(w) if mask[y, x]}
    out = np.zeros((h, w), bool)
    for y, x in fg:
        for dy in range(-r, r + 1):
            for dx in range(-r, r + 1):
                ny, nx = y + dy, x + dx
                if 0 <= ny < h and 0 <= nx < w:
                    out[ny, nx] = True
    return out


def set_erode(mask, kernel=3):
    """Erosion keeping pixels whose whole window is foreground; cells
    outside the image count as foreground, so closing stays extensive at
    the border."""
    h, w = mask.shape
    r = kernel // 2
    out = np.zeros((h, w), bool)
    for y in range(h):
        for x in range(w):
            ok = True
            for dy in range(-r, r + 1):
                for dx in range(-r, r + 1):
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w and not mask[ny, nx]:
                        ok = False
                        break
                if not ok:
                    break
            out[y, x] = ok
    return out


def set_close(mask, kernel=3):
    return set_erode(set_dilate(mask, kernel), kernel)


def gaussian_mean_direct(gray, radius):
    """Per-pixel Gaussian-weighted window mean with clamped sampling,
    evaluated with explicit loops."""
    ksize = 2 * radius + 1
    sigma = 0.3 * ((ksize - 1) * 0.5 - 1) + 0.8
    ws = [np.exp(-((i - radius) ** 2) / (2 * sigma * sigma)) for i in range(ksize)]
    total = sum(ws)
    ws = [v / total for v in ws]
    h, w = gray.shape
    out = np.zeros((h, w), float)
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for i in range(ksize):
                sy = min(max(y + i - radius, 0), h - 1)
                for j in range(ksize):
                    sx = min(max(x + j - radius, 0), w - 1)
                    acc += ws[i] * ws[j] * float(gray[sy, sx])
            out[y, x] = acc
    return out
