"""Image decode/encode, grayscale conversion, cropping, and resizing.

Images are numpy arrays: (H, W, 4) uint8 for RGBA, (H, W) uint8 for
grayscale. All operations are pure; nothing here mutates its input.
"""

from __future__ import annotations

import io

import numpy as np
from PIL import Image, UnidentifiedImageError


class DecodeError(ValueError):
    """Raised when an image byte stream cannot be decoded."""


class InvalidBoxError(ValueError):
    """Raised when a crop box does not intersect the image."""


def decode_image(data: bytes) -> np.ndarray:
    """Decode PNG or JPEG bytes into an (H, W, 4) uint8 RGBA array.

    Sources without an alpha channel come back fully opaque.
    """
    try:
        with Image.open(io.BytesIO(data)) as im:
            im.load()
            rgba = im.convert("RGBA")
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise DecodeError(f"cannot decode image: {exc}") from exc
    arr = np.asarray(rgba, dtype=np.uint8)
    if arr.ndim != 3 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DecodeError("decoded image is empty")
    return arr


def encode_png(img: np.ndarray) -> bytes:
    """Encode an RGBA (H, W, 4) or grayscale (H, W) uint8 array as PNG."""
    arr = np.ascontiguousarray(img, dtype=np.uint8)
    mode = "L" if arr.ndim == 2 else "RGBA"
    buf = io.BytesIO()
    Image.fromarray(arr, mode=mode).save(buf, format="PNG")
    return buf.getvalue()


def save_png(path, img: np.ndarray) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_png(img))


def to_grayscale(img: np.ndarray) -> np.ndarray:
    """BT.601 luma of an RGBA image, rounded half-up to uint8."""
    rgb = img[..., :3].astype(np.float64)
    luma = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.floor(luma + 0.5).astype(np.uint8)


def crop(img: np.ndarray, box: tuple[int, int, int, int]) -> np.ndarray:
    """Crop to the intersection of `box` (x, y, w, h) with the image.

    Boxes may hang past the edges; only an empty intersection is an error.
    """
    x, y, w, h = box
    ih, iw = img.shape[:2]
    x0, y0 = max(int(x), 0), max(int(y), 0)
    x1, y1 = min(int(x) + int(w), iw), min(int(y) + int(h), ih)
    if x0 >= x1 or y0 >= y1:
        raise InvalidBoxError(f"box {box} does not intersect {iw}x{ih} image")
    return img[y0:y1, x0:x1].copy()


def resize(img: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    """Bilinear resample with half-pixel-center sampling.

    Sample points are placed at (i + 0.5) * scale - 0.5 in source
    coordinates and clamped, so a resize to the same size is the identity
    and an exact 2x downscale averages 2x2 blocks.
    """
    if out_w <= 0 or out_h <= 0:
        raise ValueError("target dimensions must be positive")
    h, w = img.shape[:2]
    if (out_w, out_h) == (w, h):
        return img.copy()

    src_x = (np.arange(out_w) + 0.5) * (w / out_w) - 0.5
    src_y = (np.arange(out_h) + 0.5) * (h / out_h) - 0.5
    x0 = np.clip(np.floor(src_x), 0, w - 1).astype(np.intp)
    y0 = np.clip(np.floor(src_y), 0, h - 1).astype(np.intp)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = np.clip(src_x - x0, 0.0, 1.0)
    fy = np.clip(src_y - y0, 0.0, 1.0)

    data = img.astype(np.float64)
    if data.ndim == 2:
        data = data[:, :, None]
    fx_c = fx[None, :, None]
    fy_c = fy[:, None, None]
    top = data[y0][:, x0] * (1 - fx_c) + data[y0][:, x1] * fx_c
    bot = data[y1][:, x0] * (1 - fx_c) + data[y1][:, x1] * fx_c
    out = top * (1 - fy_c) + bot * fy_c
    out = np.floor(out + 0.5).astype(np.uint8)
    return out[:, :, 0] if img.ndim == 2 else out


def resize_to_width(img: np.ndarray, target_w: int) -> np.ndarray:
    """Resize so width = target_w, height scaled to preserve aspect."""
    if target_w <= 0:
        raise ValueError("target width must be positive")
    h, w = img.shape[:2]
    out_h = max(1, int(np.floor(h * target_w / w + 0.5)))
    return resize(img, target_w, out_h)
