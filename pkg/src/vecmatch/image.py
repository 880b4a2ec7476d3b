"""Image types, binary Netpbm (PGM/PPM) codec, grayscale conversion, cropping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class PnmError(ValueError):
    """Base class for Netpbm codec failures."""


class UnsupportedFormatError(PnmError):
    """Magic number is not P5 or P6."""


class MalformedHeaderError(PnmError):
    """Header tokens are missing or not parseable as positive integers."""


class UnsupportedMaxvalError(PnmError):
    """Declared maxval is outside 1..255."""


class TruncatedPayloadError(PnmError):
    """Raster holds fewer bytes than the header promises."""


class BoundsError(ValueError):
    """Rectangle does not fit inside the image."""


class GrayImage:
    """Rectangular grid of 8-bit intensities, row-major, top row first."""

    __slots__ = ("pixels",)

    def __init__(self, pixels) -> None:
        px = np.asarray(pixels)
        if px.ndim != 2:
            raise ValueError(f"expected a 2-D pixel grid, got ndim={px.ndim}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if px.dtype != np.uint8:
            if px.size and (px.min() < 0 or px.max() > 255):
                raise ValueError("pixel values must be in 0..255")
            px = px.astype(np.uint8)
        else:
            px = px.copy()
        px.setflags(write=False)
        self.pixels = px

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    def __repr__(self) -> str:
        return f"GrayImage({self.height}x{self.width})"


class ColorImage:
    """Rectangular grid of (R, G, B) triples, each channel 0..255."""

    __slots__ = ("pixels",)

    def __init__(self, pixels) -> None:
        px = np.asarray(pixels)
        if px.ndim != 3 or px.shape[2] != 3:
            raise ValueError("expected an (H, W, 3) pixel grid")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if px.dtype != np.uint8:
            if px.size and (px.min() < 0 or px.max() > 255):
                raise ValueError("channel values must be in 0..255")
            px = px.astype(np.uint8)
        else:
            px = px.copy()
        px.setflags(write=False)
        self.pixels = px

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColorImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    def __repr__(self) -> str:
        return f"ColorImage({self.height}x{self.width})"


@dataclass(frozen=True)
class Rect:
    """0-based crop rectangle: (top, left) corner plus extent."""

    top: int
    left: int
    height: int
    width: int

    def __post_init__(self) -> None:
        if self.height < 1 or self.width < 1:
            raise BoundsError("rectangle extent must be at least 1x1")
        if self.top < 0 or self.left < 0:
            raise BoundsError("rectangle corner must be non-negative")


_WHITESPACE = b" \t\r\n\x0b\x0c"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Read the next header token, skipping whitespace and # comments."""
    n = len(data)
    while pos < n:
        b = data[pos : pos + 1]
        if b == b"#":
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        elif b in _WHITESPACE:
            pos += 1
        else:
            break
    if pos >= n:
        raise MalformedHeaderError("unexpected end of header")
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def decode_pnm(data: bytes) -> GrayImage | ColorImage:
    """Decode binary PGM (P5) into GrayImage or binary PPM (P6) into ColorImage."""
    magic, pos = _next_token(bytes(data), 0)
    if magic not in (b"P5", b"P6"):
        raise UnsupportedFormatError(f"unsupported magic {magic!r}; only P5/P6 binary")
    fields = []
    for _ in range(3):
        tok, pos = _next_token(data, pos)
        if not tok.isdigit():
            raise MalformedHeaderError(f"expected integer header field, got {tok!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise MalformedHeaderError("dimensions must be positive")
    if not 1 <= maxval <= 255:
        raise UnsupportedMaxvalError(f"maxval {maxval} unsupported; need 1..255")
    # Exactly one whitespace byte separates the header from the raster.
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise MalformedHeaderError("missing whitespace before raster")
    pos += 1
    channels = 1 if magic == b"P5" else 3
    need = height * width * channels
    raster = data[pos : pos + need]
    if len(raster) < need:
        raise TruncatedPayloadError(f"raster has {len(raster)} bytes, need {need}")
    arr = np.frombuffer(raster, dtype=np.uint8)
    if channels == 1:
        return GrayImage(arr.reshape(height, width))
    return ColorImage(arr.reshape(height, width, 3))


def encode_pgm(image: GrayImage) -> bytes:
    """Encode a GrayImage as binary PGM (P5); exact round trip with decode_pnm."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes()


def encode_ppm(image: ColorImage) -> bytes:
    """Encode a ColorImage as binary PPM (P6)."""
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes()


GRAY_MODES = ("luma", "channel-sum")


def to_gray(image: ColorImage, mode: str = "luma") -> GrayImage:
    """Collapse RGB to intensity: BT.601 luma weights, or the plain channel mean."""
    rgb = image.pixels.astype(np.float64)
    if mode == "luma":
        g = 0.299 * rgb[:, :, 0] + 0.587 * rgb[:, :, 1] + 0.114 * rgb[:, :, 2]
    elif mode == "channel-sum":
        g = (rgb[:, :, 0] + rgb[:, :, 1] + rgb[:, :, 2]) / 3.0
    else:
        raise ValueError(f"unknown gray mode {mode!r}; expected one of {GRAY_MODES}")
    g = np.clip(np.floor(g + 0.5), 0, 255)
    return GrayImage(g.astype(np.uint8))


def crop(image: GrayImage, rect: Rect) -> GrayImage:
    """Extract the sub-image covered by rect."""
    if rect.top + rect.height > image.height or rect.left + rect.width > image.width:
        raise BoundsError(
            f"rect {rect} exceeds image bounds {image.height}x{image.width}"
        )
    return GrayImage(
        image.pixels[rect.top : rect.top + rect.height, rect.left : rect.left + rect.width]
    )
