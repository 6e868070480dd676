"""Global scene descriptor from oriented band-pass filter responses.

The descriptor is built in three steps: filter the image with a bank of
Gabor-style band-pass filters (4 scales x 8 orientations by default), pool
each response-magnitude map by averaging over a 4x4 grid, and concatenate
the pooled values scale-major, giving 4*8*16 = 512 numbers.

Filters are constructed directly in the frequency domain as a Gaussian on
log radial frequency (one-octave bandwidth) times a Gaussian on orientation
angle, so convolution is a transform-multiply-inverse-transform.  Feature
values are response magnitudes; the all-zero image maps to the zero vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataFormatError

MIN_IMAGE_SIDE = 8


@dataclass(frozen=True)
class GistConfig:
    scales: int = 4
    orientations: int = 8
    grid: int = 4
    base_frequency: float = 0.25  # cycles/pixel at the finest scale
    bandwidth_octaves: float = 1.0  # FWHM of the radial profile in log2 frequency
    angular_sigma: float = math.pi / 16
    prefilter: bool = False

    def __post_init__(self) -> None:
        if min(self.scales, self.orientations, self.grid) < 1:
            raise ValueError("scales, orientations, and grid must be >= 1")
        if not 0 < self.base_frequency <= 0.5:
            raise ValueError("base_frequency must lie in (0, 0.5]")

    @property
    def n_filters(self) -> int:
        return self.scales * self.orientations

    @property
    def descriptor_length(self) -> int:
        return self.n_filters * self.grid * self.grid


def _check_shape(height: int, width: int) -> None:
    if height < MIN_IMAGE_SIDE or width < MIN_IMAGE_SIDE:
        raise ValueError(f"image must be at least {MIN_IMAGE_SIDE}x{MIN_IMAGE_SIDE}, "
                         f"got {height}x{width}")


def gabor_bank(cfg: GistConfig, height: int, width: int) -> np.ndarray:
    """Frequency-domain transfer functions, shape (scales*orientations, H, W).

    Scale s is centered at radial frequency base_frequency * 2**-s;
    orientation o sits at angle o*pi/orientations.  Each filter is
    normalized to a maximum transfer magnitude of 1 and has zero DC
    response.
    """
    _check_shape(height, width)
    fy = np.fft.fftfreq(height)[:, None]
    fx = np.fft.fftfreq(width)[None, :]
    radius = np.hypot(fx, fy)
    angle = np.arctan2(fy, fx)
    sigma_oct = cfg.bandwidth_octaves / (2.0 * math.sqrt(2.0 * math.log(2.0)))

    with np.errstate(divide="ignore"):
        log_radius = np.log2(radius)  # -inf at DC; the radial Gaussian sends it to 0

    bank = np.empty((cfg.n_filters, height, width))
    for s in range(cfg.scales):
        center = cfg.base_frequency * 2.0 ** (-s)
        radial = np.exp(-((log_radius - math.log2(center)) ** 2) / (2.0 * sigma_oct**2))
        radial[radius == 0.0] = 0.0
        for o in range(cfg.orientations):
            theta = o * math.pi / cfg.orientations
            # orientation distance on a period-pi circle: filters are symmetric
            # under point reflection of the frequency plane, keeping responses real
            delta = np.mod(angle - theta + math.pi / 2.0, math.pi) - math.pi / 2.0
            transfer = radial * np.exp(-(delta**2) / (2.0 * cfg.angular_sigma**2))
            peak = transfer.max()
            if peak > 0.0:
                transfer = transfer / peak
            bank[s * cfg.orientations + o] = transfer
    return bank


def _whitening_prefilter(img: np.ndarray) -> np.ndarray:
    """Optional log-intensity, high-pass, local contrast normalization."""
    h, w = img.shape
    img = np.log1p(255.0 * img)
    fy = np.fft.fftfreq(h)[:, None]
    fx = np.fft.fftfreq(w)[None, :]
    cutoff = 4.0 / min(h, w)  # about four cycles per image
    lowpass = np.exp(-(fx**2 + fy**2) / (2.0 * cutoff**2))
    local_mean = np.fft.ifft2(np.fft.fft2(img) * lowpass).real
    img = img - local_mean
    local_energy = np.fft.ifft2(np.fft.fft2(img**2) * lowpass).real
    return img / (np.sqrt(np.maximum(local_energy, 0.0)) + 0.2)


def pool_grid(feature_map: np.ndarray, grid: int) -> np.ndarray:
    """Mean over a grid x grid partition; remainder rows/cols go to the last cell."""
    h, w = feature_map.shape
    ch, cw = h // grid, w // grid
    out = np.empty(grid * grid)
    for i in range(grid):
        top, bottom = i * ch, (i + 1) * ch if i < grid - 1 else h
        for j in range(grid):
            left, right = j * cw, (j + 1) * cw if j < grid - 1 else w
            out[i * grid + j] = feature_map[top:bottom, left:right].mean()
    return out


def gist_descriptor(img: np.ndarray, cfg: GistConfig = GistConfig()) -> np.ndarray:
    """Descriptor of length scales*orientations*grid^2 (512 by default).

    Concatenation order is scale-major, then orientation, then grid cell in
    row-major order.
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError("expected a 2-D grayscale image")
    if not np.all(np.isfinite(img)):
        raise ValueError("image contains non-finite pixels")
    _check_shape(*img.shape)
    if cfg.prefilter:
        img = _whitening_prefilter(img)
    bank = gabor_bank(cfg, *img.shape)
    spectrum = np.fft.fft2(img)
    responses = np.fft.ifft2(spectrum[None, :, :] * bank, axes=(-2, -1))
    magnitudes = np.abs(responses)
    return np.concatenate([pool_grid(m, cfg.grid) for m in magnitudes])


def load_pgm(path: str | Path) -> np.ndarray:
    """Read a binary PGM (P5, maxval <= 255) into a [0, 1] float image."""
    path = Path(path)
    buf = path.read_bytes()

    def next_token(pos: int) -> tuple[bytes, int]:
        while pos < len(buf):
            c = buf[pos]
            if c in b" \t\r\n":
                pos += 1
            elif c == ord("#"):
                while pos < len(buf) and buf[pos] != ord("\n"):
                    pos += 1
            else:
                break
        start = pos
        while pos < len(buf) and buf[pos] not in b" \t\r\n":
            pos += 1
        if start == pos:
            raise DataFormatError(f"{path}: truncated PGM header")
        return buf[start:pos], pos

    magic, pos = next_token(0)
    if magic != b"P5":
        raise DataFormatError(f"{path}: not a binary PGM (P5) file")
    try:
        width, pos = next_token(pos)
        height, pos = next_token(pos)
        maxval, pos = next_token(pos)
        width, height, maxval = int(width), int(height), int(maxval)
    except ValueError:
        raise DataFormatError(f"{path}: malformed PGM header") from None
    if not 0 < maxval <= 255:
        raise DataFormatError(f"{path}: unsupported PGM maxval {maxval}")
    pos += 1  # the single whitespace byte that terminates the header
    expected = width * height
    data = buf[pos: pos + expected]
    if len(data) != expected:
        raise DataFormatError(f"{path}: PGM pixel data truncated")
    pixels = np.frombuffer(data, dtype=np.uint8).reshape(height, width)
    return pixels.astype(np.float64) / maxval
