"""Finite lattice windows, shifts with zero extension, weighted norms and pairings."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LatticeWindow:
    """Integer sites n_min..n_max (inclusive) with exponential weight e^{alpha n}."""

    n_min: int
    n_max: int
    alpha: float = 0.0

    def __post_init__(self):
        if self.n_max < self.n_min:
            raise ValueError(f"empty window [{self.n_min}, {self.n_max}]")

    @classmethod
    def for_run(cls, kappa: float, T: float, alpha: float, N: int = 40) -> "LatticeWindow":
        """[-N, N + ceil(c T)]: keeps the soliton N sites from the right edge up to time T."""
        c = math.sinh(kappa) / kappa
        return cls(-N, N + math.ceil(c * T), alpha)

    @classmethod
    def parse(cls, text: str, alpha: float = 0.0) -> "LatticeWindow":
        try:
            a, b = (int(v) for v in text.split(":"))
        except Exception as exc:  # noqa: BLE001
            raise ValueError(f"window must look like 'a:b', got {text!r}") from exc
        if b < a:
            raise ValueError(f"window {text!r} has b < a")
        return cls(a, b, alpha)

    @property
    def size(self) -> int:
        return self.n_max - self.n_min + 1

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    @property
    def weights(self) -> np.ndarray:
        return np.exp(self.alpha * self.sites)

    def index(self, n: int) -> int:
        if not self.n_min <= n <= self.n_max:
            raise IndexError(f"site {n} outside [{self.n_min}, {self.n_max}]")
        return n - self.n_min

    def extended(self, left: int = 0, right: int = 0) -> "LatticeWindow":
        return LatticeWindow(self.n_min - left, self.n_max + right, self.alpha)

    def interior(self, band: int) -> slice:
        """Slice of sites at least ``band`` away from both edges."""
        if 2 * band >= self.size:
            raise ValueError("edge band swallows the window")
        return slice(band, self.size - band)

    def with_alpha(self, alpha: float) -> "LatticeWindow":
        return LatticeWindow(self.n_min, self.n_max, alpha)


def shift(f: np.ndarray, k: int) -> np.ndarray:
    """(e^{k d} f)_n = f_{n+k}, with zeros outside the window (last axis)."""
    f = np.asarray(f)
    out = np.zeros_like(f)
    if k == 0:
        out[...] = f
    elif k > 0:
        out[..., :-k] = f[..., k:]
    else:
        out[..., -k:] = f[..., :k]
    return out


def forward_diff(f):
    """(e^d - 1) f."""
    return shift(f, 1) - f


def backward_diff(f):
    """(1 - e^{-d}) f."""
    return f - shift(f, -1)


def inv_forward_diff(f):
    """(e^d - 1)^{-1} f = -sum_{k>=0} f_{n+k}; needs f to vanish past the right edge."""
    f = np.asarray(f)
    return -np.flip(np.cumsum(np.flip(f, -1), -1), -1)


def inv_backward_diff(f):
    """(1 - e^{-d})^{-1} f = -sum_{k>=1} f_{n+k}."""
    return shift(inv_forward_diff(f), 1)


def pairing(f, g) -> complex:
    """<f, g> = sum f conj(g) over the last axis."""
    return np.sum(np.asarray(f) * np.conj(g), axis=-1)


def wpair(q, p, g, dtg):
    """<(q, p), (d_t g, -g)> = <q, d_t g> - <p, g>."""
    return pairing(q, dtg) - pairing(p, g)


def weighted_norm(f, window: LatticeWindow, alpha: float | None = None, with_tail: bool = False):
    """||f||_{l^2_alpha} = (sum e^{2 alpha n} |f_n|^2)^{1/2} over the last axis.

    With ``with_tail`` also return a geometric tail bound from the last five
    weighted values on each side (relative to the norm).
    """
    a = window.alpha if alpha is None else alpha
    w = np.exp(a * window.sites)
    wf = np.abs(np.asarray(f)) * w
    norm = np.sqrt(np.sum(wf ** 2, axis=-1))
    if not with_tail:
        return norm
    tail = 0.0
    for edge in (wf[..., :5][..., ::-1], wf[..., -5:]):
        e = np.atleast_2d(edge)
        for row, nrm in zip(e, np.atleast_1d(norm)):
            if row[0] == 0 or nrm == 0:
                continue
            ratio = (row[-1] / row[0]) ** 0.25 if row[-1] > 0 else 0.0
            if ratio >= 1:
                tail = math.inf
            else:
                tail = max(tail, float(row[-1] ** 2 * ratio ** 2 / (1 - ratio ** 2)) ** 0.5 / nrm)
    return norm, tail
