"""Deterministic coefficient sources for bilinear sums.

Coefficients are derived from the lattice point itself via a splitmix64
hash, so a point's coefficient does not depend on enumeration order,
chunking or thread count; identical seeds give identical sums.  Random
coefficients are uniform in the closed unit disc, satisfying |a| <= 1.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _splitmix64(z: np.ndarray) -> np.ndarray:
    z = (z + _GOLDEN).astype(np.uint64)
    z = ((z ^ (z >> np.uint64(30))) * _MIX1).astype(np.uint64)
    z = ((z ^ (z >> np.uint64(27))) * _MIX2).astype(np.uint64)
    return z ^ (z >> np.uint64(31))


def _hash_points(seed: int, stream: str, re, im) -> np.ndarray:
    re = np.asarray(re).astype(np.int64).view(np.uint64)
    im = np.asarray(im).astype(np.int64).view(np.uint64)
    base = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) ^ np.uint64(zlib.crc32(stream.encode()))
    h = _splitmix64(np.uint64(base) ^ re)
    return _splitmix64(h ^ im)


def _to_unit(h: np.ndarray) -> np.ndarray:
    return (h >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)


@dataclass(frozen=True)
class CoeffSource:
    """Per-lattice-point complex coefficients with |value| <= 1."""

    kind: str  # "disc" | "ones" | "zeros"
    seed: int = 0

    @classmethod
    def random(cls, seed: int) -> "CoeffSource":
        return cls("disc", seed)

    @classmethod
    def ones(cls) -> "CoeffSource":
        return cls("ones")

    @classmethod
    def zeros(cls) -> "CoeffSource":
        return cls("zeros")

    def values(self, re, im, stream: str = "a") -> np.ndarray:
        n = len(np.asarray(re))
        if self.kind == "ones":
            return np.ones(n, dtype=np.complex128)
        if self.kind == "zeros":
            return np.zeros(n, dtype=np.complex128)
        h1 = _hash_points(self.seed, stream + ":r", re, im)
        h2 = _hash_points(self.seed, stream + ":phi", re, im)
        r = np.sqrt(_to_unit(h1))
        phi = 2.0 * np.pi * _to_unit(h2)
        return r * np.exp(1j * phi)
