#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
textures.py

Procedural solid textures evaluated at world-space hit points.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

from dataclasses import dataclass

import numpy as np

from scenemodel.scenekeys import SceneKeys


def _rgb(values) -> tuple:
    rgb = tuple(float(v) for v in values)
    if len(rgb) != 3 or min(rgb) < 0:
        raise ValueError(f"Expected a non-negative RGB triple, got {values}")
    return rgb


@dataclass(frozen=True)
class SolidTexture:
    color: tuple = (1.0, 1.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "color", _rgb(self.color))

    def albedo(self, points: np.ndarray) -> np.ndarray:
        return np.broadcast_to(np.array(self.color), points.shape).copy()

    def to_dict(self) -> dict:
        return {SceneKeys.TYPE: SceneKeys.Textures.SOLID, SceneKeys.COLOR: list(self.color)}


@dataclass(frozen=True)
class CheckerTexture:
    """
    A 3D checkerboard: cells of edge `scale` alternate between color_a and color_b.
    """
    color_a: tuple = (0.9, 0.9, 0.9)
    color_b: tuple = (0.1, 0.1, 0.1)
    scale: float = 0.25

    def __post_init__(self):
        object.__setattr__(self, "color_a", _rgb(self.color_a))
        object.__setattr__(self, "color_b", _rgb(self.color_b))
        if not self.scale > 0:
            raise ValueError(f"Checker scale must be positive, got {self.scale}")

    def albedo(self, points: np.ndarray) -> np.ndarray:
        cells = np.floor(points / self.scale).astype(np.int64)
        parity = (cells[..., 0] + cells[..., 1] + cells[..., 2]) & 1
        return np.where(parity[..., None] == 0, np.array(self.color_a), np.array(self.color_b))

    def to_dict(self) -> dict:
        return {SceneKeys.TYPE: SceneKeys.Textures.CHECKER,
                SceneKeys.COLORS: [list(self.color_a), list(self.color_b)],
                SceneKeys.SCALE: self.scale}


def _lattice_values(ix: np.ndarray, iy: np.ndarray, iz: np.ndarray, seed: int) -> np.ndarray:
    # splitmix64 finalizer over a linear mix of the lattice coordinates
    h = (ix.astype(np.uint64) * np.uint64(0x9E3779B97F4A7C15)
         ^ iy.astype(np.uint64) * np.uint64(0xC2B2AE3D27D4EB4F)
         ^ iz.astype(np.uint64) * np.uint64(0x165667B19E3779F9)
         ^ np.uint64(seed & 0xFFFFFFFFFFFFFFFF))
    h = (h ^ (h >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    h = (h ^ (h >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    h = h ^ (h >> np.uint64(31))
    return (h >> np.uint64(11)).astype(np.float64) / float(1 << 53)


@dataclass(frozen=True)
class NoiseTexture:
    """
    Trilinear value noise with smoothstep fade, blending color_a (noise 0) to color_b (noise 1).

    The lattice spacing is `scale` scene units; the field is C1 so it stays bilinear-smooth at
    pixel scale when scale spans many pixels.
    """
    color_a: tuple = (0.2, 0.3, 0.6)
    color_b: tuple = (0.9, 0.8, 0.4)
    scale: float = 0.5
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "color_a", _rgb(self.color_a))
        object.__setattr__(self, "color_b", _rgb(self.color_b))
        if not self.scale > 0:
            raise ValueError(f"Noise scale must be positive, got {self.scale}")

    def value(self, points: np.ndarray) -> np.ndarray:
        q = points / self.scale
        base = np.floor(q)
        f = q - base
        f = f * f * (3.0 - 2.0 * f)
        i = base.astype(np.int64)
        total = np.zeros(points.shape[:-1])
        for dx in (0, 1):
            wx = f[..., 0] if dx else 1.0 - f[..., 0]
            for dy in (0, 1):
                wy = f[..., 1] if dy else 1.0 - f[..., 1]
                for dz in (0, 1):
                    wz = f[..., 2] if dz else 1.0 - f[..., 2]
                    corner = _lattice_values(i[..., 0] + dx, i[..., 1] + dy, i[..., 2] + dz, self.seed)
                    total = total + wx * wy * wz * corner
        return total

    def albedo(self, points: np.ndarray) -> np.ndarray:
        t = self.value(points)[..., None]
        return np.array(self.color_a) + (np.array(self.color_b) - np.array(self.color_a)) * t

    def to_dict(self) -> dict:
        return {SceneKeys.TYPE: SceneKeys.Textures.NOISE,
                SceneKeys.COLORS: [list(self.color_a), list(self.color_b)],
                SceneKeys.SCALE: self.scale, SceneKeys.SEED: self.seed}


def texture_from_dict(data: dict):
    """
    Build a texture from its JSON block.

    Raises:
        ValueError: If the texture type is unknown or a field is invalid.
    """
    if data is None:
        return SolidTexture()
    kind = data.get(SceneKeys.TYPE, SceneKeys.Textures.SOLID)
    if kind == SceneKeys.Textures.SOLID:
        return SolidTexture(color=data.get(SceneKeys.COLOR, (1.0, 1.0, 1.0)))
    if kind == SceneKeys.Textures.CHECKER:
        colors = data.get(SceneKeys.COLORS, [(0.9, 0.9, 0.9), (0.1, 0.1, 0.1)])
        return CheckerTexture(color_a=colors[0], color_b=colors[1], scale=float(data.get(SceneKeys.SCALE, 0.25)))
    if kind == SceneKeys.Textures.NOISE:
        colors = data.get(SceneKeys.COLORS, [(0.2, 0.3, 0.6), (0.9, 0.8, 0.4)])
        return NoiseTexture(color_a=colors[0], color_b=colors[1], scale=float(data.get(SceneKeys.SCALE, 0.5)),
                            seed=int(data.get(SceneKeys.SEED, 0)))
    raise ValueError(f"Unknown texture type: {kind}")
