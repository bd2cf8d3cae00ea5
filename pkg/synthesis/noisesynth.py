#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
noisesynth.py

Signal-dependent noise degradation.

Display-referred frames are linearized by inverse gamma, white balanced with random per-channel
gains, corrupted with heteroscedastic Gaussian shot/read noise of variance
(g * read)^2 + g * shot * x, then white balance is undone and gamma re-applied.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import logging
from dataclasses import asdict, dataclass, field

import numpy as np

from renderer.images import Image

logger = logging.getLogger(__name__)

DEFAULT_GAMMA = 2.2
DEFAULT_WB_RANGE = (0.7, 1.3)
DEFAULT_SHOT_COEFF = 2.5e-4
DEFAULT_READ_COEFF = 1e-3


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class NoiseConfig:
    """
    Parameters of one degradation setting.

    Attributes:
        gain (float): Sensor gain g >= 1.
        gamma (float): Display gamma.
        wb_range (tuple): Interval of the per-channel white-balance gains.
        shot_coeff (float): Shot-noise variance per unit signal per unit gain.
        read_coeff (float): Read-noise standard deviation per unit gain.
        clip_max (float): Upper clamp after noise.
    """
    gain: float = 1.0
    gamma: float = DEFAULT_GAMMA
    wb_range: tuple = DEFAULT_WB_RANGE
    shot_coeff: float = DEFAULT_SHOT_COEFF
    read_coeff: float = DEFAULT_READ_COEFF
    clip_max: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "wb_range", tuple(float(v) for v in self.wb_range))
        if self.gain < 1:
            raise ValueError(f"Noise gain must be >= 1, got {self.gain}")
        if self.gamma <= 0:
            raise ValueError(f"Gamma must be positive, got {self.gamma}")
        lo, hi = self.wb_range
        if not 0 < lo <= hi:
            raise ValueError(f"White balance range must satisfy 0 < lo <= hi, got {self.wb_range}")
        if self.shot_coeff < 0 or self.read_coeff < 0:
            raise ValueError("Noise coefficients must be non-negative")
        if self.clip_max <= 0:
            raise ValueError(f"clip_max must be positive, got {self.clip_max}")

    @staticmethod
    def noiseless() -> "NoiseConfig":
        return NoiseConfig(wb_range=(1.0, 1.0), shot_coeff=0.0, read_coeff=0.0)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["wb_range"] = list(self.wb_range)
        return data

    @staticmethod
    def from_dict(data: dict) -> "NoiseConfig":
        return NoiseConfig(**data)


@dataclass(frozen=True)
class DegradeRecord:
    """
    What is needed to reproduce or invert a degradation: the sampled white-balance gains, the seed
    of the generator and the configuration.
    """
    gains: tuple
    seed: int = None
    config: NoiseConfig = field(default_factory=NoiseConfig)

    def to_dict(self) -> dict:
        return {"gains": list(self.gains), "seed": self.seed, "config": self.config.to_dict()}

    @staticmethod
    def from_dict(data: dict) -> "DegradeRecord":
        return DegradeRecord(gains=tuple(data["gains"]), seed=data.get("seed"),
                             config=NoiseConfig.from_dict(data["config"]))


def linearize(img: Image, gamma: float) -> Image:
    """
    Inverse gamma: out = in ** gamma.

    Raises:
        OutOfRange: If any value is negative.
    """
    if np.any(img.data < 0):
        raise OutOfRange("Cannot linearize negative values")
    return Image(np.power(img.data, gamma))


def delinearize(img: Image, gamma: float) -> Image:
    if np.any(img.data < 0):
        raise OutOfRange("Cannot delinearize negative values")
    return Image(np.power(img.data, 1.0 / gamma))


def apply_white_balance(img: Image, rng: np.random.Generator, wb_range: tuple) -> tuple:
    """
    Multiply each channel by a gain drawn once per image from U(lo, hi).

    Returns:
        tuple: (balanced Image, gains as a 3-tuple).
    """
    lo, hi = wb_range
    gains = rng.uniform(lo, hi, size=3)
    return Image(img.data * gains), tuple(float(g) for g in gains)


def undo_white_balance(img: Image, gains: tuple) -> Image:
    return Image(img.data / np.asarray(gains, dtype=np.float64))


def noise_variance(signal, cfg: NoiseConfig):
    """Per-sample variance of the noise model at linear signal level `signal`."""
    return (cfg.gain * cfg.read_coeff) ** 2 + cfg.gain * cfg.shot_coeff * np.asarray(signal)


def sample_shot_read_noise(data: np.ndarray, cfg: NoiseConfig, rng: np.random.Generator) -> np.ndarray:
    """Noisy samples of `data` before clamping."""
    std = np.sqrt(np.maximum(noise_variance(data, cfg), 0.0))
    return data + std * rng.standard_normal(data.shape)


def add_shot_read_noise(img: Image, cfg: NoiseConfig, rng: np.random.Generator) -> Image:
    """
    Add heteroscedastic Gaussian noise and clamp to [0, clip_max].
    """
    return Image(np.clip(sample_shot_read_noise(img.data, cfg, rng), 0.0, cfg.clip_max))


def degrade(img: Image, cfg: NoiseConfig, rng: np.random.Generator, seed: int = None) -> tuple:
    """
    Full degradation of a display-referred image.

    Args:
        img (Image): Values in [0, 1].
        cfg (NoiseConfig): Noise parameters.
        rng (np.random.Generator): Generator for the gains and the noise.
        seed (int, optional): Seed `rng` was built from, recorded for reproducibility.

    Returns:
        tuple: (degraded Image, DegradeRecord).
    """
    linear = linearize(img, cfg.gamma)
    balanced, gains = apply_white_balance(linear, rng, cfg.wb_range)
    noisy = add_shot_read_noise(balanced, cfg, rng)
    restored = Image(np.clip(undo_white_balance(noisy, gains).data, 0.0, cfg.clip_max))
    out = delinearize(restored, cfg.gamma)
    logger.debug("Degraded %dx%d image at gain %.1f with wb gains %s", img.width, img.height, cfg.gain, gains)
    return out, DegradeRecord(gains=gains, seed=seed, config=cfg)


def postprocess_prediction(img_linear: Image, gains: tuple, gamma: float = DEFAULT_GAMMA) -> Image:
    """
    Bring a linear prediction into the display frame of a noisy training target by applying
    the recorded white-balance gains and gamma.
    """
    balanced = np.clip(img_linear.data * np.asarray(gains, dtype=np.float64), 0.0, None)
    return delinearize(Image(balanced), gamma)
