#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
losses.py

Training objectives with analytic gradients: photometric MSE, smooth-L1 depth, L1 restoration,
their weighted total and the annealing schedule of the restoration weight.

Every loss returns (value, gradient with respect to the prediction). Losses are per-element means;
the restoration loss sums the per-image means over the list it is given.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import math
from dataclasses import dataclass

import numpy as np


class ShapeMismatch(ValueError):
    pass


class NoValidPixels(ValueError):
    pass


class NonFinite(RuntimeError):
    pass


def as_array(value) -> np.ndarray:
    """Image, DepthMap or array-like as a float64 array."""
    return np.asarray(getattr(value, "data", value), dtype=np.float64)


def _check_shapes(a: np.ndarray, b: np.ndarray):
    if a.shape != b.shape:
        raise ShapeMismatch(f"Shapes differ: {a.shape} vs {b.shape}")


@dataclass(frozen=True)
class LossWeights:
    lambda_depth: float = 1.0
    lambda_restore: float = 0.01
    beta: float = 1.0

    def __post_init__(self):
        if min(self.lambda_depth, self.lambda_restore, self.beta) < 0:
            raise ValueError("Loss weights must be non-negative")


@dataclass(frozen=True)
class AnnealSchedule:
    alpha: float = 0.99997
    floor: float = 0.01

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise ValueError(f"Anneal alpha must be in (0, 1], got {self.alpha}")
        if not 0 <= self.floor <= 1:
            raise ValueError(f"Anneal floor must be in [0, 1], got {self.floor}")


def photometric_loss(pred, gt) -> tuple:
    """
    Mean squared error.

    Returns:
        tuple: (value, 2 (pred - gt) / N).
    """
    pred, gt = as_array(pred), as_array(gt)
    _check_shapes(pred, gt)
    diff = pred - gt
    return float(np.mean(diff * diff)), 2.0 * diff / diff.size


def smooth_l1(d, beta: float = 1.0) -> np.ndarray:
    """0.5 d^2 / beta inside |d| < beta, |d| - 0.5 beta outside."""
    d = np.asarray(d, dtype=np.float64)
    if beta == 0:
        return np.abs(d)
    magnitude = np.abs(d)
    return np.where(magnitude < beta, 0.5 * d * d / beta, magnitude - 0.5 * beta)


def smooth_l1_derivative(d, beta: float = 1.0) -> np.ndarray:
    d = np.asarray(d, dtype=np.float64)
    if beta == 0:
        return np.sign(d)
    return np.where(np.abs(d) < beta, d / beta, np.sign(d))


def depth_loss(pred, pseudo_gt, beta: float = 1.0) -> tuple:
    """
    Smooth-L1 depth loss over pixels valid in both maps.

    The pseudo ground truth is a constant target; only the gradient with respect to `pred` is returned.

    Returns:
        tuple: (value, gradient with zeros on excluded pixels).

    Raises:
        NoValidPixels: If no pixel is valid in both maps.
    """
    pred, target = as_array(pred), as_array(pseudo_gt)
    _check_shapes(pred, target)
    valid = np.isfinite(pred) & np.isfinite(target) & (pred > 0) & (target > 0)
    count = int(np.count_nonzero(valid))
    if count == 0:
        raise NoValidPixels("Depth maps share no valid pixel")
    d = np.where(valid, pred - target, 0.0)
    value = float(np.sum(np.where(valid, smooth_l1(d, beta), 0.0)) / count)
    grad = np.where(valid, smooth_l1_derivative(d, beta), 0.0) / count
    return value, grad


def restoration_loss(restored: list, clean: list) -> tuple:
    """
    Sum over images of the mean absolute error.

    Returns:
        tuple: (value, list of subgradients sign(restored - clean) / N per image).
    """
    if len(restored) != len(clean):
        raise ShapeMismatch(f"{len(restored)} restored images for {len(clean)} clean ones")
    value = 0.0
    grads = []
    for r, c in zip(restored, clean):
        r, c = as_array(r), as_array(c)
        _check_shapes(r, c)
        diff = r - c
        value += float(np.mean(np.abs(diff)))
        grads.append(np.sign(diff) / diff.size)
    return value, grads


def anneal_weight(lambda_restore: float, sched: AnnealSchedule, nstep: int) -> float:
    """max(floor, alpha ** nstep) * lambda_restore."""
    if nstep < 0:
        raise ValueError(f"nstep must be non-negative, got {nstep}")
    return max(sched.floor, sched.alpha ** nstep) * lambda_restore


def total_loss(photo: float, depth: float, restore: float, weights: LossWeights = LossWeights(), nstep: int = 0,
               sched: AnnealSchedule = AnnealSchedule()) -> float:
    """
    photo + lambda_depth * depth + anneal_weight(lambda_restore, sched, nstep) * restore.

    Raises:
        NonFinite: If a component or the result is not finite.
    """
    for name, value in (("photometric", photo), ("depth", depth), ("restoration", restore)):
        if not math.isfinite(value):
            raise NonFinite(f"The {name} loss is not finite: {value}")
    total = photo + weights.lambda_depth * depth + anneal_weight(weights.lambda_restore, sched, nstep) * restore
    if not math.isfinite(total):
        raise NonFinite(f"Total loss is not finite: {total}")
    return total


def numerical_gradient(fn, x, h: float = 1e-5) -> np.ndarray:
    """
    Central finite differences of a scalar function of an array.
    """
    x = np.array(x, dtype=np.float64)
    grad = np.zeros_like(x)
    flat = x.reshape(-1)
    out = grad.reshape(-1)
    for index in range(flat.size):
        original = flat[index]
        flat[index] = original + h
        upper = fn(x)
        flat[index] = original - h
        lower = fn(x)
        flat[index] = original
        out[index] = (upper - lower) / (2.0 * h)
    return grad
