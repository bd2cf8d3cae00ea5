#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
volume.py

Reference volume renderer over analytic radiance fields.

A ray is split into `steps` uniform intervals of length delta = t_f / steps sampled at their left
endpoints t_j = j * delta. Each interval contributes alpha_j = 1 - exp(-sigma_j * delta) weighted by
the transmittance T_j = exp(-sum_{i<j} sigma_i * delta). Color and depth are the T * alpha weighted
sums of c_j and t_j. Fields with constant density have closed forms used as oracles.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from renderer.images import DepthMap, Image
from renderer.raytracer import Ray, generate_rays
from scenemodel.camera import CameraIntrinsics, CameraPose

logger = logging.getLogger(__name__)


class NonFiniteField(RuntimeError):
    pass


class FieldKeys:
    """
    Keys of an analytic field spec JSON document.
    """
    TYPE = "type"
    SIGMA = "sigma"
    COLOR = "color"
    FAR = "far"
    CENTER = "center"
    WIDTH = "width"
    RADIUS = "radius"

    class Types:
        CONSTANT = "constant"
        GAUSSIAN = "gaussian"
        SPHERE = "sphere"


@dataclass(frozen=True)
class AnalyticRadianceField:
    """
    A radiance field given by closed-form functions.

    Attributes:
        sigma (Callable): (N, 3) points -> (N,) density.
        color (Callable): (N, 3) points, (N, 3) directions -> (N, 3) RGB.
        far_bound (float): Integration bound t_f along each ray.
        name (str): Label used in reports.
    """
    sigma: Callable
    color: Callable
    far_bound: float
    name: str = "analytic"

    def __post_init__(self):
        if not self.far_bound > 0:
            raise ValueError(f"Field far bound must be positive, got {self.far_bound}")


@dataclass(frozen=True)
class VolumeSample:
    color: np.ndarray
    depth: float
    transmittance_final: float


def constant_field(sigma: float, color=(1.0, 1.0, 1.0), far_bound: float = 1.0) -> AnalyticRadianceField:
    rgb = np.asarray(color, dtype=np.float64)
    return AnalyticRadianceField(
        sigma=lambda points: np.full(points.shape[0], float(sigma)),
        color=lambda points, dirs: np.broadcast_to(rgb, points.shape),
        far_bound=far_bound,
        name=f"constant(sigma={sigma})")


def gaussian_field(center, sigma: float, width: float, color=(1.0, 1.0, 1.0),
                   far_bound: float = 1.0) -> AnalyticRadianceField:
    """Isotropic Gaussian density blob: sigma * exp(-|x - center|^2 / (2 width^2))."""
    c = np.asarray(center, dtype=np.float64)
    rgb = np.asarray(color, dtype=np.float64)

    def density(points):
        offset = points - c
        return sigma * np.exp(-np.sum(offset * offset, axis=-1) / (2.0 * width * width))

    return AnalyticRadianceField(density, lambda points, dirs: np.broadcast_to(rgb, points.shape), far_bound,
                                 name=f"gaussian(sigma={sigma}, width={width})")


def sphere_field(center, radius: float, sigma: float, color=(1.0, 1.0, 1.0),
                 far_bound: float = 1.0) -> AnalyticRadianceField:
    """Constant density inside a ball, empty outside."""
    c = np.asarray(center, dtype=np.float64)
    rgb = np.asarray(color, dtype=np.float64)

    def density(points):
        offset = points - c
        return np.where(np.sum(offset * offset, axis=-1) <= radius * radius, float(sigma), 0.0)

    return AnalyticRadianceField(density, lambda points, dirs: np.broadcast_to(rgb, points.shape), far_bound,
                                 name=f"sphere(sigma={sigma}, radius={radius})")


def field_from_dict(data: dict) -> AnalyticRadianceField:
    """
    Build a field from its JSON spec.

    Raises:
        ValueError: If the type is unknown or a required key is missing.
    """
    try:
        kind = data.get(FieldKeys.TYPE, FieldKeys.Types.CONSTANT)
        color = data.get(FieldKeys.COLOR, (1.0, 1.0, 1.0))
        far = float(data.get(FieldKeys.FAR, 1.0))
        if kind == FieldKeys.Types.CONSTANT:
            return constant_field(float(data[FieldKeys.SIGMA]), color, far)
        if kind == FieldKeys.Types.GAUSSIAN:
            return gaussian_field(data[FieldKeys.CENTER], float(data[FieldKeys.SIGMA]), float(data[FieldKeys.WIDTH]),
                                  color, far)
        if kind == FieldKeys.Types.SPHERE:
            return sphere_field(data[FieldKeys.CENTER], float(data[FieldKeys.RADIUS]), float(data[FieldKeys.SIGMA]),
                                color, far)
    except KeyError as e:
        raise ValueError(f"Field spec is missing key {e}") from e
    raise ValueError(f"Unknown field type '{kind}'")


def volume_render_ray(field: AnalyticRadianceField, ray: Ray, steps: int) -> VolumeSample:
    """
    Discretized volume rendering of one ray.

    Args:
        field (AnalyticRadianceField): The field to integrate.
        ray (Ray): Ray with unit direction.
        steps (int): Number of uniform intervals over [0, t_f].

    Returns:
        VolumeSample: Composited color, expected depth along the ray and final transmittance.

    Raises:
        NonFiniteField: If sigma or color evaluate non-finite, or sigma is negative.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    delta = field.far_bound / steps
    t = np.arange(steps, dtype=np.float64) * delta
    points = ray.at(t)
    dirs = np.broadcast_to(ray.direction, points.shape)
    sigma = np.asarray(field.sigma(points), dtype=np.float64)
    color = np.asarray(field.color(points, dirs), dtype=np.float64)
    if not np.all(np.isfinite(sigma)) or not np.all(np.isfinite(color)):
        raise NonFiniteField(f"Field '{field.name}' evaluated to a non-finite value")
    if np.any(sigma < 0):
        raise NonFiniteField(f"Field '{field.name}' has negative density")

    optical = sigma * delta
    accumulated = np.cumsum(optical)
    transmittance = np.exp(-(accumulated - optical))
    weights = transmittance * -np.expm1(-optical)
    return VolumeSample(color=weights @ color, depth=float(weights @ t),
                        transmittance_final=float(np.exp(-accumulated[-1])))


def constant_field_reference(sigma: float, color, far_bound: float) -> VolumeSample:
    """
    Closed-form volume rendering of a homogeneous medium.

    color = c (1 - exp(-sigma t_f)), depth = (1 - exp(-sigma t_f)(1 + sigma t_f)) / sigma.
    """
    rgb = np.asarray(color, dtype=np.float64)
    if sigma == 0:
        return VolumeSample(np.zeros(3), 0.0, 1.0)
    attenuation = math.exp(-sigma * far_bound)
    depth = (1.0 - attenuation * (1.0 + sigma * far_bound)) / sigma
    return VolumeSample(rgb * (1.0 - attenuation), depth, attenuation)


def render_field_image(field: AnalyticRadianceField, intr: CameraIntrinsics, pose: CameraPose, steps: int,
                       threads: int = 1) -> tuple:
    """
    Volume render every pixel of a camera.

    Returns:
        tuple: (Image, DepthMap, transmittance (H, W)); depth is camera z and invalid where nothing was hit.
    """
    rays = generate_rays(intr, pose)

    def render_row(v):
        row = [volume_render_ray(field, Ray(rays.origin, rays.directions[v, u]), steps) for u in range(intr.width)]
        return (np.array([s.color for s in row]), np.array([s.depth for s in row]),
                np.array([s.transmittance_final for s in row]))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(render_row, range(intr.height)))
    else:
        rows = [render_row(v) for v in range(intr.height)]
    color = np.stack([r[0] for r in rows])
    ray_depth = np.stack([r[1] for r in rows])
    transmittance = np.stack([r[2] for r in rows])
    depth = ray_depth * rays.camera_directions[..., 2]
    return Image(np.clip(color, 0.0, None)), DepthMap.from_values(depth, depth > 0), transmittance


@dataclass(frozen=True)
class ConvergenceRow:
    steps: int
    color_error: float
    depth_error: float
    depth_error_ratio: float


def convergence_table(field: AnalyticRadianceField, ray: Ray, steps_list, reference: VolumeSample) -> list:
    """
    Errors against a reference for increasing step counts.

    The ratio column is error(previous row) / error(this row); first-order quadrature gives ~2 when steps double.
    """
    rows = []
    previous = None
    for steps in steps_list:
        sample = volume_render_ray(field, ray, steps)
        color_error = float(np.max(np.abs(sample.color - reference.color)))
        depth_error = abs(sample.depth - reference.depth)
        ratio = previous / depth_error if previous is not None and depth_error > 0 else float("nan")
        rows.append(ConvergenceRow(steps, color_error, depth_error, ratio))
        logger.debug("steps=%d color_err=%.3e depth_err=%.3e", steps, color_error, depth_error)
        previous = depth_error
    return rows
