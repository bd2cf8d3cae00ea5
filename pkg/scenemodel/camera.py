#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
camera.py

Camera parameterization for MVBLUR.

This module defines the spherical camera placement used by the blur synthesizer, the pinhole
intrinsics and the world-to-camera rigid pose shared by the renderer and the multi-view geometry
package.

Conventions:
    - Spherical coordinates use the physics convention: phi is the polar angle measured from +z,
      theta is the azimuth measured from +x in the xy-plane, both in degrees.
    - Poses are world->camera with the OpenCV axis layout: +x right, +y down, +z forward.
    - Continuous pixel coordinates place the center of pixel (i, j) at (i + 0.5, j + 0.5).
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import math
from dataclasses import dataclass, field

import numpy as np


ORTHONORMAL_TOLERANCE = 1e-9


class DegenerateLookAt(ValueError):
    """Raised when a look-at frame cannot be built because up is parallel to the view direction."""


def _frozen_array(values, shape: tuple) -> np.ndarray:
    array = np.array(values, dtype=np.float64).reshape(shape)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SphericalCoord:
    """
    A camera position on a sphere around the scene origin.

    Attributes:
        r (float): Radial distance in scene units, > 0.
        phi (float): Polar angle in degrees in [0, 180], measured from +z.
        theta (float): Azimuthal angle in degrees, measured from +x, wrapped into [0, 360).
    """
    r: float
    phi: float
    theta: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"Spherical radius must be positive, got {self.r}")
        if not 0.0 <= self.phi <= 180.0:
            raise ValueError(f"Polar angle must lie in [0, 180] degrees, got {self.phi}")
        if not math.isfinite(self.theta):
            raise ValueError(f"Azimuthal angle must be finite, got {self.theta}")
        theta = float(self.theta) % 360.0
        # a tiny negative angle rounds up to exactly 360
        object.__setattr__(self, "theta", 0.0 if theta == 360.0 else theta)

    def to_dict(self) -> dict:
        return {"r": self.r, "phi": self.phi, "theta": self.theta}

    @staticmethod
    def from_dict(data: dict) -> "SphericalCoord":
        return SphericalCoord(r=float(data["r"]), phi=float(data["phi"]), theta=float(data["theta"]))


def spherical_to_cartesian(c: SphericalCoord) -> np.ndarray:
    """
    Convert a spherical coordinate to a Cartesian point.

    Args:
        c (SphericalCoord): The spherical coordinate (degrees).

    Returns:
        np.ndarray: The point (x, y, z).
    """
    phi = math.radians(c.phi)
    theta = math.radians(c.theta)
    return np.array([c.r * math.sin(phi) * math.cos(theta),
                     c.r * math.sin(phi) * math.sin(theta),
                     c.r * math.cos(phi)], dtype=np.float64)


def cartesian_to_spherical(point) -> SphericalCoord:
    """
    Convert a Cartesian point to a spherical coordinate with theta wrapped into [0, 360).

    Raises:
        ValueError: If the point is the origin.
    """
    x, y, z = (float(v) for v in point)
    r = math.sqrt(x * x + y * y + z * z)
    if r == 0.0:
        raise ValueError("The origin has no spherical representation")
    phi = math.degrees(math.acos(max(-1.0, min(1.0, z / r))))
    theta = math.degrees(math.atan2(y, x)) % 360.0
    return SphericalCoord(r=r, phi=phi, theta=theta)


@dataclass(frozen=True)
class CameraIntrinsics:
    """
    Pinhole intrinsics in pixels.

    Attributes:
        fx (float): Horizontal focal length.
        fy (float): Vertical focal length.
        cx (float): Principal point x, continuous pixel coordinates.
        cy (float): Principal point y, continuous pixel coordinates.
        width (int): Image width.
        height (int): Image height.
    """
    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.fx > 0 and self.fy > 0):
            raise ValueError(f"Focal lengths must be positive, got fx={self.fx}, fy={self.fy}")
        if not (0 <= self.cx < self.width and 0 <= self.cy < self.height):
            raise ValueError(f"Principal point ({self.cx}, {self.cy}) outside a {self.width}x{self.height} image")

    @staticmethod
    def from_fov(width: int, height: int, fov_deg: float) -> "CameraIntrinsics":
        """
        Build square-pixel intrinsics from a horizontal field of view, principal point at the image center.
        """
        if not 0 < fov_deg < 180:
            raise ValueError(f"Field of view must be in (0, 180) degrees, got {fov_deg}")
        focal = width / (2.0 * math.tan(math.radians(fov_deg) / 2.0))
        return CameraIntrinsics(fx=focal, fy=focal, cx=width / 2.0, cy=height / 2.0, width=width, height=height)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.fx, 0.0, self.cx],
                         [0.0, self.fy, self.cy],
                         [0.0, 0.0, 1.0]], dtype=np.float64)

    def to_dict(self) -> dict:
        return {"fx": self.fx, "fy": self.fy, "cx": self.cx, "cy": self.cy,
                "width": self.width, "height": self.height}

    @staticmethod
    def from_dict(data: dict) -> "CameraIntrinsics":
        return CameraIntrinsics(fx=float(data["fx"]), fy=float(data["fy"]), cx=float(data["cx"]),
                                cy=float(data["cy"]), width=int(data["width"]), height=int(data["height"]))


@dataclass(frozen=True, eq=False)
class CameraPose:
    """
    A world->camera rigid transform x_cam = R x_world + t.

    Attributes:
        rotation (np.ndarray): 3x3 orthonormal matrix with determinant +1.
        translation (np.ndarray): 3-vector in camera frame, scene units.
    """
    rotation: np.ndarray
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        rotation = _frozen_array(self.rotation, (3, 3))
        translation = _frozen_array(self.translation, (3,))
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "translation", translation)
        if not np.allclose(rotation.T @ rotation, np.eye(3), rtol=0.0, atol=ORTHONORMAL_TOLERANCE):
            raise ValueError("Pose rotation is not orthonormal")
        if abs(np.linalg.det(rotation) - 1.0) > ORTHONORMAL_TOLERANCE:
            raise ValueError("Pose rotation must have determinant +1")

    @staticmethod
    def identity() -> "CameraPose":
        return CameraPose(np.eye(3), np.zeros(3))

    @staticmethod
    def from_matrix(matrix) -> "CameraPose":
        """
        Build a pose from a 4x4 (or 3x4) world->camera matrix.

        Raises:
            ValueError: If the bottom row of a 4x4 matrix is not (0, 0, 0, 1).
        """
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.shape == (4, 4) and not np.array_equal(matrix[3], [0.0, 0.0, 0.0, 1.0]):
            raise ValueError(f"Pose bottom row must be (0, 0, 0, 1), got {matrix[3].tolist()}")
        return CameraPose(matrix[:3, :3], matrix[:3, 3])

    @property
    def matrix(self) -> np.ndarray:
        """4x4 homogeneous world->camera matrix."""
        out = np.eye(4)
        out[:3, :3] = self.rotation
        out[:3, 3] = self.translation
        return out

    @property
    def center(self) -> np.ndarray:
        """Camera center in world coordinates, -R^T t."""
        return -self.rotation.T @ self.translation

    def inverse_matrix(self) -> np.ndarray:
        """4x4 camera->world matrix."""
        out = np.eye(4)
        out[:3, :3] = self.rotation.T
        out[:3, 3] = self.center
        return out

    def transform(self, points) -> np.ndarray:
        """Map world points (..., 3) into the camera frame."""
        points = np.asarray(points, dtype=np.float64)
        return points @ self.rotation.T + self.translation

    def to_list(self) -> list:
        return self.matrix.tolist()


def look_at_pose(position, target, up=(0.0, 0.0, 1.0)) -> CameraPose:
    """
    Build a world->camera pose at `position` whose +z (forward) axis points at `target`.

    The image +y axis points along -up, so `up` appears at the top of the image.

    Args:
        position: Camera center in world coordinates.
        target: Point the camera looks at.
        up: World up hint.

    Returns:
        CameraPose: The look-at pose.

    Raises:
        DegenerateLookAt: If position equals target or up is parallel to the view direction.
    """
    position = np.asarray(position, dtype=np.float64)
    forward = np.asarray(target, dtype=np.float64) - position
    norm = np.linalg.norm(forward)
    if norm == 0.0:
        raise DegenerateLookAt("Camera position coincides with the look-at target")
    forward = forward / norm
    right = np.cross(forward, np.asarray(up, dtype=np.float64))
    right_norm = np.linalg.norm(right)
    if right_norm < 1e-12:
        raise DegenerateLookAt(f"Up vector {tuple(up)} is parallel to the view direction")
    right = right / right_norm
    down = np.cross(forward, right)
    rotation = np.stack([right, down, forward])
    return CameraPose(rotation, -rotation @ position)


def camera_rays(intr: CameraIntrinsics, pose: CameraPose) -> tuple:
    """
    Unit ray directions through every pixel center.

    Returns:
        tuple: (origin (3,), world directions (H, W, 3), camera-frame directions (H, W, 3)).
    """
    u = np.arange(intr.width, dtype=np.float64) + 0.5
    v = np.arange(intr.height, dtype=np.float64) + 0.5
    uu, vv = np.meshgrid(u, v)
    x = (uu - intr.cx) / intr.fx
    y = (vv - intr.cy) / intr.fy
    z = np.ones_like(x)
    inv_norm = 1.0 / np.sqrt(x * x + y * y + z * z)
    cam_dirs = np.stack([x * inv_norm, y * inv_norm, z * inv_norm], axis=-1)
    world_dirs = cam_dirs @ pose.rotation
    return pose.center, world_dirs, cam_dirs
