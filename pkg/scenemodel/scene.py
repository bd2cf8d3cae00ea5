#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
scene.py

Procedural 3D scenes.

A Scene is a small union of analytic primitives (spheres, axis-aligned boxes and finite square
planes), each carrying a procedural texture and a Lambertian material, lit by directional lights
and an ambient term. Scenes are loaded from schema-1 JSON files (see SceneKeys) that may live on
disk or behind a URL.

Classes:
    Sphere, Box, Plane: Primitives with vectorized ray intersection.
    DirectionalLight: A light arriving from a fixed direction.
    Scene: The primitive/light collection with bounds and nearest-hit queries.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import logging
from dataclasses import dataclass, field

import numpy as np

from scenemodel.scenekeys import SceneKeys
from scenemodel.textures import CheckerTexture, NoiseTexture, SolidTexture, texture_from_dict

logger = logging.getLogger(__name__)

HIT_EPSILON = 1e-9
DEMO_COOL = (0.15, 0.25, 0.5)
DEMO_WARM = (0.95, 0.85, 0.45)


class SceneFileError(ValueError):
    """Raised when a scene definition is malformed or describes a degenerate scene."""


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def _vec3(values, name: str) -> np.ndarray:
    array = np.asarray(values, dtype=np.float64)
    if array.shape != (3,) or not np.all(np.isfinite(array)):
        raise SceneFileError(f"'{name}' must be a finite 3-vector, got {values}")
    return array


@dataclass(frozen=True, eq=False)
class Sphere:
    center: np.ndarray
    radius: float
    texture: object = field(default_factory=SolidTexture)

    def __post_init__(self):
        object.__setattr__(self, "center", _vec3(self.center, SceneKeys.CENTER))
        if not self.radius > 0:
            raise SceneFileError(f"Sphere radius must be positive, got {self.radius}")

    def bounds(self) -> tuple:
        return self.center - self.radius, self.center + self.radius

    def intersect(self, origin: np.ndarray, directions: np.ndarray) -> np.ndarray:
        """Nearest positive ray parameter per direction, inf on a miss."""
        oc = origin - self.center
        b = _dot(directions, oc)
        c = _dot(oc, oc) - self.radius * self.radius
        disc = b * b - c
        hit = disc >= 0.0
        root = np.sqrt(np.where(hit, disc, 0.0))
        near = -b - root
        far = -b + root
        t = np.where(near > HIT_EPSILON, near, far)
        return np.where(hit & (t > HIT_EPSILON), t, np.inf)

    def normals(self, points: np.ndarray) -> np.ndarray:
        return (points - self.center) / self.radius

    def scaled(self, s: float) -> "Sphere":
        return Sphere(self.center * s, self.radius * s, self.texture)

    def to_dict(self) -> dict:
        return {SceneKeys.TYPE: SceneKeys.Primitives.SPHERE, SceneKeys.CENTER: self.center.tolist(),
                SceneKeys.RADIUS: self.radius, SceneKeys.TEXTURE: self.texture.to_dict()}


@dataclass(frozen=True, eq=False)
class Box:
    minimum: np.ndarray
    maximum: np.ndarray
    texture: object = field(default_factory=SolidTexture)

    def __post_init__(self):
        object.__setattr__(self, "minimum", _vec3(self.minimum, SceneKeys.MIN))
        object.__setattr__(self, "maximum", _vec3(self.maximum, SceneKeys.MAX))
        if not np.all(self.maximum > self.minimum):
            raise SceneFileError(f"Box max {self.maximum.tolist()} must exceed min {self.minimum.tolist()}")

    def bounds(self) -> tuple:
        return self.minimum, self.maximum

    def intersect(self, origin: np.ndarray, directions: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / directions
            t1 = (self.minimum - origin) * inv
            t2 = (self.maximum - origin) * inv
        t_near = np.fmax(np.fmax(np.fmin(t1[..., 0], t2[..., 0]), np.fmin(t1[..., 1], t2[..., 1])),
                         np.fmin(t1[..., 2], t2[..., 2]))
        t_far = np.fmin(np.fmin(np.fmax(t1[..., 0], t2[..., 0]), np.fmax(t1[..., 1], t2[..., 1])),
                        np.fmax(t1[..., 2], t2[..., 2]))
        hit = (t_near <= t_far) & (t_far > HIT_EPSILON)
        t = np.where(t_near > HIT_EPSILON, t_near, t_far)
        return np.where(hit, t, np.inf)

    def normals(self, points: np.ndarray) -> np.ndarray:
        center = 0.5 * (self.minimum + self.maximum)
        half = 0.5 * (self.maximum - self.minimum)
        local = (points - center) / half
        axis = np.argmax(np.abs(local), axis=-1)
        out = np.zeros_like(points)
        np.put_along_axis(out, axis[..., None], np.sign(np.take_along_axis(local, axis[..., None], axis=-1)), axis=-1)
        return out

    def scaled(self, s: float) -> "Box":
        return Box(self.minimum * s, self.maximum * s, self.texture)

    def to_dict(self) -> dict:
        return {SceneKeys.TYPE: SceneKeys.Primitives.BOX, SceneKeys.MIN: self.minimum.tolist(),
                SceneKeys.MAX: self.maximum.tolist(), SceneKeys.TEXTURE: self.texture.to_dict()}


@dataclass(frozen=True, eq=False)
class Plane:
    """
    A finite, two-sided square patch of half edge `half_size` centered at `center`.
    """
    center: np.ndarray
    normal: np.ndarray
    half_size: float
    texture: object = field(default_factory=SolidTexture)

    def __post_init__(self):
        object.__setattr__(self, "center", _vec3(self.center, SceneKeys.CENTER))
        normal = _vec3(self.normal, SceneKeys.NORMAL)
        length = np.linalg.norm(normal)
        if length == 0.0:
            raise SceneFileError("Plane normal must be non-zero")
        object.__setattr__(self, "normal", normal / length)
        if not self.half_size > 0:
            raise SceneFileError(f"Plane half_size must be positive, got {self.half_size}")

    @property
    def axes(self) -> tuple:
        helper = np.array([1.0, 0.0, 0.0]) if abs(self.normal[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        u = np.cross(self.normal, helper)
        u = u / np.linalg.norm(u)
        return u, np.cross(self.normal, u)

    def bounds(self) -> tuple:
        u, v = self.axes
        corners = np.array([self.center + su * self.half_size * u + sv * self.half_size * v
                            for su in (-1, 1) for sv in (-1, 1)])
        return corners.min(axis=0), corners.max(axis=0)

    def intersect(self, origin: np.ndarray, directions: np.ndarray) -> np.ndarray:
        denom = _dot(directions, self.normal)
        facing = np.abs(denom) > 1e-12
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(facing, _dot(self.center - origin, self.normal) / np.where(facing, denom, 1.0), np.inf)
        u, v = self.axes
        offset = origin + t[..., None] * directions - self.center
        with np.errstate(invalid="ignore"):
            inside = (np.abs(_dot(offset, u)) <= self.half_size) & (np.abs(_dot(offset, v)) <= self.half_size)
        return np.where(facing & inside & (t > HIT_EPSILON), t, np.inf)

    def normals(self, points: np.ndarray) -> np.ndarray:
        return np.broadcast_to(self.normal, points.shape).copy()

    def scaled(self, s: float) -> "Plane":
        return Plane(self.center * s, self.normal, self.half_size * s, self.texture)

    def to_dict(self) -> dict:
        return {SceneKeys.TYPE: SceneKeys.Primitives.PLANE, SceneKeys.CENTER: self.center.tolist(),
                SceneKeys.NORMAL: self.normal.tolist(), SceneKeys.HALF_SIZE: self.half_size,
                SceneKeys.TEXTURE: self.texture.to_dict()}


@dataclass(frozen=True, eq=False)
class DirectionalLight:
    """
    A light arriving from `direction` (unit vector pointing from the surface toward the light).
    """
    direction: np.ndarray
    intensity: tuple = (0.7, 0.7, 0.7)

    def __post_init__(self):
        direction = _vec3(self.direction, SceneKeys.DIRECTION)
        length = np.linalg.norm(direction)
        if length == 0.0:
            raise SceneFileError("Light direction must be non-zero")
        object.__setattr__(self, "direction", direction / length)
        object.__setattr__(self, "intensity", tuple(float(v) for v in self.intensity))

    def to_dict(self) -> dict:
        return {SceneKeys.DIRECTION: self.direction.tolist(), SceneKeys.INTENSITY: list(self.intensity)}


@dataclass(frozen=True, eq=False)
class Scene:
    """
    A procedural scene.

    Attributes:
        id (str): Scene identifier, hashed into every derived seed.
        primitives (tuple): Spheres, boxes and planes.
        lights (tuple): At least one DirectionalLight.
        ambient (tuple): Ambient RGB term added to every lit surface.
    """
    id: str
    primitives: tuple = ()
    lights: tuple = ()
    ambient: tuple = (0.25, 0.25, 0.25)

    def __post_init__(self):
        object.__setattr__(self, "primitives", tuple(self.primitives))
        object.__setattr__(self, "lights", tuple(self.lights))
        object.__setattr__(self, "ambient", tuple(float(v) for v in self.ambient))
        if not self.lights:
            raise SceneFileError(f"Scene '{self.id}' needs at least one directional light")

    def bounds(self) -> tuple:
        """
        Axis-aligned bounding box of all primitives.

        Returns:
            tuple: (min corner, max corner).

        Raises:
            SceneFileError: If the scene is empty or the box is degenerate along any axis.
        """
        if not self.primitives:
            raise SceneFileError(f"Scene '{self.id}' has no primitives")
        lows, highs = zip(*(p.bounds() for p in self.primitives))
        low = np.min(np.array(lows), axis=0)
        high = np.max(np.array(highs), axis=0)
        if not np.all(high - low > 0) or not np.all(np.isfinite(high - low)):
            raise SceneFileError(f"Scene '{self.id}' has a degenerate bounding box {low.tolist()} - {high.tolist()}")
        return low, high

    @property
    def bbox_dims(self) -> np.ndarray:
        low, high = self.bounds()
        return high - low

    @property
    def bounding_sphere_radius(self) -> float:
        """Radius of the origin-centered sphere enclosing the bounding box; cameras orbit the origin."""
        low, high = self.bounds()
        corners = np.array([[x, y, z] for x in (low[0], high[0]) for y in (low[1], high[1]) for z in (low[2], high[2])])
        return float(np.max(np.sqrt(_dot(corners, corners))))

    def nearest_hit(self, origin: np.ndarray, directions: np.ndarray) -> tuple:
        """
        Nearest intersection over all primitives.

        Args:
            origin (np.ndarray): Shared ray origin (3,).
            directions (np.ndarray): Unit directions (..., 3).

        Returns:
            tuple: (t (...), primitive index (...), -1 on a miss).
        """
        best_t = np.full(directions.shape[:-1], np.inf)
        best_index = np.full(directions.shape[:-1], -1, dtype=np.int64)
        for index, primitive in enumerate(self.primitives):
            t = primitive.intersect(origin, directions)
            closer = t < best_t
            best_t = np.where(closer, t, best_t)
            best_index = np.where(closer, index, best_index)
        return best_t, best_index

    def scaled(self, s: float) -> "Scene":
        """A copy with every length multiplied by s."""
        return Scene(self.id, tuple(p.scaled(s) for p in self.primitives), self.lights, self.ambient)

    def to_dict(self) -> dict:
        return {SceneKeys.SCHEMA: SceneKeys.SCHEMA_VERSION, SceneKeys.ID: self.id,
                SceneKeys.AMBIENT: list(self.ambient),
                SceneKeys.PRIMITIVES: [p.to_dict() for p in self.primitives],
                SceneKeys.LIGHTS: [light.to_dict() for light in self.lights]}


def _primitive_from_dict(data: dict):
    kind = data.get(SceneKeys.TYPE)
    texture = texture_from_dict(data.get(SceneKeys.TEXTURE))
    if kind == SceneKeys.Primitives.SPHERE:
        return Sphere(data[SceneKeys.CENTER], float(data[SceneKeys.RADIUS]), texture)
    if kind == SceneKeys.Primitives.BOX:
        return Box(data[SceneKeys.MIN], data[SceneKeys.MAX], texture)
    if kind == SceneKeys.Primitives.PLANE:
        return Plane(data[SceneKeys.CENTER], data[SceneKeys.NORMAL], float(data[SceneKeys.HALF_SIZE]), texture)
    raise SceneFileError(f"Unknown primitive type: {kind}")


def scene_from_dict(data: dict) -> Scene:
    """
    Build and validate a Scene from a schema-1 dictionary.

    Raises:
        SceneFileError: If the schema is wrong, a key is missing, or the scene is degenerate.
    """
    if data.get(SceneKeys.SCHEMA) != SceneKeys.SCHEMA_VERSION:
        raise SceneFileError(f"Unsupported scene schema {data.get(SceneKeys.SCHEMA)!r}, expected {SceneKeys.SCHEMA_VERSION}")
    try:
        primitives = [_primitive_from_dict(p) for p in data[SceneKeys.PRIMITIVES]]
        lights = [DirectionalLight(light[SceneKeys.DIRECTION], light.get(SceneKeys.INTENSITY, (0.7, 0.7, 0.7)))
                  for light in data[SceneKeys.LIGHTS]]
        scene = Scene(str(data[SceneKeys.ID]), primitives, lights, data.get(SceneKeys.AMBIENT, (0.25, 0.25, 0.25)))
    except KeyError as e:
        raise SceneFileError(f"Missing required key in scene definition: {e}") from e
    except ValueError as e:
        raise SceneFileError(f"Invalid scene definition: {e}") from e
    scene.bounds()
    logger.debug("Loaded scene '%s' with %d primitives", scene.id, len(scene.primitives))
    return scene


def load_scene(file_or_url: str) -> Scene:
    """
    Load a scene definition from a file path or an http(s) URL.
    """
    from DataTools.Loaders import load_json_from_url_or_file
    return scene_from_dict(load_json_from_url_or_file(file_or_url))


def demo_scene(scene_id: str = "demo", seed: int = 0) -> Scene:
    """
    A textured tabletop scene: a checkered sphere and a value-noise box resting on a plane.
    """
    rng = np.random.default_rng(seed)
    lift = float(rng.uniform(0.0, 0.2))
    return Scene(
        id=scene_id,
        primitives=(
            Plane((0.0, 0.0, -0.5), (0.0, 0.0, 1.0), 1.5, NoiseTexture(DEMO_COOL, DEMO_WARM, 0.3, seed)),
            Sphere((0.35, 0.1, lift), 0.45, CheckerTexture((0.95, 0.9, 0.85), (0.1, 0.15, 0.2), 0.12)),
            Box((-0.9, -0.6, -0.5), (-0.2, 0.2, 0.3 + lift), NoiseTexture(DEMO_COOL, DEMO_WARM, 0.15, seed + 1)),
        ),
        lights=(DirectionalLight((0.4, -0.3, 0.85), (0.65, 0.65, 0.6)),),
        ambient=(0.25, 0.25, 0.28),
    )

