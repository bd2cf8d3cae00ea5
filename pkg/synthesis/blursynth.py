#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
blursynth.py

3D-consistent motion blur by averaging latent renders along a camera trajectory.

A trajectory starts at a spherical camera position p and moves along p + s * w_l * delta for
s in [0, 1]. The angular components of delta are degrees; the radial component is a percentage
of the start radius, so blur strength does not depend on scene scale. Every latent camera looks
at the scene origin. The blurred frame is the mean of m latent renders and its reference depth
is traced from the trajectory midpoint.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from renderer.images import DepthMap, Image
from renderer.raytracer import DEFAULT_BACKGROUND, trace_image
from scenemodel.camera import CameraIntrinsics, CameraPose, SphericalCoord, look_at_pose, spherical_to_cartesian
from scenemodel.scene import Scene
from scenemodel.stats import SceneStats, ViewpointBox, compute_scene_stats
from synthesis.seeding import Streams, derive_seed, derive_stream, make_rng

logger = logging.getLogger(__name__)

SCENE_ORIGIN = (0.0, 0.0, 0.0)


class InvalidTrajectory(ValueError):
    """Raised when a trajectory leaves the valid range of spherical coordinates before its end."""


@dataclass(frozen=True)
class Trajectory:
    """
    A linear path in spherical coordinates.

    Attributes:
        start (SphericalCoord): Start position p.
        direction (tuple): (dr percent of r, dphi degrees, dtheta degrees).
        weight (float): Trajectory weight w_l >= 0.

    Raises:
        InvalidTrajectory: If r reaches zero or phi leaves [0, 180] for some s in [0, 1].
    """
    start: SphericalCoord
    direction: tuple
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "direction", tuple(float(v) for v in self.direction))
        if len(self.direction) != 3:
            raise ValueError("Trajectory direction must have three components")
        if self.weight < 0:
            raise ValueError(f"Trajectory weight must be non-negative, got {self.weight}")
        dr, dphi, _ = self.direction
        if 1.0 + self.weight * dr / 100.0 <= 0.0:
            raise InvalidTrajectory(f"Trajectory radius collapses: weight {self.weight} with dr {dr}% reaches r <= 0")
        end_phi = self.start.phi + self.weight * dphi
        if not 0.0 <= end_phi <= 180.0:
            raise InvalidTrajectory(f"Trajectory polar angle leaves [0, 180]: weight {self.weight} with dphi {dphi} "
                                    f"ends at phi={end_phi:.3f}")

    def position_at(self, s: float) -> SphericalCoord:
        dr, dphi, dtheta = self.direction
        step = s * self.weight
        return SphericalCoord(r=self.start.r * (1.0 + step * dr / 100.0), phi=self.start.phi + step * dphi,
                              theta=self.start.theta + step * dtheta)

    @property
    def end(self) -> SphericalCoord:
        return self.position_at(1.0)

    def to_dict(self) -> dict:
        return {"start": self.start.to_dict(), "direction": list(self.direction), "weight": self.weight}

    @staticmethod
    def from_dict(data: dict) -> "Trajectory":
        return Trajectory(SphericalCoord.from_dict(data["start"]), tuple(data["direction"]), float(data["weight"]))


@dataclass(frozen=True)
class BlurConfig:
    """
    Attributes:
        levels (tuple): Blur levels to render; 0 is the sharp reference.
        delta0 (float): Trajectory direction scale.
        m (int): Latent renders averaged per frame.
        n (int): Frames per level per viewpoint.
        spaced (bool): Evenly spaced latent positions instead of i.i.d. uniform ones.
        jitter_frames (bool): Give every frame index its own start inside the viewpoint box.
        background (tuple): Radiance of rays that miss the scene.
    """
    levels: tuple = (0, 1, 2, 3, 4)
    delta0: float = 2.5
    m: int = 34
    n: int = 34
    spaced: bool = False
    jitter_frames: bool = True
    background: tuple = DEFAULT_BACKGROUND

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(int(level) for level in self.levels))
        if self.m < 1 or self.n < 1:
            raise ValueError(f"m and n must be >= 1, got m={self.m}, n={self.n}")
        if any(level < 0 for level in self.levels):
            raise ValueError(f"Blur levels must be >= 0, got {self.levels}")
        if self.delta0 < 0:
            raise ValueError(f"delta0 must be non-negative, got {self.delta0}")


@dataclass(frozen=True, eq=False)
class BlurredFrame:
    image: Image
    depth: DepthMap
    latent_positions: tuple
    reference_pose: CameraPose


@dataclass(frozen=True, eq=False)
class GeneratedFrame:
    """
    One rendered frame of a setting plus everything needed to describe it in a manifest.
    """
    viewpoint_index: int
    level: int
    frame_index: int
    seed: int
    trajectory: Trajectory
    intrinsics: CameraIntrinsics
    stats: SceneStats
    blurred: BlurredFrame

    @property
    def is_reference(self) -> bool:
        return self.level == 0

    @property
    def image(self) -> Image:
        return self.blurred.image

    @property
    def depth(self) -> DepthMap:
        return self.blurred.depth

    @property
    def pose(self) -> CameraPose:
        return self.blurred.reference_pose


def aim_camera(position: SphericalCoord) -> CameraPose:
    return look_at_pose(spherical_to_cartesian(position), SCENE_ORIGIN)


def sample_trajectory_direction(rng: np.random.Generator, delta0: float) -> tuple:
    """
    Component magnitudes ~ U(delta0 / 2, delta0), each with an independent random sign.
    """
    if delta0 < 0:
        raise ValueError(f"delta0 must be non-negative, got {delta0}")
    magnitudes = rng.uniform(0.5 * delta0, delta0, size=3)
    signs = np.where(rng.random(3) < 0.5, -1.0, 1.0)
    return tuple(float(v) for v in magnitudes * signs)


def sample_blur_weight(stats: SceneStats, level: int, rng: np.random.Generator) -> float:
    """
    w_l ~ U(0.9 w_u l, 1.1 w_u l); level 0 gives 0 without drawing.
    """
    if level < 0:
        raise ValueError(f"Blur level must be >= 0, got {level}")
    if level == 0:
        return 0.0
    base = stats.blur_weight_base * level
    return float(rng.uniform(0.9 * base, 1.1 * base))


def latent_offsets(m: int, rng: np.random.Generator, spaced: bool = False) -> np.ndarray:
    """Trajectory parameters s in [0, 1] of the m latent positions."""
    if spaced:
        return (np.arange(m) + 0.5) / m
    return rng.uniform(0.0, 1.0, size=m)


def render_blurred_frame(scene: Scene, intr: CameraIntrinsics, traj: Trajectory, m: int, rng: np.random.Generator,
                         spaced: bool = False, background=DEFAULT_BACKGROUND, threads: int = 1) -> BlurredFrame:
    """
    Render one motion-blurred frame.

    Args:
        scene (Scene): Scene to render.
        intr (CameraIntrinsics): Camera intrinsics.
        traj (Trajectory): Camera trajectory.
        m (int): Number of latent images to average.
        rng (np.random.Generator): Generator for the latent positions.
        spaced (bool): Use evenly spaced positions.
        background: Radiance of missed rays.
        threads (int): Threads for latent renders.

    Returns:
        BlurredFrame: Mean image, midpoint depth, latent positions and the midpoint pose.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if traj.weight == 0:
        # every latent position coincides with the start
        pose = aim_camera(traj.start)
        image, depth = trace_image(scene, intr, pose, background)
        return BlurredFrame(image, depth, (traj.start,) * m, pose)

    positions = tuple(traj.position_at(float(s)) for s in latent_offsets(m, rng, spaced))

    def render(position):
        return trace_image(scene, intr, aim_camera(position), background)[0].data

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            latents = list(pool.map(render, positions))
    else:
        latents = [render(position) for position in positions]
    mean = np.mean(np.stack(latents), axis=0)

    midpoint = traj.position_at(0.5)
    reference_pose = aim_camera(midpoint)
    _, depth = trace_image(scene, intr, reference_pose, background)
    return BlurredFrame(Image(mean), depth, positions, reference_pose)


def jittered_start(viewpoint: SphericalCoord, rng: np.random.Generator) -> SphericalCoord:
    """A start position inside the viewpoint box of the quadrant nearest to the viewpoint azimuth."""
    theta0 = 90.0 * round(viewpoint.theta / 90.0)
    phi = rng.uniform(ViewpointBox.PHI0 - ViewpointBox.PHI1, ViewpointBox.PHI0 + ViewpointBox.PHI1)
    theta = rng.uniform(theta0 - ViewpointBox.THETA1, theta0 + ViewpointBox.THETA1)
    return SphericalCoord(r=viewpoint.r, phi=float(phi), theta=float(theta))


def generate_setting(scene: Scene, viewpoint: SphericalCoord, cfg: BlurConfig, seed: int, intr: CameraIntrinsics,
                     viewpoint_index: int = 0, stats: SceneStats = None, threads: int = 1, progress=None) -> list:
    """
    Render n frames per blur level for one viewpoint.

    Args:
        scene (Scene): Scene to render.
        viewpoint (SphericalCoord): Anchor viewpoint.
        cfg (BlurConfig): Blur configuration.
        seed (int): Global seed.
        intr (CameraIntrinsics): Camera intrinsics.
        viewpoint_index (int): Index of the viewpoint in the dataset, part of every frame seed.
        stats (SceneStats, optional): Precomputed statistics; measured from the anchor when None.
        threads (int): Frames rendered concurrently.
        progress (callable, optional): Called once per finished frame.

    Returns:
        list: GeneratedFrame objects ordered by level, then frame index.
    """
    if stats is None:
        stats = compute_scene_stats(scene, aim_camera(viewpoint), intr)

    tasks = [(level, f) for level in cfg.levels for f in range(cfg.n)]

    def render(task):
        level, f = task
        frame_seed = derive_seed(seed, scene.id, viewpoint_index, level, f)
        start = viewpoint
        if cfg.jitter_frames:
            jitter_seed = derive_stream(derive_seed(seed, scene.id, viewpoint_index, 0, f), Streams.JITTER)
            start = jittered_start(viewpoint, make_rng(jitter_seed))
        traj_rng = make_rng(derive_stream(frame_seed, Streams.TRAJECTORY))
        direction = sample_trajectory_direction(traj_rng, cfg.delta0)
        weight = sample_blur_weight(stats, level, traj_rng)
        try:
            traj = Trajectory(start, direction, weight)
        except InvalidTrajectory as e:
            raise InvalidTrajectory(f"Scene '{scene.id}' viewpoint {viewpoint_index} level {level} frame {f} "
                                    f"(w_u={stats.blur_weight_base:.4f}): {e}") from e
        blurred = render_blurred_frame(scene, intr, traj, cfg.m, make_rng(derive_stream(frame_seed, Streams.POSITIONS)),
                                       cfg.spaced, cfg.background)
        if progress is not None:
            progress()
        return GeneratedFrame(viewpoint_index, level, f, frame_seed, traj, intr, stats, blurred)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            frames = list(pool.map(render, tasks))
    else:
        frames = [render(task) for task in tasks]
    logger.debug("Viewpoint %d of scene '%s': %d frames, w_u=%.4f", viewpoint_index, scene.id, len(frames),
                 stats.blur_weight_base)
    return frames
