#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for scene-adaptive motion blur synthesis and seed derivation.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import numpy as np
import pytest

from objectives import psnr
from renderer import trace_image
from scenemodel import (CameraIntrinsics, SphericalCoord, ViewpointBox, demo_scene, sample_viewpoint,
                        scene_stats_from_measurements)
from synthesis import (BlurConfig, InvalidTrajectory, Streams, Trajectory, aim_camera, derive_seed, derive_stream,
                       generate_setting, jittered_start, latent_offsets, make_rng, render_blurred_frame,
                       sample_blur_weight, sample_trajectory_direction)

TINY = CameraIntrinsics.from_fov(24, 24, 50.0)


def test_seed_derivation_is_stable_and_distinct():
    a = derive_seed(7, "demo", 0, 1, 2)
    assert a == derive_seed(7, "demo", 0, 1, 2)
    assert 0 <= a < 2 ** 64
    others = {derive_seed(7, "demo", 0, 1, 3), derive_seed(7, "demo", 0, 2, 2), derive_seed(7, "demo", 1, 1, 2),
              derive_seed(8, "demo", 0, 1, 2), derive_seed(7, "other", 0, 1, 2)}
    assert a not in others
    assert len(others) == 5
    assert derive_stream(a, Streams.TRAJECTORY) != derive_stream(a, Streams.POSITIONS)
    with pytest.raises(ValueError):
        derive_seed(-1, "demo", 0, 0, 0)


def test_make_rng_reproducible():
    np.testing.assert_array_equal(make_rng(99).random(5), make_rng(99).random(5))


def test_trajectory_direction_bounds():
    rng = np.random.default_rng(11)
    signs = set()
    for _ in range(10000):
        direction = sample_trajectory_direction(rng, 2.5)
        for component in direction:
            assert 1.25 <= abs(component) <= 2.5
            signs.add(np.sign(component))
    assert signs == {-1.0, 1.0}


def test_blur_weight_bounds():
    stats = scene_stats_from_measurements(2.0, 6.0, (2.0, 2.0, 1.0))
    w_u = stats.blur_weight_base
    rng = np.random.default_rng(12)
    for level in (1, 2, 3, 4):
        for _ in range(2500):
            w = sample_blur_weight(stats, level, rng)
            assert 0.9 * w_u * level <= w <= 1.1 * w_u * level


def test_level_zero_draws_nothing():
    stats = scene_stats_from_measurements(1.0, 2.0, (1.0, 1.0, 1.0))
    rng = make_rng(5)
    assert sample_blur_weight(stats, 0, rng) == 0.0
    assert rng.random() == make_rng(5).random()


def test_trajectory_positions():
    traj = Trajectory(SphericalCoord(4.0, 60.0, 10.0), (2.0, -1.5, 2.5), 2.0)
    assert traj.position_at(0.0) == traj.start
    end = traj.end
    assert end.r == pytest.approx(4.0 * (1.0 + 2.0 * 2.0 / 100.0))
    assert end.phi == pytest.approx(57.0)
    assert end.theta == pytest.approx(15.0)
    assert Trajectory.from_dict(traj.to_dict()) == traj
    with pytest.raises(ValueError):
        Trajectory(traj.start, (1.0, 1.0, 1.0), -0.1)


def test_latent_offsets():
    spaced = latent_offsets(4, make_rng(0), spaced=True)
    np.testing.assert_allclose(spaced, [0.125, 0.375, 0.625, 0.875])
    drawn = latent_offsets(1000, make_rng(0))
    assert drawn.min() >= 0.0 and drawn.max() <= 1.0


def test_level_zero_is_sharp_frame():
    scene = demo_scene()
    start = SphericalCoord(3.0 * scene.bounding_sphere_radius, 60.0, 0.0)
    frame = render_blurred_frame(scene, TINY, Trajectory(start, (2.0, 2.0, 2.0), 0.0), 8, make_rng(1))
    image, depth = trace_image(scene, TINY, aim_camera(start))
    np.testing.assert_array_equal(frame.image.data, image.data)
    np.testing.assert_array_equal(frame.depth.data, depth.data)
    assert len(frame.latent_positions) == 8


def test_blurred_frame_uses_midpoint_pose():
    scene = demo_scene()
    start = SphericalCoord(3.0 * scene.bounding_sphere_radius, 60.0, 0.0)
    traj = Trajectory(start, (2.0, 2.0, 2.0), 1.0)
    frame = render_blurred_frame(scene, TINY, traj, 4, make_rng(2), spaced=True)
    np.testing.assert_allclose(frame.reference_pose.matrix, aim_camera(traj.position_at(0.5)).matrix)
    assert frame.latent_positions[0] == traj.position_at(0.125)


def test_blur_grows_with_level():
    intr = CameraIntrinsics.from_fov(32, 32, 50.0)
    cfg = BlurConfig(levels=(0, 1, 2, 3, 4), m=8, n=1, spaced=True)
    scores = {level: [] for level in cfg.levels[1:]}
    for scene_seed in (0, 1):
        scene = demo_scene(seed=scene_seed)
        rng = make_rng(100 + scene_seed)
        for v in range(10):
            viewpoint = sample_viewpoint(rng, ViewpointBox.RADIUS_SCALE, scene.bounding_sphere_radius)
            frames = generate_setting(scene, viewpoint, cfg, 17, intr, viewpoint_index=v)
            # level 0 renders every latent position at the start, so it is the sharp frame
            sharp = frames[0].image
            for frame in frames[1:]:
                scores[frame.level].append(psnr(frame.image, sharp))
    assert all(len(values) == 20 for values in scores.values())
    means = [np.mean(scores[level]) for level in (1, 2, 3, 4)]
    assert all(a > b for a, b in zip(means, means[1:]))


def test_trajectory_rejects_collapsing_radius_and_polar_overflow():
    start = SphericalCoord(4.0, 60.0, 10.0)
    with pytest.raises(InvalidTrajectory):
        Trajectory(start, (-2.5, 0.0, 0.0), 40.0)
    with pytest.raises(InvalidTrajectory):
        Trajectory(start, (1.0, 2.5, 0.0), 50.0)
    with pytest.raises(InvalidTrajectory):
        Trajectory(start, (1.0, -2.5, 0.0), 25.0)
    assert Trajectory(start, (-2.5, 2.5, 2.5), 24.0).end.phi == pytest.approx(120.0)


def test_generate_setting_names_the_failing_frame():
    scene = demo_scene()
    viewpoint = SphericalCoord(3.0 * scene.bounding_sphere_radius, 60.0, 0.0)
    stats = scene_stats_from_measurements(1.0, 1000.0, (1.0, 1.0, 1.0))
    cfg = BlurConfig(levels=(2,), m=1, n=1)
    with pytest.raises(InvalidTrajectory, match=r"Scene 'demo' viewpoint 3 level 2 frame 0"):
        generate_setting(scene, viewpoint, cfg, 0, TINY, viewpoint_index=3, stats=stats)


def test_jittered_start_stays_in_quadrant():
    rng = make_rng(3)
    viewpoint = SphericalCoord(5.0, 60.0, 92.0)
    for _ in range(1000):
        start = jittered_start(viewpoint, rng)
        assert start.r == 5.0
        assert 52.5 <= start.phi <= 67.5
        assert 82.5 <= start.theta <= 97.5


def test_generate_setting_layout_and_determinism():
    scene = demo_scene()
    viewpoint = SphericalCoord(3.0 * scene.bounding_sphere_radius, 60.0, 0.0)
    cfg = BlurConfig(levels=(0, 2), m=3, n=2)
    frames = generate_setting(scene, viewpoint, cfg, 42, TINY, viewpoint_index=1)
    assert [(f.level, f.frame_index) for f in frames] == [(0, 0), (0, 1), (2, 0), (2, 1)]
    assert all(f.viewpoint_index == 1 for f in frames)
    assert frames[0].is_reference and frames[0].trajectory.weight == 0.0
    assert frames[2].trajectory.weight > 0.0
    assert frames[2].seed == derive_seed(42, scene.id, 1, 2, 0)
    # the jitter stream is shared across levels, so both levels start at the same place
    assert frames[0].trajectory.start == frames[2].trajectory.start

    threaded = generate_setting(scene, viewpoint, cfg, 42, TINY, viewpoint_index=1, threads=4)
    for a, b in zip(frames, threaded):
        np.testing.assert_array_equal(a.image.data, b.image.data)
        assert a.trajectory == b.trajectory


def test_generate_setting_without_jitter_starts_at_viewpoint():
    scene = demo_scene()
    viewpoint = SphericalCoord(3.0 * scene.bounding_sphere_radius, 61.0, 3.0)
    cfg = BlurConfig(levels=(0,), m=1, n=2, jitter_frames=False)
    calls = []
    frames = generate_setting(scene, viewpoint, cfg, 0, TINY, progress=lambda: calls.append(1))
    assert all(f.trajectory.start == viewpoint for f in frames)
    assert len(calls) == 2


def test_blur_config_validation():
    with pytest.raises(ValueError):
        BlurConfig(m=0)
    with pytest.raises(ValueError):
        BlurConfig(levels=(0, -1))
