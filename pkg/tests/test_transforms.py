#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for transforms.json export and import.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import json
import math
import os

import numpy as np
import pytest

from DataTools import (DatasetError, DatasetManifest, FrameRecord, MixedIntrinsics, TransformsKeys, camera_to_world,
                       export_transforms, read_transforms)
from scenemodel import CameraIntrinsics, SphericalCoord, look_at_pose
from synthesis import Trajectory

INTR = CameraIntrinsics.from_fov(32, 24, 50.0)


def _manifest(count=5, intrinsics=None):
    frames = []
    for i in range(count):
        start = SphericalCoord(4.0, 60.0, 20.0 * i)
        pose = look_at_pose((1.0 + 0.3 * i, -4.0, 1.5), (0.0, 0.2 * i, 0.0))
        frames.append(FrameRecord(file_path=f"images/0/v{i:03d}_l0_f000.png", depth_path=None, pose=pose,
                                  intrinsics=(intrinsics or [INTR] * count)[i], viewpoint=i, frame_index=0,
                                  blur_level=0, blur_weight=0.0, trajectory=Trajectory(start, (0, 0, 0), 0.0)))
    return DatasetManifest(scene_id="demo", global_seed=0, viewpoints=[f.trajectory.start for f in frames],
                           scene_stats=[], levels=(0,), n=1, m=1, frames=frames)


@pytest.mark.parametrize("convention", [TransformsKeys.OPENCV, TransformsKeys.OPENGL])
def test_export_inverts_to_stored_poses(tmp_path, convention):
    manifest = _manifest()
    path = export_transforms(manifest, str(tmp_path), convention)
    data = read_transforms(path)
    assert data.axis_convention == convention
    assert data.camera_angle_x == pytest.approx(math.radians(50.0))
    assert data.file_paths[2] == "./images/0/v002_l0_f000"
    for pose, frame in zip(data.poses(), manifest.frames):
        np.testing.assert_allclose(pose.matrix, frame.pose.matrix, atol=1e-9)


def test_opengl_flips_camera_axes():
    pose = look_at_pose((0.0, -3.0, 0.0), (0.0, 0.0, 0.0))
    cv = camera_to_world(pose, TransformsKeys.OPENCV)
    gl = camera_to_world(pose, TransformsKeys.OPENGL)
    np.testing.assert_allclose(gl[:3, 0], cv[:3, 0])
    np.testing.assert_allclose(gl[:3, 1:3], -cv[:3, 1:3])
    np.testing.assert_allclose(gl[:3, 3], (0.0, -3.0, 0.0), atol=1e-12)
    # the camera looks along +y in the world, which is -z of an OpenGL camera
    np.testing.assert_allclose(gl[:3, 2], (0.0, -1.0, 0.0), atol=1e-12)
    with pytest.raises(ValueError):
        camera_to_world(pose, "directx")


def test_holdout_files(tmp_path):
    manifest = _manifest(count=5)
    export_transforms(manifest, str(tmp_path), holdout_every=2)
    with open(os.path.join(str(tmp_path), TransformsKeys.TEST_FILE)) as file:
        test = json.load(file)
    with open(os.path.join(str(tmp_path), TransformsKeys.TRAIN_FILE)) as file:
        train = json.load(file)
    assert len(test[TransformsKeys.FRAMES]) == 3
    assert len(train[TransformsKeys.FRAMES]) == 2
    assert train[TransformsKeys.FRAMES][0][TransformsKeys.FILE_PATH] == "./images/0/v001_l0_f000"


def test_mixed_intrinsics_rejected(tmp_path):
    other = CameraIntrinsics.from_fov(32, 24, 60.0)
    manifest = _manifest(count=2, intrinsics=[INTR, other])
    with pytest.raises(MixedIntrinsics):
        export_transforms(manifest, str(tmp_path))


def test_empty_dataset_rejected(tmp_path):
    with pytest.raises(DatasetError):
        export_transforms(_manifest(count=0), str(tmp_path))


def test_missing_axis_convention_defaults_to_opengl(tmp_path):
    path = tmp_path / "transforms.json"
    path.write_text(json.dumps({"camera_angle_x": 0.5, "frames": [
        {"file_path": "./a", "transform_matrix": np.eye(4).tolist()}]}))
    data = read_transforms(str(path))
    assert data.axis_convention == TransformsKeys.OPENGL
    with pytest.raises(DatasetError):
        read_transforms(str(_write_json(tmp_path / "broken.json", {"frames": []})))


def _write_json(path, document):
    path.write_text(json.dumps(document))
    return path
