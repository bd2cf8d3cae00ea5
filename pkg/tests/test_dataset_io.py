#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for dataset storage: manifest, PNG images and depth files.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import json
import os

import numpy as np
import pytest

from DataTools import (CorruptDepth, DatasetManifest, FrameRecord, InconsistentManifest, ManifestKeys, MissingFile,
                       SchemaMismatch, decode_depth, encode_depth, read_dataset, read_depth, select_holdout,
                       write_dataset)
from renderer import DepthMap, Image
from scenemodel import CameraIntrinsics, SphericalCoord, demo_scene
from synthesis import BlurConfig, generate_setting

INTR = CameraIntrinsics.from_fov(16, 12, 50.0)


def _normalized(document: dict) -> dict:
    return json.loads(json.dumps(document))


def _tiny_dataset():
    scene = demo_scene()
    viewpoint = SphericalCoord(3.0 * scene.bounding_sphere_radius, 60.0, 0.0)
    frames = generate_setting(scene, viewpoint, BlurConfig(levels=(0, 1), m=2, n=1), 5, INTR)
    manifest = DatasetManifest(scene_id=scene.id, global_seed=5, viewpoints=[viewpoint],
                               scene_stats=[frames[0].stats], levels=(0, 1), n=1, m=2,
                               frames=[FrameRecord.from_generated(f) for f in frames], scene=scene.to_dict())
    return manifest, [f.image for f in frames], [f.depth for f in frames]


@pytest.fixture
def dataset(tmp_path):
    manifest, images, depths = _tiny_dataset()
    root = str(tmp_path / "ds")
    write_dataset(manifest, images, depths, root)
    return root, manifest, images, depths


def test_round_trip_preserves_manifest(dataset):
    root, manifest, _, _ = dataset
    loaded, frames = read_dataset(root)
    assert _normalized(loaded.to_dict()) == _normalized(manifest.to_dict())
    assert len(frames) == 2
    record = frames.record(1)
    assert record.file_path == "images/1/v000_l1_f000.png"
    assert record.depth_path == "depth/v000_l1_f000.bin"
    assert record.trajectory == manifest.frames[1].trajectory
    np.testing.assert_array_equal(record.pose.matrix, manifest.frames[1].pose.matrix)
    assert record.latent_positions == manifest.frames[1].latent_positions


def test_round_trip_preserves_depth_bits(dataset):
    root, _, _, depths = dataset
    _, frames = read_dataset(root)
    for index, depth in enumerate(depths):
        stored = frames.depth(index)
        np.testing.assert_array_equal(stored.data, depth.data.astype(np.float32).astype(np.float64))
        assert encode_depth(stored) == encode_depth(depth)


def test_round_trip_images_within_quantization(dataset):
    root, _, images, _ = dataset
    _, frames = read_dataset(root)
    for index, image in enumerate(images):
        stored = frames.image(index)
        assert stored.data.shape == (12, 16, 3)
        np.testing.assert_allclose(stored.data, np.clip(image.data, 0.0, 1.0), atol=1e-3)


def test_accessor_lookup(dataset):
    root, _, _, _ = dataset
    _, frames = read_dataset(root)
    assert frames.find(0, 1, 0) == 1
    assert frames.indices(0) == [0]
    assert frames.indices() == [0, 1]
    with pytest.raises(KeyError):
        frames.find(0, 3, 0)
    view = frames.view(0)
    assert view.index == 0 and view.intrinsics == INTR


def test_corrupt_depth_is_rejected(dataset):
    root, manifest, _, _ = dataset
    path = os.path.join(root, *manifest.frames[0].depth_path.split("/"))
    with open(path, "r+b") as file:
        file.write(b"XXXX")
    with pytest.raises(CorruptDepth):
        read_dataset(root)


def test_truncated_depth_is_rejected(dataset):
    root, manifest, _, _ = dataset
    path = os.path.join(root, *manifest.frames[1].depth_path.split("/"))
    with open(path, "rb") as file:
        payload = file.read()
    with open(path, "wb") as file:
        file.write(payload[:-4])
    with pytest.raises(CorruptDepth):
        read_dataset(root)


def test_missing_image_is_rejected(dataset):
    root, manifest, _, _ = dataset
    os.remove(os.path.join(root, *manifest.frames[0].file_path.split("/")))
    with pytest.raises(MissingFile):
        read_dataset(root)


def test_missing_manifest(tmp_path):
    with pytest.raises(MissingFile):
        read_dataset(str(tmp_path))


def test_schema_mismatch(dataset):
    root, _, _, _ = dataset
    path = os.path.join(root, ManifestKeys.MANIFEST_FILE)
    with open(path) as file:
        data = json.load(file)
    data[ManifestKeys.SCHEMA] = 2
    with open(path, "w") as file:
        json.dump(data, file)
    with pytest.raises(SchemaMismatch):
        read_dataset(root)


def test_duplicate_paths_are_inconsistent(tmp_path):
    manifest, images, depths = _tiny_dataset()
    duplicated = manifest.with_frames([manifest.frames[0], manifest.frames[0]])
    with pytest.raises(InconsistentManifest):
        write_dataset(duplicated, images, depths, str(tmp_path))
    assert not os.path.exists(os.path.join(str(tmp_path), ManifestKeys.MANIFEST_FILE))


def test_frame_count_must_match_product(tmp_path):
    manifest, images, depths = _tiny_dataset()
    with pytest.raises(InconsistentManifest):
        write_dataset(manifest.with_frames(manifest.frames[:1]), images[:1], depths[:1], str(tmp_path))
    with pytest.raises(InconsistentManifest):
        write_dataset(manifest, images[:1], depths, str(tmp_path))


def test_depth_codec_layout():
    depth = DepthMap(np.array([[1.0, 2.0, np.nan], [4.0, 5.0, 6.0]]))
    payload = encode_depth(depth)
    assert payload[:4] == b"DGF1"
    assert len(payload) == 12 + 4 * 6
    assert int.from_bytes(payload[4:8], "little") == 3
    assert int.from_bytes(payload[8:12], "little") == 2
    decoded = decode_depth(payload)
    assert np.isnan(decoded.data[0, 2])
    np.testing.assert_array_equal(decoded.data[1], [4.0, 5.0, 6.0])
    with pytest.raises(CorruptDepth):
        decode_depth(b"DGF0" + payload[4:])


def test_read_depth_missing(tmp_path):
    with pytest.raises(MissingFile):
        read_depth(str(tmp_path / "nothing.bin"))


def test_write_requires_matching_sizes(tmp_path):
    manifest, images, depths = _tiny_dataset()
    wrong = [Image.filled(4, 4, 0.5)] + images[1:]
    with pytest.raises(InconsistentManifest):
        write_dataset(manifest, wrong, depths, str(tmp_path))


def test_select_holdout():
    train, test = select_holdout(40, 16)
    assert test == [0, 16, 32]
    assert len(train) == 37
    assert not set(train) & set(test)
    with pytest.raises(ValueError):
        select_holdout(10, 0)
