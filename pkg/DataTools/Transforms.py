#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Transforms.py

Export to and import from the NeRF-synthetic transforms.json layout.

transform_matrix is the camera-to-world inverse of the stored world->camera pose. With the
"opencv" axis convention it is the exact inverse (+x right, +y down, +z forward); with "opengl"
its y and z columns are negated (+y up, camera looking down -z) as most NeRF tooling expects.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import json
import logging
import math
import os
from dataclasses import dataclass

import numpy as np

from DataTools.DatasetIO import DatasetManifest, select_holdout
from DataTools.Errors import DatasetError, MixedIntrinsics
from DataTools.Loaders import load_json_from_url_or_file
from DataTools.ManifestKeys import TransformsKeys
from scenemodel.camera import CameraPose

logger = logging.getLogger(__name__)

OPENGL_FLIP = np.diag([1.0, -1.0, -1.0, 1.0])


def camera_to_world(pose: CameraPose, axis_convention: str = TransformsKeys.OPENCV) -> np.ndarray:
    matrix = pose.inverse_matrix()
    if axis_convention == TransformsKeys.OPENGL:
        return matrix @ OPENGL_FLIP
    if axis_convention != TransformsKeys.OPENCV:
        raise ValueError(f"Unknown axis convention '{axis_convention}'")
    return matrix


def pose_from_transform(matrix, axis_convention: str = TransformsKeys.OPENCV) -> CameraPose:
    """World->camera pose from a camera-to-world transform_matrix."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if axis_convention == TransformsKeys.OPENGL:
        matrix = matrix @ OPENGL_FLIP
    rotation = matrix[:3, :3].T
    return CameraPose(rotation, -rotation @ matrix[:3, 3])


def _frames_document(manifest: DatasetManifest, indices, axis_convention: str) -> dict:
    intr = manifest.frames[0].intrinsics
    return {TransformsKeys.CAMERA_ANGLE_X: 2.0 * math.atan(intr.width / (2.0 * intr.fx)),
            TransformsKeys.FL_X: intr.fx,
            TransformsKeys.FL_Y: intr.fy,
            TransformsKeys.CX: intr.cx,
            TransformsKeys.CY: intr.cy,
            TransformsKeys.WIDTH: intr.width,
            TransformsKeys.HEIGHT: intr.height,
            TransformsKeys.AXIS_CONVENTION: axis_convention,
            TransformsKeys.FRAMES: [
                {TransformsKeys.FILE_PATH: "./" + os.path.splitext(manifest.frames[i].file_path)[0],
                 TransformsKeys.TRANSFORM_MATRIX: camera_to_world(manifest.frames[i].pose, axis_convention).tolist()}
                for i in indices]}


def _write_json(path: str, document: dict):
    try:
        with open(path, "w") as file:
            json.dump(document, file, indent=4)
    except OSError as e:
        raise DatasetError(f"Error writing '{path}': {e}") from e


def export_transforms(manifest: DatasetManifest, root: str, axis_convention: str = TransformsKeys.OPENCV,
                      holdout_every: int = None) -> str:
    """
    Write transforms.json for all frames, and train/test splits when `holdout_every` is given.

    Returns:
        str: Path of transforms.json.

    Raises:
        MixedIntrinsics: If the frames do not share one set of intrinsics.
    """
    if not manifest.frames:
        raise DatasetError("Cannot export a dataset without frames")
    intrinsics = {frame.intrinsics for frame in manifest.frames}
    if len(intrinsics) > 1:
        raise MixedIntrinsics(f"Frames use {len(intrinsics)} different intrinsics")
    camera_to_world(manifest.frames[0].pose, axis_convention)

    path = os.path.join(root, TransformsKeys.FILE)
    _write_json(path, _frames_document(manifest, range(len(manifest.frames)), axis_convention))
    if holdout_every is not None:
        train, test = select_holdout(len(manifest.frames), holdout_every)
        _write_json(os.path.join(root, TransformsKeys.TRAIN_FILE), _frames_document(manifest, train, axis_convention))
        _write_json(os.path.join(root, TransformsKeys.TEST_FILE), _frames_document(manifest, test, axis_convention))
    logger.debug("Exported %d frames to %s", len(manifest.frames), path)
    return path


@dataclass(frozen=True)
class TransformsData:
    camera_angle_x: float
    axis_convention: str
    file_paths: tuple
    transforms: tuple

    def poses(self) -> list:
        return [pose_from_transform(matrix, self.axis_convention) for matrix in self.transforms]


def read_transforms(file_or_url: str) -> TransformsData:
    """
    Read a transforms document; the axis convention defaults to "opengl" when it is not recorded.
    """
    data = load_json_from_url_or_file(file_or_url)
    try:
        frames = data[TransformsKeys.FRAMES]
        return TransformsData(camera_angle_x=float(data[TransformsKeys.CAMERA_ANGLE_X]),
                              axis_convention=data.get(TransformsKeys.AXIS_CONVENTION, TransformsKeys.OPENGL),
                              file_paths=tuple(f[TransformsKeys.FILE_PATH] for f in frames),
                              transforms=tuple(np.array(f[TransformsKeys.TRANSFORM_MATRIX], dtype=np.float64)
                                               for f in frames))
    except KeyError as e:
        raise DatasetError(f"Transforms document '{file_or_url}' is missing key {e}") from e
