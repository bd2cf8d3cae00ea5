#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
DatasetIO.py

On-disk datasets.

Layout under a dataset root:
    manifest.json                     schema-versioned record of every frame
    images/<level>/<name>.png         gamma-encoded 8- or 16-bit PNG
    depth/<name>.bin                  DGF1 depth file

The manifest is written last, through a temporary file and an atomic rename, so an interrupted
write never leaves a valid manifest behind.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import json
import logging
import os
from dataclasses import dataclass, replace

import numpy as np

from DataTools.DepthCodec import check_depth_file, read_depth, write_depth
from DataTools.Errors import DatasetError, InconsistentManifest, MissingFile, SchemaMismatch
from DataTools.ImageCodec import DEFAULT_GAMMA, read_png, write_png
from DataTools.ManifestKeys import ManifestKeys
from mvgeometry.geometry import ViewRecord
from scenemodel.camera import CameraIntrinsics, CameraPose, SphericalCoord
from scenemodel.stats import SceneStats
from synthesis.blursynth import GeneratedFrame, Trajectory
from synthesis.noisesynth import DegradeRecord

logger = logging.getLogger(__name__)

GENERATOR = "mvblur 0.1.0"

Keys = ManifestKeys.Frame


def frame_name(viewpoint: int, level: int, frame_index: int) -> str:
    return f"v{viewpoint:03d}_l{level}_f{frame_index:03d}"


@dataclass(frozen=True, eq=False)
class FrameRecord:
    """
    Manifest entry of one frame.

    Attributes:
        file_path (str): POSIX path of the image relative to the dataset root.
        depth_path (str): POSIX path of the depth file, or None.
        pose (CameraPose): World->camera reference pose.
        intrinsics (CameraIntrinsics): Camera intrinsics.
        viewpoint (int): Viewpoint index.
        frame_index (int): Frame index within its level.
        blur_level (int): Blur level, 0 for the sharp reference.
        blur_weight (float): Trajectory weight w_l.
        trajectory (Trajectory): Camera trajectory.
        latent_positions (tuple): SphericalCoord of each latent render.
        seed (int): u64 frame seed.
        noise (DegradeRecord): Noise record, or None.
    """
    file_path: str
    depth_path: str
    pose: CameraPose
    intrinsics: CameraIntrinsics
    viewpoint: int
    frame_index: int
    blur_level: int
    blur_weight: float
    trajectory: Trajectory
    latent_positions: tuple = ()
    seed: int = 0
    noise: DegradeRecord = None

    @property
    def is_reference(self) -> bool:
        return self.blur_level == 0

    @property
    def name(self) -> str:
        return frame_name(self.viewpoint, self.blur_level, self.frame_index)

    @staticmethod
    def from_generated(frame: GeneratedFrame) -> "FrameRecord":
        name = frame_name(frame.viewpoint_index, frame.level, frame.frame_index)
        return FrameRecord(file_path=f"{ManifestKeys.IMAGES_DIR}/{frame.level}/{name}.png",
                           depth_path=f"{ManifestKeys.DEPTH_DIR}/{name}.bin",
                           pose=frame.pose, intrinsics=frame.intrinsics, viewpoint=frame.viewpoint_index,
                           frame_index=frame.frame_index, blur_level=frame.level,
                           blur_weight=frame.trajectory.weight, trajectory=frame.trajectory,
                           latent_positions=frame.blurred.latent_positions, seed=frame.seed)

    def to_dict(self) -> dict:
        return {Keys.FILE_PATH: self.file_path,
                Keys.DEPTH_PATH: self.depth_path,
                Keys.POSE: self.pose.to_list(),
                Keys.INTRINSICS: self.intrinsics.to_dict(),
                Keys.VIEWPOINT: self.viewpoint,
                Keys.INDEX: self.frame_index,
                Keys.BLUR_LEVEL: self.blur_level,
                Keys.BLUR_WEIGHT: self.blur_weight,
                Keys.TRAJECTORY: self.trajectory.to_dict(),
                Keys.LATENT_POSITIONS: [p.to_dict() for p in self.latent_positions],
                Keys.SEED: self.seed,
                Keys.IS_REFERENCE: self.is_reference,
                Keys.NOISE: None if self.noise is None else self.noise.to_dict()}

    @staticmethod
    def from_dict(data: dict) -> "FrameRecord":
        """
        Raises:
            InconsistentManifest: If a key is missing or a value is invalid.
        """
        try:
            noise = data.get(Keys.NOISE)
            return FrameRecord(file_path=data[Keys.FILE_PATH],
                               depth_path=data.get(Keys.DEPTH_PATH),
                               pose=CameraPose.from_matrix(data[Keys.POSE]),
                               intrinsics=CameraIntrinsics.from_dict(data[Keys.INTRINSICS]),
                               viewpoint=int(data[Keys.VIEWPOINT]),
                               frame_index=int(data[Keys.INDEX]),
                               blur_level=int(data[Keys.BLUR_LEVEL]),
                               blur_weight=float(data[Keys.BLUR_WEIGHT]),
                               trajectory=Trajectory.from_dict(data[Keys.TRAJECTORY]),
                               latent_positions=tuple(SphericalCoord.from_dict(p)
                                                      for p in data.get(Keys.LATENT_POSITIONS, [])),
                               seed=int(data[Keys.SEED]),
                               noise=None if noise is None else DegradeRecord.from_dict(noise))
        except (KeyError, TypeError, ValueError) as e:
            raise InconsistentManifest(f"Invalid frame record {data.get(Keys.FILE_PATH, '?')}: {e}") from e


@dataclass(frozen=True, eq=False)
class DatasetManifest:
    """
    Record of a whole dataset.

    Attributes:
        scene_id (str): Scene identifier.
        global_seed (int): Seed the dataset was generated with.
        viewpoints (tuple): SphericalCoord anchor of each viewpoint.
        scene_stats (tuple): SceneStats measured at each viewpoint.
        levels (tuple): Blur levels present.
        n (int): Frames per level per viewpoint.
        m (int): Latent renders per frame.
        frames (tuple): FrameRecord entries in serialized order.
        bit_depth (int): PNG bit depth.
        gamma (float): Storage gamma.
        scene (dict): Scene document, if recorded.
        parent (dict): Provenance of a derived dataset, if any.
        schema_version (int): Manifest schema.
        generator (str): Generator name and version.
    """
    scene_id: str
    global_seed: int
    viewpoints: tuple
    scene_stats: tuple
    levels: tuple
    n: int
    m: int
    frames: tuple = ()
    bit_depth: int = 16
    gamma: float = DEFAULT_GAMMA
    scene: dict = None
    parent: dict = None
    schema_version: int = ManifestKeys.SCHEMA_VERSION
    generator: str = GENERATOR

    def __post_init__(self):
        for name in ("viewpoints", "scene_stats", "levels", "frames"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def expected_frame_count(self) -> int:
        return len(self.viewpoints) * len(self.levels) * self.n

    def with_frames(self, frames, **changes) -> "DatasetManifest":
        return replace(self, frames=tuple(frames), **changes)

    def validate(self):
        """
        Raises:
            InconsistentManifest: On duplicate paths, a frame count that does not match the
                viewpoint, level and n product, or references to unknown viewpoints or levels.
        """
        paths = [frame.file_path for frame in self.frames]
        duplicates = sorted({p for p in paths if paths.count(p) > 1})
        if duplicates:
            raise InconsistentManifest(f"Duplicate file_path entries: {', '.join(duplicates)}")
        if len(self.frames) != self.expected_frame_count:
            raise InconsistentManifest(f"Manifest has {len(self.frames)} frames, expected "
                                       f"{len(self.viewpoints)} viewpoints x {len(self.levels)} levels x {self.n}")
        if len(self.scene_stats) != len(self.viewpoints):
            raise InconsistentManifest("Scene stats must be recorded once per viewpoint")
        for frame in self.frames:
            if not 0 <= frame.viewpoint < len(self.viewpoints) or frame.blur_level not in self.levels:
                raise InconsistentManifest(f"Frame {frame.file_path} references an unknown viewpoint or level")

    def to_dict(self) -> dict:
        return {ManifestKeys.SCHEMA: self.schema_version,
                ManifestKeys.GENERATOR: self.generator,
                ManifestKeys.GLOBAL_SEED: self.global_seed,
                ManifestKeys.SCENE_ID: self.scene_id,
                ManifestKeys.SCENE: self.scene,
                ManifestKeys.VIEWPOINTS: [v.to_dict() for v in self.viewpoints],
                ManifestKeys.SCENE_STATS: [s.to_dict() for s in self.scene_stats],
                ManifestKeys.LEVELS: list(self.levels),
                ManifestKeys.N: self.n,
                ManifestKeys.M: self.m,
                ManifestKeys.BIT_DEPTH: self.bit_depth,
                ManifestKeys.GAMMA: self.gamma,
                ManifestKeys.PARENT: self.parent,
                ManifestKeys.FRAMES: [frame.to_dict() for frame in self.frames]}

    @staticmethod
    def from_dict(data: dict) -> "DatasetManifest":
        """
        Raises:
            SchemaMismatch: If the schema version is not supported.
            InconsistentManifest: If a required key is missing.
        """
        version = data.get(ManifestKeys.SCHEMA)
        if version != ManifestKeys.SCHEMA_VERSION:
            raise SchemaMismatch(f"Unsupported manifest schema_version {version!r}, "
                                 f"expected {ManifestKeys.SCHEMA_VERSION}")
        try:
            return DatasetManifest(scene_id=data[ManifestKeys.SCENE_ID],
                                   global_seed=int(data[ManifestKeys.GLOBAL_SEED]),
                                   viewpoints=[SphericalCoord.from_dict(v) for v in data[ManifestKeys.VIEWPOINTS]],
                                   scene_stats=[SceneStats.from_dict(s) for s in data[ManifestKeys.SCENE_STATS]],
                                   levels=tuple(int(level) for level in data[ManifestKeys.LEVELS]),
                                   n=int(data[ManifestKeys.N]),
                                   m=int(data[ManifestKeys.M]),
                                   frames=[FrameRecord.from_dict(f) for f in data[ManifestKeys.FRAMES]],
                                   bit_depth=int(data.get(ManifestKeys.BIT_DEPTH, 16)),
                                   gamma=float(data.get(ManifestKeys.GAMMA, DEFAULT_GAMMA)),
                                   scene=data.get(ManifestKeys.SCENE),
                                   parent=data.get(ManifestKeys.PARENT),
                                   schema_version=version,
                                   generator=data.get(ManifestKeys.GENERATOR, GENERATOR))
        except (KeyError, TypeError, ValueError) as e:
            raise InconsistentManifest(f"Invalid manifest: {e}") from e


def _native(root: str, posix_path: str) -> str:
    return os.path.join(root, *posix_path.split("/"))


def write_dataset(manifest: DatasetManifest, images: list, depths: list, root: str):
    """
    Write images, depths and the manifest under `root`.

    Args:
        manifest (DatasetManifest): Manifest whose frames align with `images` and `depths`.
        images (list): Linear Image per frame.
        depths (list): DepthMap per frame, or None for frames without depth.
        root (str): Dataset root directory.

    Raises:
        InconsistentManifest: If the manifest does not match the arrays.
        DatasetError: If a file cannot be written.
    """
    manifest.validate()
    if not len(images) == len(depths) == len(manifest.frames):
        raise InconsistentManifest(f"{len(manifest.frames)} frames but {len(images)} images "
                                   f"and {len(depths)} depth maps")
    for frame, image, depth in zip(manifest.frames, images, depths):
        size = (frame.intrinsics.width, frame.intrinsics.height)
        if (image.width, image.height) != size or (depth is not None and (depth.width, depth.height) != size):
            raise InconsistentManifest(f"Frame {frame.file_path} does not match its {size[0]}x{size[1]} intrinsics")
        if (depth is None) != (frame.depth_path is None):
            raise InconsistentManifest(f"Frame {frame.file_path} depth_path does not match the depth provided")

    manifest_path = os.path.join(root, ManifestKeys.MANIFEST_FILE)
    try:
        os.makedirs(root, exist_ok=True)
        if os.path.exists(manifest_path):
            os.remove(manifest_path)
        for frame, image, depth in zip(manifest.frames, images, depths):
            image_path = _native(root, frame.file_path)
            os.makedirs(os.path.dirname(image_path), exist_ok=True)
            write_png(image_path, image, manifest.bit_depth, manifest.gamma)
            if depth is not None:
                depth_path = _native(root, frame.depth_path)
                os.makedirs(os.path.dirname(depth_path), exist_ok=True)
                write_depth(depth_path, depth)
        temporary = manifest_path + ".tmp"
        with open(temporary, "w") as file:
            json.dump(manifest.to_dict(), file, indent=4)
        os.replace(temporary, manifest_path)
    except OSError as e:
        raise DatasetError(f"Error writing dataset at '{root}': {e}") from e
    logger.debug("Wrote %d frames to %s", len(manifest.frames), root)


class FrameAccessor:
    """
    Lazy access to the frames of a dataset; files are decoded on demand.
    """

    def __init__(self, root: str, manifest: DatasetManifest):
        self.root = root
        self.manifest = manifest

    def __len__(self) -> int:
        return len(self.manifest.frames)

    def record(self, index: int) -> FrameRecord:
        return self.manifest.frames[index]

    def image(self, index: int):
        return read_png(_native(self.root, self.record(index).file_path), self.manifest.gamma)

    def depth(self, index: int):
        path = self.record(index).depth_path
        return None if path is None else read_depth(_native(self.root, path))

    def view(self, index: int) -> ViewRecord:
        record = self.record(index)
        return ViewRecord(self.image(index), self.depth(index), record.intrinsics, record.pose, index)

    def find(self, viewpoint: int, level: int, frame_index: int) -> int:
        """
        Index of the frame with the given coordinates.

        Raises:
            KeyError: If no such frame exists.
        """
        for index, record in enumerate(self.manifest.frames):
            if (record.viewpoint, record.blur_level, record.frame_index) == (viewpoint, level, frame_index):
                return index
        raise KeyError(f"No frame for viewpoint {viewpoint}, level {level}, index {frame_index}")

    def indices(self, level: int = None) -> list:
        return [index for index, record in enumerate(self.manifest.frames)
                if level is None or record.blur_level == level]


def read_manifest(root: str) -> DatasetManifest:
    path = os.path.join(root, ManifestKeys.MANIFEST_FILE)
    if not os.path.isfile(path):
        raise MissingFile(f"Dataset manifest '{path}' does not exist")
    try:
        with open(path, "r") as file:
            data = json.load(file)
    except json.JSONDecodeError as e:
        raise InconsistentManifest(f"Error decoding manifest '{path}': {e}") from e
    return DatasetManifest.from_dict(data)


def read_dataset(root: str) -> tuple:
    """
    Open a dataset, validating the manifest and every referenced file before returning.

    Returns:
        tuple: (DatasetManifest, FrameAccessor).

    Raises:
        SchemaMismatch: If the manifest schema is unsupported.
        InconsistentManifest: If the manifest is malformed or internally inconsistent.
        MissingFile: If a referenced file is missing.
        CorruptDepth: If a depth file header or size is wrong.
    """
    manifest = read_manifest(root)
    manifest.validate()
    for frame in manifest.frames:
        image_path = _native(root, frame.file_path)
        if not os.path.isfile(image_path):
            raise MissingFile(f"Frame image '{image_path}' does not exist")
        if frame.depth_path is not None:
            check_depth_file(_native(root, frame.depth_path), frame.intrinsics.width, frame.intrinsics.height)
    return manifest, FrameAccessor(root, manifest)


def select_holdout(count: int, every: int = 16) -> tuple:
    """
    Split frame indices into train and test views, every `every`-th view (starting at 0) held out.

    Returns:
        tuple: (train indices, test indices).
    """
    if every < 1:
        raise ValueError(f"Hold-out interval must be >= 1, got {every}")
    indices = np.arange(count)
    return indices[indices % every != 0].tolist(), indices[indices % every == 0].tolist()
