#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
stack.py

Backward warping of neighbour views into a source view and assembly of the aligned channel stack.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import logging
from dataclasses import dataclass

import numpy as np

from mvgeometry.geometry import ViewRecord, nearest_k, relative_pose, warp_pixels
from mvgeometry.sampling import bilinear_sample_grid
from renderer.images import DepthMap
from scenemodel.camera import CameraIntrinsics, CameraPose

logger = logging.getLogger(__name__)

IMAGE_CHANNELS = 3
FILL_VALUE = 0.0


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WarpedView:
    """
    A neighbour view resampled onto the source pixel grid.

    Attributes:
        image (np.ndarray): (H, W, 3), FILL_VALUE where invalid.
        depth (np.ndarray): (H, W), FILL_VALUE where invalid.
        valid (np.ndarray): (H, W) boolean.
    """
    image: np.ndarray
    depth: np.ndarray
    valid: np.ndarray


def warp_view(view_k: ViewRecord, depth_i: DepthMap, intr_i: CameraIntrinsics, pose_i: CameraPose) -> WarpedView:
    """
    Warp view k into view i using the source depth.

    Each valid pixel of view i is warped into view k; the image of view k is sampled there and so is
    its depth when present, otherwise the warped z is used. Pixels whose depth is invalid, that land
    behind camera k, outside its image or on invalid neighbour depth are invalid.
    """
    if (depth_i.height, depth_i.width) != (intr_i.height, intr_i.width):
        raise DimensionMismatch(f"Source depth is {depth_i.width}x{depth_i.height}, "
                                f"intrinsics expect {intr_i.width}x{intr_i.height}")
    u, v = np.meshgrid(np.arange(intr_i.width) + 0.5, np.arange(intr_i.height) + 0.5)
    valid = depth_i.valid
    rel = relative_pose(pose_i, view_k.pose)
    u_k, v_k, z_k = warp_pixels(u, v, depth_i.filled(1.0), intr_i, view_k.intrinsics, rel)
    valid = valid & (z_k > 0)
    u_k = np.where(valid, u_k, -1.0)
    v_k = np.where(valid, v_k, -1.0)

    image, in_bounds = bilinear_sample_grid(view_k.image.data, u_k, v_k)
    valid &= in_bounds
    if view_k.depth is not None:
        depth, _ = bilinear_sample_grid(view_k.depth.data, u_k, v_k)
        valid &= np.isfinite(depth)
    else:
        depth = z_k
    return WarpedView(image=np.where(valid[..., None], image, FILL_VALUE), depth=np.where(valid, depth, FILL_VALUE),
                      valid=valid)


@dataclass(frozen=True, eq=False)
class AlignedStack:
    """
    Channel concatenation [I_i, D_i, I~_1 .. I~_K, D~_1 .. D~_K].

    Attributes:
        channels (np.ndarray): (H, W, 4 (K + 1)).
        validity (np.ndarray): (H, W, K) validity of each warped view.
    """
    channels: np.ndarray
    validity: np.ndarray

    @property
    def K(self) -> int:
        return self.validity.shape[2]

    def source_image(self) -> np.ndarray:
        return self.channels[..., :IMAGE_CHANNELS]

    def source_depth(self) -> np.ndarray:
        return self.channels[..., IMAGE_CHANNELS]

    def warped_image(self, k: int) -> np.ndarray:
        start = IMAGE_CHANNELS + 1 + IMAGE_CHANNELS * k
        return self.channels[..., start:start + IMAGE_CHANNELS]

    def warped_depth(self, k: int) -> np.ndarray:
        return self.channels[..., IMAGE_CHANNELS + 1 + IMAGE_CHANNELS * self.K + k]


def build_aligned_stack(view_i: ViewRecord, warps: list) -> AlignedStack:
    """
    Concatenate the source view and its warped neighbours.

    Raises:
        DimensionMismatch: If any warp does not match the source size or the source has no depth.
    """
    size = (view_i.intrinsics.height, view_i.intrinsics.width)
    if view_i.depth is None:
        raise DimensionMismatch(f"View {view_i.index} has no depth channel")
    for k, warp in enumerate(warps):
        if warp.image.shape != size + (IMAGE_CHANNELS,) or warp.depth.shape != size or warp.valid.shape != size:
            raise DimensionMismatch(f"Warped view {k} does not match the {size[1]}x{size[0]} source")
    layers = [view_i.image.data, view_i.depth.filled(FILL_VALUE)[..., None]]
    layers += [warp.image for warp in warps]
    layers += [warp.depth[..., None] for warp in warps]
    channels = np.concatenate(layers, axis=-1)
    if warps:
        validity = np.stack([warp.valid for warp in warps], axis=-1)
    else:
        validity = np.zeros(size + (0,), dtype=bool)
    return AlignedStack(channels, validity)


def align_views(views: list, i: int, K: int) -> tuple:
    """
    Group the K nearest neighbours of view i, warp them into it and stack the result.

    Returns:
        tuple: (neighbour indices, list of WarpedView, AlignedStack).
    """
    source = views[i]
    if source.depth is None:
        raise DimensionMismatch(f"View {source.index} has no depth to warp with")
    neighbours = nearest_k(views, i, K)
    warps = [warp_view(views[k], source.depth, source.intrinsics, source.pose) for k in neighbours]
    logger.debug("View %d aligned with neighbours %s", i, neighbours)
    return neighbours, warps, build_aligned_stack(source, warps)
