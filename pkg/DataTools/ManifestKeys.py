#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ManifestKeys.py: JSON keys of dataset manifests and transforms exports.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"


class ManifestKeys:
    """
    Constants representing keys of manifest.json.
    """
    SCHEMA_VERSION = 1
    MANIFEST_FILE = "manifest.json"
    IMAGES_DIR = "images"
    DEPTH_DIR = "depth"

    SCHEMA = "schema_version"
    GENERATOR = "generator"
    GLOBAL_SEED = "global_seed"
    SCENE_ID = "scene_id"
    SCENE = "scene"
    SCENE_STATS = "scene_stats"
    VIEWPOINTS = "viewpoints"
    LEVELS = "levels"
    N = "n"
    M = "m"
    BIT_DEPTH = "bit_depth"
    GAMMA = "gamma"
    FRAMES = "frames"
    PARENT = "parent"

    class Frame:
        FILE_PATH = "file_path"
        DEPTH_PATH = "depth_path"
        POSE = "pose"
        INTRINSICS = "intrinsics"
        VIEWPOINT = "viewpoint"
        INDEX = "frame_index"
        BLUR_LEVEL = "blur_level"
        BLUR_WEIGHT = "blur_weight"
        TRAJECTORY = "trajectory"
        LATENT_POSITIONS = "latent_positions"
        NOISE = "noise"
        SEED = "seed"
        IS_REFERENCE = "is_reference"


class TransformsKeys:
    """
    Constants representing keys of a NeRF-synthetic transforms.json.
    """
    FILE = "transforms.json"
    TRAIN_FILE = "transforms_train.json"
    TEST_FILE = "transforms_test.json"

    CAMERA_ANGLE_X = "camera_angle_x"
    FL_X = "fl_x"
    FL_Y = "fl_y"
    CX = "cx"
    CY = "cy"
    WIDTH = "w"
    HEIGHT = "h"
    AXIS_CONVENTION = "axis_convention"
    FRAMES = "frames"
    FILE_PATH = "file_path"
    TRANSFORM_MATRIX = "transform_matrix"

    OPENCV = "opencv"
    OPENGL = "opengl"
