#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
scenekeys.py

Keys for the JSON scene definition file.

This module defines the SceneKeys class that provides constants representing the JSON keys of a
schema-1 scene file, along with the recognised primitive and texture type names.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"


class SceneKeys:
    """
    Constants representing JSON keys for a scene definition file.

    Attributes:
        SCHEMA (str): Key for the schema version, must equal SCHEMA_VERSION.
        ID (str): Key for the scene identifier.
        PRIMITIVES (str): Key for the list of primitives.
        LIGHTS (str): Key for the list of directional lights.
        AMBIENT (str): Key for the ambient RGB term.
        TYPE (str): Key for a primitive or texture type.
        TEXTURE (str): Key for a primitive's texture block.
    """
    SCHEMA_VERSION = 1

    SCHEMA = "schema"
    ID = "id"
    PRIMITIVES = "primitives"
    LIGHTS = "lights"
    AMBIENT = "ambient"
    TYPE = "type"
    TEXTURE = "texture"

    CENTER = "center"
    RADIUS = "radius"
    MIN = "min"
    MAX = "max"
    NORMAL = "normal"
    HALF_SIZE = "half_size"

    COLOR = "color"
    COLORS = "colors"
    SCALE = "scale"
    SEED = "seed"

    DIRECTION = "direction"
    INTENSITY = "intensity"

    class Primitives:
        """
        Primitive type names.

        Attributes:
            SPHERE (str): A sphere given by center and radius.
            BOX (str): An axis-aligned box given by min and max corners.
            PLANE (str): A finite square patch given by center, normal and half size.
        """
        SPHERE = "sphere"
        BOX = "box"
        PLANE = "plane"

    class Textures:
        """
        Texture type names.

        Attributes:
            SOLID (str): Constant albedo.
            CHECKER (str): 3D checkerboard alternating two colors.
            NOISE (str): Smooth value-noise blend of two colors.
        """
        SOLID = "solid"
        CHECKER = "checker"
        NOISE = "noise"
