#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
renderer

Latent image ray tracing and the reference volume renderer.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

from renderer.images import DepthMap, Image
from renderer.raytracer import DEFAULT_BACKGROUND, Ray, RayGrid, generate_rays, trace_image
from renderer.volume import (AnalyticRadianceField, ConvergenceRow, FieldKeys, NonFiniteField, VolumeSample,
                             constant_field, constant_field_reference, convergence_table, field_from_dict,
                             gaussian_field, render_field_image, sphere_field, volume_render_ray)
