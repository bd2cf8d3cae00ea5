#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
mvgeometry

Multi-view geometry: neighbour grouping, relative poses, depth-based warping and aligned stacks.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

from mvgeometry.sampling import bilinear_sample, bilinear_sample_grid
from mvgeometry.geometry import (BehindCamera, InsufficientViews, ReprojectionReport, ViewRecord, backproject,
                                 nearest_k, project, project_points, relative_pose, reprojection_error, warp_pixel,
                                 warp_pixels)
from mvgeometry.stack import (FILL_VALUE, IMAGE_CHANNELS, AlignedStack, DimensionMismatch, WarpedView, align_views,
                              build_aligned_stack, warp_view)
