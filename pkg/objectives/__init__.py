#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
objectives

Losses with analytic gradients and evaluation metrics.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

from objectives.losses import (AnnealSchedule, LossWeights, NoValidPixels, NonFinite, ShapeMismatch, anneal_weight,
                               depth_loss, numerical_gradient, photometric_loss, restoration_loss, smooth_l1,
                               smooth_l1_derivative, total_loss)
from objectives.metrics import (PSNR_IDENTICAL, DepthStabilityReport, Histogram, depth_stability, histogram, psnr,
                                ssim)
