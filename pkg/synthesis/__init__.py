#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
synthesis

Degradation synthesis: seeded motion blur and signal-dependent noise.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

from synthesis.seeding import Streams, derive_seed, derive_stream, make_rng, scene_hash
from synthesis.noisesynth import (DegradeRecord, NoiseConfig, OutOfRange, add_shot_read_noise, apply_white_balance,
                                  degrade, delinearize, linearize, noise_variance, postprocess_prediction,
                                  sample_shot_read_noise, undo_white_balance)
from synthesis.blursynth import (BlurConfig, BlurredFrame, GeneratedFrame, InvalidTrajectory, Trajectory, aim_camera,
                                 generate_setting, jittered_start, latent_offsets, render_blurred_frame,
                                 sample_blur_weight, sample_trajectory_direction)
