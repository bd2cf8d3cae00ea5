#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
seeding.py

Counter-based seed derivation.

Every random draw in a dataset comes from a generator seeded by a pure function of
(global seed, scene id, viewpoint index, level, frame index) and a stream tag, so frames can be
produced in any order or on any number of threads and still be bit-identical.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import hashlib

import numpy as np

U64_MASK = (1 << 64) - 1


class Streams:
    """
    Stream tags separating independent draws made for the same frame.
    """
    TRAJECTORY = 1
    POSITIONS = 2
    JITTER = 3
    NOISE = 4
    VIEWPOINT = 5


def scene_hash(scene_id: str) -> int:
    """First 64 bits of the SHA-256 of the scene id."""
    return int.from_bytes(hashlib.sha256(scene_id.encode("utf-8")).digest()[:8], "little")


def _mix(words) -> int:
    state = np.random.SeedSequence([int(w) & U64_MASK for w in words]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def derive_seed(global_seed: int, scene_id: str, viewpoint: int, level: int, frame: int) -> int:
    """
    The u64 seed of one frame.

    Raises:
        ValueError: If any counter is negative.
    """
    if min(global_seed, viewpoint, level, frame) < 0:
        raise ValueError("Seed counters must be non-negative")
    return _mix((global_seed, scene_hash(scene_id), viewpoint, level, frame))


def derive_stream(seed: int, stream: int, *extra: int) -> int:
    """A sub-seed of `seed` for one stream tag and optional extra counters."""
    return _mix((seed, stream) + tuple(extra))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))
