#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
DataTools Module.

This module provides dataset storage and interchange tools.

Classes and Functions:
    - write_dataset / read_dataset: Manifest, PNG image and DGF1 depth storage.
    - FrameRecord / DatasetManifest: Manifest records.
    - export_transforms / read_transforms: NeRF-synthetic transforms.json interchange.
    - load_json_from_url_or_file: JSON from a local file or an http(s) URL.
    - CSVClient: A simple CSV writer for report tables.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

from DataTools.Errors import (CorruptDepth, DatasetError, InconsistentManifest, MissingFile, MixedIntrinsics,
                              SchemaMismatch)
from DataTools.Loaders import is_url, load_json_from_url_or_file
from DataTools.ManifestKeys import ManifestKeys, TransformsKeys
from DataTools.DepthCodec import check_depth_file, decode_depth, encode_depth, read_depth, write_depth
from DataTools.ImageCodec import read_png, write_png
from DataTools.DatasetIO import (DatasetManifest, FrameAccessor, FrameRecord, frame_name, read_dataset, read_manifest,
                                 select_holdout, write_dataset)
from DataTools.Transforms import (TransformsData, camera_to_world, export_transforms, pose_from_transform,
                                  read_transforms)
from DataTools.CSVClient import CSVClient
