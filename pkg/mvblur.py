#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
MVBLUR

A multi-view motion blur and noise dataset synthesizer.

This module provides the MVBLUR class that drives dataset generation, degradation, warping, reference rendering,
evaluation, statistics and export, and a main function to parse arguments and run one sub-command.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"
__description__ = "A multi-view motion blur and noise dataset synthesizer."
__app_name__ = "MVBLUR"

import argparse
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, fields, replace

import cv2
import numpy as np
from tqdm import tqdm

from DataTools import (CSVClient, DatasetError, DatasetManifest, FrameRecord, TransformsKeys,
                       export_transforms, load_json_from_url_or_file, read_dataset, read_depth, read_manifest,
                       write_dataset, write_depth, write_png)
from DataTools.DatasetIO import GENERATOR
from mvgeometry import align_views, reprojection_error
from objectives import NoValidPixels, depth_stability, histogram, psnr, ssim
from renderer import (DepthMap, Image, Ray, constant_field, constant_field_reference, convergence_table,
                      field_from_dict, render_field_image, volume_render_ray)
from scenemodel import CameraIntrinsics, CameraPose, ViewpointBox, demo_scene, load_scene, sample_viewpoint
from scenemodel.stats import compute_scene_stats
from synthesis import (BlurConfig, NoiseConfig, Streams, aim_camera, degrade, delinearize, derive_seed, derive_stream,
                       generate_setting, linearize, make_rng)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(message)s"
EVAL_HEADER = ["frame", "psnr_db", "ssim", "delta_abs_depth", "delta_rel_depth"]
STATS_HEADER = ["histogram", "bin_lo", "bin_hi", "count"]
REPROJECTION_HEADER = ["neighbour", "valid_pixels", "mean_error_px", "fraction_within_0.5px"]
CONVERGENCE_HEADER = ["steps", "color_error", "depth_error", "error_ratio"]
DEMO_SCENE = "demo"
U64_MAX = (1 << 64) - 1


class RunConfigKeys:
    """
    Constants representing the keys accepted in a --config JSON file.

    Every key names a RunConfig field; values from the file override the built-in defaults and are in turn
    overridden by explicit command line flags.
    """
    LEVELS = "levels"
    GAINS = "gains"
    RADIUS_RANGE = "radius_range"
    WB_RANGE = "wb_range"
    SEQUENCES = (LEVELS, GAINS, RADIUS_RANGE, WB_RANGE)

    @staticmethod
    def known() -> set:
        return {f.name for f in fields(RunConfig)}


@dataclass(frozen=True)
class RunConfig:
    """
    Fully resolved run configuration.
    """
    seed: int = 0
    threads: int = 1
    out: str = "out"
    width: int = 256
    height: int = 256
    verbose: bool = False
    # generate
    viewpoints: int = 1
    levels: tuple = (0, 1, 2, 3, 4)
    n: int = 2
    m: int = 8
    delta0: float = 2.5
    spaced: bool = False
    jitter: bool = True
    radius_range: tuple = (2.5, 3.5)
    fov: float = 50.0
    bit_depth: int = 16
    # degrade
    gains: tuple = (4.0, 8.0, 16.0, 20.0)
    gamma: float = 2.2
    wb_range: tuple = (0.7, 1.3)
    shot: float = 2.5e-4
    read: float = 1e-3
    clip_max: float = 1.0
    # warp
    src: int = 0
    K: int = 2
    level: int = 0
    # render-ref
    steps: int = 1000
    size: int = 16
    constant: float = 1.0
    # eval
    reference_level: int = None
    scene_range: float = None
    # stats
    bins: int = 10
    plot: bool = False
    # export
    holdout_every: int = None
    axis_convention: str = TransformsKeys.OPENCV

    def validate(self):
        """
        Raises:
            ValueError: On the first invalid value.
        """
        checks = [
            (0 <= self.seed <= U64_MAX, f"--seed must be an unsigned 64-bit integer, got {self.seed}"),
            (self.threads >= 1, f"--threads must be >= 1, got {self.threads}"),
            (self.width >= 1 and self.height >= 1, f"image size must be positive, got {self.width}x{self.height}"),
            (self.viewpoints >= 1, f"--viewpoints must be >= 1, got {self.viewpoints}"),
            (len(self.levels) > 0 and min(self.levels) >= 0, f"--levels must be non-negative, got {self.levels}"),
            (len(set(self.levels)) == len(self.levels), f"--levels must not repeat, got {self.levels}"),
            (self.n >= 1 and self.m >= 1, f"--n and --m must be >= 1, got n={self.n}, m={self.m}"),
            (self.delta0 >= 0, f"--delta0 must be non-negative, got {self.delta0}"),
            (0 < self.radius_range[0] <= self.radius_range[1], "--radius-range must satisfy 0 < lo <= hi"),
            (0 < self.fov < 180, f"--fov must be in (0, 180), got {self.fov}"),
            (self.bit_depth in (8, 16), f"--bit-depth must be 8 or 16, got {self.bit_depth}"),
            (len(self.gains) > 0 and min(self.gains) >= 1, f"--gains must all be >= 1, got {self.gains}"),
            (self.gamma > 0, f"--gamma must be positive, got {self.gamma}"),
            (0 < self.wb_range[0] <= self.wb_range[1], "--wb-range must satisfy 0 < lo <= hi"),
            (self.shot >= 0 and self.read >= 0, "--shot and --read must be non-negative"),
            (self.clip_max > 0, f"--clip-max must be positive, got {self.clip_max}"),
            (self.src >= 0 and self.K >= 0 and self.level >= 0, "--src, --K and --level must be non-negative"),
            (self.steps >= 1 and self.size >= 1, "--steps and --size must be >= 1"),
            (self.constant >= 0, f"--constant must be non-negative, got {self.constant}"),
            (self.scene_range is None or self.scene_range > 0, "--scene-range must be positive"),
            (self.bins >= 1, f"--bins must be >= 1, got {self.bins}"),
            (self.holdout_every is None or self.holdout_every >= 1, "--holdout-every must be >= 1"),
            (self.axis_convention in (TransformsKeys.OPENCV, TransformsKeys.OPENGL),
             f"--axis-convention must be opencv or opengl, got {self.axis_convention}"),
        ]
        for ok, message in checks:
            if not ok:
                raise ValueError(message)
        return self

    @staticmethod
    def resolve(args: argparse.Namespace) -> "RunConfig":
        """
        Layer defaults, the --config file and explicit flags, then validate.
        """
        values = asdict(RunConfig())
        if getattr(args, "config", None):
            document = load_json_from_url_or_file(args.config)
            unknown = set(document) - RunConfigKeys.known()
            if unknown:
                raise ValueError(f"Unknown keys in config file {args.config}: {', '.join(sorted(unknown))}")
            values.update(document)
        for name in RunConfigKeys.known():
            value = getattr(args, name, None)
            if value is not None:
                values[name] = value
        for name in RunConfigKeys.SEQUENCES:
            values[name] = tuple(values[name])
        values[RunConfigKeys.LEVELS] = tuple(int(level) for level in values[RunConfigKeys.LEVELS])
        values[RunConfigKeys.GAINS] = tuple(float(gain) for gain in values[RunConfigKeys.GAINS])
        return RunConfig(**values).validate()

    @property
    def intrinsics(self) -> CameraIntrinsics:
        return CameraIntrinsics.from_fov(self.width, self.height, self.fov)

    @property
    def noise(self) -> NoiseConfig:
        return NoiseConfig(gamma=self.gamma, wb_range=self.wb_range, shot_coeff=self.shot, read_coeff=self.read,
                           clip_max=self.clip_max)


class MVBLUR:
    """
    The MVBLUR application: one method per sub-command.

    Attributes:
        config (RunConfig): The resolved run configuration.
    """

    def __init__(self, config: RunConfig, stdout=None):
        """
        Initialize the application.

        Args:
            config (RunConfig): The resolved run configuration.
            stdout: Stream for result lines and CSV tables. Defaults to sys.stdout.
        """
        self.config = config
        self.stdout = stdout or sys.stdout

    def report(self, message: str):
        print(message, file=self.stdout)

    def progress_bar(self, total: int, description: str):
        return tqdm(total=total, desc=description, disable=not self.config.verbose, file=sys.stderr)

    def cmd_generate(self, scene_file: str) -> DatasetManifest:
        """
        Render a full dataset of blurred frames for a scene.

        Args:
            scene_file (str): Scene JSON path or URL, or "demo" for the built-in scene.

        Returns:
            DatasetManifest: The manifest written to the output directory.
        """
        cfg = self.config
        started = time.perf_counter()
        scene = demo_scene() if scene_file == DEMO_SCENE else load_scene(scene_file)
        intr = cfg.intrinsics
        blur = BlurConfig(levels=cfg.levels, delta0=cfg.delta0, m=cfg.m, n=cfg.n, spaced=cfg.spaced,
                          jitter_frames=cfg.jitter)
        radius = scene.bounding_sphere_radius

        viewpoints, stats, frames = [], [], []
        with self.progress_bar(cfg.viewpoints * len(cfg.levels) * cfg.n, "generate") as bar:
            for v in range(cfg.viewpoints):
                rng = make_rng(derive_stream(derive_seed(cfg.seed, scene.id, v, 0, 0), Streams.VIEWPOINT))
                theta0 = ViewpointBox.THETA0_CHOICES[v % len(ViewpointBox.THETA0_CHOICES)]
                viewpoint = sample_viewpoint(rng, cfg.radius_range, radius, theta0=theta0)
                viewpoint_stats = compute_scene_stats(scene, aim_camera(viewpoint), intr)
                viewpoints.append(viewpoint)
                stats.append(viewpoint_stats)
                frames += generate_setting(scene, viewpoint, blur, cfg.seed, intr, viewpoint_index=v,
                                           stats=viewpoint_stats, threads=cfg.threads, progress=bar.update)

        manifest = DatasetManifest(scene_id=scene.id, global_seed=cfg.seed, viewpoints=viewpoints, scene_stats=stats,
                                   levels=cfg.levels, n=cfg.n, m=cfg.m,
                                   frames=[FrameRecord.from_generated(frame) for frame in frames],
                                   bit_depth=cfg.bit_depth, gamma=cfg.gamma, scene=scene.to_dict())
        write_dataset(manifest, [f.image for f in frames], [f.depth for f in frames], cfg.out)
        self.report(f"generated {len(frames)} frames in {time.perf_counter() - started:.2f}s -> {cfg.out}")
        return manifest

    def cmd_degrade(self, dataset: str) -> list:
        """
        Write one noisy sibling dataset per gain under the output directory.

        Returns:
            list: Paths of the degraded datasets.
        """
        cfg = self.config
        manifest, frames = read_dataset(dataset)
        outputs = []
        for gain in cfg.gains:
            noise = replace(cfg.noise, gain=gain)
            root = os.path.join(cfg.out, f"gain{gain:g}")
            records, images, depths = [], [], []
            with self.progress_bar(len(frames), f"gain {gain:g}") as bar:
                for index in range(len(frames)):
                    record = frames.record(index)
                    seed = derive_stream(record.seed, Streams.NOISE, int(round(gain * 1000)))
                    display = delinearize(frames.image(index), noise.gamma)
                    noisy, degrade_record = degrade(display, noise, make_rng(seed), seed=seed)
                    images.append(linearize(noisy, noise.gamma))
                    depths.append(frames.depth(index))
                    records.append(replace(record, noise=degrade_record))
                    bar.update()
            parent = {"root": os.path.abspath(dataset), "gain": gain}
            write_dataset(manifest.with_frames(records, parent=parent), images, depths, root)
            outputs.append(root)
            self.report(f"degraded {len(records)} frames at gain {gain:g} -> {root}")
        return outputs

    def cmd_warp(self, dataset: str) -> tuple:
        """
        Warp the K nearest views of a source frame into it and report reprojection errors.

        Returns:
            tuple: (neighbour indices, AlignedStack, list of ReprojectionReport).
        """
        cfg = self.config
        _, frames = read_dataset(dataset)
        indices = frames.indices(cfg.level)
        if cfg.src >= len(indices):
            raise ValueError(f"--src {cfg.src} is out of range: level {cfg.level} has {len(indices)} frames")
        for index in indices:
            if frames.record(index).depth_path is None:
                raise DatasetError(f"Frame {frames.record(index).file_path} has no depth map")
        views = [frames.view(index) for index in indices]
        neighbours, warps, stack = align_views(views, cfg.src, cfg.K)

        out = os.path.join(cfg.out, f"warp_src{cfg.src:03d}")
        os.makedirs(out, exist_ok=True)
        reports = []
        with CSVClient(REPROJECTION_HEADER, path=os.path.join(out, "reprojection.csv")) as csv_out:
            for k, warp in zip(neighbours, warps):
                name = frames.record(indices[k]).name
                write_png(os.path.join(out, f"warped_{name}.png"), Image(warp.image))
                write_depth(os.path.join(out, f"warped_{name}.bin"), DepthMap.from_values(warp.depth, warp.valid))
                cv2.imwrite(os.path.join(out, f"valid_{name}.png"), warp.valid.astype(np.uint8) * 255)
                report = reprojection_error(views[cfg.src], views[k])
                reports.append(report)
                csv_out.write(name, report.valid_count, report.mean_error, report.fraction_within)
        np.save(os.path.join(out, "stack.npy"), stack.channels)
        np.save(os.path.join(out, "validity.npy"), stack.validity)

        finite = [r.mean_error for r in reports if r.valid_count > 0]
        mean_error = float(np.mean(finite)) if finite else float("nan")
        self.report(f"warped {len(neighbours)} views into frame {cfg.src} ({stack.channels.shape[-1]} channels), "
                    f"mean reprojection error {mean_error:.4f} px -> {out}")
        return neighbours, stack, reports

    def cmd_render_ref(self, field_spec: str = None) -> list:
        """
        Volume render an analytic field and print its convergence table on the central ray.

        Returns:
            list: ConvergenceRow entries.
        """
        cfg = self.config
        if field_spec:
            field = field_from_dict(load_json_from_url_or_file(field_spec))
            reference = None
        else:
            field = constant_field(cfg.constant, far_bound=1.0)
            reference = constant_field_reference(cfg.constant, (1.0, 1.0, 1.0), 1.0)

        ray = Ray((0.0, 0.0, 0.0), (0.0, 0.0, 1.0))
        if reference is None:
            # fine-grid numerical reference
            reference = volume_render_ray(field, ray, cfg.steps * 8)
        sample = volume_render_ray(field, ray, cfg.steps)
        color_error = np.abs(sample.color - reference.color)
        self.report(f"field {field.name}: steps={cfg.steps} color={sample.color.tolist()} depth={sample.depth:.6f} "
                    f"T={sample.transmittance_final:.6f}")
        self.report(f"error vs reference: color={color_error.tolist()} depth={abs(sample.depth - reference.depth):.3e}")

        steps_list = sorted({max(1, cfg.steps >> shift) for shift in range(4, -1, -1)})
        rows = convergence_table(field, ray, steps_list, reference)
        table = CSVClient(CONVERGENCE_HEADER, pipe=self.stdout, float_format="{:.6e}")
        for row in rows:
            table.write(row.steps, row.color_error, row.depth_error, row.depth_error_ratio)
        table.close()

        intr = CameraIntrinsics.from_fov(cfg.size, cfg.size, cfg.fov)
        image, depth, _ = render_field_image(field, intr, CameraPose.identity(), cfg.steps, cfg.threads)
        os.makedirs(cfg.out, exist_ok=True)
        write_png(os.path.join(cfg.out, "render_ref.png"), image)
        write_depth(os.path.join(cfg.out, "render_ref.bin"), depth)
        return rows

    def _scene_range(self, manifest: DatasetManifest, record: FrameRecord) -> float:
        if self.config.scene_range is not None:
            return self.config.scene_range
        return manifest.scene_stats[record.viewpoint].scene_range

    @staticmethod
    def _compare(image_ref, image_test, depth_ref, depth_test, scene_range) -> tuple:
        quality = (psnr(image_test, image_ref), ssim(image_test, image_ref))
        if depth_ref is None or depth_test is None:
            return quality + (float("nan"), float("nan"))
        try:
            stability = depth_stability(depth_ref, depth_test, scene_range)
        except NoValidPixels:
            return quality + (float("nan"), float("nan"))
        return quality + (stability.delta_abs, stability.delta_rel)

    def cmd_eval(self, dataset_a: str, dataset_b: str = None, depth_pair: list = None) -> list:
        """
        PSNR, SSIM and depth stability per frame plus per-level and overall means, as CSV on stdout.

        Frames of dataset_a are compared with the same positions in dataset_b, or, with --reference-level, with
        the frame of the same viewpoint and index at the reference level.

        Returns:
            list: (frame, level, psnr, ssim, delta_abs, delta_rel) rows.
        """
        cfg = self.config
        table = CSVClient(EVAL_HEADER, pipe=self.stdout)
        if depth_pair:
            if cfg.scene_range is None:
                raise ValueError("--depth-pair needs --scene-range")
            stability = depth_stability(read_depth(depth_pair[0]), read_depth(depth_pair[1]), cfg.scene_range)
            table.write("depth_pair", "", "", stability.delta_abs, stability.delta_rel)
            table.close()
            return [("depth_pair", None, float("nan"), float("nan"), stability.delta_abs, stability.delta_rel)]

        manifest_a, frames_a = read_dataset(dataset_a)
        rows = []
        if dataset_b is not None:
            _, frames_b = read_dataset(dataset_b)
            if len(frames_a) != len(frames_b):
                raise ValueError(f"Frame count mismatch: {len(frames_a)} vs {len(frames_b)}")
            pairs = [(index, frames_b, index) for index in range(len(frames_a))]
        elif cfg.reference_level is not None:
            pairs = []
            for index in range(len(frames_a)):
                record = frames_a.record(index)
                if record.blur_level != cfg.reference_level:
                    reference = frames_a.find(record.viewpoint, cfg.reference_level, record.frame_index)
                    pairs.append((index, frames_a, reference))
        else:
            raise ValueError("eval needs a second dataset, --reference-level or --depth-pair")

        for index, reference_frames, reference_index in pairs:
            record = frames_a.record(index)
            values = self._compare(reference_frames.image(reference_index), frames_a.image(index),
                                   reference_frames.depth(reference_index), frames_a.depth(index),
                                   self._scene_range(manifest_a, record))
            rows.append((record.name, record.blur_level) + values)
            table.write(record.name, *values)

        for level in sorted({row[1] for row in rows}):
            table.write(f"mean@level={level}", *self._column_means([row for row in rows if row[1] == level]))
        if rows:
            table.write("mean", *self._column_means(rows))
        table.close()
        return rows

    @staticmethod
    def _column_means(rows: list) -> list:
        means = []
        for column in range(2, 6):
            values = np.array([row[column] for row in rows], dtype=np.float64)
            values = values[~np.isnan(values)]
            means.append(float(np.mean(values)) if values.size else float("nan"))
        return means

    def cmd_stats(self, datasets: list) -> dict:
        """
        Histograms of scene range (far / near), scene dimension and blur weight per level, as CSV on stdout.

        Returns:
            dict: name -> Histogram.
        """
        cfg = self.config
        scene_ranges, dimensions, weights = [], [], {}
        for root in datasets:
            manifest = read_manifest(root)
            scene_ranges.append(float(np.mean([s.depth_range for s in manifest.scene_stats])))
            dimensions.append(float(np.mean([s.scene_dimension for s in manifest.scene_stats])))
            for record in manifest.frames:
                if record.blur_level > 0:
                    weights.setdefault(record.blur_level, []).append(record.blur_weight)

        histograms = {}
        for name, values in [("scene_range", scene_ranges), ("scene_dimension", dimensions)] + \
                [(f"blur_weight@level={level}", weights[level]) for level in sorted(weights)]:
            if values:
                histograms[name] = histogram(values, cfg.bins, self._value_range(values))

        table = CSVClient(STATS_HEADER, pipe=self.stdout)
        for name, hist in histograms.items():
            for lo, hi, count in zip(hist.edges[:-1], hist.edges[1:], hist.counts):
                table.write(name, float(lo), float(hi), int(count))
        table.close()

        if cfg.plot and histograms:
            from DataTools.Plots import plot_histograms
            os.makedirs(cfg.out, exist_ok=True)
            plot_histograms(histograms, os.path.join(cfg.out, "stats.png"), title=f"{__app_name__} dataset statistics")
        return histograms

    @staticmethod
    def _value_range(values: list) -> tuple:
        lo, hi = min(values), max(values)
        if lo == hi:
            return lo - 0.5, hi + 0.5
        return lo, hi

    def cmd_export(self, dataset: str) -> str:
        manifest, _ = read_dataset(dataset)
        path = export_transforms(manifest, dataset, self.config.axis_convention, self.config.holdout_every)
        self.report(f"exported {len(manifest.frames)} frames -> {path}")
        return path


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got '{text}'")


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got '{text}'")


class UsageError(ValueError):
    """Raised in place of argparse's exit when the command line cannot be parsed."""


class MVBLURArgumentParser(argparse.ArgumentParser):
    """
    An argument parser that raises UsageError instead of printing usage and exiting with status 2.

    Subparsers inherit this class, so every parse failure reaches main() as a single `error:` line.
    """

    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    """
    Build the command line parser.

    Returns:
        argparse.ArgumentParser: The parser.
    """
    parser = MVBLURArgumentParser(prog="mvblur.py", description=f'{__app_name__} - {__description__}')
    parser.add_argument('--version', action='version', version=GENERATOR)
    parser.add_argument('--seed', type=int, help='Global u64 seed; every frame seed derives from it.')
    parser.add_argument('--threads', type=int, help='Worker threads. Output does not depend on this.')
    parser.add_argument('--out', help='Output directory.')
    parser.add_argument('--width', type=int, help='Image width in pixels.')
    parser.add_argument('--height', type=int, help='Image height in pixels.')
    parser.add_argument('-c', '--config', help='JSON run configuration (file or URL); flags override it.')
    parser.add_argument('-v', '--verbose', action='store_true', default=None,
                        help='Debug logging and progress bars on standard error.')

    commands = parser.add_subparsers(dest='command', required=True)

    generate = commands.add_parser('generate', help='Render a blurred multi-view dataset.')
    generate.add_argument('scene', help='Scene JSON file or URL, or "demo".')
    generate.add_argument('--viewpoints', type=int, help='Number of viewpoints.')
    generate.add_argument('--levels', type=_int_list, help='Comma separated blur levels, e.g. 0,1,2,3,4.')
    generate.add_argument('--n', type=int, help='Frames per level per viewpoint.')
    generate.add_argument('--m', type=int, help='Latent renders averaged per frame.')
    generate.add_argument('--delta0', type=float, help='Trajectory direction scale.')
    generate.add_argument('--spaced', action='store_true', default=None, help='Evenly spaced latent positions.')
    generate.add_argument('--no-jitter', dest='jitter', action='store_false', default=None,
                          help='Start every frame exactly at its viewpoint.')
    generate.add_argument('--radius-range', type=float, nargs=2, metavar=('LO', 'HI'),
                          help='Camera distance range in bounding sphere radii.')
    generate.add_argument('--fov', type=float, help='Horizontal field of view in degrees.')
    generate.add_argument('--bit-depth', type=int, choices=[8, 16], help='PNG bit depth.')

    degrade_cmd = commands.add_parser('degrade', help='Add signal-dependent noise to a dataset.')
    degrade_cmd.add_argument('dataset', help='Dataset root.')
    degrade_cmd.add_argument('--gains', type=_float_list, help='Comma separated gains, e.g. 4,8,16,20.')
    degrade_cmd.add_argument('--gamma', type=float, help='Display gamma.')
    degrade_cmd.add_argument('--wb-range', type=float, nargs=2, metavar=('LO', 'HI'),
                             help='White balance gain range.')
    degrade_cmd.add_argument('--shot', type=float, help='Shot noise coefficient.')
    degrade_cmd.add_argument('--read', type=float, help='Read noise coefficient.')
    degrade_cmd.add_argument('--clip-max', type=float, help='Upper clamp after noise.')

    warp = commands.add_parser('warp', help='Warp the nearest views into a source frame.')
    warp.add_argument('dataset', help='Dataset root.')
    warp.add_argument('--src', type=int, help='Source frame index within the level.')
    warp.add_argument('--K', type=int, help='Number of neighbour views.')
    warp.add_argument('--level', type=int, help='Blur level whose frames are used.')

    render_ref = commands.add_parser('render-ref', help='Volume render an analytic field.')
    render_ref.add_argument('field_spec', nargs='?', help='Field spec JSON file or URL.')
    render_ref.add_argument('--constant', type=float, help='Density of the constant field when no spec is given.')
    render_ref.add_argument('--steps', type=int, help='Quadrature steps.')
    render_ref.add_argument('--size', type=int, help='Rendered image size in pixels.')

    eval_cmd = commands.add_parser('eval', help='PSNR, SSIM and depth stability as CSV.')
    eval_cmd.add_argument('dataset_a', nargs='?', help='Dataset under test.')
    eval_cmd.add_argument('dataset_b', nargs='?', help='Reference dataset.')
    eval_cmd.add_argument('--reference-level', type=int, help='Compare each frame with this level of dataset_a.')
    eval_cmd.add_argument('--depth-pair', nargs=2, metavar=('A', 'B'), help='Compare two depth files.')
    eval_cmd.add_argument('--scene-range', type=float, help='Normalizer for relative depth.')

    stats = commands.add_parser('stats', help='Dataset histograms as CSV.')
    stats.add_argument('datasets', nargs='*', help='Dataset roots.')
    stats.add_argument('--bins', type=int, help='Histogram bins.')
    stats.add_argument('--plot', action='store_true', default=None, help='Also save stats.png.')

    export = commands.add_parser('export', help='Write transforms.json.')
    export.add_argument('dataset', help='Dataset root.')
    export.add_argument('--holdout-every', type=int, help='Also write train/test splits holding out every N-th view.')
    export.add_argument('--axis-convention', choices=[TransformsKeys.OPENCV, TransformsKeys.OPENGL],
                        help='Camera axes of transform_matrix.')
    return parser


def run(args: argparse.Namespace, stdout=None):
    """
    Resolve the configuration and run the selected sub-command.
    """
    config = RunConfig.resolve(args)
    logging.basicConfig(level=logging.DEBUG if config.verbose else logging.WARNING, format=LOG_FORMAT,
                        stream=sys.stderr, force=True)
    app = MVBLUR(config, stdout)
    if args.command == 'generate':
        return app.cmd_generate(args.scene)
    if args.command == 'degrade':
        return app.cmd_degrade(args.dataset)
    if args.command == 'warp':
        return app.cmd_warp(args.dataset)
    if args.command == 'render-ref':
        return app.cmd_render_ref(args.field_spec)
    if args.command == 'eval':
        if args.dataset_a is None and args.depth_pair is None:
            raise ValueError("eval needs a dataset or --depth-pair")
        return app.cmd_eval(args.dataset_a, args.dataset_b, args.depth_pair)
    if args.command == 'stats':
        return app.cmd_stats(args.datasets)
    if args.command == 'export':
        return app.cmd_export(args.dataset)
    raise ValueError(f"Unknown command '{args.command}'")


def main(argv: list = None) -> int:
    """
    The main function to parse arguments and run the MVBLUR application.

    Returns:
        int: 0 on success, 1 after printing a single `error:` line.
    """
    try:
        run(build_parser().parse_args(argv))
    except Exception as e:
        logger.debug("Command failed", exc_info=True)
        message = " ".join(str(e).split()) or type(e).__name__
        print(f"error: {message}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
