#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the MVBLUR command line application.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import json
import math
import os

import numpy as np
import pytest

from DataTools import ManifestKeys, TransformsKeys, read_dataset, read_manifest
from mvblur import EVAL_HEADER, RunConfig, RunConfigKeys, build_parser, main

TINY = ["--width", "16", "--height", "12"]


def _generate(root, *extra, threads=1):
    argv = ["--out", str(root), "--threads", str(threads)] + TINY + \
        ["generate", "demo", "--n", "1", "--m", "2", "--levels", "0,1"] + list(extra)
    assert main(argv) == 0
    return str(root)


def _files(root):
    found = {}
    for directory, _, names in os.walk(root):
        for name in names:
            path = os.path.join(directory, name)
            with open(path, "rb") as file:
                found[os.path.relpath(path, root)] = file.read()
    return found


@pytest.fixture
def generated(tmp_path):
    return _generate(tmp_path / "ds")


def test_generate_writes_dataset(capsys, generated):
    manifest, frames = read_dataset(generated)
    assert len(frames) == 2
    assert manifest.levels == (0, 1)
    assert manifest.scene_id == "demo"
    assert "generated 2 frames" in capsys.readouterr().out


def test_generate_is_independent_of_threads(tmp_path):
    one = _generate(tmp_path / "one", "--viewpoints", "2", threads=1)
    many = _generate(tmp_path / "many", "--viewpoints", "2", threads=8)
    assert _files(one) == _files(many)
    assert len(read_manifest(one).frames) == 4


def test_generate_depends_on_seed(tmp_path):
    a = _generate(tmp_path / "a")
    b = _generate(tmp_path / "b", "--delta0", "2.5")
    assert _files(a) == _files(b)
    c = str(tmp_path / "c")
    argv = ["--seed", "9", "--out", c] + TINY + ["generate", "demo", "--n", "1", "--m", "2", "--levels", "0,1"]
    assert main(argv) == 0
    assert read_manifest(a).frames[1].seed != read_manifest(c).frames[1].seed


def test_bad_scene_prints_one_error_line(tmp_path, capsys):
    code = main(["--out", str(tmp_path)] + TINY + ["generate", str(tmp_path / "missing.json")])
    assert code == 1
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith("error: ")


@pytest.mark.parametrize("argv", [
    ["--seed", "abc", "generate", "demo"],
    [],
    ["frobnicate"],
    ["generate", "demo", "--n", "x"],
])
def test_usage_errors_print_one_error_line(argv, capsys):
    assert main(argv) == 1
    captured = capsys.readouterr()
    err = captured.err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith("error: ")
    assert "usage:" not in captured.err
    assert captured.out == ""


def test_bad_seed_names_the_flag(capsys):
    assert main(["--seed", "abc", "generate", "demo"]) == 1
    assert capsys.readouterr().err.strip() == "error: argument --seed: invalid int value: 'abc'"


def test_version_still_exits_cleanly(capsys):
    with pytest.raises(SystemExit) as exit_info:
        main(["--version"])
    assert exit_info.value.code == 0
    assert capsys.readouterr().out.strip()


def test_config_file_sequences_become_tuples(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({RunConfigKeys.GAINS: [4, 8], RunConfigKeys.RADIUS_RANGE: [2.0, 3.0],
                                  RunConfigKeys.WB_RANGE: [0.9, 1.1]}))
    resolved = RunConfig.resolve(build_parser().parse_args(["-c", str(config), "generate", "demo"]))
    assert resolved.gains == (4.0, 8.0)
    assert resolved.radius_range == (2.0, 3.0)
    assert resolved.wb_range == (0.9, 1.1)
    assert set(RunConfigKeys.SEQUENCES) <= RunConfigKeys.known()


def test_config_file_layers_under_flags(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"width": 20, "n": 3, "levels": [0, 2]}))
    args = build_parser().parse_args(["-c", str(config), "--width", "8", "generate", "demo"])
    resolved = RunConfig.resolve(args)
    assert resolved.width == 8
    assert resolved.n == 3
    assert resolved.levels == (0, 2)
    assert resolved.height == 256


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"bogus": 1}))
    assert main(["-c", str(config), "--out", str(tmp_path), "generate", "demo"]) == 1
    assert "bogus" in capsys.readouterr().err


def test_invalid_flag_values(tmp_path, capsys):
    assert main(["--out", str(tmp_path), "generate", "demo", "--levels", "0,0"]) == 1
    assert main(["--threads", "0", "--out", str(tmp_path), "generate", "demo"]) == 1
    assert capsys.readouterr().err.count("error:") == 2


def test_eval_against_reference_level(generated, capsys):
    capsys.readouterr()
    assert main(["eval", generated, "--reference-level", "0"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == ",".join(EVAL_HEADER)
    assert lines[1].startswith("v000_l1_f000,")
    assert lines[2].startswith("mean@level=1,")
    assert lines[-1].startswith("mean,")


def test_eval_identical_datasets(generated, capsys):
    capsys.readouterr()
    assert main(["eval", generated, generated]) == 0
    row = capsys.readouterr().out.strip().splitlines()[1].split(",")
    assert row[0] == "v000_l0_f000"
    assert math.isinf(float(row[1]))
    assert float(row[2]) == pytest.approx(1.0)
    assert float(row[3]) == 0.0


def test_eval_needs_a_mode(generated, capsys):
    assert main(["eval", generated]) == 1
    assert main(["eval", "--depth-pair", "a.bin", "b.bin"]) == 1
    assert capsys.readouterr().err.count("error:") == 2


def test_degrade_writes_one_dataset_per_gain(generated, tmp_path):
    out = tmp_path / "noisy"
    assert main(["--out", str(out), "degrade", generated, "--gains", "4,16"]) == 0
    for gain in (4, 16):
        manifest, frames = read_dataset(str(out / f"gain{gain}"))
        assert len(frames) == 2
        assert manifest.parent["gain"] == gain
        assert manifest.frames[0].noise.config.gain == gain
    clean = read_dataset(generated)[1].image(0).data
    noisy = read_dataset(str(out / "gain16"))[1].image(0).data
    assert not np.array_equal(clean, noisy)


def test_warp_writes_stack(tmp_path, capsys):
    root = _generate(tmp_path / "ds", "--viewpoints", "3")
    out = tmp_path / "warp"
    assert main(["--out", str(out), "warp", root, "--src", "0", "--K", "2", "--level", "0"]) == 0
    stack = np.load(str(out / "warp_src000" / "stack.npy"))
    validity = np.load(str(out / "warp_src000" / "validity.npy"))
    assert stack.shape == (12, 16, 12)
    assert validity.shape == (12, 16, 2)
    report = (out / "warp_src000" / "reprojection.csv").read_text().splitlines()
    assert len(report) == 3
    assert main(["--out", str(out), "warp", root, "--src", "5"]) == 1


def test_render_ref_constant_field(tmp_path, capsys):
    assert main(["--out", str(tmp_path), "render-ref", "--steps", "64", "--size", "4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("field ")
    assert out[2] == "steps,color_error,depth_error,error_ratio"
    assert len(out) == 3 + 5
    assert os.path.isfile(tmp_path / "render_ref.png")
    assert os.path.isfile(tmp_path / "render_ref.bin")


def test_stats_histograms(generated, capsys):
    capsys.readouterr()
    assert main(["stats", generated, "--bins", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "histogram,bin_lo,bin_hi,count"
    names = [line.split(",")[0] for line in lines[1:]]
    assert names.count("scene_range") == 3
    assert names.count("scene_dimension") == 3
    assert names.count("blur_weight@level=1") == 3
    assert sum(int(line.split(",")[3]) for line in lines[1:] if line.startswith("scene_range,")) == 1


def test_export_transforms(generated):
    assert main(["export", generated, "--holdout-every", "2", "--axis-convention", "opengl"]) == 0
    with open(os.path.join(generated, TransformsKeys.FILE)) as file:
        document = json.load(file)
    assert document[TransformsKeys.AXIS_CONVENTION] == "opengl"
    assert len(document[TransformsKeys.FRAMES]) == 2
    assert os.path.isfile(os.path.join(generated, TransformsKeys.TEST_FILE))
    assert os.path.isfile(os.path.join(generated, ManifestKeys.MANIFEST_FILE))


def test_stats_plot(generated, tmp_path):
    out = tmp_path / "plots"
    assert main(["--out", str(out), "stats", generated, "--plot"]) == 0
    assert os.path.getsize(out / "stats.png") > 0
