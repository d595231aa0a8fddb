# Copyright 2026 The ccplan Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import numpy as np
import pytest

import ccplan


def test_metrics_on_arrays():
    flat = np.full((64, 64), 128, dtype=np.uint8)
    noise = np.random.default_rng(0).integers(0, 256, (64, 64), dtype=np.uint8)
    assert ccplan.jpeg_complexity(flat) == 384 / 32768
    assert ccplan.jpeg_complexity(noise) > ccplan.jpeg_complexity(flat)
    assert ccplan.edge_complexity(flat) == 0.0
    assert ccplan.signal_energy(np.zeros((8, 8), np.uint8)) == 0.0
    rgb = np.zeros((8, 8, 3), np.uint8)
    rgb[..., 0] = 255
    assert ccplan.signal_energy(rgb) == pytest.approx((76 / 255) ** 2)
    mask = np.zeros((10, 10), np.uint8)
    mask.flat[:7] = 255
    assert ccplan.blob_density(mask) == pytest.approx(0.07)
    assert ccplan.combine_jb(0.2, 0.4, 0.5) == pytest.approx(0.3)


def test_presets_and_scaling():
    assert set(ccplan.preset_names()) == {"unet", "fcn", "cumedvision"}
    acc = ccplan.param_count("unet")
    assert acc["theta"] == 31023808
    assert abs(acc["log10_theta"] - 7.492) <= 0.01
    half = ccplan.scale_arch("unet", 0.5)
    assert half["layers"][0]["out_maps"] == 32
    assert ccplan.param_count(json.dumps(half))["theta"] < acc["theta"]


def test_plans():
    model = ccplan.fixture_model("unet", "F1")
    profile = ccplan.fixture_profile("CU")
    plan = ccplan.plan("unet", "accuracy", 0.95, model=model, profile=profile)
    assert 5.32 <= plan["log10_theta_realized"] <= 5.56
    assert plan["predicted_rel_acc"] >= 0.95
    sib = ccplan.plan("unet", "accuracy", 0.95, model=model, profile=profile, epsilon=1 / 64)
    assert sib["predicted_rel_acc"] < 0.95
    disk = ccplan.plan("unet", "disk", 1e6, bytes_per_param=8)
    assert disk["theta_target"] == 125000
    alpha, target, clamped = ccplan.alpha_for_accuracy(7.492, 0.1473, 0.411, -0.037, 0.95)
    assert target == pytest.approx(5.368, abs=1e-3)
    assert not clamped
    assert alpha == pytest.approx(10 ** ((target - 7.492) / 2))


def test_fit_line_and_errors():
    slope, intercept, r2 = ccplan.fit_line([0.1, 0.2], [0.01, 0.03])
    assert slope == pytest.approx(0.2)
    assert intercept == pytest.approx(-0.01)
    assert r2 == pytest.approx(1.0)
    with pytest.raises(ccplan.CcplanError):
        ccplan.fit_line([1.0, 1.0], [0.0, 1.0])
    with pytest.raises(ccplan.CcplanError):
        ccplan.plan("unet", "disk", 2.0)
    with pytest.raises(ccplan.CcplanError):
        ccplan.arch("resnet")


def test_analyze(tmp_path):
    img = tmp_path / "img"
    img.mkdir()
    data = np.random.default_rng(1).integers(0, 256, (16, 16), dtype=np.uint8)
    (img / "a.pgm").write_bytes(b"P5 16 16 255\n" + data.tobytes())
    (tmp_path / "ds.json").write_text(json.dumps(
        {"name": "toy", "images_dir": "img", "images_glob": "*.pgm",
         "masks_dir": None, "mask_suffix": None}))
    prof = ccplan.analyze(tmp_path / "ds.json")
    assert prof["image_count"] == 1
    assert prof["jpeg_j"] == ccplan.jpeg_complexity(data)
    assert prof["blob_b"] is None
    assert math.isfinite(prof["edge"])
