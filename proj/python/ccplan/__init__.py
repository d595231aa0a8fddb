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

"""Python bindings for the ccplan width-multiplier planner."""

import json as _json

from ._ccplan import (
    CcplanError,
    alpha_for_accuracy,
    blob_density,
    combine_jb,
    edge_complexity,
    fit_line,
    jpeg_complexity,
    param_count,
    preset_names,
    signal_energy,
)
from . import _ccplan

__all__ = [
    "CcplanError",
    "alpha_for_accuracy",
    "analyze",
    "arch",
    "blob_density",
    "combine_jb",
    "edge_complexity",
    "fit_line",
    "fixture_model",
    "fixture_profile",
    "jpeg_complexity",
    "param_count",
    "plan",
    "preset_names",
    "scale_arch",
    "signal_energy",
]


def _arch_text(arch):
    return arch if isinstance(arch, str) else _json.dumps(arch)


def _opt_json(obj):
    if obj is None:
        return None
    return obj if isinstance(obj, str) else _json.dumps(obj)


def analyze(manifest, threads=0):
    """Complexity profile of the dataset described by a manifest file."""
    return _json.loads(_ccplan.analyze_json(str(manifest), threads))


def arch(name_or_spec):
    """Resolved architecture spec as a dict."""
    return _json.loads(_ccplan.arch_json(_arch_text(name_or_spec)))


def scale_arch(arch, alpha, rounding="ceil"):
    return _json.loads(_ccplan.scale_arch_json(_arch_text(arch), alpha, rounding))


def fixture_model(arch, metric):
    return _json.loads(_ccplan.fixture_model_json(arch, metric))


def fixture_profile(name):
    return _json.loads(_ccplan.fixture_profile_json(name))


def plan(arch, constraint, value, model=None, profile=None, rounding="ceil",
         alpha_min=0.03125, bytes_per_param=4.0, epsilon=None):
    """Compression plan for one constraint: 'disk', 'ram' or 'accuracy'.

    With ``epsilon`` the alpha - epsilon sibling plan is returned instead.
    """
    text = _ccplan.plan_json(_arch_text(arch), constraint, float(value),
                             _opt_json(model), _opt_json(profile), rounding,
                             alpha_min, bytes_per_param, epsilon)
    return _json.loads(text)
