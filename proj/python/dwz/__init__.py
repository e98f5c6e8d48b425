# Copyright 2026 The dwz Authors.
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

"""Point counts and zeta functions over finite fields via Dwork's trace formula."""

from ._core import (
    DwzError,
    Field,
    affine_count,
    brute_affine,
    brute_counts,
    brute_toric,
    count_points,
    default_bounds,
    jacobian_order,
    normalize_poly,
    recover_zeta,
    run_cli,
    toric_count,
    variety_count,
    zeta_series,
)

__all__ = [
    "DwzError",
    "Field",
    "affine_count",
    "brute_affine",
    "brute_counts",
    "brute_toric",
    "count_points",
    "default_bounds",
    "jacobian_order",
    "normalize_poly",
    "recover_zeta",
    "run_cli",
    "toric_count",
    "variety_count",
    "zeta_series",
]
