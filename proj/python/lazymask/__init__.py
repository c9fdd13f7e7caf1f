# Copyright 2026 The lazymask Authors
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
"""Python bindings for the lazymask routing library."""

from ._lazymask import (
    DataError,
    Error,
    InfeasibleInstance,
    Instance,
    NoFeasibleRoute,
    bound_check,
    decode,
    enumerate_support,
    feasible_set,
    generate,
    gibbs,
    is_feasible,
    objective,
    penalty,
    run_cli,
    total_violation,
)

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "Error",
    "InfeasibleInstance",
    "Instance",
    "NoFeasibleRoute",
    "bound_check",
    "decode",
    "enumerate_support",
    "feasible_set",
    "generate",
    "gibbs",
    "is_feasible",
    "objective",
    "penalty",
    "run_cli",
    "total_violation",
]
