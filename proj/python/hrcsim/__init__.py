# Copyright 2026 The hrcsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Monitored Clifford circuits with variable-range gates.

Thin python layer over the C++ core: stabilizer tableau simulation,
entanglement measures, circuit protocols, and finite-size-scaling fits.
"""

from hrcsim._core import (  # noqa: F401
    AncillaObservables,
    CircuitKind,
    CollapseParams,
    DataPoint,
    DataSet,
    DynamicCollapseParams,
    EquivalenceStats,
    MeasurementKind,
    PowerLawFit,
    ProtocolConfig,
    Rng,
    StabilizerTableau,
    StationaryObservables,
    SymplecticGate,
    __version__,
    collapse_quality,
    crossing_estimate,
    dynamic_collapse,
    entanglement_entropy,
    fit_power_law,
    fss_collapse,
    log_negativity,
    mutual_information,
    read_records_dataset,
    run_ancilla_trajectory,
    run_tape_equivalence,
    run_trajectory,
    sample_two_qubit_clifford,
    synthetic_collapse_data,
    trajectory_seed,
    tripartite_mutual_information,
    two_qubit_clifford_count,
)

__all__ = [
    "AncillaObservables",
    "CircuitKind",
    "CollapseParams",
    "DataPoint",
    "DataSet",
    "DynamicCollapseParams",
    "EquivalenceStats",
    "MeasurementKind",
    "PowerLawFit",
    "ProtocolConfig",
    "Rng",
    "StabilizerTableau",
    "StationaryObservables",
    "SymplecticGate",
    "__version__",
    "collapse_quality",
    "crossing_estimate",
    "dynamic_collapse",
    "entanglement_entropy",
    "fit_power_law",
    "fss_collapse",
    "log_negativity",
    "mutual_information",
    "read_records_dataset",
    "run_ancilla_trajectory",
    "run_tape_equivalence",
    "run_trajectory",
    "sample_two_qubit_clifford",
    "synthetic_collapse_data",
    "trajectory_seed",
    "tripartite_mutual_information",
    "two_qubit_clifford_count",
]
