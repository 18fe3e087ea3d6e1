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

import math

import pytest

import hrcsim


def test_version_and_table():
    assert hrcsim.__version__
    assert hrcsim.two_qubit_clifford_count() == 720


def test_tableau_entanglement_roundtrip():
    t = hrcsim.StabilizerTableau(8)
    assert t.n_qubits == 8
    rng = hrcsim.Rng(seed=1)
    for k in range(16):
        g = hrcsim.sample_two_qubit_clifford(rng)
        t.apply_two_qubit(g, k % 8, (k + 1) % 8)
    s = hrcsim.entanglement_entropy(t, [0, 1, 2, 3])
    assert 0 <= s <= 4
    assert s == hrcsim.entanglement_entropy(t, [4, 5, 6, 7])
    i2 = hrcsim.mutual_information(t, [0, 1], [4, 5])
    e = hrcsim.log_negativity(t, [0, 1], [4, 5])
    assert 2 * e <= i2


def test_measurement_kinds():
    t = hrcsim.StabilizerTableau(2)
    assert t.measure_z(0) == hrcsim.MeasurementKind.DETERMINISTIC


def test_trajectories_are_deterministic():
    config = hrcsim.ProtocolConfig()
    config.kind = hrcsim.CircuitKind.LRHRC
    config.n_sites = 8
    config.alpha = 2.0
    config.measurement_rate = 0.3
    config.master_seed = 11
    config.validate()
    a = hrcsim.run_trajectory(config, 0)
    b = hrcsim.run_trajectory(config, 0)
    assert (a.half_entropy, a.tripartite_info) == (b.half_entropy, b.tripartite_info)
    obs = hrcsim.run_ancilla_trajectory(config, 0)
    assert obs.reference_entropy[0] == 1
    assert all(x in (0, 1) for x in obs.reference_entropy)


def test_tape_equivalence_smoke():
    stats = hrcsim.run_tape_equivalence(hrcsim.CircuitKind.CHRC, 4, n_circuits=3)
    assert stats.mismatches == 0
    assert stats.comparisons > 0


def test_fss_collapse_on_synthetic_data():
    sizes = [16, 24, 32, 48]
    rates = [0.2 + 0.02 * k for k in range(11)]
    data = hrcsim.synthetic_collapse_data(0.3, 1.3, 0.0, sizes, rates, 0.05, 3)
    params = hrcsim.fss_collapse(data, bootstrap_resamples=10)
    assert math.isclose(params.p_c, 0.3, abs_tol=0.02)
    assert math.isclose(params.nu, 1.3, abs_tol=0.2)


def test_power_law_fit():
    points = [(size, 2.0 * size**0.5 + 1.0, 0.01) for size in (8, 16, 32, 64)]
    fit = hrcsim.fit_power_law(points)
    assert math.isclose(fit.exponent, 0.5, abs_tol=0.01)


def test_invalid_config_raises():
    config = hrcsim.ProtocolConfig()
    config.n_sites = 8
    config.cluster_size = 3  # odd cluster sizes are rejected
    with pytest.raises(ValueError):
        config.validate()
