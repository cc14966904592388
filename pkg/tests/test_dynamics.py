import math

import numpy as np
import pytest

from shieldlab import (
    DensityMatrix,
    NonCommutingSplitError,
    ObservableOutsideRegionError,
    PauliString,
    QuenchProtocol,
    SizeMismatchError,
    build_hamiltonian,
    evolve,
    ground_state_density,
    make_chain,
    make_diamond,
    run_quench,
    shielded_dynamics_check,
    split_hamiltonian,
    validate_split,
)

from helpers import random_mixed_state, random_product_state, random_pure_state


def minus_x_hamiltonian():
    from shieldlab import HamiltonianTerms
    return HamiltonianTerms(1, ((-1.0, PauliString("X")),))


class TestEvolve:
    def test_time_zero_is_exact(self):
        rng = np.random.default_rng(3)
        rho0 = DensityMatrix(random_mixed_state(rng, 2), (0, 1))
        H = build_hamiltonian(make_chain(2, [1.0], [0.5, 0.5]))
        out = evolve(H, rho0, 0.0)
        assert np.array_equal(out.matrix, rho0.matrix)

    def test_rabi_flip(self):
        # H = -X, rho0 = |0><0|: <Z(t)> = cos(2t), so a pi/2 pulse flips it
        rho0 = DensityMatrix(np.diag([1.0, 0.0]), (0,))
        H = minus_x_hamiltonian()
        for t in (0.3, 0.9, math.pi / 2):
            rho_t = evolve(H, rho0, t)
            z = float(np.real(rho_t.matrix[0, 0] - rho_t.matrix[1, 1]))
            assert z == pytest.approx(math.cos(2 * t), abs=1e-12)

    def test_purity_and_spectrum_conserved(self):
        rng = np.random.default_rng(7)
        lat = make_chain(3, rng.uniform(-2, 2, 2), rng.uniform(0, 1, 3))
        H = build_hamiltonian(lat)
        rho0 = DensityMatrix(random_mixed_state(rng, 3), (0, 1, 2))
        spec0 = np.linalg.eigvalsh(rho0.matrix)
        for t in (0.5, 2.0, 7.3):
            rho_t = evolve(H, rho0, t)
            assert abs(np.trace(rho_t.matrix).real - 1.0) < 1e-10
            purity0 = np.trace(rho0.matrix @ rho0.matrix).real
            purity_t = np.trace(rho_t.matrix @ rho_t.matrix).real
            assert abs(purity0 - purity_t) < 1e-10
            assert np.abs(np.linalg.eigvalsh(rho_t.matrix) - spec0).max() < 1e-10

    def test_energy_conserved(self):
        rng = np.random.default_rng(11)
        lat = make_chain(4, rng.uniform(-1, 1, 3), rng.uniform(0, 1, 4))
        H = build_hamiltonian(lat)
        rho0 = DensityMatrix(random_pure_state(rng, 4), (0, 1, 2, 3))
        h_dense = H.to_dense()
        e0 = np.trace(rho0.matrix @ h_dense).real
        for t in (1.0, 4.0):
            et = np.trace(evolve(H, rho0, t).matrix @ h_dense).real
            assert abs(et - e0) < 1e-10

    def test_rejects_nonfinite_time(self):
        rho0 = DensityMatrix(np.eye(2) / 2, (0,))
        with pytest.raises(ValueError):
            evolve(minus_x_hamiltonian(), rho0, math.inf)


class TestShieldedDynamics:
    def chain_parts(self, rng, n=6, L=3):
        h = rng.uniform(0, 1, size=n)
        h[L] = 0.0
        lat = make_chain(n, rng.uniform(-2, 2, size=n - 1), h)
        split = validate_split(lat, range(L + 1), range(L, n))
        parts = split_hamiltonian(build_hamiltonian(lat), split)
        return lat, split, parts

    def test_identity_for_product_state(self):
        rng = np.random.default_rng(13)
        lat, split, parts = self.chain_parts(rng)
        rho0 = DensityMatrix(random_product_state(rng, 6), tuple(range(6)))
        obs = PauliString.single(6, 5, "Z")
        dev = shielded_dynamics_check(parts.h_x, parts.h_y, obs, rho0,
                                      [0.0, 0.7, 1.9, 3.1])
        assert dev < 1e-10

    def test_identity_for_entangled_state(self):
        rng = np.random.default_rng(17)
        lat, split, parts = self.chain_parts(rng)
        rho0 = DensityMatrix(random_pure_state(rng, 6), tuple(range(6)))
        obs = PauliString.from_sites(6, {4: "X", 5: "Z"})
        dev = shielded_dynamics_check(parts.h_x, parts.h_y, obs, rho0,
                                      [0.4, 1.3, 2.6])
        assert dev < 1e-10

    def test_diamond_split_obeys_identity(self):
        rng = np.random.default_rng(19)
        lat = make_diamond(1.0, 1.0)
        split = validate_split(lat, {0, 1, 2}, {1, 2, 3})
        parts = split_hamiltonian(build_hamiltonian(lat), split)
        rho0 = DensityMatrix(random_mixed_state(rng, 4), (0, 1, 2, 3))
        obs = PauliString.single(4, 3, "X")
        dev = shielded_dynamics_check(parts.h_x, parts.h_y, obs, rho0,
                                      [0.5, 1.5, 3.0])
        assert dev < 1e-10

    def test_observable_on_interface_rejected(self):
        rng = np.random.default_rng(23)
        lat, split, parts = self.chain_parts(rng)
        rho0 = DensityMatrix(random_product_state(rng, 6), tuple(range(6)))
        with pytest.raises(ObservableOutsideRegionError):
            shielded_dynamics_check(parts.h_x, parts.h_y,
                                    PauliString.single(6, 3, "Z"), rho0, [1.0])

    def test_noncommuting_split_rejected(self):
        rng = np.random.default_rng(29)
        n = 4
        h = rng.uniform(0.1, 1, size=n)  # no zero interface field
        lat = make_chain(n, [1.0] * (n - 1), h)
        split = validate_split(lat, {0, 1}, {1, 2, 3},
                               require_zero_interface_fields=False)
        parts = split_hamiltonian(build_hamiltonian(lat), split)
        rho0 = DensityMatrix(random_product_state(rng, n), tuple(range(n)))
        with pytest.raises(NonCommutingSplitError):
            shielded_dynamics_check(parts.h_x, parts.h_y,
                                    PauliString.single(n, 3, "Z"), rho0, [1.0])


class TestQuenchProtocol:
    def test_rejects_changed_graph(self):
        pre = make_chain(3, [1.0, 1.0], [0.5, 0.0, 0.5])
        post = make_chain(4, [1.0] * 3, [0.5, 0.0, 0.5, 0.5])
        with pytest.raises(SizeMismatchError):
            QuenchProtocol(pre, post, (0.0,), (PauliString.single(3, 0, "Z"),))

    def test_rejects_unsorted_times(self):
        pre = make_chain(2, [1.0], [0.5, 0.5])
        with pytest.raises(ValueError):
            QuenchProtocol(pre, pre, (1.0, 0.5),
                           (PauliString.single(2, 0, "Z"),))


class TestRunQuench:
    def test_stationary_when_nothing_changes(self):
        pre = make_chain(4, [1.0] * 3, [0.5, 0.0, 0.5, 0.5])
        obs = tuple(PauliString.single(4, i, "X") for i in range(4))
        protocol = QuenchProtocol(pre, pre, tuple(np.arange(0, 3.0, 0.5)), obs)
        table = run_quench(protocol)
        for site in range(4):
            values = [v for (t, s, v) in table.rows if s == site]
            assert max(values) - min(values) < 1e-12

    def test_rows_ordered_by_time_then_site(self):
        pre = make_chain(3, [1.0, 1.0], [0.5, 0.0, 0.5])
        obs = tuple(PauliString.single(3, i, "X") for i in (2, 0, 1))
        protocol = QuenchProtocol(pre, pre, (0.0, 1.0), obs)
        table = run_quench(protocol)
        keys = [(t, s) for (t, s, _) in table.rows]
        assert keys == sorted(keys)
        assert table.columns == ("t", "site", "value")

    def test_disturbance_stops_at_zero_field_site(self):
        n, L = 8, 3
        h = [0.5] * n
        h[L] = 0.0
        pre = make_chain(n, [1.0] * (n - 1), h)
        h2 = list(h)
        h2[0] = -10.0
        post = make_chain(n, [1.0] * (n - 1), h2)
        obs = tuple(PauliString.single(n, i, "X") for i in range(n))
        times = tuple(np.arange(0.0, 4.0001, 0.1))
        table = run_quench(QuenchProtocol(pre, post, times, obs))
        variation = {}
        for (t, s, v) in table.rows:
            lo, hi = variation.get(s, (v, v))
            variation[s] = (min(lo, v), max(hi, v))
        for site in range(L + 1, n):
            lo, hi = variation[site]
            assert hi - lo < 1e-9
        assert any(variation[s][1] - variation[s][0] > 1e-2 for s in range(L))

    def test_matches_density_evolution(self):
        # vector fast path against the literal rho(t) = U rho U† definition
        rng = np.random.default_rng(31)
        pre = make_chain(3, [1.0, 0.5], [0.4, 0.0, 0.7])
        post = make_chain(3, [1.0, 0.5], [-2.0, 0.0, 0.7])
        obs = tuple(PauliString.single(3, i, "Z") for i in range(3))
        times = (0.0, 0.8, 1.7)
        table = run_quench(QuenchProtocol(pre, post, times, obs))
        from shieldlab import expectation
        rho0 = ground_state_density(build_hamiltonian(pre))
        h_post = build_hamiltonian(post)
        for (t, site, value) in table.rows:
            ref = expectation(evolve(h_post, rho0, t),
                              PauliString.single(3, site, "Z"))
            assert value == pytest.approx(ref, abs=1e-12)

    def test_caller_supplied_initial_state(self):
        rng = np.random.default_rng(37)
        pre = make_chain(3, [1.0, 1.0], [0.5, 0.0, 0.5])
        rho0 = DensityMatrix(random_mixed_state(rng, 3), (0, 1, 2))
        obs = (PauliString.single(3, 2, "Z"),)
        table = run_quench(QuenchProtocol(pre, pre, (0.0, 1.0), obs), rho0=rho0)
        from shieldlab import expectation
        assert table.rows[0][2] == pytest.approx(
            expectation(rho0, obs[0]), abs=1e-12)
