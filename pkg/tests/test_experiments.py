import json
import subprocess
import sys

import numpy as np
import pytest

from shieldlab import (
    ResultTable,
    ShieldlabError,
    emit,
    make_chain,
    make_diamond,
    make_triangular_patch,
    point_rng,
    run_conjecture,
    run_counterexample,
    run_dual_check,
    run_quench_experiment,
    run_verify_shielding,
)
from shieldlab.tables import format_cell


def lattice_json(lat):
    return {
        "n_sites": lat.n_sites,
        "index_base": 0,
        "edges": [[int(i), int(j), float(J)] for (i, j, J) in lat.edges],
        "h": list(lat.h),
        "g": list(lat.g),
    }


def chain_config(n=4, L=1, trials=4, seed=7, **extra):
    h = [0.4] * n
    h[L] = 0.0
    lat = make_chain(n, [1.0] * (n - 1), h)
    cfg = {
        "lattice": lattice_json(lat),
        "split": {"X": list(range(L + 1)), "Y": list(range(L, n))},
        "betas": [0.5, 2.0],
        "trials": trials,
        "seed": seed,
    }
    cfg.update(extra)
    return cfg


def triangle_config(beta, seed=23, trials=6):
    lat, rows = make_triangular_patch([2, 3, 4])
    return {
        "lattice": lattice_json(lat),
        "split": {"X": rows[0] + rows[1], "Y": rows[1] + rows[2]},
        "beta": beta,
        "trials": trials,
        "seed": seed,
        "offset_range": [0.0, 3.0],
    }


class TestTables:
    def test_empty_table_is_header_only(self, tmp_path):
        path = emit(ResultTable(columns=("a", "b")), tmp_path / "x.csv")
        assert path.read_text() == "a,b\n"

    def test_seventeen_significant_digits(self):
        assert format_cell(1.0 / 3.0) == "0.33333333333333331"
        assert format_cell(7) == "7"
        assert format_cell("mix") == "mix"

    def test_sidecar_metadata(self, tmp_path):
        table = ResultTable(columns=("a",), rows=[(1.5,)],
                            metadata={"seed": 3})
        path = emit(table, tmp_path / "t.csv")
        sidecar = path.with_suffix(".csv.meta.json")
        assert json.loads(sidecar.read_text()) == {"seed": 3}

    def test_row_length_checked(self):
        table = ResultTable(columns=("a", "b"))
        with pytest.raises(ValueError):
            table.append(1)


class TestPointRng:
    def test_deterministic(self):
        a = point_rng(5, 3).uniform(size=4)
        b = point_rng(5, 3).uniform(size=4)
        assert np.array_equal(a, b)

    def test_streams_independent(self):
        a = point_rng(5, 3).uniform(size=4)
        b = point_rng(5, 4).uniform(size=4)
        assert not np.array_equal(a, b)


class TestVerifyShielding:
    def test_clean_run_passes(self):
        table = run_verify_shielding(chain_config())
        verdict = table.metadata["verdict"]
        assert verdict["status"] == "pass"
        assert verdict["max_distance"] < 1e-9
        assert verdict["max_rho_variation"] < 1e-9
        assert len(table.rows) == 4 * 2

    def test_control_run_reports_expected_violation(self):
        table = run_verify_shielding(chain_config(interface_field=0.3))
        verdict = table.metadata["verdict"]
        assert verdict["status"] == "fail"
        assert verdict["max_distance"] > 1e-3
        assert verdict["note"] == "shielding violated (expected: precondition broken)"

    def test_endpoint_interface_degenerates_to_exact_zero(self):
        # X = {interface}: nothing on the X side to randomize, identical states
        n = 2
        lat = make_chain(n, [1.3], [0.0, 0.8])
        cfg = {
            "lattice": lattice_json(lat),
            "split": {"X": [0], "Y": [0, 1]},
            "betas": [1.0],
            "trials": 3,
            "seed": 1,
        }
        table = run_verify_shielding(cfg)
        assert table.metadata["verdict"]["max_distance"] < 1e-14

    def test_requires_single_site_interface(self):
        lat = make_diamond(1.0, 1.0)
        cfg = {
            "lattice": lattice_json(lat),
            "split": {"X": [0, 1, 2], "Y": [1, 2, 3]},
            "trials": 2,
            "seed": 1,
        }
        with pytest.raises(ShieldlabError):
            run_verify_shielding(cfg)


class TestCounterexample:
    def test_series_and_dense_agree(self):
        cfg = {"h4": 1.0, "betas": [1.0, 7.0],
               "h1_grid": {"start": 0.0, "stop": 2.0, "step": 0.25}}
        table = run_counterexample(cfg)
        verdict = table.metadata["verdict"]
        assert verdict["status"] == "pass"
        assert verdict["max_abs_delta"] < 1e-8

    def test_colder_sweep_is_flatter(self):
        cfg = {"h4": 1.0, "betas": [1.0, 7.0],
               "h1_grid": {"start": 0.0, "stop": 2.0, "step": 0.25}}
        spread = run_counterexample(cfg).metadata["verdict"]["spread_by_beta"]
        assert spread["1.0"] > 1e-3
        assert spread["7.0"] < spread["1.0"]

    def test_near_ground_values_sit_on_plateau_at_unit_field(self):
        cfg = {"h4": 1.0, "betas": [50.0],
               "h1_grid": {"start": 0.0, "stop": 2.0, "step": 0.5}}
        verdict = run_counterexample(cfg).metadata["verdict"]
        assert verdict["plateau_gap_by_beta"]["50.0"] < 1e-3


class TestConjecture:
    def test_ground_state_invariance(self):
        table = run_conjecture(triangle_config("ground"))
        verdict = table.metadata["verdict"]
        assert verdict["status"] == "pass"
        assert verdict["max_variation"] < 1e-8
        sectors = {row[1] for row in table.rows}
        assert "mix" in sectors
        assert any(s != "mix" for s in sectors)

    def test_finite_temperature_leaks(self):
        table = run_conjecture(triangle_config(1.0))
        verdict = table.metadata["verdict"]
        assert verdict["max_variation"] > 1e-3
        assert verdict["status"] == "fail"
        assert all(row[1] == "mix" for row in table.rows)

    def test_single_site_interface_is_rigid_at_any_temperature(self):
        # with |S| = 1 the thermal result applies, so the conjecture runner
        # must see no A-side variation even at finite beta
        n, L = 5, 2
        h = [0.4] * n
        h[L] = 0.0
        lat = make_chain(n, [1.0] * (n - 1), h)
        cfg = {
            "lattice": lattice_json(lat),
            "split": {"X": list(range(L + 1)), "Y": list(range(L, n))},
            "beta": 1.0,
            "trials": 8,
            "seed": 3,
        }
        table = run_conjecture(cfg)
        assert table.metadata["verdict"]["max_variation"] < 1e-9


class TestQuenchRunner:
    def quench_config(self, observables="x"):
        n, L = 6, 2
        h = [0.5] * n
        h[L] = 0.0
        lat = make_chain(n, [1.0] * (n - 1), h)
        return {
            "pre": lattice_json(lat),
            "quench_site": 0,
            "quench_h": -10.0,
            "times": {"start": 0.0, "stop": 2.0, "step": 0.25},
            "observables": observables,
            "split": {"X": list(range(L + 1)), "Y": list(range(L, n))},
        }

    def test_shielded_side_is_static(self):
        table = run_quench_experiment(self.quench_config())
        verdict = table.metadata["verdict"]
        assert verdict["status"] == "pass"
        assert verdict["max_variation_shielded"] < 1e-9
        assert verdict["max_variation_driven"] > 1e-2

    def test_z_observables_are_symmetry_pinned(self):
        # the global spin flip commutes with every such Hamiltonian, so Z
        # magnetizations of the ground mixture vanish identically
        table = run_quench_experiment(self.quench_config(observables="z"))
        assert max(abs(v) for (_, _, v) in table.rows) < 1e-10

    def test_explicit_observable_list(self):
        cfg = self.quench_config(observables=["+ X5", "+ Z0 Z1"])
        table = run_quench_experiment(cfg)
        assert {s for (_, s, _) in table.rows} == {0, 5}


class TestDualCheckRunner:
    def test_random_chains(self):
        cfg = {"n_sites": 5, "trials": 6, "seed": 2}
        table = run_dual_check(cfg)
        verdict = table.metadata["verdict"]
        assert verdict["status"] == "pass"
        assert verdict["max_hamiltonian_residual"] < 1e-12
        assert verdict["max_algebra_residual"] < 1e-12

    def test_null_field_reports_two_components(self):
        cfg = {"n_sites": 5, "trials": 2, "seed": 2, "zero_field_site": 2}
        table = run_dual_check(cfg)
        assert all(row[4] == 2 for row in table.rows)

    def test_explicit_chain(self):
        lat = make_chain(3, [2.0, 3.0], [0.1, 0.2, 0.3])
        table = run_dual_check({"chain": lattice_json(lat)})
        assert table.rows[0][2] == 0.0


class TestDeterminism:
    def test_identical_seed_identical_bytes(self, tmp_path):
        for run in ("a", "b"):
            emit(run_verify_shielding(chain_config(seed=9)),
                 tmp_path / run / "out.csv")
        assert (tmp_path / "a" / "out.csv").read_bytes() == \
            (tmp_path / "b" / "out.csv").read_bytes()
        assert (tmp_path / "a" / "out.csv.meta.json").read_bytes() == \
            (tmp_path / "b" / "out.csv.meta.json").read_bytes()

    def test_different_seed_different_bytes(self, tmp_path):
        emit(run_verify_shielding(chain_config(seed=9)), tmp_path / "a.csv")
        emit(run_verify_shielding(chain_config(seed=10)), tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() != (tmp_path / "b.csv").read_bytes()


class TestCli:
    def run_cli(self, tmp_path, experiment, cfg, *extra):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        proc = subprocess.run(
            [sys.executable, "-m", "shieldlab.cli", experiment,
             "--config", str(cfg_path), "--out", str(tmp_path / "out"), *extra],
            capture_output=True, text=True,
        )
        return proc

    def test_passing_run_exits_zero(self, tmp_path):
        proc = self.run_cli(tmp_path, "verify-shielding", chain_config(trials=2))
        assert proc.returncode == 0, proc.stderr
        verdict_line = [l for l in proc.stdout.splitlines()
                        if l.startswith("VERDICT ")][0]
        verdict = json.loads(verdict_line[len("VERDICT "):])
        assert verdict["status"] == "pass"
        assert (tmp_path / "out" / "verify-shielding.csv").exists()
        assert (tmp_path / "out" / "verify-shielding.csv.meta.json").exists()

    def test_failing_verdict_exits_two(self, tmp_path):
        cfg = chain_config(trials=2, interface_field=0.3)
        proc = self.run_cli(tmp_path, "verify-shielding", cfg)
        assert proc.returncode == 2

    def test_config_error_exits_one(self, tmp_path):
        proc = self.run_cli(tmp_path, "verify-shielding", {"lattice": {}})
        assert proc.returncode == 1
        assert "error:" in proc.stderr

    def test_kind_mismatch_rejected(self, tmp_path):
        cfg = chain_config(trials=2)
        cfg["kind"] = "quench"
        proc = self.run_cli(tmp_path, "verify-shielding", cfg)
        assert proc.returncode == 1

    def test_seed_override(self, tmp_path):
        cfg = chain_config(trials=2, seed=1)
        proc = self.run_cli(tmp_path, "verify-shielding", cfg, "--seed", "2")
        assert proc.returncode == 0
        meta = json.loads(
            (tmp_path / "out" / "verify-shielding.csv.meta.json").read_text())
        assert meta["seed"] == 2
