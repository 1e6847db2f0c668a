import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monospin import optimize
from monospin.errors import DomainError
from monospin.model import DesignVector


def _space(spec, frozen=None):
    frozen = frozen or DesignVector(10.0, 10.0, 1.05, 1.75, 0.0, 0.0)
    return optimize.DesignSpace.from_dict(spec, frozen)


def test_design_space_validation():
    with pytest.raises(DomainError):
        optimize.DesignSpace(np.zeros(5), np.ones(5), np.ones(5, dtype=int))
    with pytest.raises(DomainError):
        optimize.DesignSpace(np.ones(6), np.zeros(6), np.ones(6, dtype=int))
    with pytest.raises(DomainError):
        # frozen variable with resolution > 1
        optimize.DesignSpace(np.ones(6), np.ones(6),
                             np.full(6, 2, dtype=int))


def test_design_space_axes_and_contains():
    sp = _space({"alpha_p": (0.0, 10.0, 11)})
    assert sp.free_indices == [0]
    np.testing.assert_allclose(sp.axis_values(0), np.linspace(0, 10, 11))
    assert sp.grid_size == 11
    assert sp.contains(np.array([5.0, 10.0, 1.05, 1.75, 0.0, 0.0]))
    assert not sp.contains(np.array([11.0, 10.0, 1.05, 1.75, 0.0, 0.0]))


def test_evaluate_design_feasible(cfg1):
    res = optimize.evaluate_design(cfg1.base, cfg1.masses, cfg1.design)
    assert res.feasible
    assert res.P_s > 0.0
    assert res.hover.residual_norm < 1e-10


def test_evaluate_design_rejects_windmilling(cfg2):
    res = optimize.evaluate_design(cfg2.base, cfg2.masses, cfg2.design)
    assert res.feasible
    # the motor must drive the rotor on the accepted branch
    assert res.hover.i_bar * res.hover.omega_p_bar > 0.0


def test_sweep_needs_one_or_two_free_vars(cfg1):
    sp = _space({"alpha_p": (0.0, 10.0, 3), "alpha_B": (0.0, 10.0, 3),
                 "chord_ratio": (0.5, 1.5, 3)})
    with pytest.raises(DomainError):
        optimize.sweep(sp, cfg1.base, cfg1.masses)


def test_grid_cap(cfg1):
    sp = _space({"alpha_p": (0.0, 10.0, 101), "alpha_B": (0.0, 10.0, 101)})
    with pytest.raises(DomainError):
        optimize.grid_search(sp, cfg1.base, cfg1.masses, cap=100)


def test_grid_search_covers_every_point(cfg1):
    sp = _space({"alpha_p": (0.0, 10.0, 4), "chord_ratio": (0.8, 1.2, 3)})
    result = optimize.grid_search(sp, cfg1.base, cfg1.masses)
    grid = result.grid
    assert grid.P_s.shape == (4, 3)
    assert np.all(grid.feasible)
    assert np.all(np.isfinite(grid.P_s))
    idx, best = grid.min_feasible()
    assert best == result.best_P_s
    assert best == grid.P_s.min()


def test_min_feasible_lexicographic_ties():
    grid = optimize.SweepGrid(
        axis_names=("a", "b"), axis_values=(np.arange(2.0), np.arange(2.0)),
        P_s=np.array([[2.0, 1.0], [1.0, 3.0]]),
        feasible=np.ones((2, 2), dtype=bool))
    idx, best = grid.min_feasible()
    assert idx == (0, 1)  # first hit in row-major order
    assert best == 1.0


def test_csv_formats():
    g1 = optimize.SweepGrid(
        axis_names=("a",), axis_values=(np.array([0.0, 1.0]),),
        P_s=np.array([1.5, np.nan]), feasible=np.array([True, False]))
    lines = g1.to_csv().splitlines()
    assert lines[0] == "var1,P_s,feasible"
    assert lines[2].endswith(",,0")   # infeasible: empty P_s field

    g2 = optimize.SweepGrid(
        axis_names=("a", "b"),
        axis_values=(np.array([0.0]), np.array([0.0, 1.0])),
        P_s=np.array([[1.0, 2.0]]), feasible=np.ones((1, 2), dtype=bool))
    assert g2.to_csv().splitlines()[0] == "var1,var2,P_s,feasible"


def test_figure_presets():
    for fig in (4, 5, 6, 7):
        sp = optimize.figure_space(fig)
        assert len(sp.free_indices) in (1, 2)
    with pytest.raises(DomainError):
        optimize.figure_space(3)


def test_sweep_metadata_records_axes(cfg1):
    sp = optimize.figure_space(6)
    meta = optimize.sweep_metadata(sp, cfg1.base, cfg1.masses, "quadratic")
    assert meta["free_variables"] == ["radius_ratio"]
    assert meta["axes"]["radius_ratio"]["resolution"] == 81
    assert meta["mass_held_fixed_across_sweep"] is True
    assert meta["total_weight_N"] == pytest.approx(
        cfg1.masses.total_mass * cfg1.base.g)


def test_local_search_descends_monotonically(cfg1):
    sp = _space({"alpha_p": (0.0, 10.0, 11), "alpha_B": (0.0, 10.0, 11)})
    x0 = DesignVector(2.0, 3.0, 1.05, 1.75, 0.0, 0.0)
    res = optimize.local_search(x0, sp, cfg1.base, cfg1.masses)
    values = [ps for _, ps in res.path]
    assert all(b < a for a, b in zip(values, values[1:]))
    # the corner is the optimum of the restricted problem
    assert res.x.alpha_p == pytest.approx(10.0, abs=1e-3)
    assert res.x.alpha_B == pytest.approx(10.0, abs=1e-3)


def test_local_search_rejects_outside_start(cfg1):
    sp = _space({"alpha_p": (0.0, 5.0, 6)})
    x0 = DesignVector(8.0, 10.0, 1.05, 1.75, 0.0, 0.0)
    with pytest.raises(DomainError):
        optimize.local_search(x0, sp, cfg1.base, cfg1.masses)


@given(st.integers(2, 5), st.integers(2, 4))
@settings(max_examples=10, deadline=None)
def test_grid_shape_matches_resolution(cfg1, n1, n2):
    sp = _space({"alpha_p": (0.0, 10.0, n1), "alpha_B": (0.0, 10.0, n2)})
    grid = optimize.sweep(sp, cfg1.base, cfg1.masses)
    assert grid.P_s.shape == (n1, n2)
    assert grid.feasible.shape == (n1, n2)
