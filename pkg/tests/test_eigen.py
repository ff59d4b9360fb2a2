"""Finite-difference eigensolver: spectra, states, couplings."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

import trapmorph as tm
from trapmorph.eigen import matrix_element
from trapmorph.errors import (ConfinementError, DegeneracyError, GridError)


def test_harmonic_spectrum_with_richardson_refinement():
    grid = tm.SpatialGrid(-12.0, 12.0, 1024)
    eig = tm.eigensolve(tm.PotentialParams(0.5, 0.0, 0.0), grid, 8)
    assert_allclose(eig.energies, np.arange(8) + 0.5, rtol=1e-8)


def test_refinement_actually_buys_accuracy():
    grid = tm.SpatialGrid(-12.0, 12.0, 1024)
    p = tm.PotentialParams(0.5, 0.0, 0.0)
    raw = tm.eigensolve(p, grid, 8, refine=False).energies
    ref = tm.eigensolve(p, grid, 8, refine=True).energies
    exact = np.arange(8) + 0.5
    assert np.max(np.abs(ref - exact)) < 1e-3 * np.max(np.abs(raw - exact))


def test_grid_refinement_convergence():
    # halving dx moves refined energies by < 1e-6 relative
    p = tm.mini_preset().path.initial
    g1 = tm.SpatialGrid(-20.0, 20.0, 512)
    e1 = tm.eigensolve(p, g1, 5).energies
    e2 = tm.eigensolve(p, g1.refined(2), 5).energies
    assert np.max(np.abs(e1 / e2 - 1.0)) < 1e-6


def test_orthonormality(mini, mini_eigs):
    eig0, eigf = mini_eigs
    for eig in (eig0, eigf):
        gram = eig.gram()
        assert np.max(np.abs(gram - np.eye(eig.k))) < 1e-8


def test_sign_convention_is_deterministic(mini):
    a = tm.eigensolve(mini.path.initial, mini.grid, 5, refine=False)
    b = tm.eigensolve(mini.path.initial, mini.grid, 5, refine=False)
    assert np.array_equal(a.states, b.states)
    assert np.array_equal(a.energies, b.energies)
    # first component above the scan threshold is positive
    for j in range(5):
        s = a.state(j)
        nz = np.flatnonzero(np.abs(s) > 1e-8)[0]
        assert s[nz] > 0.0


def test_localization_sides():
    # symmetric, shallow-ish double well: every state splits 50/50
    grid = tm.SpatialGrid(-20.0, 20.0, 512)
    eig = tm.eigensolve(tm.PotentialParams(-0.25, 0.5 / 64.0, 0.0), grid, 4,
                        refine=False)
    for j in range(4):
        mx, pr = tm.localization(eig, j)
        assert abs(pr - 0.5) < 1e-9
        assert abs(mx) < 1e-7


def test_biased_well_level_ordering(mini, mini_eigs):
    # the n = 2 bias puts levels 0 and 1 in the left well and makes the
    # target level the right-well ground state
    eig0, _ = mini_eigs
    for j, side in [(0, "L"), (1, "L"), (2, "R")]:
        mx, pr = tm.localization(eig0, j)
        if side == "L":
            assert pr < 0.01 and mx < -5.0
        else:
            assert pr > 0.99 and mx > 5.0


def test_final_harmonic_centered_on_equilibrium(mini, mini_eigs):
    _, eigf = mini_eigs
    x_eq = -mini.path.C / (2.0 * mini.path.Af)
    for j in range(3):
        mx, _ = tm.localization(eigf, j)
        assert abs(mx - x_eq) < 1e-6


def test_harmonic_ladder_matrix_elements():
    # |<n|x^2|n+2>| = sqrt((n+1)(n+2))/2 at omega = 1
    grid = tm.SpatialGrid(-8.0, 8.0, 32768)
    eig = tm.eigensolve(tm.PotentialParams(0.5, 0.0, 0.0), grid, 5,
                        refine=False)
    x2 = grid.x**2
    for n in (0, 1, 2):
        want = np.sqrt((n + 1) * (n + 2)) / 2.0
        assert_allclose(abs(matrix_element(eig, n, n + 2, x2)), want,
                        rtol=1e-6)
    # symmetry of the sesquilinear form (real states)
    assert_allclose(matrix_element(eig, 0, 2, x2),
                    matrix_element(eig, 2, 0, x2), rtol=1e-12)


def test_coupling_parity_selection():
    # symmetric well, even operator: odd <-> even elements vanish
    grid = tm.SpatialGrid(-20.0, 20.0, 512)
    path = tm.path_for_target(-0.25, 0.5 / 64.0, -400.0 / 3.0, 0.05, 0)
    eig = tm.eigensolve(path.initial, grid, 5, refine=False)
    nc = tm.couplings(eig, path, 2)
    assert list(nc.neighbors) == [0, 1, 3, 4]
    el = dict(zip(nc.neighbors, nc.couplings))
    assert el[1] < 1e-8 and el[3] < 1e-8  # parity-forbidden
    assert el[0] > 1.0 and el[4] > 1.0
    assert np.all(np.abs(nc.gaps) > 1e-14)


def test_couplings_neighbor_window_clips_at_ground(mini, mini_eigs):
    eig0, _ = mini_eigs
    nc = tm.couplings(eig0, mini.path, 0)
    assert list(nc.neighbors) == [1, 2]


def test_degenerate_pair_is_rejected():
    # deep symmetric well: the lowest doublet is split below resolution
    grid = tm.SpatialGrid(-20.0, 20.0, 512)
    path = tm.path_for_target(-0.25, 0.5 / 256.0, -400.0 / 3.0, 0.05, 0)
    eig = tm.eigensolve(path.initial, grid, 4, refine=False)
    with pytest.raises(DegeneracyError):
        tm.couplings(eig, path, 0)


def test_confinement_guard():
    # wells at +-8 on a [-6, 6] box: the box, not the potential, confines
    grid = tm.SpatialGrid(-6.0, 6.0, 128)
    with pytest.raises(ConfinementError):
        tm.eigensolve(tm.mini_preset().path.initial, grid, 3)


def test_k_validation():
    grid = tm.SpatialGrid(-12.0, 12.0, 64)
    with pytest.raises(GridError):
        tm.eigensolve(tm.PotentialParams(0.5, 0.0, 0.0), grid, 40)
    with pytest.raises(GridError):
        tm.eigensolve(tm.PotentialParams(0.5, 0.0, 0.0), grid, 0)
