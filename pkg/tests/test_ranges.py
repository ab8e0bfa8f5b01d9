"""Range sampling, direction estimation, cone normalization, Phi profile."""

import math

import numpy as np
import pytest

from harmonic_range.arcs import ArcSet
from harmonic_range.expressions import parse_map
from harmonic_range.ranges import (antipodal_gap_alpha, antipodal_pairs,
                                   cone_avoidance_normalize,
                                   estimate_directions, i_alpha_arcs,
                                   i_alpha_fit, phi_profile,
                                   phi_sublinearity_check, sample_range)

PI = math.pi


def test_sample_range_determinism():
    f = parse_map("u=re(z^2); v=im(z^2)")
    a = sample_range(f, 5.0, n_grid=64, seed=3)
    b = sample_range(f, 5.0, n_grid=64, seed=3)
    assert np.array_equal(a.z, b.z)
    assert np.array_equal(a.w, b.w)


def test_sample_range_different_seed_differs():
    f = parse_map("u=re(z); v=im(z)")
    a = sample_range(f, 5.0, n_grid=64, seed=0)
    b = sample_range(f, 5.0, n_grid=64, seed=1)
    assert not np.array_equal(a.z, b.z)


def test_sample_range_covers_axes():
    f = parse_map("u=re(z); v=im(z)")
    s = sample_range(f, 4.0, n_grid=64, seed=0)
    # the polar part of the grid includes exact rays at angles 0 and pi
    assert np.any((np.abs(s.z.imag) < 1e-12) & (s.z.real > 0))
    assert np.any((np.abs(s.z.imag) < 1e-12) & (s.z.real < 0))
    assert float(np.max(np.abs(s.z))) <= 4.0 + 1e-12


def test_sample_range_rejects_small_grid():
    f = parse_map("u=re(z); v=im(z)")
    with pytest.raises(ValueError):
        sample_range(f, 5.0, n_grid=16)


def test_directions_bounded_map_empty():
    f = parse_map("u=re(3); v=im(0-7*i)")
    s = sample_range(f, 10.0, n_grid=64, seed=0)
    est = estimate_directions(s)
    assert est.arcs.is_empty


def test_directions_line_map():
    f = parse_map("u=re(z); v=im(0)")
    s = sample_range(f, 100.0, n_grid=256, seed=0)
    est = estimate_directions(s)
    want = ArcSet.from_points([0.0, PI])
    assert math.degrees(est.arcs.hausdorff(want)) < 2.0


def test_antipodal_pairs_on_line():
    arcs = ArcSet.from_points([1.0, 1.0 + PI]).fatten(0.01)
    pairs = antipodal_pairs(arcs, tol_rad=0.02)
    assert not pairs.is_empty
    assert pairs.distance(1.0) < 0.02


def test_antipodal_pairs_empty_for_cross():
    arcs = ArcSet.from_points([PI / 4, PI, 3 * PI / 2])
    assert antipodal_pairs(arcs, tol_rad=math.radians(1.0)).is_empty


def test_antipodal_gap_alpha_finds_probe():
    cross = ArcSet.from_points([PI / 4, PI, 3 * PI / 2])
    alpha = antipodal_gap_alpha(cross)
    assert alpha is not None
    for probe in (alpha, alpha + PI / 2, alpha - PI / 2):
        assert cross.distance(probe) >= 1e-3


def test_i_alpha_arcs_structure():
    alpha = 0.3
    arcs = i_alpha_arcs(alpha)
    assert len(arcs.arcs) == 3
    assert arcs.measure() == pytest.approx(2 * PI - 6 * alpha)
    assert arcs.contains(0.0)
    assert not arcs.contains(PI / 2)
    assert not arcs.contains(PI)


def test_i_alpha_fit_accepts_tilted_line():
    # directions of the pair (x, 2x) sit strictly inside the three arcs
    beta = math.atan2(2.0, 1.0)
    arcs = ArcSet.from_points([beta, beta + PI])
    alpha = i_alpha_fit(arcs)
    assert alpha is not None and alpha > 0.1


def test_i_alpha_fit_rejects_horizontal_line():
    # pi is never inside the three-arc set
    arcs = ArcSet.from_points([0.0, PI])
    assert i_alpha_fit(arcs) is None


def test_cone_avoidance_normalize_cross():
    cross = ArcSet.from_points([PI / 4, PI, 3 * PI / 2])
    norm = cone_avoidance_normalize(cross)
    assert norm is not None
    rotated = cross.rotate(norm["theta"])
    # the rotation pushes the set away from an axis cone; a > 0 quantifies it
    assert norm["a"] > 0.0


def test_cone_avoidance_normalize_full_circle_fails():
    assert cone_avoidance_normalize(ArcSet.full()) is None


def test_phi_profile_nonnegative_and_sublinear():
    # v = -Re z^2 is bounded above by 0 for |u| large, so the tail ratio
    # of the upper envelope decays
    f = parse_map("u=re(z); v=im(0-z^2*i)")
    s = sample_range(f, 12.0, n_grid=256, seed=0)
    prof = phi_profile(s, bins=200)
    assert prof.values.shape == (200,)
    assert np.all(prof.values >= 0.0)
    check = phi_sublinearity_check(prof)
    assert check["holds"]
    ratios = check["ratios"]
    assert ratios[-1] <= 0.1 * ratios[0]


def test_phi_sublinearity_fails_for_exponential_growth():
    # the pair (Re z, e^x sin y) has upper envelope about e^u on u > 0
    f = parse_map("u=re(z); v=im(exp(z))")
    s = sample_range(f, 12.0, n_grid=256, seed=0)
    check = phi_sublinearity_check(phi_profile(s, bins=200))
    assert not check["holds"]
