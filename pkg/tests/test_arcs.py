"""Closed-arc arithmetic on the circle."""

import math

import pytest

from harmonic_range.arcs import ArcSet, TWO_PI, circle_distance

PI = math.pi


def test_normalization_merges_touching_arcs():
    s = ArcSet.from_intervals([(0.0, 1.0), (1.0, 2.0)])
    assert s.arcs == ((0.0, 2.0),)


def test_seam_crossing_arc():
    s = ArcSet.from_intervals([(5.5, 0.5 + TWO_PI)])
    assert s.contains(6.0)
    assert s.contains(0.2)
    assert not s.contains(3.0)
    assert abs(s.measure() - (TWO_PI - 5.0)) < 1e-12


def test_union_and_intersection():
    a = ArcSet.from_intervals([(0.0, 1.0)])
    b = ArcSet.from_intervals([(0.5, 2.0)])
    assert a.union(b).arcs == ((0.0, 2.0),)
    assert a.intersect(b).arcs == ((0.5, 1.0),)


def test_intersection_across_seam():
    a = ArcSet.from_intervals([(6.0, 0.5 + TWO_PI)])
    b = ArcSet.from_intervals([(0.2, 1.0)])
    inter = a.intersect(b)
    assert abs(inter.measure() - 0.3) < 1e-12


def test_complement_roundtrip():
    s = ArcSet.from_intervals([(0.5, 1.5), (3.0, 4.0)])
    c = s.complement()
    assert abs(s.measure() + c.measure() - TWO_PI) < 1e-12
    assert s.complement().complement().measure() == pytest.approx(s.measure())


def test_complement_of_seam_arc():
    s = ArcSet.from_intervals([(5.0, 1.0 + TWO_PI)])
    c = s.complement()
    assert abs(c.measure() - 4.0) < 1e-12
    assert c.contains(3.0)
    assert not c.contains(0.5)


def test_rotation_preserves_measure():
    s = ArcSet.from_intervals([(0.0, 1.0), (2.0, 2.5)])
    for phi in (0.3, PI, 5.9):
        r = s.rotate(phi)
        assert r.measure() == pytest.approx(s.measure())
        assert r.contains((0.5 + phi) % TWO_PI)


def test_fatten_and_subset():
    s = ArcSet.from_points([1.0, 4.0])
    fat = s.fatten(0.25)
    assert fat.measure() == pytest.approx(1.0)
    assert s.subset_of(fat)
    assert not fat.subset_of(s, tol=1e-6)


def test_fatten_covers_circle():
    s = ArcSet.from_points([0.0, PI])
    assert s.fatten(2.0).measure() == pytest.approx(TWO_PI)


def test_distance_to_point_set():
    s = ArcSet.from_points([0.0])
    assert s.distance(0.1) == pytest.approx(0.1)
    assert s.distance(TWO_PI - 0.1) == pytest.approx(0.1)
    assert s.distance(PI) == pytest.approx(PI)


def test_hausdorff_symmetric_pair():
    a = ArcSet.from_points([0.0])
    b = ArcSet.from_points([0.25])
    assert a.hausdorff(b) == pytest.approx(0.25, abs=1e-3)
    assert b.hausdorff(a) == pytest.approx(0.25, abs=1e-3)


def test_hausdorff_of_equal_sets_is_zero():
    s = ArcSet.from_intervals([(0.0, 1.0), (3.0, 3.5)])
    assert s.hausdorff(s) <= 1e-3


def test_full_and_empty():
    assert ArcSet.full().measure() == pytest.approx(TWO_PI)
    assert ArcSet.empty().is_empty
    assert ArcSet.full().complement().is_empty


def test_serialization_roundtrip():
    s = ArcSet.from_intervals([(0.1, 0.9), (5.9, 0.3 + TWO_PI)])
    assert ArcSet.from_dict(s.to_dict()).arcs == s.arcs


def test_circle_distance():
    assert circle_distance(0.1, TWO_PI - 0.1) == pytest.approx(0.2)
    assert circle_distance(1.0, 1.0 + PI) == pytest.approx(PI)
