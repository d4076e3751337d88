"""Smallest enclosing balls and nerve complexes: geometric goldens, the
collinear filtration, nesting and edge-before-face ordering."""
import math

import numpy as np
import pytest

from hmi import (PointCloud, smallest_enclosing_ball, nerve_complex,
                 filtration)
from hmi.errors import DomainError
from hmi.nerve import enclosing_radius, points_from_csv


def test_seb_goldens():
    # two points: radius is half the distance
    _, r = smallest_enclosing_ball([[0.0, 0.0], [2.0, 0.0]])
    assert r == pytest.approx(1.0)
    # equilateral triangle with side 1: circumradius 1/sqrt(3)
    pts = [[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]]
    c, r = smallest_enclosing_ball(pts)
    assert r == pytest.approx(1 / math.sqrt(3))
    # obtuse triangle: ball determined by the long side only
    pts = [[0.0, 0.0], [4.0, 0.0], [2.0, 0.1]]
    c, r = smallest_enclosing_ball(pts)
    assert r == pytest.approx(2.0)
    assert c == pytest.approx([2.0, 0.0])
    # single point
    _, r = smallest_enclosing_ball([[3.0, 4.0]])
    assert r == 0.0
    # duplicated points stay finite
    _, r = smallest_enclosing_ball([[1.0, 1.0]] * 4)
    assert r == pytest.approx(0.0, abs=1e-12)


def test_seb_contains_all_points_random():
    rng = np.random.default_rng(17)
    for _ in range(50):
        pts = rng.normal(size=(rng.integers(1, 12), rng.integers(1, 4)))
        c, r = smallest_enclosing_ball(pts)
        dists = np.linalg.norm(pts - c, axis=1)
        assert np.all(dists <= r * (1 + 1e-9) + 1e-12)
        # minimality: some point is (nearly) on the boundary
        assert dists.max() == pytest.approx(r, abs=1e-9)


def test_collinear_filtration_golden():
    cloud = PointCloud(((0.0,), (1.0,), (3.0,)))
    steps = filtration(cloud, [0.4, 0.6, 1.1, 1.6])
    facets = [sorted(sorted(f) for f in s.complex.facet_sets())
              for s in steps]
    assert facets == [
        [[1], [2], [3]],
        [[1, 2], [3]],
        [[1, 2], [2, 3]],
        [[1, 2, 3]],
    ]
    assert all(s.decomposable for s in steps)


def test_enclosing_radius_matches_seb():
    cloud = PointCloud(((0.0, 0.0), (2.0, 0.0), (1.0, 1.0)))
    assert enclosing_radius(cloud, [1, 2]) == pytest.approx(1.0)
    assert enclosing_radius(cloud, [1, 2, 3]) == \
        pytest.approx(smallest_enclosing_ball(cloud.array())[1])


def test_nesting_on_random_clouds():
    rng = np.random.default_rng(23)
    for _ in range(25):
        n = int(rng.integers(2, 7))
        cloud = PointCloud(tuple(map(tuple, rng.normal(size=(n, 2)))))
        radii = sorted(set(float(r) for r in rng.uniform(0.05, 2.0, 4)))
        if len(radii) < 2:
            continue
        steps = filtration(cloud, radii)
        for a, b in zip(steps, steps[1:]):
            for f in a.complex.facet_sets():
                assert any(f <= g for g in b.complex.facet_sets())


def test_acute_triangle_edges_before_face():
    # acute triangle: the circumradius strictly exceeds every half-side, so
    # there is a radius with all edges present but the 2-face missing
    pts = [[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]]
    cloud = PointCloud(tuple(map(tuple, pts)))
    edge_r = 0.5
    face_r = 1 / math.sqrt(3)
    between = (edge_r + face_r) / 2
    S = nerve_complex(cloud, between)
    assert set(S.facet_sets()) == {frozenset({1, 2}), frozenset({1, 3}),
                                   frozenset({2, 3})}
    full = nerve_complex(cloud, face_r + 0.01)
    assert set(full.facet_sets()) == {frozenset({1, 2, 3})}


def test_max_dim_cap():
    rng = np.random.default_rng(3)
    cloud = PointCloud(tuple(map(tuple, rng.normal(size=(6, 2)) * 0.01)))
    S = nerve_complex(cloud, 10.0, max_dim=1)
    assert max(len(f) for f in S.facet_sets()) <= 2


def test_nerve_validation():
    cloud = PointCloud(((0.0,), (1.0,)))
    with pytest.raises(DomainError, match="scalar"):
        nerve_complex(cloud, [0.1, 0.2])
    with pytest.raises(DomainError):
        nerve_complex(cloud, -1.0)
    with pytest.raises(DomainError, match="strictly increasing"):
        filtration(cloud, [0.2, 0.1])
    with pytest.raises(DomainError):
        PointCloud(((float("nan"),),))
    with pytest.raises(DomainError):
        PointCloud(())


def test_points_from_csv():
    cloud = points_from_csv("0,0\n1, 0\n\n0.5,0.8\n")
    assert cloud.p == 3 and cloud.d == 2
    with pytest.raises(DomainError):
        points_from_csv("1,2\n3\n")
    with pytest.raises(DomainError):
        points_from_csv("")
