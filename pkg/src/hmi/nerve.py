"""Nerve complex of a union of equal-radius balls around a point cloud, and
its filtration over increasing radii."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .hierarchy import is_decomposable
from .simplicial import SimplicialComplex, make_complex

#: slack on the ball-intersection test, stabilizes boundary cases
FACE_TOLERANCE = 1e-9
MAX_NERVE_DIM = 8


@dataclass(frozen=True)
class PointCloud:
    points: tuple        # p rows of d coordinates

    def __post_init__(self):
        arr = np.asarray(self.points, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise DomainError("point cloud must be a non-empty p x d array")
        if not np.all(np.isfinite(arr)):
            raise DomainError("points must be finite")
        object.__setattr__(self, "points",
                           tuple(tuple(row) for row in arr))

    @property
    def p(self):
        return len(self.points)

    @property
    def d(self):
        return len(self.points[0])

    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)


def _circumball(boundary: list[np.ndarray], d: int):
    """Smallest ball with the given (affinely independent) points on its
    boundary; least-squares keeps degenerate inputs finite."""
    if not boundary:
        return np.zeros(d), -1.0
    base = boundary[0]
    if len(boundary) == 1:
        return base.copy(), 0.0
    rows = np.array([q - base for q in boundary[1:]])
    rhs = 0.5 * np.einsum("ij,ij->i", rows, rows)
    sol, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    center = base + sol
    radius = max(float(np.linalg.norm(center - q)) for q in boundary)
    return center, radius


def smallest_enclosing_ball(pts) -> tuple[np.ndarray, float]:
    """Welzl's randomized incremental algorithm (deterministic shuffle)."""
    arr = np.asarray(pts, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise DomainError("need a non-empty list of points")
    d = arr.shape[1]
    order = list(range(arr.shape[0]))
    random.Random(0x5eb).shuffle(order)
    points = [arr[i] for i in order]

    def welzl(n, boundary):
        if n == 0 or len(boundary) == d + 1:
            return _circumball(boundary, d)
        center, radius = welzl(n - 1, boundary)
        pt = points[n - 1]
        if radius >= 0 and np.linalg.norm(pt - center) \
                <= radius * (1 + 1e-12) + 1e-14:
            return center, radius
        return welzl(n - 1, boundary + [pt])

    center, radius = welzl(len(points), [])
    return center, float(radius)


def enclosing_radius(cloud: PointCloud, indices: Iterable[int]) -> float:
    """Smallest common-intersection radius for the balls at the 1-based
    point indices: the equal balls B_i(r) intersect iff r is at least the
    smallest-enclosing-ball radius of the points."""
    arr = cloud.array()
    rows = [arr[i - 1] for i in indices]
    return smallest_enclosing_ball(rows)[1]


def nerve_complex(cloud: PointCloud, r, max_dim: int | None = None
                  ) -> SimplicialComplex:
    """Faces are the index sets J with a common ball intersection at radius
    r, built level by level so only sets with all boundaries present are
    tested."""
    if np.ndim(r) != 0:
        raise DomainError("equal radii only: r must be a scalar")
    r = float(r)
    if r < 0:
        raise DomainError("radius must be non-negative")
    p = cloud.p
    if max_dim is None:
        max_dim = min(p - 1, MAX_NERVE_DIM)
    level = {frozenset((i,)) for i in range(1, p + 1)}
    faces = set(level)
    for size in range(2, max_dim + 2):
        candidates = set()
        members = sorted({i for f in level for i in f})
        for f in level:
            for v in members:
                if v in f:
                    continue
                cand = f | {v}
                if len(cand) == size and cand not in candidates:
                    if all(cand - {w} in level for w in cand):
                        candidates.add(cand)
        level = {c for c in candidates
                 if enclosing_radius(cloud, c) <= r + FACE_TOLERANCE}
        if not level:
            break
        faces |= level
    return make_complex(p, [sorted(f) for f in faces])


@dataclass(frozen=True)
class FiltrationStep:
    radius: float
    complex: SimplicialComplex
    decomposable: bool


def filtration(cloud: PointCloud, radii: Sequence[float],
               max_dim: int | None = None) -> list[FiltrationStep]:
    """Nested nerve complexes over strictly increasing radii, with a
    decomposability flag per step."""
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError("radii must be strictly increasing")
    out = []
    for r in radii:
        S = nerve_complex(cloud, r, max_dim=max_dim)
        out.append(FiltrationStep(r, S, is_decomposable(S)))
    return out


def points_from_csv(text: str) -> PointCloud:
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        rows.append([float(tok) for tok in line.split(",")])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise DomainError("CSV rows must all have the same dimension")
    return PointCloud(tuple(tuple(r) for r in rows))
