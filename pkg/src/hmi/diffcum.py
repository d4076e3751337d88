"""Numeric differential and local moments/cumulants for black-box densities:
parity maps, scaling factors, finite-difference and tensor-quadrature
estimators, and the convergence probe for the limiting-cumulant theorem.

Windows: ``CubeWindow(center, eps)`` is the cube of HALF-width eps, i.e.
[xi_i - eps, xi_i + eps] per axis.  The leading-order constants r(eps, k)
(per-axis 1/(k_i+1) for even, 1/(k_i+2) for odd orders) hold exactly for
this window; e.g. the second moment of a flat density over the window is
eps^2/3.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError
from .partitions import enumerate_partitions, collapse_number, plus_norm

DEFAULT_NODES = 16
DEFAULT_STEP_SCALE = 1e-3
TENSOR_GRID_MAX_DIM = 4


@dataclass(frozen=True)
class DensityOracle:
    """Strictly positive density on the queried region.  ``fn`` maps an
    (n, p) array of points to an (n,) array of density values; an optional
    closed-form ``log_derivative`` (alpha, point) -> value is carried by the
    built-in families for use as a test oracle."""
    p: int
    fn: Callable[[np.ndarray], np.ndarray]
    log_derivative: Callable | None = None

    def __call__(self, x) -> float:
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        return float(self.fn(pts)[0])

    def batch(self, pts: np.ndarray) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(pts, dtype=float)), dtype=float)


@dataclass(frozen=True)
class CubeWindow:
    """Cube of half-width eps centred at a point."""
    center: tuple
    eps: float

    def __post_init__(self):
        object.__setattr__(self, "center",
                           tuple(float(c) for c in self.center))
        if self.eps <= 0:
            raise DomainError("window half-width must be positive")


@dataclass(frozen=True)
class EstimateReport:
    value: float
    method: str
    metadata: dict = field(default_factory=dict)


def parity_alpha(k: Sequence[int]) -> tuple[int, ...]:
    """Binary vector marking the odd components of k."""
    return tuple(v % 2 for v in k)


def r_factor(eps: float, k: Sequence[int]) -> float:
    """Leading-order window scale: eps^{|k|_1^+} times 1/(k_i+1) per even
    and 1/(k_i+2) per odd component."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    out = eps ** plus_norm(k)
    for v in k:
        out /= (v + 1) if v % 2 == 0 else (v + 2)
    return out


def same_moment_class(u: Sequence[int], k: Sequence[int]) -> bool:
    """Componentwise parity equivalence: differential moments depend on k
    only through the odd/even pattern."""
    if len(u) != len(k):
        raise DomainError("multi-indices must have the same dimension")
    return all(a % 2 == b % 2 for a, b in zip(u, k))


# ---------------------------------------------------------------------------
# finite differences

def _mixed_derivative_points(xi, axes, h):
    signs = list(product((1.0, -1.0), repeat=len(axes)))
    pts = np.tile(xi, (len(signs), 1))
    coeff = np.empty(len(signs))
    for row, sg in enumerate(signs):
        c = 1.0
        for ax, s, step in zip(axes, sg, h):
            pts[row, ax] += s * step
            c *= s
        coeff[row] = c
    return pts, coeff


def _mixed_first_derivative(f: DensityOracle, xi, axes, h,
                            transform=None) -> float:
    """Central tensor difference for the mixed first derivative along the
    given axes, applied to f or to transform(f)."""
    pts, coeff = _mixed_derivative_points(xi, axes, h)
    vals = f.batch(pts)
    if transform is not None:
        if np.any(vals <= 0):
            raise DomainError("non-positive density sample encountered")
        vals = transform(vals)
    scale = float(np.prod([2.0 * step for step in h]))
    return float(coeff @ vals) / scale


def _derivative_ratio(f: DensityOracle, xi, alpha, step_scale,
                      richardson, transform=None) -> float:
    """D^alpha f / f (or D^alpha log f with transform=log) by central
    differences, Richardson-extrapolated once."""
    axes = [i for i, a in enumerate(alpha) if a]
    if not axes:
        if transform is None:
            return 1.0
        fx = f(xi)
        if fx <= 0:
            raise DomainError("non-positive density sample encountered")
        return math.log(fx)
    h = [step_scale * max(1.0, abs(xi[i])) for i in axes]
    coarse = _mixed_first_derivative(f, xi, axes, h, transform)
    if not richardson:
        est = coarse
    else:
        fine = _mixed_first_derivative(f, xi, axes,
                                       [s / 2 for s in h], transform)
        est = (4.0 * fine - coarse) / 3.0
    if transform is None:
        fx = f(xi)
        if fx <= 0:
            raise DomainError("non-positive density sample encountered")
        est /= fx
    return est


def differential_moment(f: DensityOracle, xi, k, *,
                        step_scale=DEFAULT_STEP_SCALE,
                        richardson=True) -> EstimateReport:
    """m^xi_k = D^alpha f / f with alpha the parity pattern of k."""
    xi = tuple(float(c) for c in xi)
    alpha = parity_alpha(k)
    value = _derivative_ratio(f, xi, alpha, step_scale, richardson)
    return EstimateReport(value, "finite-difference", {
        "k": tuple(k), "alpha": alpha, "xi": xi,
        "step_scale": step_scale, "richardson": richardson})


def differential_cumulant(f: DensityOracle, xi, k, *, method="partition",
                          step_scale=DEFAULT_STEP_SCALE,
                          richardson=True) -> EstimateReport:
    """kappa^xi_k, either by the partition sum over differential moments
    (the definition) or as D^alpha log f (the square-free shortcut)."""
    xi = tuple(float(c) for c in xi)
    alpha = parity_alpha(k)
    if method == "partition":
        total = 0.0
        cache = {}
        for pi in enumerate_partitions(tuple(k)):
            term = float(collapse_number(pi)) * (-1) ** (len(pi) - 1) \
                * math.factorial(len(pi) - 1)
            for nu in pi:
                a = parity_alpha(nu)
                if a not in cache:
                    cache[a] = _derivative_ratio(f, xi, a, step_scale,
                                                 richardson)
                term *= cache[a]
            total += term
        value = total
        label = "partition-sum"
    elif method == "logderiv":
        value = _derivative_ratio(f, xi, alpha, step_scale, richardson,
                                  transform=np.log)
        label = "log-derivative"
    else:
        raise DomainError(f"unknown method {method!r}")
    return EstimateReport(value, label, {
        "k": tuple(k), "alpha": alpha, "xi": xi,
        "step_scale": step_scale, "richardson": richardson})


# ---------------------------------------------------------------------------
# local moments and cumulants

def _quadrature_grid(window: CubeWindow, nodes: int):
    p = len(window.center)
    t, w = np.polynomial.legendre.leggauss(nodes)
    offs = window.eps * t
    grids = np.meshgrid(*[offs] * p, indexing="ij")
    offsets = np.stack([g.ravel() for g in grids], axis=1)
    weights = np.ones(offsets.shape[0])
    wgrids = np.meshgrid(*[w] * p, indexing="ij")
    for g in wgrids:
        weights *= g.ravel()
    pts = np.asarray(window.center) + offsets
    return pts, offsets, weights


def _mc_grid(window: CubeWindow, samples: int, seed):
    p = len(window.center)
    if seed is None:
        seed = int(os.environ.get("HMI_SEED", "0"))
    rng = np.random.default_rng(seed)
    offsets = rng.uniform(-window.eps, window.eps, size=(samples, p))
    pts = np.asarray(window.center) + offsets
    weights = np.ones(samples)
    return pts, offsets, weights


def local_moment(f: DensityOracle, window: CubeWindow, k, *,
                 nodes=DEFAULT_NODES, method="quadrature",
                 mc_samples=200_000, seed=None) -> EstimateReport:
    """m^A_k: conditional moment of X - xi over the window, by
    tensor-product Gauss-Legendre quadrature (seeded Monte Carlo above
    dimension 4)."""
    k = tuple(k)
    p = len(window.center)
    if len(k) != p or f.p != p:
        raise DomainError("dimension mismatch")
    if method == "quadrature":
        if p > TENSOR_GRID_MAX_DIM:
            raise DomainError(
                f"tensor quadrature supports p <= {TENSOR_GRID_MAX_DIM}; "
                "use method='mc'")
        pts, offsets, weights = _quadrature_grid(window, nodes)
        meta = {"nodes": nodes}
    elif method == "mc":
        pts, offsets, weights = _mc_grid(window, mc_samples, seed)
        meta = {"samples": mc_samples,
                "seed": seed if seed is not None
                else int(os.environ.get("HMI_SEED", "0"))}
    else:
        raise DomainError(f"unknown method {method!r}")
    vals = f.batch(pts)
    if np.any(vals <= 0):
        raise DomainError("non-positive density sample encountered")
    mono = np.ones(len(pts))
    for i, ki in enumerate(k):
        if ki:
            mono *= offsets[:, i] ** ki
    denom = float(weights @ vals)
    numer = float(weights @ (mono * vals))
    meta.update({"k": k, "eps": window.eps, "center": window.center,
                 "method": method})
    label = "tensor-quadrature" if method == "quadrature" else "monte-carlo"
    return EstimateReport(numer / denom, label, meta)


def local_cumulant(f: DensityOracle, window: CubeWindow, k, *,
                   nodes=DEFAULT_NODES, method="quadrature",
                   mc_samples=200_000, seed=None) -> EstimateReport:
    """kappa^A_k by the partition sum over local moments."""
    k = tuple(k)
    cache = {}

    def moment(nu):
        if nu not in cache:
            cache[nu] = local_moment(f, window, nu, nodes=nodes,
                                     method=method, mc_samples=mc_samples,
                                     seed=seed).value
        return cache[nu]

    total = 0.0
    for pi in enumerate_partitions(k):
        term = float(collapse_number(pi)) * (-1) ** (len(pi) - 1) \
            * math.factorial(len(pi) - 1)
        for nu in pi:
            term *= moment(nu)
        total += term
    label = "tensor-quadrature" if method == "quadrature" else "monte-carlo"
    return EstimateReport(total, label, {
        "k": k, "eps": window.eps, "center": window.center,
        "nodes": nodes, "method": method})


@dataclass(frozen=True)
class LimitProbeReport:
    k: tuple
    xi: tuple
    eps_values: tuple
    scaled_values: tuple     # kappa^A_k / r(eps, k) per eps
    target: float            # differential cumulant kappa^xi_k
    errors: tuple
    converged: bool


def limit_matches_differential(f: DensityOracle, xi, k, eps_values, *,
                               nodes=DEFAULT_NODES, rel_tol=0.05
                               ) -> LimitProbeReport:
    """Evaluate kappa^A_k / r(eps, k) along a decreasing eps sequence and
    report whether it converges to the differential cumulant.  Convergence
    means monotone error decay over at least three levels with the final
    scaled value within rel_tol of the target."""
    xi = tuple(float(c) for c in xi)
    k = tuple(k)
    eps_values = tuple(float(e) for e in eps_values)
    if len(eps_values) < 3 or any(b >= a for a, b in
                                  zip(eps_values, eps_values[1:])):
        raise DomainError("need at least three strictly decreasing eps")
    target = differential_cumulant(f, xi, k, method="partition").value
    scaled = []
    for eps in eps_values:
        window = CubeWindow(xi, eps)
        kappa = local_cumulant(f, window, k, nodes=nodes).value
        scaled.append(kappa / r_factor(eps, k))
    errors = tuple(abs(s - target) for s in scaled)
    atol = 1e-9 * max(1.0, abs(target))
    decaying = all(b < a or b < atol for a, b in zip(errors, errors[1:]))
    close = errors[-1] <= max(rel_tol * abs(target), atol)
    return LimitProbeReport(k, xi, eps_values, tuple(scaled), target,
                            errors, bool(decaying and close))


# ---------------------------------------------------------------------------
# built-in density families

def gaussian_density(mean, precision) -> DensityOracle:
    """Normal density with the given mean and precision (inverse
    covariance) matrix."""
    mu = np.asarray(mean, dtype=float)
    lam = np.asarray(precision, dtype=float)
    p = mu.shape[0]
    if lam.shape != (p, p) or not np.allclose(lam, lam.T):
        raise DomainError("precision must be a symmetric p x p matrix")
    sign, logdet = np.linalg.slogdet(lam)
    if sign <= 0:
        raise DomainError("precision must be positive definite")
    lognorm = 0.5 * (logdet - p * math.log(2 * math.pi))

    def fn(pts):
        diff = pts - mu
        quad = np.einsum("ni,ij,nj->n", diff, lam, diff)
        return np.exp(lognorm - 0.5 * quad)

    def log_derivative(alpha, point):
        # closed-form D^alpha log f for |alpha| <= 2: test oracle
        axes = [i for i, a in enumerate(alpha) if a]
        diff = np.asarray(point, dtype=float) - mu
        if len(axes) == 0:
            return float(lognorm - 0.5 * diff @ lam @ diff)
        if len(axes) == 1:
            return float(-(lam @ diff)[axes[0]])
        if len(axes) == 2:
            return float(-lam[axes[0], axes[1]])
        return 0.0

    return DensityOracle(p, fn, log_derivative)


def mec_density(coeffs, p: int) -> DensityOracle:
    """Unnormalized exp of a multilinear log-density sum a_s x^s; every
    estimator here is a ratio, so the missing constant is irrelevant."""
    table = {tuple(s): float(a) for s, a in coeffs.items()}
    for s in table:
        if len(s) != p or any(v not in (0, 1) for v in s):
            raise DomainError(f"non-binary index {s} in MEC coefficients")

    def fn(pts):
        g = np.zeros(pts.shape[0])
        for s, a in table.items():
            term = np.full(pts.shape[0], a)
            for i, si in enumerate(s):
                if si:
                    term = term * pts[:, i]
            g += term
        return np.exp(g)

    return DensityOracle(p, fn)


def product_gaussian_density(means, variances) -> DensityOracle:
    """Product of independent univariate normals."""
    mu = np.asarray(means, dtype=float)
    var = np.asarray(variances, dtype=float)
    if mu.shape != var.shape or np.any(var <= 0):
        raise DomainError("means/variances must match, variances positive")
    precision = np.diag(1.0 / var)
    return gaussian_density(mu, precision)
