"""Decomposability, clique/separator factorization (including a numeric
check that the Gaussian density really factors), marginalization and
conditional-independence generators."""
import math
import random

import numpy as np
import pytest

from hmi import (CIStatement, NotDecomposableError, make_complex, make_ideal,
                 is_decomposable, factorize, marginalize, ideal_marginalize,
                 ci_to_generators, stanley_reisner)
from hmi.errors import DomainError
from hmi.hierarchy import decomposability_witness, format_factorization
from hmi.ideal import format_generators


CHAIN = [[1, 2, 3], [2, 3, 4], [3, 4, 5]]


def test_chain_factorization_golden():
    S = make_complex(5, CHAIN)
    fact = factorize(S)
    assert format_factorization(fact) == "f{123} f{234} f{345} / f{23} f{34}"
    assert [set(c) for c in fact.cliques] == [{1, 2, 3}, {2, 3, 4},
                                              {3, 4, 5}]
    assert [set(s) for s in fact.separators] == [{2, 3}, {3, 4}]


def test_four_cycle_not_decomposable():
    S = make_complex(4, [[1, 2], [2, 3], [3, 4], [1, 4]])
    assert not is_decomposable(S)
    witness = decomposability_witness(S)
    assert isinstance(witness, list) and len(witness) == 4
    with pytest.raises(NotDecomposableError, match="chordless cycle"):
        factorize(S)


def test_hollow_triangle_not_decomposable():
    S = make_complex(3, [[1, 2], [2, 3], [1, 3]])
    assert not is_decomposable(S)
    witness = decomposability_witness(S)
    assert witness == frozenset({1, 2, 3})    # non-flag minimal non-face
    with pytest.raises(NotDecomposableError, match="non-flag"):
        factorize(S)


def test_filled_triangle_decomposable():
    assert is_decomposable(make_complex(3, [[1, 2, 3]]))
    assert is_decomposable(make_complex(3, [[1], [2], [3]]))


def test_separator_multiset_is_order_invariant():
    rng = random.Random(31337)
    base = [[1, 2, 3], [2, 3, 4], [3, 4, 5], [5, 6]]
    S = make_complex(6, base)
    reference = sorted(sorted(s) for s in factorize(S).separators)
    for _ in range(20):
        shuffled = base[:]
        rng.shuffle(shuffled)
        T = make_complex(6, shuffled)
        assert sorted(sorted(s) for s in factorize(T).separators) \
            == reference


def _gaussian_marginal_logpdf(mean, cov, idx, x):
    idx = sorted(i - 1 for i in idx)
    sub_mean = mean[idx]
    sub_cov = cov[np.ix_(idx, idx)]
    d = x[idx] - sub_mean
    sign, logdet = np.linalg.slogdet(sub_cov)
    quad = d @ np.linalg.solve(sub_cov, d)
    return -0.5 * (len(idx) * math.log(2 * math.pi) + logdet + quad)


def test_gaussian_density_factorizes_over_cliques():
    # tridiagonal precision on p=4: chain complex, decomposable
    lam = np.array([[2.0, -0.6, 0, 0], [-0.6, 2.0, -0.5, 0],
                    [0, -0.5, 2.0, -0.4], [0, 0, -0.4, 2.0]])
    cov = np.linalg.inv(lam)
    mean = np.array([0.3, -0.1, 0.2, 0.0])
    S = make_complex(4, [[1, 2], [2, 3], [3, 4]])
    fact = factorize(S)
    rng = np.random.default_rng(5)
    for _ in range(100):
        x = mean + rng.normal(size=4)
        full = _gaussian_marginal_logpdf(mean, cov, [1, 2, 3, 4], x)
        parts = sum(_gaussian_marginal_logpdf(mean, cov, sorted(c), x)
                    for c in fact.cliques)
        parts -= sum(_gaussian_marginal_logpdf(mean, cov, sorted(s), x)
                     for s in fact.separators)
        assert abs(full - parts) < 1e-10


def test_marginalize_golden():
    S = make_complex(5, CHAIN)
    M = marginalize(S, {1})
    assert M.labels == (2, 3, 4, 5)
    assert set(M.facet_sets()) == {frozenset({2, 3, 4}),
                                   frozenset({3, 4, 5})}
    assert format_generators(stanley_reisner(M)) == "x2*x5"


def test_marginalize_ideal_route_agrees():
    I = make_ideal(5, [[1, 4], [1, 5], [2, 5]])
    J = ideal_marginalize(I, {1})
    assert J.labels == (2, 3, 4, 5)
    assert format_generators(J) == "x2*x5"
    # the two routes commute with Stanley-Reisner
    S = make_complex(5, CHAIN)
    assert stanley_reisner(marginalize(S, {1})) == J


def test_marginalize_preconditions():
    S = make_complex(5, CHAIN)
    # vertex 3 lies in all three maximal cliques
    with pytest.raises(DomainError, match="unique maximal clique"):
        marginalize(S, {3})
    with pytest.raises(DomainError, match="not a face"):
        marginalize(S, {1, 4})
    assert marginalize(S, []) == S
    # facet strip: {1,2} is only inside 123
    M = marginalize(S, {1, 2})
    assert M.labels == (3, 4, 5)


def test_marginalize_chain_to_the_end():
    S = make_complex(5, CHAIN)
    for v in [1, 2, 3, 4]:
        S = marginalize(S, {v})
    assert S.labels == (5,)
    assert S.facet_sets() == [frozenset({5})]


def test_ci_generators():
    stmt = CIStatement(3, frozenset({1}), frozenset({2}), frozenset({3}))
    assert ci_to_generators(stmt) == [(1, 1, 0)]
    stmt = CIStatement(4, frozenset({1, 2}), frozenset({3, 4}), frozenset())
    assert ci_to_generators(stmt) == [(1, 0, 0, 1), (1, 0, 1, 0),
                                      (0, 1, 0, 1), (0, 1, 1, 0)] or \
        set(ci_to_generators(stmt)) == {(1, 0, 1, 0), (1, 0, 0, 1),
                                        (0, 1, 1, 0), (0, 1, 0, 1)}
    with pytest.raises(DomainError):
        CIStatement(3, frozenset({1}), frozenset({2}), frozenset())
    with pytest.raises(DomainError):
        CIStatement(3, frozenset(), frozenset({2}), frozenset({1, 3}))


def test_ci_generators_are_the_sr_generators():
    # X1 indep X2 given X3 <-> complex {13, 23} <-> ideal <x1x2>
    stmt = CIStatement(3, frozenset({1}), frozenset({2}), frozenset({3}))
    S = make_complex(3, [[1, 3], [2, 3]])
    I = stanley_reisner(S)
    supports = {tuple(sorted(g)) for g in I.generator_sets()}
    from_ci = {tuple(i + 1 for i, v in enumerate(k) if v)
               for k in ci_to_generators(stmt)}
    assert supports == from_ci


def test_factorization_cliques_cover_vertices():
    rng = random.Random(4)
    for _ in range(50):
        p = rng.randint(2, 7)
        # random interval graph: always chordal and flag
        ivals = [(a, a + rng.random()) for a in
                 [rng.random() * 3 for _ in range(p)]]
        edges = [(i + 1, j + 1) for i in range(p) for j in range(i + 1, p)
                 if ivals[i][0] <= ivals[j][1] and ivals[j][0] <= ivals[i][1]]
        from hmi.graphs import make_graph
        from hmi.simplicial import flag_complex
        S = flag_complex(make_graph(p, edges))
        fact = factorize(S)
        assert set().union(*fact.cliques) == set(range(1, p + 1))
        assert len(fact.separators) == len(fact.cliques) - 1
