from __future__ import annotations

import json
from itertools import product

import numpy as np
import pytest

from conftest import brute_hom_dim
from tubecat.homspace import Morphism, all_words, compose, dual_basis, vertex
from tubecat.tube import (TubeMorphism, embed_c_morphism, tube_algebra, tube_algebra_dimension, tube_compose,
                          tube_hom_dim, tube_identity)

# frozen: sum over (I, J) of (sum_X N_IJ^X)^2, computed by hand from the fusion rules
TUBE_ALGEBRA_DIM = {'trivial': 1, 'semion': 4, 'fibonacci': 7, 'ising': 12, 'z3': 9}


def _block_count(cat) -> int:
    N = cat.fusion
    return int(sum(N[I, J].sum() ** 2 for I, J in product(range(cat.num_labels), repeat=2)))


@pytest.mark.parametrize('name,X,Y,expected', [
    ('trivial', '', '', 1),
    ('fibonacci', 'tau', 'tau', 3),
    ('fibonacci', '', '', 2),
    ('fibonacci', 'tau,tau', '', 3),
    ('ising', 'sigma', 'sigma', 4),
])
def test_tube_hom_dim(cats, name, X, Y, expected):
    assert tube_hom_dim(cats[name], X, Y) == expected


def test_tube_hom_dim_counts(cat):
    for X in all_words(cat, 2):
        for Y in all_words(cat, 1):
            expected = sum(brute_hom_dim(cat, (R,) + X, Y + (R,)) for R in range(cat.num_labels))
            assert tube_hom_dim(cat, X, Y) == expected


def test_identity_neutral(cat, rng):
    for X in all_words(cat, 1):
        for Y in all_words(cat, 1):
            f = TubeMorphism.random(cat, X, Y, rng)
            assert tube_compose(tube_identity(cat, Y), f).allclose(f, 1e-10)
            assert tube_compose(f, tube_identity(cat, X)).allclose(f, 1e-10)


def test_identity_on_unit(fib):
    idm = tube_identity(fib, '')
    assert list(idm.components) == [fib.unit]
    assert np.allclose(idm.coeffs, [1, 0])


def test_associative(cat, rng):
    words = all_words(cat, 1)
    for _ in range(5):
        W, X, Y, Z = (words[rng.integers(len(words))] for _ in range(4))
        f = TubeMorphism.random(cat, W, X, rng)
        g = TubeMorphism.random(cat, X, Y, rng)
        h = TubeMorphism.random(cat, Y, Z, rng)
        lhs = tube_compose(h, tube_compose(g, f))
        rhs = tube_compose(tube_compose(h, g), f)
        assert lhs.allclose(rhs, 1e-9)


def test_embedding_is_functor(cat, rng):
    for X in all_words(cat, 2)[:8]:
        f = Morphism.random(cat, X, X, rng)
        g = Morphism.random(cat, X, X, rng)
        lhs = tube_compose(embed_c_morphism(cat, g), embed_c_morphism(cat, f))
        assert lhs.allclose(embed_c_morphism(cat, compose(g, f)), 1e-10)


def test_bilinear(fib, rng):
    f1, f2 = (TubeMorphism.random(fib, 'tau', 'tau', rng) for _ in range(2))
    g = TubeMorphism.random(fib, 'tau', 'tau', rng)
    lhs = g @ (2 * f1 - f2)
    rhs = 2 * (g @ f1) - g @ f2
    assert lhs.allclose(rhs, 1e-10)


def test_basis_independence(fib, rng):
    """Rescaling the splitting basis of Hom(T, S R) and its dual leaves the composite unchanged."""
    f = TubeMorphism.random(fib, 'tau', 'tau', rng)
    g = TubeMorphism.random(fib, 'tau', 'tau', rng)

    def pairs(S, R, T):
        b = vertex(fib, S, R, T) * 3.
        return [(b, dual_basis(fib, T, (S, R), [b])[0])]

    assert tube_compose(g, f, pairs).allclose(tube_compose(g, f), 1e-10)


def test_vacuum_idempotent_squares(cat):
    u = cat.unit
    comps = {R: Morphism.from_coeffs(cat, (R,), (R,), [cat.qdim[R] / cat.global_dim])
             for R in range(cat.num_labels)}
    p = TubeMorphism(cat, (), (), comps)
    assert tube_compose(p, p).allclose(p, 1e-12)
    assert u in p.components


def test_component_shapes(fib, rng):
    f = TubeMorphism.random(fib, 'tau', 'tau,tau', rng)
    for R, m in f.components.items():
        assert m.source == (R,) + f.source and m.target == f.target + (R,)
    with pytest.raises(ValueError):
        TubeMorphism(fib, 'tau', 'tau', {0: Morphism.identity(fib, 'tau,tau')})
    with pytest.raises(ValueError):
        tube_compose(f, f)
    assert TubeMorphism.from_coeffs(fib, f.source, f.target, f.coeffs).allclose(f, 0)
    assert len(TubeMorphism.basis(fib, 'tau', 'tau')) == 3


@pytest.mark.parametrize('name', list(TUBE_ALGEBRA_DIM))
def test_tube_algebra_dimension(cats, name):
    cat = cats[name]
    assert tube_algebra_dimension(cat) == TUBE_ALGEBRA_DIM[name] == _block_count(cat)
    ta = tube_algebra(cat)
    assert ta.dimension == TUBE_ALGEBRA_DIM[name]
    assert ta.associativity_residual() <= 1e-9
    assert ta.unit_residual() <= 1e-12


def test_tube_algebra_export(fib):
    ta = tube_algebra(fib)
    doc = json.loads(ta.to_json())
    assert doc['dimension'] == 7 and len(doc['basis']) == 7
    for i, j, k, (re, im) in doc['structure_constants']:
        assert abs(ta.structure[i, j, k] - complex(re, im)) < 1e-15
    u = np.array([complex(*v) for v in doc['unit']])
    e = np.eye(7)[3]
    assert np.allclose(ta.multiply(u, e), e)
