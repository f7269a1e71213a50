from __future__ import annotations

import json
from itertools import product

import numpy as np
import pytest

from tubecat.homspace import Morphism, all_words, compose, hom_dim, trace
from tubecat.reps import (FunctorRep, block_decompose_end, compose_lambdas_check, f_functor_apply,
                          functor_matrix, lambda_map, mu_action, primitive_idempotent, rank_profile,
                          trace_dual_bases, verify_opposite)
from tubecat.tube import TubeMorphism, embed_c_morphism, tube_compose, tube_hom_dim, tube_identity


def _unit_pair(cat):
    u = cat.unit
    i = Morphism(cat, (), (u, u), {u: np.ones((1, 1))})
    j = Morphism(cat, (u, u), (), {u: np.ones((1, 1))})
    return i, j


def test_functor_identity(cat, rng):
    for Y in all_words(cat, 2):
        for I, J in product(range(cat.num_labels), repeat=2):
            if not hom_dim(cat, Y, (I, J)):
                continue
            g = Morphism.random(cat, Y, (I, J), rng)
            assert f_functor_apply(cat, I, J, tube_identity(cat, Y), g).allclose(g, 1e-12)


def test_functor_on_embedded_morphism(cat, rng):
    for Z in all_words(cat, 1):
        for Y in all_words(cat, 2):
            if not hom_dim(cat, Z, Y):
                continue
            f = Morphism.random(cat, Z, Y, rng)
            for I, J in product(range(cat.num_labels), repeat=2):
                if not hom_dim(cat, Y, (I, J)):
                    continue
                g = Morphism.random(cat, Y, (I, J), rng)
                assert f_functor_apply(cat, I, J, embed_c_morphism(cat, f), g).allclose(compose(g, f), 1e-10)


def test_functor_is_contravariant(cat, rng):
    words = all_words(cat, 1)
    for _ in range(4):
        X, Y, Z = (words[rng.integers(len(words))] for _ in range(3))
        f = TubeMorphism.random(cat, X, Y, rng)
        g = TubeMorphism.random(cat, Y, Z, rng)
        for I, J in product(range(cat.num_labels), repeat=2):
            Mf = functor_matrix(cat, I, J, f)
            Mg = functor_matrix(cat, I, J, g)
            Mgf = functor_matrix(cat, I, J, tube_compose(g, f))
            assert np.allclose(Mgf, Mf @ Mg, atol=1e-9)


def test_functor_rejects_shape(fib, rng):
    f = TubeMorphism.random(fib, 'tau', 'tau', rng)
    with pytest.raises(ValueError):
        f_functor_apply(fib, 'tau', 'tau', f, Morphism.random(fib, 'tau,tau', 'tau,tau', rng))


def test_mu_action(fib, rng):
    k = Morphism.random(fib, 'tau', 'tau,tau', rng)
    t = fib.index('tau')
    assert mu_action(fib, t, t, k, tube_identity(fib, 'tau')).allclose(k, 1e-12)
    f = Morphism.random(fib, 'tau,tau,tau', 'tau', rng)
    assert mu_action(fib, t, t, k, embed_c_morphism(fib, f)).allclose(compose(k, f), 1e-10)


def test_vacuum_lambda(cat):
    i, j = _unit_pair(cat)
    p = lambda_map(cat, cat.unit, cat.unit, j, i)
    for R in range(cat.num_labels):
        assert abs(p.component(R).scalar() - cat.qdim[R] / cat.global_dim) < 1e-12


def test_vacuum_fibonacci_values(fib):
    phi = (1 + np.sqrt(5)) / 2
    dc = 1 + phi ** 2
    i, j = _unit_pair(fib)
    p = primitive_idempotent(fib, 0, 0, i, j)
    assert np.allclose(p.coeffs, [1 / dc, phi / dc], atol=1e-12)


def test_lambda_zero_without_channel(fib, rng):
    # Hom(tau, 1 1) = 0, so only the zero map exists
    i = Morphism.zeros(fib, 'tau', '1,1')
    j = Morphism.zeros(fib, '1,1', 'tau')
    assert lambda_map(fib, 0, 0, j, i).max_abs() == 0


def test_lambda_rejects_shape(fib, rng):
    with pytest.raises(ValueError):
        lambda_map(fib, 'tau', 'tau', Morphism.random(fib, 'tau,tau', 'tau', rng),
                   Morphism.random(fib, 'tau', 'tau', rng))


def test_fibonacci_tau_idempotent(fib, rng):
    t = fib.index('tau')
    i = Morphism.random(fib, 'tau', (t, 0), rng)
    j = Morphism.random(fib, (t, 0), 'tau', rng)
    j = j / trace(compose(i, j))
    p = primitive_idempotent(fib, t, 0, i, j)
    assert tube_compose(p, p).allclose(p, 1e-10)


def test_idempotent_scaling_invariance(fib, rng):
    t = fib.index('tau')
    basis, cobasis = trace_dual_bases(fib, 'tau', 0, t)
    p = primitive_idempotent(fib, 0, t, cobasis[0], basis[0])
    q = primitive_idempotent(fib, 0, t, 2 * cobasis[0], basis[0] / 2)
    assert p.allclose(q, 1e-12)
    with pytest.raises(ValueError):
        primitive_idempotent(fib, 0, t, 2 * cobasis[0], basis[0])


def test_rank_profile_fibonacci(fib):
    t = fib.index('tau')
    basis, cobasis = trace_dual_bases(fib, 'tau', 0, t)
    p = primitive_idempotent(fib, 0, t, cobasis[0], basis[0])
    profile = rank_profile(fib, p, ['', 'tau', 'tau,tau'])
    assert profile == {Z: hom_dim(fib, Z, (0, t)) for Z in [(), (t,), (t, t)]}


def test_trace_dual_bases(cat):
    for X in all_words(cat, 2):
        for I, J in product(range(cat.num_labels), repeat=2):
            b, c = trace_dual_bases(cat, X, I, J)
            assert len(b) == len(c) == hom_dim(cat, X, (I, J))
            for q, cq in enumerate(c):
                for p, bp in enumerate(b):
                    assert abs(trace(compose(cq, bp)) - (p == q)) < 1e-10


def test_opposite_trace_dual_pair(fib):
    t = fib.index('tau')
    basis, cobasis = trace_dual_bases(fib, 'tau', t, t)
    res = verify_opposite(fib, t, t, 'tau', cobasis[0], basis[0])
    assert abs(res.scalar - 1) < 1e-10 and res.residual < 1e-10


def test_opposite_zero(fib, rng):
    t = fib.index('tau')
    k = Morphism.random(fib, 'tau', 'tau,tau', rng)
    res = verify_opposite(fib, t, t, 'tau', k, Morphism.zeros(fib, 'tau,tau', 'tau'))
    assert res.scalar == 0 and res.residual == 0


def test_opposite_random(fib, rng):
    t = fib.index('tau')
    k = Morphism.random(fib, 'tau,tau', 'tau,tau', rng)
    j = Morphism.random(fib, 'tau,tau', 'tau,tau', rng)
    res = verify_opposite(fib, t, t, 'tau,tau', k, j)
    assert res.residual < 1e-8 and res.scalar_error < 1e-8


def test_composition_rule_same_block(fib, rng):
    t = fib.index('tau')
    basis, cobasis = trace_dual_bases(fib, 'tau', t, t)
    i = Morphism.random(fib, 'tau', 'tau,tau', rng)
    l = Morphism.random(fib, 'tau,tau', 'tau', rng)
    assert compose_lambdas_check(fib, (t, t, l, cobasis[0]), (t, t, basis[0], i)) < 1e-10
    k = Morphism.random(fib, 'tau', 'tau,tau', rng)
    j = Morphism.random(fib, 'tau,tau', 'tau', rng)
    assert compose_lambdas_check(fib, (t, t, l, k), (t, t, j, i)) < 1e-10


def test_composition_rule_orthogonal_blocks(ising, rng):
    s, psi = ising.index('sigma'), ising.index('psi')
    X = (psi,)
    i = Morphism.random(ising, X, (0, psi), rng)
    j = Morphism.random(ising, (0, psi), X, rng)
    k = Morphism.random(ising, X, (s, s), rng)
    l = Morphism.random(ising, (s, s), X, rng)
    lhs = tube_compose(lambda_map(ising, s, s, l, k), lambda_map(ising, 0, psi, j, i))
    assert lhs.max_abs() < 1e-10
    assert compose_lambdas_check(ising, (s, s, l, k), (0, psi, j, i)) < 1e-10


def test_composition_rule_zero(fib, rng):
    t = fib.index('tau')
    i = Morphism.random(fib, 'tau', 'tau,tau', rng)
    k = Morphism.random(fib, 'tau', 'tau,tau', rng)
    l = Morphism.random(fib, 'tau,tau', 'tau', rng)
    zero = Morphism.zeros(fib, 'tau,tau', 'tau')
    lhs = tube_compose(lambda_map(fib, t, t, l, k), lambda_map(fib, t, t, zero, i))
    assert lhs.max_abs() == 0


@pytest.mark.parametrize('name,X,blocks', [
    ('trivial', '', {('1', '1'): 1}),
    ('fibonacci', '', {('1', '1'): 1, ('tau', 'tau'): 1}),
    ('fibonacci', 'tau', {('1', 'tau'): 1, ('tau', '1'): 1, ('tau', 'tau'): 1}),
    ('fibonacci', 'tau,tau', {('1', '1'): 1, ('1', 'tau'): 1, ('tau', '1'): 1, ('tau', 'tau'): 2}),
    ('ising', '', {('1', '1'): 1, ('sigma', 'sigma'): 1, ('psi', 'psi'): 1}),
    ('ising', 'sigma', {('1', 'sigma'): 1, ('sigma', '1'): 1, ('sigma', 'psi'): 1, ('psi', 'sigma'): 1}),
])
def test_block_sizes(cats, name, X, blocks):
    cat = cats[name]
    bd = block_decompose_end(cat, X)
    L = cat.labels
    assert {(L[I], L[J]): n for (I, J), n in bd.block_sizes.items()} == blocks
    assert sum(n * n for n in blocks.values()) == tube_hom_dim(cat, X, X)
    assert bd.passed()


def test_unit_blocks_are_dual_pairs(cat):
    bd = block_decompose_end(cat, ())
    assert set(bd.block_sizes) == {(I, cat.dual[I]) for I in range(cat.num_labels)}


def test_decomposition_report(fib):
    bd = block_decompose_end(fib, 'tau')
    doc = json.loads(json.dumps(bd.to_dict()))
    assert doc['object'] == ['tau'] and len(doc['blocks']) == 3
    assert set(doc['residuals']) == {'matrix_units', 'orthogonality', 'completeness', 'dimension_count'}
    total = sum((bd.idempotent(I, J) for I, J in bd.units), TubeMorphism.zeros(fib, bd.X, bd.X))
    assert total.allclose(tube_identity(fib, 'tau'), 1e-10)


def test_functor_rep(fib):
    F = FunctorRep(fib, fib.index('tau'), fib.index('tau'))
    assert F.dim('tau,tau') == 2
    b, c = F.dual_pair('tau,tau')
    assert F.dual_pair('tau,tau')[0] is b and len(c) == 2
