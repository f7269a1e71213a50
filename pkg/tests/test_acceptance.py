"""Acceptance criteria, one test group per criterion.

A summary line per criterion is printed at the end of the pytest run
(see ``conftest.py``); running this file directly prints the same lines.
"""
from __future__ import annotations

import subprocess
import sys
from itertools import product

import numpy as np
import pytest

from conftest import BUILTINS, brute_hom_dim
from tubecat.category_data import builtin_category, check_axioms
from tubecat.cli import main
from tubecat.homspace import Morphism, all_words
from tubecat.reps import primitive_idempotent
from tubecat.tube import tube_algebra, tube_algebra_dimension, tube_compose, tube_hom_dim
from tubecat.verify import killing_ring_values, run_check

TOL = 1e-8
VACUUM_TOL = 1e-10


def _check(cat, name, seed=0):
    rep = run_check(cat, name, seed)
    assert rep.tolerance <= TOL
    assert rep.passed, f'{name} on {cat.name}: residual {rep.max_residual:.3e} details {rep.details}'
    return rep


def _pf_dims(cat) -> np.ndarray:
    """Perron-Frobenius dimensions from the fusion matrices alone."""
    return np.array([max(np.linalg.eigvals(cat.fusion[a].astype(float)).real) for a in range(cat.num_labels)])


@pytest.fixture(scope='module', params=BUILTINS)
def bcat(request):
    return builtin_category(request.param)


# 1. axioms

def test_criterion_1_axioms(bcat):
    rep = check_axioms(bcat)
    assert rep.tolerance == TOL
    assert rep.passed, rep.failures()


# 2. killing ring

def test_criterion_2_killing_ring(bcat):
    vals = killing_ring_values(bcat)
    dc = np.sum(_pf_dims(bcat) ** 2)
    for R in range(bcat.num_labels):
        expected = dc if R == bcat.unit else 0.
        assert abs(vals[R] - expected) <= TOL


def test_criterion_2_fibonacci_non_unit_vanishes():
    fib = builtin_category('fibonacci')
    assert abs(killing_ring_values(fib)[fib.index('tau')]) <= TOL


# 3. identity decomposition and trace-pairing perfectness on words of length <= 3

@pytest.mark.parametrize('name', ['identity_decomposition', 'simple_pairing', 'trace_pairing'])
def test_criterion_3_pairings(bcat, name):
    rep = _check(bcat, name)
    if 'min_abs_det' in rep.details:
        assert rep.details['min_abs_det'] > TOL


# 4. twisted duals, dual decomposition, double ring, twisted S: 20 seeded instances each

@pytest.mark.parametrize('name', ['twisted_duals', 'dual_decompose', 'double_ring', 'twisted_s'])
def test_criterion_4_bent_diagrams(bcat, name):
    rep = _check(bcat, name, seed=2024)
    assert rep.details['instances'] == 20


# 5. tube category

@pytest.mark.parametrize('name', ['tube_identity', 'tube_associativity'])
def test_criterion_5_tube_category(bcat, name):
    rep = _check(bcat, name, seed=5)
    assert rep.details['instances'] == 50


@pytest.mark.parametrize('name,dim', [('trivial', 1), ('semion', 4), ('fibonacci', 7), ('ising', 12)])
def test_criterion_5_tube_algebra_dimension(name, dim):
    cat = builtin_category(name)
    # counting oracle: fusion table only, no diagrams
    N = cat.fusion
    counted = sum(int(N[R, X] @ N[Y, R]) for R, X, Y in product(range(cat.num_labels), repeat=3))
    assert counted == dim
    assert tube_algebra_dimension(cat) == dim
    ta = tube_algebra(cat)
    assert ta.dimension == dim
    assert ta.associativity_residual() <= TOL


# 6. dimension identity for words of length <= 2

def test_criterion_6_dimension_identity(bcat):
    n = bcat.num_labels
    words = all_words(bcat, 2)
    for X, Y in product(words, repeat=2):
        lhs = tube_hom_dim(bcat, X, Y)
        rhs = sum(brute_hom_dim(bcat, (I, J), Y) * brute_hom_dim(bcat, X, (I, J))
                  for I, J in product(range(n), repeat=2))
        assert lhs == rhs, (X, Y)


# 7. lambda and mu are opposite

def test_criterion_7_opposite(bcat):
    rep = _check(bcat, 'opposite', seed=7)
    assert rep.details['cases'] > 0


# 8. idempotents and the composition rule

@pytest.mark.parametrize('name', ['matrix_units', 'block_orthogonality', 'completeness',
                                  'primitive_idempotents', 'composition_rule'])
def test_criterion_8_idempotents(bcat, name):
    _check(bcat, name, seed=8)


def test_criterion_8_vacuum_idempotent(bcat):
    u = bcat.unit
    i = Morphism(bcat, (), (u, u), {u: np.ones((1, 1))})
    j = Morphism(bcat, (u, u), (), {u: np.ones((1, 1))})
    p = primitive_idempotent(bcat, u, u, i, j)
    d = _pf_dims(bcat)
    dc = np.sum(d ** 2)
    for R in range(bcat.num_labels):
        assert abs(p.component(R).scalar() - d[R] / dc) <= VACUUM_TOL
    assert tube_compose(p, p).allclose(p, VACUUM_TOL)


# 9. determinism

@pytest.mark.parametrize('name', ['fibonacci', 'ising'])
def test_criterion_9_byte_identical_reports(name, tmp_path):
    a, b = tmp_path / 'a.json', tmp_path / 'b.json'
    args = ['check', '--cat', name, '--seed', '42', '--format', 'json']
    assert main(args + ['--out', str(a)]) == 0
    proc = subprocess.run([sys.executable, '-m', 'tubecat'] + args + ['--out', str(b)], capture_output=True)
    assert proc.returncode == 0, proc.stderr.decode()
    assert a.read_bytes() == b.read_bytes()


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-q']))
