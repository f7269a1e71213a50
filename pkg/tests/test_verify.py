from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np
import pytest

from tubecat.category_data import builtin_category, category_from_dict, category_to_dict
from tubecat.verify import (CHECKS, CheckReport, check_names, dimension_identity_sides, reports_to_csv, reports_to_json,
                            reports_to_text, run_check, run_suite)

DOCUMENTED = [
    'pentagon', 'hexagon', 'unit_coherence', 'modularity',
    'simple_pairing', 'identity_decomposition', 'trace_pairing', 'sphericality',
    'twisted_duals', 'dual_decompose', 'killing_ring', 'double_ring', 'twisted_s',
    'yang_baxter', 'crossing_naturality', 'evaluator_functoriality',
    'tube_identity', 'tube_associativity', 'tube_basis_independence', 'tube_embedding',
    'tube_dimension', 'tube_algebra',
    'functor', 'naturality', 'opposite', 'composition_rule',
    'matrix_units', 'block_orthogonality', 'completeness', 'primitive_idempotents', 'vacuum_idempotent',
]
README = Path(__file__).resolve().parents[1] / 'README.md'


def corrupted_r():
    doc = category_to_dict(builtin_category('fibonacci'))
    for e in doc['R']:
        if e['a'] == e['b'] == e['c'] == 'tau':
            e['v'] = [-e['v'][0], -e['v'][1]]
    return category_from_dict(doc)


def test_registry_matches_documented_list():
    assert check_names() == DOCUMENTED
    assert list(CHECKS) == DOCUMENTED


def test_readme_documents_every_check():
    text = README.read_text(encoding='utf-8')
    section = text.split('## Checks', 1)[1].split('\n## ', 1)[0]
    listed = re.findall(r'^\| `([a-z_]+)` \|', section, flags=re.M)
    assert listed == DOCUMENTED


def test_trivial_residuals_vanish():
    reports = run_suite(builtin_category('trivial'), seed=7)
    assert [r.name for r in reports] == DOCUMENTED
    for r in reports:
        assert r.passed and r.max_residual <= 1e-13, r.name


def test_fibonacci_seed_42_passes():
    reports = run_suite(builtin_category('fibonacci'), seed=42)
    failed = [r.name for r in reports if not r.passed]
    assert failed == []


def test_corrupted_r_is_detected():
    reports = {r.name: r for r in run_suite(corrupted_r(), seed=42)}
    assert not reports['hexagon'].passed
    assert not reports['killing_ring'].passed
    assert reports['pentagon'].passed


def test_selection_and_order(fib):
    reports = run_suite(fib, ['opposite', 'pentagon'])
    assert [r.name for r in reports] == ['pentagon', 'opposite']
    with pytest.raises(KeyError):
        run_suite(fib, ['nope'])
    with pytest.raises(KeyError):
        run_check(fib, 'nope')


def test_pass_flag_matches_residual(fib):
    for r in run_suite(fib, ['killing_ring', 'vacuum_idempotent', 'tube_dimension']):
        assert r.passed == (r.max_residual <= r.tolerance)
    vac = run_check(fib, 'vacuum_idempotent')
    assert vac.tolerance == 1e-10


def test_seed_reproducibility(fib):
    sel = ['twisted_duals', 'tube_associativity', 'naturality']
    a = [r.max_residual for r in run_suite(fib, sel, seed=3)]
    b = [r.max_residual for r in run_suite(fib, sel, seed=3)]
    assert a == b


def test_report_formats(fib):
    reports = run_suite(fib, ['pentagon', 'killing_ring'])
    doc = json.loads(reports_to_json(reports, {'category': fib.name, 'seed': 0}))
    assert doc['passed'] and [c['name'] for c in doc['checks']] == ['pentagon', 'killing_ring']
    assert 'wall_time' not in doc['checks'][0]
    assert 'wall_time' in json.loads(reports_to_json(reports, timings=True))['checks'][0]
    assert reports_to_text(reports).splitlines()[1].startswith('pentagon')
    assert reports_to_csv(reports).splitlines()[0] == 'check,category,seed,max_residual,tolerance,passed'


def test_infinite_residual_serializes():
    r = CheckReport('modularity', 'x', {'seed': 0}, float('inf'), 1e-8, False)
    assert r.to_dict()['max_residual'] == 'inf'


def test_dimension_identity_sides(fib):
    assert dimension_identity_sides(fib, fib.word('tau'), fib.word('tau')) == (3, 3)
    assert dimension_identity_sides(fib, (), ()) == (2, 2)


def test_killing_ring_fibonacci_non_unit(fib):
    from tubecat.verify import killing_ring_values
    vals = killing_ring_values(fib)
    assert abs(vals[0] - fib.global_dim) < 1e-12
    assert abs(vals[1]) < 1e-12
