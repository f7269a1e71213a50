from __future__ import annotations

import numpy as np
import pytest

from tubecat.axioms import s_matrix
from tubecat.diagram import (DiagramBuilder, DiagramIR, DiagramSyntaxError, evaluate, evaluate_cylinder,
                             parse_diagram, stack)
from tubecat.homspace import Morphism, braiding, compose, embed, tensor, trace
from tubecat.tube import embed_c_morphism


def test_single_box(fib, rng):
    f = Morphism.random(fib, 'tau', 'tau', rng)
    d = parse_diagram('in tau; box f; out tau', fib, {'f': f})
    assert len(d.slices) == 1 and d.slices[0].cells[0].kind == 'box'
    assert evaluate(fib, d, {'f': f}).allclose(f, 0)


def test_single_crossing(fib):
    d = parse_diagram('in tau 1\ncross over\nout 1 tau', fib)
    assert len(d.slices) == 1
    assert d.slices[0].cells[0].kind == 'over'
    assert d.boundary_out == fib.word('1,tau')


def test_comments_and_separators(fib):
    text = """
    # a zig-zag on tau
    in tau
    id | cup tau*      # creates tau* tau
    cap tau | id ; out tau
    """
    d = parse_diagram(text, fib)
    assert len(d.slices) == 2
    assert evaluate(fib, d).allclose(Morphism.identity(fib, 'tau'))


def test_shapes_instead_of_morphisms(fib):
    d = parse_diagram('in tau tau; box m; out tau', fib, {'m': ('tau,tau', 'tau')})
    assert d.slices[0].cells[0].target == fib.word('tau')


@pytest.mark.parametrize('text,message,line', [
    ('in tau; id | cross over', 'width mismatch', 1),
    ('in tau\nover', 'width mismatch', 2),
    ('in tau tau\nid', 'width mismatch', 2),
    ('in tau\nid\nout tau tau', 'width mismatch', 3),
    ('in tau\nbox g', 'unknown box', 2),
    ('in tau\nid sigma', 'unknown label', 2),
    ('in tau\nid 1', 'label mismatch', 2),
    ('in tau\nfrobnicate', 'unknown cell', 2),
    ('id tau', 'before the in line', 1),
    ('out tau', 'missing in line', 1),
    ('in tau\ncross', "'over' or 'under'", 2),
    ('in tau tau\nglue tau tau', 'glue takes exactly one', 2),
    ('in tau\nid\nout tau\nid', 'after the out line', 4),
    ('in tau; in tau', 'duplicate in', 1),
    ('in tau\nid |', 'empty cell', 2),
    ('in 1 tau\nglue tau', 'glued strand', 1),
])
def test_syntax_errors(fib, text, message, line):
    with pytest.raises(DiagramSyntaxError, match=message) as info:
        parse_diagram(text, fib)
    assert info.value.line == line
    assert info.value.column >= 1


def test_error_column_points_at_token(fib):
    with pytest.raises(DiagramSyntaxError) as info:
        parse_diagram('in tau\nid   sigma', fib)
    assert info.value.column == 6


def test_loop_is_quantum_dimension(cat):
    for a in range(cat.num_labels):
        d = DiagramBuilder(cat, ()).cup(a, 0).cap(a, 0).build()
        assert abs(evaluate(cat, d).scalar() - cat.qdim[a]) < 1e-12


def test_zigzags(cat):
    for a in range(cat.num_labels):
        d1 = DiagramBuilder(cat, (a,)).cup(a, 1, dual=True).cap(a, 0).build()
        d2 = DiagramBuilder(cat, (a,)).cup(a, 0).cap(a, 1, dual=True).build()
        for d in (d1, d2):
            assert evaluate(cat, d).allclose(Morphism.identity(cat, (a,)))


def test_hopf_link_text_is_s_matrix(cat):
    S = s_matrix(cat)
    L = cat.labels
    for a in range(cat.num_labels):
        for b in range(cat.num_labels):
            d = parse_diagram(f'in {L[a]} {L[b]}\nover\nover', cat)
            assert abs(trace(evaluate(cat, d)) - S[a, b]) < 1e-12


def test_stack_is_composition(fib, rng):
    f = Morphism.random(fib, 'tau,tau', 'tau', rng)
    g = Morphism.random(fib, 'tau', 'tau,tau', rng)
    d1 = parse_diagram('in tau tau; box f', fib, {'f': f})
    d2 = parse_diagram('in tau; box g', fib, {'g': g})
    m = evaluate(fib, stack(d1, d2), {'f': f, 'g': g})
    assert m.allclose(compose(g, f))
    with pytest.raises(ValueError):
        stack(d2, d2)


def test_parallel_cells_are_tensor(fib, rng):
    f = Morphism.random(fib, 'tau', 'tau', rng)
    g = Morphism.random(fib, 'tau,tau', 'tau', rng)
    d = parse_diagram('in tau tau tau; box f | box g', fib, {'f': f, 'g': g})
    assert evaluate(fib, d, {'f': f, 'g': g}).allclose(tensor(f, g), 1e-12)


def test_under_inverts_over(cat):
    for a in range(cat.num_labels):
        for b in range(cat.num_labels):
            d = DiagramBuilder(cat, (a, b)).cross(0, True).cross(0, False).build()
            assert evaluate(cat, d).allclose(Morphism.identity(cat, (a, b)))


def test_builder_rejects_misfit(fib):
    with pytest.raises(ValueError):
        DiagramBuilder(fib, 'tau').box('f', '1', '1', at=0)


def test_unbound_and_misbound_boxes(fib, rng):
    d = parse_diagram('in tau; box f', fib, {'f': ('tau', 'tau')})
    with pytest.raises(KeyError):
        evaluate(fib, d)
    wrong = DiagramIR(d.boundary_in, d.boundary_out, d.slices)
    with pytest.raises(ValueError):
        evaluate(fib, wrong, {'f': Morphism.random(fib, 'tau', 'tau,tau', rng)})


def test_glue_rules(fib):
    d = parse_diagram('in tau; glue tau; id; out tau', fib)
    assert d.glue == fib.index('tau')
    assert evaluate_cylinder(fib, d).allclose(Morphism.identity(fib, 'tau'))
    with pytest.raises(ValueError):
        evaluate(fib, d)
    with pytest.raises(ValueError):
        evaluate_cylinder(fib, parse_diagram('in tau', fib))


def test_plain_morphism_on_cylinder(fib, rng):
    f = Morphism.random(fib, 'tau,tau', 'tau', rng)
    d = parse_diagram('glue 1\nin 1 tau tau\nid | box f\nover\nout tau 1', fib, {'f': f})
    m = evaluate_cylinder(fib, d, {'f': f})
    expected = embed_c_morphism(fib, f).component(fib.unit)
    assert m.allclose(expected)


def test_crossing_naturality_in_dsl(fib, rng):
    f = Morphism.random(fib, 'tau,tau', 'tau', rng)
    lhs = parse_diagram('in tau tau tau; box f | id; over', fib, {'f': f})
    rhs = parse_diagram('in tau tau tau; id | over; over | id; id | box f', fib, {'f': f})
    a, b = evaluate(fib, lhs, {'f': f}), evaluate(fib, rhs, {'f': f})
    assert a.allclose(b, 1e-10)
    t = fib.index('tau')
    expected = compose(braiding(fib, t, t), embed((), f, (t,)))
    assert a.allclose(expected, 1e-10)


def test_ir_validates_slices(fib):
    d = parse_diagram('in tau; id', fib)
    with pytest.raises(ValueError):
        DiagramIR(fib.word('tau,tau'), d.boundary_out, d.slices)
    assert np.array_equal(d.boundary_in, d.boundary_out)
