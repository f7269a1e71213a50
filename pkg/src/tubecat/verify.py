"""Named, seeded numerical checks of the identities of the tube calculus.

Every check returns a :class:`CheckReport` whose ``max_residual`` is the
largest max-abs-entry norm of a difference that should vanish; a check passes
iff that residual is at most the tolerance.  Checks whose natural figure of
merit is a determinant report ``inf`` when the determinant falls below the
tolerance.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

import numpy as np

from . import __version__
from .axioms import check_axioms, hexagon_residual, pentagon_residual, s_matrix
from .category_data import CategoryData
from .diagram import DiagramBuilder, evaluate, stack
from .homspace import (Morphism, all_words, compose, cup, cap, decompose_identity, dual_basis,
                       hom_dim, left_trace, simple_pairing, trace, trace_pairing, trees)
from .reps import (block_decompose_end, compose_lambdas_check, f_functor_apply, functor_matrix,
                   lambda_map, primitive_idempotent, rank_profile, trace_dual_bases, verify_opposite)
from .tube import (TubeMorphism, embed_c_morphism, tube_algebra, tube_algebra_dimension, tube_compose,
                   tube_hom_dim, tube_identity)

__all__ = ['CheckReport', 'CHECKS', 'check_names', 'run_check', 'run_suite', 'reports_to_json',
           'reports_to_text', 'reports_to_csv', 'dimension_identity_sides']


@dataclass
class CheckReport:
    name: str
    category: str
    params: dict
    max_residual: float
    tolerance: float
    passed: bool
    wall_time: float = 0.
    details: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = False) -> dict:
        out = {'name': self.name, 'category': self.category, 'params': self.params,
               'max_residual': _num(self.max_residual), 'tolerance': self.tolerance,
               'passed': self.passed, 'details': {k: _num(v) for k, v in self.details.items()}}
        if timings:
            out['wall_time'] = self.wall_time
        return out


def _num(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if np.isinf(v):
            return 'inf'
        return v
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


# ---------------------------------------------------------------------------
# helpers


def _random_word(cat, rng, lo=1, hi=2) -> tuple:
    n = int(rng.integers(lo, hi + 1))
    return tuple(int(a) for a in rng.integers(cat.num_labels, size=n))


def _random_label(cat, rng) -> int:
    return int(rng.integers(cat.num_labels))


def _sample(rng, draw: Callable, accept: Callable, tries: int = 200):
    """Draw until `accept` holds; None if no acceptable draw was found."""
    for _ in range(tries):
        x = draw()
        if accept(x):
            return x
    return None


def _rand(cat, A, B, rng) -> Morphism:
    return Morphism.random(cat, A, B, rng)


# ---------------------------------------------------------------------------
# checks on category data


def _check_pentagon(cat, rng):
    return pentagon_residual(cat), {}


def _check_hexagon(cat, rng):
    return max(hexagon_residual(cat, True), hexagon_residual(cat, False)), {}


def _check_unit_coherence(cat, rng):
    r = check_axioms(cat).residuals
    return max(r['unit'], r['duality'], r['rigidity'], r['dimensions']), {}


def _check_modularity(cat, rng):
    S = s_matrix(cat)
    det = abs(np.linalg.det(S))
    unit_row = S[cat.unit]
    res = max(float(np.max(np.abs(S - S.T))), float(np.max(np.abs(unit_row - cat.qdim))),
              abs(np.sum(np.abs(unit_row) ** 2) - cat.global_dim))
    if det <= cat.tolerance:
        res = float('inf')
    return res, {'abs_det_s': det}


def _check_simple_pairing(cat, rng, max_len=3):
    """Perfectness: dual bases exist and satisfy ``b*_i b_j = delta``."""
    worst, min_det = 0., float('inf')
    for X in all_words(cat, max_len):
        for R in range(cat.num_labels):
            P = simple_pairing(cat, R, X)
            if P.size == 0:
                continue
            min_det = min(min_det, abs(np.linalg.det(P)))
            basis = [Morphism(cat, (R,), X, {R: np.eye(P.shape[1])[:, [k]]}) for k in range(P.shape[1])]
            duals = dual_basis(cat, R, X, basis)
            for i, bs in enumerate(duals):
                for j, b in enumerate(basis):
                    worst = max(worst, abs(compose(bs, b).scalar() - (i == j)))
    if min_det <= cat.tolerance:
        worst = float('inf')
    return worst, {'min_abs_det': min_det}


def _check_identity_decomposition(cat, rng, max_len=3):
    worst = 0.
    for X in all_words(cat, max_len):
        total = Morphism.zeros(cat, X, X)
        counts = {}
        for R, b, bs in decompose_identity(cat, X):
            total = total + compose(b, bs)
            counts[R] = counts.get(R, 0) + 1
        worst = max(worst, (total - Morphism.identity(cat, X)).max_abs())
        for R in range(cat.num_labels):
            worst = max(worst, abs(counts.get(R, 0) - hom_dim(cat, (R,), X)))
    return worst, {}


def _check_trace_pairing(cat, rng, max_len=3):
    """Gram matrices of ``(f, g) -> tr(g o f)`` on ``Hom(X, Y) x Hom(Y, X)``."""
    worst, min_det = 0., float('inf')
    words = all_words(cat, max_len)
    for X, Y in product(words, repeat=2):
        n = hom_dim(cat, X, Y)
        if n == 0:
            continue
        # tr(g o f) in tree coordinates, via the trace weights of End(X)
        fs = Morphism.basis(cat, X, Y)
        gs = Morphism.basis(cat, Y, X)
        G = np.array([[trace_pairing(f, g) for f in fs] for g in gs])
        min_det = min(min_det, abs(np.linalg.det(G)))
        worst = max(worst, float(np.max(np.abs(G @ np.linalg.inv(G) - np.eye(n)))))
    if min_det <= cat.tolerance:
        worst = float('inf')
    return worst, {'min_abs_det': min_det}


def _check_sphericality(cat, rng, count=100):
    """Left trace equals right trace, cyclicity, and ``tr(id_X) = d(X)``."""
    worst = 0.
    words = all_words(cat, 2, 1)
    for _ in range(count):
        X, Y = words[rng.integers(len(words))], words[rng.integers(len(words))]
        f = _rand(cat, X, X, rng)
        worst = max(worst, abs(trace(f) - left_trace(f)))
        if hom_dim(cat, X, Y):
            a, b = _rand(cat, X, Y, rng), _rand(cat, Y, X, rng)
            worst = max(worst, abs(trace(compose(b, a)) - trace(compose(a, b))))
    for X in words:
        dX = np.prod([cat.qdim[a] for a in X])
        worst = max(worst, abs(trace(Morphism.identity(cat, X)) - dX))
    return worst, {'instances': count}


# ---------------------------------------------------------------------------
# identities of bent diagrams


def _twisted_duals_program(cat, X, S, Sp, Y, mirrored):
    d = DiagramBuilder(cat, (Sp,))
    n = len(X)
    if not mirrored:
        d.cup_word(X, 0, dual=True)
        d.box('j', X + (Sp,), Y, at=n)
        d.box('i', Y, X + (S,), at=n)
        d.cap_word(X, 0, dual=True)
    else:
        d.cup_word(X, 1)
        d.box('l', (Sp,) + X, Y, at=0)
        d.box('k', Y, (S,) + X, at=0)
        d.cap_word(X, 1)
    return d.build()


def _check_twisted_duals(cat, rng, count=20):
    """Partial trace over X of ``i o j`` is ``delta tr(j o i) / d(S)`` times ``id_S``."""
    worst = 0.
    done = 0
    for k in range(count):
        mirrored = bool(k % 2)

        def draw():
            X = _random_word(cat, rng)
            S = _random_label(cat, rng)
            Sp = S if rng.random() < 0.7 else _random_label(cat, rng)
            Y = _random_word(cat, rng, 0, 2)
            return X, S, Sp, Y

        def ok(p):
            X, S, Sp, Y = p
            if mirrored:
                return hom_dim(cat, Y, (S,) + X) and hom_dim(cat, (Sp,) + X, Y)
            return hom_dim(cat, Y, X + (S,)) and hom_dim(cat, X + (Sp,), Y)

        p = _sample(rng, draw, ok)
        if p is None:
            continue
        X, S, Sp, Y = p
        prog = _twisted_duals_program(cat, X, S, Sp, Y, mirrored)
        if mirrored:
            kk, ll = _rand(cat, Y, (S,) + X, rng), _rand(cat, (Sp,) + X, Y, rng)
            lhs = evaluate(cat, prog, {'k': kk, 'l': ll})
            t = trace(compose(ll, kk)) if S == Sp else 0.
        else:
            i, j = _rand(cat, Y, X + (S,), rng), _rand(cat, X + (Sp,), Y, rng)
            lhs = evaluate(cat, prog, {'i': i, 'j': j})
            t = trace(compose(j, i)) if S == Sp else 0.
        rhs = Morphism.identity(cat, (S,)) * (t / cat.qdim[S]) if S == Sp else Morphism.zeros(cat, (Sp,), (S,))
        worst = max(worst, (lhs - rhs).max_abs())
        done += 1
    return worst, {'instances': done}


def _random_basis(cat, S, W, rng):
    """A random basis of ``Hom(S, W)``."""
    std = [Morphism(cat, (S,), W, {S: np.eye(len(trees(cat, W, S)))[:, [k]]}) for k in range(len(trees(cat, W, S)))]
    n = len(std)
    if n == 0:
        return []
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) + 2 * np.eye(n)
    return [sum((A[r, c] * std[r] for r in range(n)), Morphism.zeros(cat, (S,), W)) for c in range(n)]


def _check_dual_decompose(cat, rng, count=20):
    """``sum_{T, b} d(T) bent(b, b*) = d(S) id`` and the pseudo-dual rescaling ``d(S)/d(T)``."""
    worst = 0.
    for k in range(count):
        mirrored = bool(k % 2)
        X = _random_word(cat, rng)
        S = _random_label(cat, rng)
        Xv = cat.dual_word(X)
        n = len(X)
        total = Morphism.zeros(cat, (S,) + X if mirrored else X + (S,), (S,) + X if mirrored else X + (S,))
        for T in range(cat.num_labels):
            W = (T,) + Xv if mirrored else Xv + (T,)
            basis = _random_basis(cat, S, W, rng)
            if not basis:
                continue
            duals = dual_basis(cat, S, W, basis)
            # alpha(b): X S -> T (or S X -> T); beta(b*): T -> X S (or T -> S X)
            if mirrored:
                alpha = [DiagramBuilder(cat, (S,) + X).box('b', (S,), W, 0).cap_word(X, 1, dual=True).build()]
                beta = [DiagramBuilder(cat, (T,)).cup_word(X, 1, dual=True).box('bs', W, (S,), 0).build()]
            else:
                alpha = [DiagramBuilder(cat, X + (S,)).box('b', (S,), W, n).cap_word(X, 0).build()]
                beta = [DiagramBuilder(cat, (T,)).cup_word(X, 0).box('bs', W, (S,), n).build()]
            a_ev = [evaluate(cat, alpha[0], {'b': b}) for b in basis]
            b_ev = [evaluate(cat, beta[0], {'bs': bs}) for bs in duals]
            for p, a in enumerate(a_ev):
                for q, bb in enumerate(b_ev):
                    expect = cat.qdim[S] / cat.qdim[T] if p == q else 0.
                    worst = max(worst, abs(compose(a, bb).scalar() - expect))
            for a, bb in zip(a_ev, b_ev):
                total = total + compose(bb, a) * cat.qdim[T]
        ident = Morphism.identity(cat, total.source) * cat.qdim[S]
        worst = max(worst, (total - ident).max_abs())
    return worst, {'instances': count}


def _killing_ring_program(cat, S, R):
    d = DiagramBuilder(cat, (R,))
    d.cup(S, 0)            # S S* R
    d.cross(1, over=True)  # S R S*
    d.cross(0, over=False)  # R S S*
    d.cap(S, 1)
    return d.build()


def killing_ring_values(cat) -> np.ndarray:
    """``sum_S d(S) loop(S around R)`` for every simple R."""
    out = np.zeros(cat.num_labels, dtype=complex)
    for R in range(cat.num_labels):
        for S in range(cat.num_labels):
            out[R] += cat.qdim[S] * evaluate(cat, _killing_ring_program(cat, S, R)).scalar()
    return out


def _check_killing_ring(cat, rng):
    vals = killing_ring_values(cat)
    expect = np.zeros(cat.num_labels, dtype=complex)
    expect[cat.unit] = cat.global_dim
    return float(np.max(np.abs(vals - expect))), {}


def _double_ring_program(cat, S, R, T):
    d = DiagramBuilder(cat, (R, T))
    d.cup(S, 0)             # S S* R T
    d.cross(1, over=True)   # S R S* T
    d.cross(2, over=True)   # S R T S*
    d.cross(0, over=False)  # R S T S*
    d.cross(1, over=False)  # R T S S*
    d.cap(S, 2)
    return d.build()


def _check_double_ring(cat, rng, count=20):
    """Ring around ``R T`` is ``delta_{R*, T} d(C)/d(R)`` times ``cup_R o cap_R``."""
    worst = 0.
    n = cat.num_labels
    for _ in range(count):
        R = _random_label(cat, rng)
        T = cat.dual[R] if rng.random() < 0.5 else _random_label(cat, rng)
        total = Morphism.zeros(cat, (R, T), (R, T))
        for S in range(n):
            total = total + evaluate(cat, _double_ring_program(cat, S, R, T)) * cat.qdim[S]
        h = _rand(cat, (R, T), (R, T), rng)
        if T == cat.dual[R]:
            rhs = compose(cup(cat, R), cap(cat, R)) * (cat.global_dim / cat.qdim[R])
        else:
            rhs = Morphism.zeros(cat, (R, T), (R, T))
        worst = max(worst, (compose(total, h) - compose(rhs, h)).max_abs())
    return worst, {'instances': count}


def _twisted_s_program(cat, S, I, J, L, I2, J2):
    d = DiagramBuilder(cat, (I, J))
    d.cup(S, 0)                                # S S* I J
    d.cross(1, over=True)                      # S I S* J
    d.cross(2, over=False)                     # S I J S*
    d.box('j', (I, J), L, at=1)                # S L S*
    d.box('k', L, (I2, J2), at=1)              # S I' J' S*
    d.cross(0, over=True)                      # I' S J' S*
    d.cross(1, over=False)                     # I' J' S S*
    d.cap(S, 2)
    return d.build()


def _check_twisted_s(cat, rng, count=20):
    """``sum_S d(S) (double-braided diagram) = delta delta tr(k o j) d(C)/(d(I) d(J)) id``."""
    worst = 0.
    n = cat.num_labels
    done = 0
    for _ in range(count):
        def draw():
            I, J = _random_label(cat, rng), _random_label(cat, rng)
            if rng.random() < 0.6:
                I2, J2 = I, J
            else:
                I2, J2 = _random_label(cat, rng), _random_label(cat, rng)
            return I, J, _random_word(cat, rng), I2, J2

        p = _sample(rng, draw, lambda p: hom_dim(cat, (p[0], p[1]), p[2]) and hom_dim(cat, p[2], (p[3], p[4])))
        if p is None:
            continue
        I, J, L, I2, J2 = p
        j, k = _rand(cat, (I, J), L, rng), _rand(cat, L, (I2, J2), rng)
        total = Morphism.zeros(cat, (I, J), (I2, J2))
        for S in range(n):
            prog = _twisted_s_program(cat, S, I, J, L, I2, J2)
            total = total + evaluate(cat, prog, {'j': j, 'k': k}) * cat.qdim[S]
        if (I, J) == (I2, J2):
            rhs = Morphism.identity(cat, (I, J)) * (trace(compose(k, j)) * cat.global_dim
                                                    / (cat.qdim[I] * cat.qdim[J]))
        else:
            rhs = Morphism.zeros(cat, (I, J), (I2, J2))
        worst = max(worst, (total - rhs).max_abs())
        done += 1
    return worst, {'instances': done}


# ---------------------------------------------------------------------------
# diagram engine


def _check_yang_baxter(cat, rng, count=20):
    worst = 0.
    for _ in range(count):
        w = tuple(_random_label(cat, rng) for _ in range(3))
        for over in (True, False):
            a = DiagramBuilder(cat, w).cross(0, over).cross(1, over).cross(0, over).build()
            b = DiagramBuilder(cat, w).cross(1, over).cross(0, over).cross(1, over).build()
            worst = max(worst, (evaluate(cat, a) - evaluate(cat, b)).max_abs())
    return worst, {'instances': count}


def _check_crossing_naturality(cat, rng, count=20):
    """A box slides through a crossing on either side, for both handedness."""
    worst = 0.
    for _ in range(count):
        X = (_random_label(cat, rng),)
        Y = _random_word(cat, rng)
        Z = (_random_label(cat, rng),)
        if not hom_dim(cat, Y, X):
            Y = X
        f = _rand(cat, Y, X, rng)
        for over in (True, False):
            # box on the left strand: f then cross  vs  cross then f
            a = DiagramBuilder(cat, Y + Z).box('f', Y, X, 0).cross(0, over).build()
            # move Z across the word Y by adjacent crossings, then apply f
            b = DiagramBuilder(cat, Y + Z)
            for pos in range(len(Y) - 1, -1, -1):
                b.cross(pos, over)
            b.box('f', Y, X, 1)
            worst = max(worst, (evaluate(cat, a, {'f': f}) - evaluate(cat, b.build(), {'f': f})).max_abs())
    return worst, {'instances': count}


def _check_evaluator_functoriality(cat, rng, count=50):
    """Evaluating a stack of two diagrams composes their evaluations."""
    worst = 0.
    for _ in range(count):
        d1, b1 = _random_diagram(cat, rng, _random_word(cat, rng, 1, 2), 'f')
        d2, b2 = _random_diagram(cat, rng, d1.boundary_out, 'g')
        lhs = evaluate(cat, stack(d1, d2), {**b1, **b2})
        rhs = compose(evaluate(cat, d2, b2), evaluate(cat, d1, b1))
        worst = max(worst, (lhs - rhs).max_abs())
    return worst, {'instances': count}


def _random_diagram(cat, rng, word, prefix, steps=3):
    d = DiagramBuilder(cat, word)
    bindings = {}
    for s in range(steps):
        w = d.word
        choice = rng.integers(4)
        if choice == 0 and len(w) >= 2:
            d.cross(int(rng.integers(len(w) - 1)), bool(rng.integers(2)))
        elif choice == 1 and len(w) <= 3:
            d.cup(_random_label(cat, rng), int(rng.integers(len(w) + 1)), bool(rng.integers(2)))
        elif choice == 2 and len(w) >= 2:
            pos = [p for p in range(len(w) - 1) if w[p + 1] == cat.dual[w[p]]]
            if pos:
                p = pos[int(rng.integers(len(pos)))]
                d.cap(w[p], p)
        else:
            if not w:
                continue
            p = int(rng.integers(len(w)))
            name = f'{prefix}{s}'
            m = _rand(cat, (w[p],), (w[p],), rng)
            bindings[name] = m
            d.box(name, (w[p],), (w[p],), p)
    return d.build(), bindings


# ---------------------------------------------------------------------------
# tube category


def _check_tube_identity(cat, rng, count=50):
    worst = 0.
    words = all_words(cat, 2)
    for _ in range(count):
        X, Y = words[rng.integers(len(words))], words[rng.integers(len(words))]
        f = TubeMorphism.random(cat, X, Y, rng)
        worst = max(worst, (tube_compose(tube_identity(cat, Y), f) - f).max_abs(),
                    (tube_compose(f, tube_identity(cat, X)) - f).max_abs())
    return worst, {'instances': count}


def _check_tube_associativity(cat, rng, count=50):
    worst = 0.
    words = all_words(cat, 2)
    for _ in range(count):
        W, X, Y, Z = (words[rng.integers(len(words))] for _ in range(4))
        f = TubeMorphism.random(cat, W, X, rng)
        g = TubeMorphism.random(cat, X, Y, rng)
        h = TubeMorphism.random(cat, Y, Z, rng)
        lhs = tube_compose(tube_compose(h, g), f)
        rhs = tube_compose(h, tube_compose(g, f))
        worst = max(worst, (lhs - rhs).max_abs())
    return worst, {'instances': count}


def _check_tube_basis_independence(cat, rng, count=10):
    worst = 0.
    words = all_words(cat, 2)

    def pairs(S, R, T):
        basis = _random_basis(cat, T, (S, R), rng)
        return list(zip(basis, dual_basis(cat, T, (S, R), basis)))

    for _ in range(count):
        X, Y, Z = (words[rng.integers(len(words))] for _ in range(3))
        f = TubeMorphism.random(cat, X, Y, rng)
        g = TubeMorphism.random(cat, Y, Z, rng)
        worst = max(worst, (tube_compose(g, f) - tube_compose(g, f, pairs=pairs)).max_abs())
    return worst, {'instances': count}


def _check_tube_embedding(cat, rng, count=20):
    """Embedding of C is a functor and sends identities to identities."""
    worst = 0.
    words = all_words(cat, 2)
    for _ in range(count):
        X, Y, Z = (words[rng.integers(len(words))] for _ in range(3))
        f, g = _rand(cat, X, Y, rng), _rand(cat, Y, Z, rng)
        lhs = embed_c_morphism(cat, compose(g, f))
        rhs = tube_compose(embed_c_morphism(cat, g), embed_c_morphism(cat, f))
        worst = max(worst, (lhs - rhs).max_abs())
        worst = max(worst, (embed_c_morphism(cat, Morphism.identity(cat, X)) - tube_identity(cat, X)).max_abs())
    return worst, {'instances': count}


def dimension_identity_sides(cat, X, Y) -> tuple[int, int]:
    """Both sides of ``sum_R dim Hom(RX, YR) = sum_{I,J} dim Hom(IJ, Y) dim Hom(X, IJ)``."""
    X, Y = cat.word(X), cat.word(Y)
    left = tube_hom_dim(cat, X, Y)
    right = sum(hom_dim(cat, (I, J), Y) * hom_dim(cat, X, (I, J))
                for I, J in product(range(cat.num_labels), repeat=2))
    return left, right


def _check_tube_dimension(cat, rng):
    """Tube algebra size and the dimension identity of the block decomposition."""
    worst = 0
    words = all_words(cat, 2)
    for X, Y in product(words, repeat=2):
        l, r = dimension_identity_sides(cat, X, Y)
        worst = max(worst, abs(l - r))
    n = cat.num_labels
    ta_dim = sum(tube_hom_dim(cat, (X,), (Y,)) for X, Y in product(range(n), repeat=2))
    N = cat.fusion
    blocks = sum(int(np.sum(N[I, J])) ** 2 for I, J in product(range(n), repeat=2))
    worst = max(worst, abs(ta_dim - tube_algebra_dimension(cat)), abs(ta_dim - blocks))
    return float(worst), {'tube_algebra_dim': ta_dim}


def _check_tube_algebra(cat, rng):
    ta = tube_algebra(cat)
    return max(ta.associativity_residual(), ta.unit_residual()), {'dimension': ta.dimension}


# ---------------------------------------------------------------------------
# representations


def _random_ij_word(cat, rng, need):
    """Random ``(I, J, X)`` with ``Hom(X, I J)`` nonzero."""
    words = all_words(cat, 2)
    return _sample(rng, lambda: (_random_label(cat, rng), _random_label(cat, rng),
                                 words[rng.integers(len(words))]),
                   lambda p: all(hom_dim(cat, w, (p[0], p[1])) for w in need(p)))


def _check_functor(cat, rng, count=20):
    """``F_IJ(id) = id`` and ``F_IJ(g o f) = F_IJ(f) F_IJ(g)``."""
    worst = 0.
    words = all_words(cat, 2)
    n = cat.num_labels
    for I, J in product(range(n), repeat=2):
        for Y in words:
            M = functor_matrix(cat, I, J, tube_identity(cat, Y))
            if M.size:
                worst = max(worst, float(np.max(np.abs(M - np.eye(M.shape[0])))))
    for _ in range(count):
        I, J = _random_label(cat, rng), _random_label(cat, rng)
        X, Y, Z = (words[rng.integers(len(words))] for _ in range(3))
        f = TubeMorphism.random(cat, Z, Y, rng)
        g = TubeMorphism.random(cat, Y, X, rng)
        lhs = functor_matrix(cat, I, J, tube_compose(g, f))
        rhs = functor_matrix(cat, I, J, f) @ functor_matrix(cat, I, J, g)
        if lhs.size:
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        # embedded morphisms act by precomposition
        if hom_dim(cat, Y, (I, J)) and hom_dim(cat, Z, Y):
            h = _rand(cat, Z, Y, rng)
            k = _rand(cat, Y, (I, J), rng)
            worst = max(worst, (f_functor_apply(cat, I, J, embed_c_morphism(cat, h), k) - compose(k, h)).max_abs())
    return worst, {'instances': count}


def _check_naturality(cat, rng, count=20):
    """``lambda(j (x) i) o f = lambda(j (x) F_IJ(f)(i))``."""
    worst = 0.
    done = 0
    words = all_words(cat, 2)
    for _ in range(count):
        p = _random_ij_word(cat, rng, lambda p: [p[2]])
        if p is None:
            continue
        I, J, X = p
        Y = _sample(rng, lambda: words[rng.integers(len(words))], lambda w: hom_dim(cat, (I, J), w))
        Z = words[rng.integers(len(words))]
        f = TubeMorphism.random(cat, Z, X, rng)
        i, j = _rand(cat, X, (I, J), rng), _rand(cat, (I, J), Y, rng)
        lhs = tube_compose(lambda_map(cat, I, J, j, i), f)
        rhs = lambda_map(cat, I, J, j, f_functor_apply(cat, I, J, f, i))
        worst = max(worst, (lhs - rhs).max_abs())
        done += 1
    return worst, {'instances': done}


def _check_opposite(cat, rng):
    """For all ``(I, J)`` and probe words Y: ``mu(k (x) lambda(j (x) i)) = tr(j o k) i``."""
    worst = 0.
    n = cat.num_labels
    cases = 0
    for I, J in product(range(n), repeat=2):
        for Y in all_words(cat, 2):
            if not hom_dim(cat, Y, (I, J)):
                continue
            k, j = _rand(cat, Y, (I, J), rng), _rand(cat, (I, J), Y, rng)
            r = verify_opposite(cat, I, J, Y, k, j)
            worst = max(worst, r.residual, r.scalar_error)
            cases += 1
    return worst, {'cases': cases}


def _check_composition_rule(cat, rng, count=20):
    worst = 0.
    words = all_words(cat, 2)
    n = cat.num_labels
    done = 0
    for _ in range(count):
        def draw():
            X, Y, Z = (words[rng.integers(len(words))] for _ in range(3))
            I, J = _random_label(cat, rng), _random_label(cat, rng)
            if rng.random() < 0.5:
                I2, J2 = I, J
            else:
                I2, J2 = _random_label(cat, rng), _random_label(cat, rng)
            return X, Y, Z, I, J, I2, J2

        def ok(p):
            X, Y, Z, I, J, I2, J2 = p
            return all(hom_dim(cat, a, b) for a, b in [(X, (I, J)), ((I, J), Y), (Y, (I2, J2)), ((I2, J2), Z)])

        p = _sample(rng, draw, ok)
        if p is None:
            continue
        X, Y, Z, I, J, I2, J2 = p
        i, j = _rand(cat, X, (I, J), rng), _rand(cat, (I, J), Y, rng)
        k, l = _rand(cat, Y, (I2, J2), rng), _rand(cat, (I2, J2), Z, rng)
        worst = max(worst, compose_lambdas_check(cat, (I2, J2, l, k), (I, J, j, i)))
        done += 1
    return worst, {'instances': done}


def _decompositions(cat):
    """Block decompositions of all words of length <= 2, computed once per category."""
    return cat.cached(('decompositions', 2), lambda: [block_decompose_end(cat, X) for X in all_words(cat, 2)])


def _decomp_residual(cat, key):
    ds = _decompositions(cat)
    return max(d.residuals[key] for d in ds), {'objects': len(ds)}


def _check_matrix_units(cat, rng):
    return _decomp_residual(cat, 'matrix_units')


def _check_block_orthogonality(cat, rng):
    return _decomp_residual(cat, 'orthogonality')


def _check_completeness(cat, rng):
    res, det = _decomp_residual(cat, 'completeness')
    counts = max(d.residuals['dimension_count'] for d in _decompositions(cat))
    return max(res, counts), det


def _check_primitive_idempotents(cat, rng):
    """``p o p = p`` and the rank profile ``dim Hom(Z, I J)`` on simple probes."""
    worst = 0.
    n = cat.num_labels
    probes = [(Z,) for Z in range(n)]
    for X in all_words(cat, 2):
        for I, J in product(range(n), repeat=2):
            basis, cobasis = trace_dual_bases(cat, X, I, J)
            if not basis:
                continue
            p = primitive_idempotent(cat, I, J, cobasis[0], basis[0])
            worst = max(worst, (tube_compose(p, p) - p).max_abs())
            if len(X) <= 1:
                for Z, r in rank_profile(cat, p, probes).items():
                    worst = max(worst, abs(r - hom_dim(cat, Z, (I, J))))
    return worst, {}


def _check_vacuum_idempotent(cat, rng):
    """``lambda(id (x) id)`` for ``I = J = 1`` has components ``d(R)/d(C)`` (tolerance 1e-10)."""
    u = cat.unit
    i = Morphism(cat, (), (u, u), {u: np.ones((1, 1))})
    j = Morphism(cat, (u, u), (), {u: np.ones((1, 1))})
    p = primitive_idempotent(cat, u, u, i, j)
    worst = 0.
    for R in range(cat.num_labels):
        worst = max(worst, abs(p.component(R).coeffs[0] - cat.qdim[R] / cat.global_dim))
    worst = max(worst, (tube_compose(p, p) - p).max_abs())
    return worst, {'tolerance_override': 1e-10}


# ---------------------------------------------------------------------------
# registry

CHECKS = {
    'pentagon': _check_pentagon,
    'hexagon': _check_hexagon,
    'unit_coherence': _check_unit_coherence,
    'modularity': _check_modularity,
    'simple_pairing': _check_simple_pairing,
    'identity_decomposition': _check_identity_decomposition,
    'trace_pairing': _check_trace_pairing,
    'sphericality': _check_sphericality,
    'twisted_duals': _check_twisted_duals,
    'dual_decompose': _check_dual_decompose,
    'killing_ring': _check_killing_ring,
    'double_ring': _check_double_ring,
    'twisted_s': _check_twisted_s,
    'yang_baxter': _check_yang_baxter,
    'crossing_naturality': _check_crossing_naturality,
    'evaluator_functoriality': _check_evaluator_functoriality,
    'tube_identity': _check_tube_identity,
    'tube_associativity': _check_tube_associativity,
    'tube_basis_independence': _check_tube_basis_independence,
    'tube_embedding': _check_tube_embedding,
    'tube_dimension': _check_tube_dimension,
    'tube_algebra': _check_tube_algebra,
    'functor': _check_functor,
    'naturality': _check_naturality,
    'opposite': _check_opposite,
    'composition_rule': _check_composition_rule,
    'matrix_units': _check_matrix_units,
    'block_orthogonality': _check_block_orthogonality,
    'completeness': _check_completeness,
    'primitive_idempotents': _check_primitive_idempotents,
    'vacuum_idempotent': _check_vacuum_idempotent,
}


def check_names() -> list[str]:
    return list(CHECKS)


def run_check(cat: CategoryData, name: str, seed: int = 0) -> CheckReport:
    """Run one named check with its own generator seeded from ``(seed, name)``."""
    if name not in CHECKS:
        raise KeyError(f'unknown check {name!r}')
    rng = np.random.default_rng([seed, sum(ord(c) * 31 ** k for k, c in enumerate(name)) % 2 ** 32])
    t0 = time.perf_counter()
    try:
        res, details = CHECKS[name](cat, rng)
        res = float(res)
    except (np.linalg.LinAlgError, ValueError, ZeroDivisionError) as err:
        res, details = float('inf'), {'error': f'{type(err).__name__}: {err}'}
    tol = min(details.pop('tolerance_override', cat.tolerance), cat.tolerance)
    return CheckReport(name, cat.name, {'seed': seed}, res, tol, bool(res <= tol),
                       time.perf_counter() - t0, details)


def run_suite(cat: CategoryData, selection=None, seed: int = 0) -> list[CheckReport]:
    """Run the selected checks (all by default) in registry order."""
    names = check_names() if selection is None else list(selection)
    unknown = [s for s in names if s not in CHECKS]
    if unknown:
        raise KeyError(f'unknown checks {unknown}')
    names = [s for s in CHECKS if s in names]
    return [run_check(cat, s, seed) for s in names]


def reports_to_json(reports, meta: dict | None = None, timings: bool = False) -> str:
    doc = {'tool': 'tubecat', 'version': __version__, **(meta or {}),
           'checks': [r.to_dict(timings) for r in reports],
           'passed': all(r.passed for r in reports)}
    return json.dumps(doc, indent=1, sort_keys=False)


def reports_to_text(reports) -> str:
    lines = [f'{"check":<26} {"residual":>11} {"tol":>8} {"ok":>4} {"time/s":>8}']
    for r in reports:
        lines.append(f'{r.name:<26} {r.max_residual:>11.3e} {r.tolerance:>8.0e} '
                     f'{"yes" if r.passed else "NO":>4} {r.wall_time:>8.2f}')
    return '\n'.join(lines)


def reports_to_csv(reports) -> str:
    lines = ['check,category,seed,max_residual,tolerance,passed']
    for r in reports:
        lines.append(f'{r.name},{r.category},{r.params["seed"]},{r.max_residual!r},{r.tolerance!r},{r.passed}')
    return '\n'.join(lines)
