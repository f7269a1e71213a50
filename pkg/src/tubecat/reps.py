"""The representations ``F_IJ`` of the tube category and the block decomposition.

For simples ``I, J`` the functor ``F_IJ(X) = Hom(X, I J)`` is contravariant on
the tube category: a tube morphism ``f: Z -> Y`` acts on ``g: Y -> I J`` by
wrapping the strand ``S`` of ``f_S`` around ``I J``, passing over ``I`` and under
``J``.  The map ``lambda^{IJ}(j (x) i)`` builds a tube morphism ``X -> Y`` out of
``i: X -> I J`` and ``j: I J -> Y``; with trace-dual bases these give matrix
units of ``End_TC(X)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .category_data import CategoryData
from .diagram import DiagramBuilder, evaluate, evaluate_cylinder
from .homspace import Morphism, compose, hom_dim, trace, trace_pairing
from .tube import TubeMorphism, tube_compose, tube_hom_dim, tube_identity

__all__ = [
    'FunctorRep', 'BlockDecomposition', 'functor_program', 'lambda_program', 'f_functor_apply',
    'functor_matrix', 'mu_action', 'lambda_map', 'verify_opposite', 'OppositeResult',
    'primitive_idempotent', 'rank_profile', 'compose_lambdas_check', 'trace_dual_bases',
    'block_decompose_end',
]


def functor_program(cat: CategoryData, I: int, J: int, S: int, Z: tuple, Y: tuple):
    """Diagram of the ``S`` term of ``F_IJ(f)(g)`` for ``f: Z -> Y``, ``g: Y -> I J``.

    From the top: a cup creates ``S* S`` left of ``Z``; the component ``f_S`` acts
    on ``S Z``; ``g`` maps ``Y`` to ``I J``; ``S*`` crosses over ``I`` and under
    ``J``; a cap closes ``S* S``.
    """

    def compute():
        d = DiagramBuilder(cat, Z)
        d.cup(S, 0, dual=True)
        d.box('f', (S,) + Z, Y + (S,), at=1)
        d.box('g', Y, (I, J), at=1)
        d.cross(0, over=True)
        d.cross(1, over=False)
        d.cap(S, 2, dual=True)
        return d.build()

    return cat.cached(('prog_functor', I, J, S, Z, Y), compute)


def lambda_program(cat: CategoryData, I: int, J: int, S: int, X: tuple, Y: tuple):
    """Cylinder diagram of the ``S`` component of ``lambda(j (x) i)``.

    From the top: ``i: X -> I J``; the glued strand ``S`` crosses over ``I`` and
    under ``J``; ``j: I J -> Y``.
    """

    def compute():
        d = DiagramBuilder(cat, (S,) + X, glue=S)
        d.box('i', X, (I, J), at=1)
        d.cross(0, over=True)
        d.cross(1, over=False)
        d.box('j', (I, J), Y, at=0)
        return d.build()

    return cat.cached(('prog_lambda', I, J, S, X, Y), compute)


def _check_ij(cat, I, J):
    return cat.index(I), cat.index(J)


def f_functor_apply(cat: CategoryData, I, J, f: TubeMorphism, g: Morphism) -> Morphism:
    """``F_IJ(f)(g)`` for ``f: Z -> Y`` in the tube category and ``g: Y -> I J``."""
    I, J = _check_ij(cat, I, J)
    if g.source != f.target or g.target != (I, J):
        raise ValueError('g must map the target of f to I J')
    Z, Y = f.source, f.target
    total = Morphism.zeros(cat, Z, (I, J))
    for S, fS in sorted(f.components.items()):
        total = total + evaluate(cat, functor_program(cat, I, J, S, Z, Y), {'f': fS, 'g': g})
    return total


def functor_matrix(cat: CategoryData, I, J, f: TubeMorphism) -> np.ndarray:
    """Matrix of ``F_IJ(f): F_IJ(Y) -> F_IJ(Z)`` on coefficient vectors."""
    I, J = _check_ij(cat, I, J)
    basis = Morphism.basis(cat, f.target, (I, J))
    cols = [f_functor_apply(cat, I, J, f, g).coeffs for g in basis]
    n = hom_dim(cat, f.source, (I, J))
    return np.array(cols).T if cols else np.zeros((n, 0), dtype=complex)


def mu_action(cat: CategoryData, I, J, k: Morphism, t: TubeMorphism) -> Morphism:
    """``mu(k (x) t) = F_IJ(t)(k)`` for ``k: Y -> I J`` and ``t: X -> Y``."""
    return f_functor_apply(cat, I, J, t, k)


def lambda_map(cat: CategoryData, I, J, j: Morphism, i: Morphism) -> TubeMorphism:
    """``lambda(j (x) i)`` in ``Hom_TC(X, Y)`` for ``i: X -> I J`` and ``j: I J -> Y``.

    The ``S`` component is ``d(I) d(J) d(S) / d(C)`` times the evaluation of
    :func:`lambda_program`.
    """
    I, J = _check_ij(cat, I, J)
    if i.target != (I, J) or j.source != (I, J):
        raise ValueError('i must map into I J and j out of I J')
    X, Y = i.source, j.target
    pref = cat.qdim[I] * cat.qdim[J] / cat.global_dim
    comps = {}
    for S in range(cat.num_labels):
        if not hom_dim(cat, (S,) + X, Y + (S,)):
            continue
        m = evaluate_cylinder(cat, lambda_program(cat, I, J, S, X, Y), {'i': i, 'j': j})
        comps[S] = m * (pref * cat.qdim[S])
    return TubeMorphism(cat, X, Y, comps)


@dataclass
class OppositeResult:
    """Best-fit scalar ``c`` with ``mu(k (x) lambda(j (x) i)) = c i`` for all probes."""
    scalar: complex
    expected: complex
    residual: float

    @property
    def scalar_error(self) -> float:
        return abs(self.scalar - self.expected)


def verify_opposite(cat: CategoryData, I, J, Y, k: Morphism, j: Morphism, probes=None) -> OppositeResult:
    """Test that lambda and mu are opposite under the trace pairing.

    For every probe word ``X`` and basis vector ``i`` of ``Hom(X, I J)`` computes
    ``mu(k (x) lambda(j (x) i))`` and fits a single scalar ``c`` to all of them.
    The expected value is ``tr(j o k)``.
    """
    from .homspace import all_words
    I, J = _check_ij(cat, I, J)
    Y = cat.word(Y)
    probes = all_words(cat, 2) if probes is None else [cat.word(p) for p in probes]
    images, inputs = [], []
    for X in probes:
        for i in Morphism.basis(cat, X, (I, J)):
            images.append(mu_action(cat, I, J, k, lambda_map(cat, I, J, j, i)).coeffs)
            inputs.append(i.coeffs)
    expected = trace_pairing(k, j)
    if not inputs:
        return OppositeResult(expected, expected, 0.)
    a = np.concatenate(inputs)
    b = np.concatenate(images)
    c = complex(np.vdot(a, b) / np.vdot(a, a))
    return OppositeResult(c, expected, float(np.max(np.abs(b - c * a))))


def primitive_idempotent(cat: CategoryData, I, J, i: Morphism, j: Morphism) -> TubeMorphism:
    """``lambda(j (x) i)`` for ``i: X -> I J``, ``j: I J -> X`` with ``tr(i o j) = 1``.

    Raises
    ------
    ValueError
        If the normalization ``tr(i o j) = 1`` is violated.
    """
    t = trace(compose(i, j))
    if abs(t - 1) > cat.tolerance:
        raise ValueError(f'primitive idempotent needs tr(i o j) = 1, got {t:.6g}')
    return lambda_map(cat, I, J, j, i)


def rank_profile(cat: CategoryData, p: TubeMorphism, probes) -> dict:
    """``Z -> dim span{p o h : h in Hom_TC(Z, X)}`` for each probe word Z."""
    out = {}
    for Z in probes:
        Z = cat.word(Z)
        vecs = [tube_compose(p, h).coeffs for h in TubeMorphism.basis(cat, Z, p.source)]
        out[Z] = int(np.linalg.matrix_rank(np.array(vecs), tol=1e-6)) if vecs else 0
    return out


def compose_lambdas_check(cat: CategoryData, second: tuple, first: tuple) -> float:
    """Residual of ``lambda(l (x) k) o lambda(j (x) i) = delta delta tr(k o j) lambda(l (x) i)``.

    Parameters
    ----------
    second : tuple
        ``(I', J', l, k)`` with ``k: Y -> I' J'`` and ``l: I' J' -> Z``.
    first : tuple
        ``(I, J, j, i)`` with ``i: X -> I J`` and ``j: I J -> Y``.
    """
    I2, J2, l, k = second
    I, J, j, i = first
    I2, J2 = _check_ij(cat, I2, J2)
    I, J = _check_ij(cat, I, J)
    lhs = tube_compose(lambda_map(cat, I2, J2, l, k), lambda_map(cat, I, J, j, i))
    if (I, J) == (I2, J2):
        rhs = lambda_map(cat, I, J, l, i) * trace(compose(k, j))
    else:
        rhs = TubeMorphism.zeros(cat, i.source, l.target)
    return (lhs - rhs).max_abs()


def trace_dual_bases(cat: CategoryData, X, I: int, J: int):
    """Bases ``b_p`` of ``Hom(I J, X)`` and ``c_q`` of ``Hom(X, I J)`` with ``tr(c_q o b_p) = delta``.

    ``c_q`` are the standard tree basis vectors; ``b_p`` solve the trace pairing.
    """
    X = cat.word(X)
    cobasis = Morphism.basis(cat, X, (I, J))
    std = Morphism.basis(cat, (I, J), X)
    if not cobasis:
        return [], []
    G = np.array([[trace(compose(c, e)) for e in std] for c in cobasis])
    C = np.linalg.inv(G)
    basis = [sum((C[k, p] * std[k] for k in range(len(std))), Morphism.zeros(cat, (I, J), X))
             for p in range(len(std))]
    return basis, cobasis


@dataclass
class FunctorRep:
    """``F_IJ`` restricted to a list of objects, with trace-dual bases cached."""
    cat: CategoryData
    I: int
    J: int
    bases: dict = field(default_factory=dict)

    def dim(self, X) -> int:
        return hom_dim(self.cat, self.cat.word(X), (self.I, self.J))

    def dual_pair(self, X):
        X = self.cat.word(X)
        if X not in self.bases:
            self.bases[X] = trace_dual_bases(self.cat, X, self.I, self.J)
        return self.bases[X]


@dataclass
class BlockDecomposition:
    """Matrix units of ``End_TC(X)`` grouped by ``(I, J)``.

    ``units[(I, J)][p][q] = lambda(b_p (x) c_q)``; within a block
    ``e_pq o e_rs = delta_qr e_ps``.
    """
    cat: CategoryData
    X: tuple
    units: dict
    residuals: dict

    @property
    def block_sizes(self) -> dict:
        return {ij: len(u) for ij, u in self.units.items()}

    def idempotent(self, I, J) -> TubeMorphism:
        u = self.units[(I, J)]
        total = u[0][0]
        for p in range(1, len(u)):
            total = total + u[p][p]
        return total

    def passed(self) -> bool:
        tol = self.cat.tolerance
        return all(v <= tol for k, v in self.residuals.items() if k != 'dimension_count') \
            and self.residuals['dimension_count'] == 0

    def to_dict(self) -> dict:
        L = self.cat.labels
        blocks = []
        for (I, J), u in self.units.items():
            p = self.idempotent(I, J)
            blocks.append({
                'I': L[I], 'J': L[J], 'size': len(u),
                'idempotent': {L[R]: [[float(v.real), float(v.imag)] for v in m.coeffs]
                               for R, m in sorted(p.components.items())},
            })
        return {'object': [L[a] for a in self.X], 'blocks': blocks,
                'residuals': {k: float(v) for k, v in self.residuals.items()}}


def block_decompose_end(cat: CategoryData, X) -> BlockDecomposition:
    """Matrix-unit decomposition of ``End_TC(X)`` with its certifying residuals.

    Residuals: ``matrix_units`` (``e_pq e_rs = delta_qr e_ps`` within blocks),
    ``orthogonality`` (products across blocks vanish), ``completeness``
    (``sum e_pp = id``) and ``dimension_count`` (``|sum n_IJ^2 - dim End_TC(X)|``).
    """
    X = cat.word(X)
    n = cat.num_labels
    units = {}
    for I, J in product(range(n), repeat=2):
        basis, cobasis = trace_dual_bases(cat, X, I, J)
        if not basis:
            continue
        units[(I, J)] = [[lambda_map(cat, I, J, bp, cq) for cq in cobasis] for bp in basis]
    res = {'matrix_units': 0., 'orthogonality': 0., 'completeness': 0., 'dimension_count': 0.}
    flat = [(ij, p, q, e) for ij, u in units.items() for p, row in enumerate(u) for q, e in enumerate(row)]
    for (ij, p, q, e) in flat:
        for (ij2, r, s, e2) in flat:
            prod = tube_compose(e, e2)  # e_pq o e_rs
            if ij == ij2:
                target = units[ij][p][s] if q == r else None
                diff = prod if target is None else prod - target
                res['matrix_units'] = max(res['matrix_units'], diff.max_abs())
            else:
                res['orthogonality'] = max(res['orthogonality'], prod.max_abs())
    total = TubeMorphism.zeros(cat, X, X)
    for u in units.values():
        for p in range(len(u)):
            total = total + u[p][p]
    res['completeness'] = (total - tube_identity(cat, X)).max_abs()
    res['dimension_count'] = float(abs(sum(len(u) ** 2 for u in units.values()) - tube_hom_dim(cat, X, X)))
    return BlockDecomposition(cat, X, units, res)
