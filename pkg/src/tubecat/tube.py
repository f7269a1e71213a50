"""The tube category and the tube algebra.

A tube morphism ``f: X -> Y`` is a family of components ``f_R: R X -> Y R``, one
for every simple ``R``; it is a diagram on a cylinder whose back is crossed by a
single simple strand ``R``.  The unit component carries an explicit unit strand,
i.e. it lives in ``Hom((1,) + X, Y + (1,))``, which has the same coefficient
matrices as ``Hom(X, Y)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

import numpy as np

from .category_data import CategoryData
from .diagram import DiagramBuilder, evaluate_cylinder
from .homspace import Morphism, dual_basis, hom_dim, vertex

__all__ = [
    'TubeMorphism', 'TubeAlgebra', 'tube_hom_dim', 'tube_compose', 'tube_identity',
    'embed_c_morphism', 'tube_algebra', 'tube_algebra_dimension', 'compose_program',
]


class TubeMorphism:
    """An element of ``Hom_TC(source, target) = (+)_R Hom(R source, target R)``.

    Components are stored sparsely: absent labels are zero.
    """

    __slots__ = ('cat', 'source', 'target', 'components')

    def __init__(self, cat: CategoryData, source, target, components: dict | None = None):
        self.cat = cat
        self.source = cat.word(source) if isinstance(source, str) else tuple(source)
        self.target = cat.word(target) if isinstance(target, str) else tuple(target)
        self.components = {}
        for R, m in (components or {}).items():
            if m.source != (R,) + self.source or m.target != self.target + (R,):
                raise ValueError(f'component {R} has the wrong boundary words')
            self.components[R] = m

    def component(self, R: int) -> Morphism:
        m = self.components.get(R)
        if m is None:
            m = Morphism.zeros(self.cat, (R,) + self.source, self.target + (R,))
        return m

    @classmethod
    def zeros(cls, cat, source, target) -> TubeMorphism:
        return cls(cat, source, target)

    @classmethod
    def from_coeffs(cls, cat, source, target, coeffs) -> TubeMorphism:
        source, target = cat.word(source), cat.word(target)
        coeffs = np.asarray(coeffs, dtype=complex).ravel()
        comps = {}
        pos = 0
        for R in range(cat.num_labels):
            n = hom_dim(cat, (R,) + source, target + (R,))
            if n and np.any(coeffs[pos:pos + n]):
                comps[R] = Morphism.from_coeffs(cat, (R,) + source, target + (R,), coeffs[pos:pos + n])
            pos += n
        if pos != coeffs.size:
            raise ValueError(f'expected {pos} coefficients, got {coeffs.size}')
        return cls(cat, source, target, comps)

    @classmethod
    def random(cls, cat, source, target, rng: np.random.Generator) -> TubeMorphism:
        n = tube_hom_dim(cat, source, target)
        return cls.from_coeffs(cat, source, target, rng.normal(size=n) + 1j * rng.normal(size=n))

    @classmethod
    def basis(cls, cat, source, target) -> list[TubeMorphism]:
        n = tube_hom_dim(cat, source, target)
        return [cls.from_coeffs(cat, source, target, np.eye(n)[k]) for k in range(n)]

    @property
    def coeffs(self) -> np.ndarray:
        parts = [self.component(R).coeffs for R in range(self.cat.num_labels)]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)

    def max_abs(self) -> float:
        return max((m.max_abs() for m in self.components.values()), default=0.)

    def allclose(self, other: TubeMorphism, tol: float | None = None) -> bool:
        tol = self.cat.tolerance if tol is None else tol
        return (self - other).max_abs() <= tol

    def _combine(self, other, op):
        if not isinstance(other, TubeMorphism):
            return NotImplemented
        if other.source != self.source or other.target != self.target:
            raise ValueError('tube morphisms have different source or target')
        comps = {}
        for R in set(self.components) | set(other.components):
            comps[R] = op(self.component(R), other.component(R))
        return TubeMorphism(self.cat, self.source, self.target, comps)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, s):
        if isinstance(s, TubeMorphism):
            return NotImplemented
        return TubeMorphism(self.cat, self.source, self.target, {R: m * s for R, m in self.components.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __matmul__(self, other):
        return tube_compose(self, other)

    def __repr__(self):
        name = self.cat.word_name
        return (f'<TubeMorphism [{name(self.source)}] -> [{name(self.target)}], '
                f'components {sorted(self.cat.labels[R] for R in self.components)}>')

    def to_dict(self) -> dict:
        return {'source': [self.cat.labels[a] for a in self.source],
                'target': [self.cat.labels[a] for a in self.target],
                'components': {self.cat.labels[R]: [[float(v.real), float(v.imag)] for v in m.coeffs]
                               for R, m in sorted(self.components.items())}}


def tube_hom_dim(cat: CategoryData, X, Y) -> int:
    """``sum_R dim Hom(R X, Y R)``."""
    X, Y = cat.word(X), cat.word(Y)
    return sum(hom_dim(cat, (R,) + X, Y + (R,)) for R in range(cat.num_labels))


def compose_program(cat: CategoryData, S: int, R: int, T: int, X: tuple, Y: tuple, Z: tuple):
    """Cylinder diagram for the ``(S, R) -> T`` term of the composite of tubes.

    Read from the top: the glued strand ``T`` splits into ``S R`` (box ``b``),
    ``f_R`` acts on ``R X``, ``g_S`` on ``S Y``, and ``S R`` fuse back into ``T``
    (box ``bstar``).
    """

    def compute():
        d = DiagramBuilder(cat, (T,) + X, glue=T)
        d.box('b', (T,), (S, R), at=0)
        d.box('f', (R,) + X, Y + (R,), at=1)
        d.box('g', (S,) + Y, Z + (S,), at=0)
        d.box('bstar', (S, R), (T,), at=len(Z))
        return d.build()

    return cat.cached(('prog_compose', S, R, T, X, Y, Z), compute)


def _vertex_pairs(cat, S: int, R: int, T: int):
    """Basis of ``Hom(T, S R)`` with its dual basis."""

    def compute():
        basis = [vertex(cat, S, R, T, nu) for nu in range(cat.fusion[S, R, T])]
        return list(zip(basis, dual_basis(cat, T, (S, R), basis)))

    return cat.cached(('vpairs', S, R, T), compute)


def tube_compose(g: TubeMorphism, f: TubeMorphism, pairs=None) -> TubeMorphism:
    """Stack the cylinder of `g` below that of `f`.

    ``(g o f)_T = sum_{S, R, b} (id_Z (x) b*) (g_S (x) id_R) (id_S (x) f_R) (b (x) id_X)``
    with ``b`` over a basis of ``Hom(T, S R)``.  `pairs` may supply another
    ``(S, R, T) -> [(b, b*)]`` choice of bases.
    """
    if f.target != g.source:
        raise ValueError('cannot compose tube morphisms: object mismatch')
    cat = f.cat
    X, Y, Z = f.source, f.target, g.target
    comps = {}
    n = cat.num_labels
    for T in range(n):
        total = None
        for S, R in product(range(n), repeat=2):
            if not cat.fusion[S, R, T] or S not in g.components or R not in f.components:
                continue
            prog = compose_program(cat, S, R, T, X, Y, Z)
            vp = _vertex_pairs(cat, S, R, T) if pairs is None else pairs(S, R, T)
            for b, bs in vp:
                m = evaluate_cylinder(cat, prog, {'b': b, 'bstar': bs, 'f': f.components[R],
                                                  'g': g.components[S]})
                total = m if total is None else total + m
        if total is not None:
            comps[T] = total
    return TubeMorphism(cat, X, Z, comps)


def _unit_strand(cat, f: Morphism) -> Morphism:
    """View ``f: X -> Y`` as an element of ``Hom(1 X, Y 1)``; the tree matrices coincide."""
    u = cat.unit
    return Morphism(cat, (u,) + f.source, f.target + (u,), f.blocks)


def tube_identity(cat: CategoryData, X) -> TubeMorphism:
    """Identity of X in the tube category: only the unit component, equal to ``id_X``."""
    X = cat.word(X)
    return TubeMorphism(cat, X, X, {cat.unit: _unit_strand(cat, Morphism.identity(cat, X))})


def embed_c_morphism(cat: CategoryData, f: Morphism) -> TubeMorphism:
    """The tube morphism whose unit component is `f` and whose other components vanish."""
    return TubeMorphism(cat, f.source, f.target, {cat.unit: _unit_strand(cat, f)})


def tube_algebra_dimension(cat: CategoryData) -> int:
    """``sum_{R, X, Y} dim Hom(R X, Y R)`` counted from the fusion table alone."""
    N = cat.fusion
    n = cat.num_labels
    total = 0
    for R, X, Y in product(range(n), repeat=3):
        total += int(N[R, X] @ N[Y, R])
    return total


@dataclass
class TubeAlgebra:
    """The tube algebra ``End_TC(+_S S)`` in its canonical basis.

    ``basis[k] = (Y, X, R, i)`` is the ``i``-th tree basis element of
    ``Hom(R X, Y R)`` seen as a tube morphism ``X -> Y``; the product is
    ``e_i e_j = sum_k structure[i, j, k] e_k`` with ``e_i e_j = tube_compose(e_i, e_j)``.
    """
    cat: CategoryData
    basis: list
    structure: np.ndarray
    unit: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def multiply(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum('i,j,ijk->k', u, v, self.structure)

    def associativity_residual(self) -> float:
        c = self.structure
        lhs = np.einsum('ijm,mkl->ijkl', c, c)
        rhs = np.einsum('jkm,iml->ijkl', c, c)
        return float(np.max(np.abs(lhs - rhs))) if c.size else 0.

    def unit_residual(self) -> float:
        n = self.dimension
        eye = np.eye(n)
        left = np.einsum('i,ijk->jk', self.unit, self.structure)
        right = np.einsum('j,ijk->ik', self.unit, self.structure)
        return float(max(np.max(np.abs(left - eye)), np.max(np.abs(right - eye)))) if n else 0.

    def to_dict(self) -> dict:
        L = self.cat.labels
        entries = []
        for i, j, k in zip(*np.nonzero(np.abs(self.structure) > self.cat.tolerance)):
            v = self.structure[i, j, k]
            entries.append([int(i), int(j), int(k), [float(v.real), float(v.imag)]])
        return {
            'category': self.cat.name,
            'dimension': self.dimension,
            'basis_order': 'Y,X,R,tree',
            'basis': [{'Y': L[Y], 'X': L[X], 'R': L[R], 'index': int(i)} for Y, X, R, i in self.basis],
            'unit': [[float(v.real), float(v.imag)] for v in self.unit],
            'structure_constants': entries,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def tube_algebra(cat: CategoryData) -> TubeAlgebra:
    """Structure constants of the tube algebra from :func:`tube_compose`."""
    n = cat.num_labels
    basis, elems, offsets = [], [], {}
    for Y, X, R in product(range(n), repeat=3):
        dim = hom_dim(cat, (R, X), (Y, R))
        offsets[(Y, X, R)] = len(basis)
        for i in range(dim):
            coeffs = np.zeros(dim)
            coeffs[i] = 1.
            m = Morphism.from_coeffs(cat, (R, X), (Y, R), coeffs)
            basis.append((Y, X, R, i))
            elems.append(TubeMorphism(cat, (X,), (Y,), {R: m}))
    dim = len(basis)
    c = np.zeros((dim, dim, dim), dtype=complex)
    for i, ei in enumerate(elems):
        for j, ej in enumerate(elems):
            if ej.target != ei.source:
                continue
            prod = tube_compose(ei, ej)
            Y, X = prod.target[0], prod.source[0]
            for R, m in prod.components.items():
                o = offsets[(Y, X, R)]
                c[i, j, o:o + m.dim] = m.coeffs
    unit = np.zeros(dim, dtype=complex)
    for X in range(n):
        o = offsets[(X, X, cat.unit)]
        unit[o] = 1.
    return TubeAlgebra(cat, basis, c, unit)
