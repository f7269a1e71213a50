"""Hom spaces over fusion-tree bases.

An object is a word of simple labels (a tuple of label ids, ``()`` is the unit).
A splitting tree of a word ``(a_1, ..., a_n)`` with total charge ``t`` is stored
as the tuple of steps ``((x_1, m_1), ..., (x_n, m_n))`` of the left associated
tree: ``x_0`` is the unit, ``x_k`` is a fusion channel of ``x_{k-1} a_k`` with
vertex index ``m_k`` and ``x_n = t``.  Trees are ordered lexicographically by
their steps, so trees sharing a prefix are contiguous.

A morphism ``f: A -> B`` is determined by one matrix per total charge ``c``::

    f = sum_c sum_{beta, alpha} f_c[beta, alpha] split_beta o fuse_alpha

where ``split_beta: c -> B`` and ``fuse_alpha: A -> c`` are dual bases, i.e.
``fuse_alpha o split_alpha' = delta id_c``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .category_data import CategoryData

__all__ = [
    'Morphism', 'TreeBasis', 'trees', 'hom_dim', 'tree_basis', 'compose', 'tensor',
    'identity', 'braiding', 'cup', 'cap', 'cup_word', 'cap_word', 'vertex', 'covertex',
    'f_move', 'r_move', 'simple_pairing', 'dual_basis', 'decompose_identity', 'trace',
    'left_trace', 'trace_pairing', 'trace_weights', 'hom_basis', 'random_morphism', 'all_words',
]


# ---------------------------------------------------------------------------
# fusion trees


def chains(cat: CategoryData, start: int, word: tuple) -> dict:
    """All left associated fusion paths from `start` through `word`, keyed by end charge."""

    def compute():
        N = cat.fusion
        cur = {start: [()]}
        for a in word:
            nxt = defaultdict(list)
            for x, paths in cur.items():
                for y in range(cat.num_labels):
                    for mu in range(N[x, a, y]):
                        step = ((y, mu),)
                        nxt[y].extend(p + step for p in paths)
            cur = nxt
        return {y: sorted(p) for y, p in cur.items() if p}

    return cat.cached(('chains', start, word), compute)


def trees(cat: CategoryData, word: tuple, total: int) -> list:
    """Splitting trees of `word` with total charge `total`, in canonical order."""
    return chains(cat, cat.unit, tuple(word)).get(total, [])


def _tree_index(cat: CategoryData, word: tuple, total: int) -> dict:
    return cat.cached(('tidx', word, total), lambda: {t: i for i, t in enumerate(trees(cat, word, total))})


def _ntrees(cat, word, total) -> int:
    return len(trees(cat, word, total))


def charges(cat: CategoryData, word: tuple) -> list[int]:
    return sorted(chains(cat, cat.unit, tuple(word)))


def _block_charges(cat, source, target) -> list[int]:
    src = chains(cat, cat.unit, source)
    tgt = chains(cat, cat.unit, target)
    return [c for c in range(cat.num_labels) if c in src and c in tgt]


def hom_dim(cat: CategoryData, A, B) -> int:
    """``dim Hom(A, B) = sum_c n(A, c) n(B, c)`` from the fusion table."""
    A, B = cat.word(A), cat.word(B)
    return sum(_ntrees(cat, A, c) * _ntrees(cat, B, c) for c in range(cat.num_labels))


@dataclass(frozen=True)
class TreeBasis:
    """Standard basis of ``Hom(source, target)``.

    ``vectors[k] = (c, beta, alpha)`` stands for ``split_beta o fuse_alpha`` with
    ``beta`` a tree of `target` and ``alpha`` a tree of `source`, both of total `c`.
    """
    source: tuple
    target: tuple
    vectors: list

    def __len__(self):
        return len(self.vectors)


def tree_basis(cat: CategoryData, A, B) -> TreeBasis:
    A, B = cat.word(A), cat.word(B)
    vecs = [(c, beta, alpha) for c in _block_charges(cat, A, B)
            for beta in trees(cat, B, c) for alpha in trees(cat, A, c)]
    return TreeBasis(A, B, vecs)


def all_words(cat: CategoryData, max_len: int, min_len: int = 0) -> list[tuple]:
    """All words of length ``min_len..max_len`` in lexicographic order per length."""
    out = [()] if min_len == 0 else []
    layer = [()]
    for length in range(1, max_len + 1):
        layer = [w + (a,) for w in layer for a in range(cat.num_labels)]
        if length >= min_len:
            out.extend(layer)
    return out


# ---------------------------------------------------------------------------
# morphisms


def _w(cat, word) -> tuple:
    return cat.word(word) if isinstance(word, str) else tuple(word)


class Morphism:
    """A morphism ``source -> target`` stored as one matrix per total charge.

    Parameters
    ----------
    cat : CategoryData
    source, target : tuple of int
    blocks : dict, optional
        ``c -> array`` of shape ``(n(target, c), n(source, c))``; missing charges are zero.
    """

    __slots__ = ('cat', 'source', 'target', 'blocks')
    __array_priority__ = 100

    def __init__(self, cat: CategoryData, source, target, blocks: dict | None = None):
        self.cat = cat
        self.source = _w(cat, source)
        self.target = _w(cat, target)
        blocks = {} if blocks is None else blocks
        full = {}
        for c in _block_charges(cat, self.source, self.target):
            shape = (_ntrees(cat, self.target, c), _ntrees(cat, self.source, c))
            b = blocks.get(c)
            if b is None:
                full[c] = np.zeros(shape, dtype=complex)
            else:
                b = np.asarray(b, dtype=complex)
                if b.shape != shape:
                    raise ValueError(f'block {c} has shape {b.shape}, expected {shape}')
                full[c] = b
        for c, b in blocks.items():
            if c not in full and np.any(b):
                raise ValueError(f'charge {c} does not occur in both source and target')
        self.blocks = full

    # constructors

    @classmethod
    def zeros(cls, cat, source, target) -> Morphism:
        return cls(cat, source, target)

    @classmethod
    def identity(cls, cat, word) -> Morphism:
        word = _w(cat, word)
        return cls(cat, word, word, {c: np.eye(_ntrees(cat, word, c), dtype=complex)
                                     for c in charges(cat, word)})

    @classmethod
    def from_coeffs(cls, cat, source, target, coeffs) -> Morphism:
        coeffs = np.asarray(coeffs, dtype=complex).ravel()
        source, target = _w(cat, source), _w(cat, target)
        blocks = {}
        pos = 0
        for c in _block_charges(cat, source, target):
            shape = (_ntrees(cat, target, c), _ntrees(cat, source, c))
            size = shape[0] * shape[1]
            blocks[c] = coeffs[pos:pos + size].reshape(shape)
            pos += size
        if pos != coeffs.size:
            raise ValueError(f'expected {pos} coefficients, got {coeffs.size}')
        return cls(cat, source, target, blocks)

    @classmethod
    def basis(cls, cat, source, target) -> list[Morphism]:
        n = hom_dim(cat, source, target)
        return [cls.from_coeffs(cat, source, target, np.eye(n)[k]) for k in range(n)]

    @classmethod
    def random(cls, cat, source, target, rng: np.random.Generator) -> Morphism:
        n = hom_dim(cat, source, target)
        return cls.from_coeffs(cat, source, target, rng.normal(size=n) + 1j * rng.normal(size=n))

    # data access

    @property
    def coeffs(self) -> np.ndarray:
        """Coefficient vector in the :func:`tree_basis` ordering."""
        if not self.blocks:
            return np.zeros(0, dtype=complex)
        return np.concatenate([self.blocks[c].ravel() for c in sorted(self.blocks)])

    @property
    def dim(self) -> int:
        return sum(b.size for b in self.blocks.values())

    def scalar(self) -> complex:
        """The scalar ``s`` with ``self = s id`` for an endomorphism of a simple or the unit."""
        if self.source != self.target or len(self.source) > 1:
            raise ValueError('scalar() needs an endomorphism of a simple object or the unit')
        (b,) = self.blocks.values()
        return complex(b[0, 0])

    def max_abs(self) -> float:
        return max((float(np.max(np.abs(b))) for b in self.blocks.values() if b.size), default=0.)

    def allclose(self, other: Morphism, tol: float | None = None) -> bool:
        tol = self.cat.tolerance if tol is None else tol
        return (self - other).max_abs() <= tol

    def _check_same(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        if other.source != self.source or other.target != self.target:
            raise ValueError('morphisms have different source or target')

    def __add__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return Morphism(self.cat, self.source, self.target,
                        {c: b + other.blocks[c] for c, b in self.blocks.items()})

    def __sub__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return Morphism(self.cat, self.source, self.target,
                        {c: b - other.blocks[c] for c, b in self.blocks.items()})

    def __neg__(self):
        return self * -1

    def __mul__(self, s):
        if isinstance(s, Morphism):
            return NotImplemented
        return Morphism(self.cat, self.source, self.target, {c: b * s for c, b in self.blocks.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / s)

    def __matmul__(self, other):
        """``g @ f`` is the composite ``g o f`` (first f, then g)."""
        return compose(self, other)

    def __repr__(self):
        name = self.cat.word_name
        return f'<Morphism [{name(self.source)}] -> [{name(self.target)}], dim {self.dim}>'

    def to_dict(self) -> dict:
        return {'source': [self.cat.labels[a] for a in self.source],
                'target': [self.cat.labels[a] for a in self.target],
                'coeffs': [[float(v.real), float(v.imag)] for v in self.coeffs]}

    @classmethod
    def from_dict(cls, cat, doc) -> Morphism:
        coeffs = [complex(re, im) for re, im in doc['coeffs']]
        return cls.from_coeffs(cat, cat.word(doc['source']), cat.word(doc['target']), coeffs)


def identity(cat, word) -> Morphism:
    return Morphism.identity(cat, cat.word(word))


def random_morphism(cat, source, target, rng) -> Morphism:
    return Morphism.random(cat, cat.word(source), cat.word(target), rng)


def hom_basis(cat, source, target) -> list[Morphism]:
    return Morphism.basis(cat, cat.word(source), cat.word(target))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g o f``: first `f`, then `g`."""
    if f.target != g.source:
        raise ValueError(f'cannot compose: target {f.target} of f differs from source {g.source} of g')
    blocks = {}
    for c, fb in f.blocks.items():
        gb = g.blocks.get(c)
        if gb is not None:
            blocks[c] = gb @ fb
    return Morphism(f.cat, f.source, g.target, blocks)


# ---------------------------------------------------------------------------
# tensor products


def _prefix_offsets(cat, A: tuple, C: tuple, t: int) -> dict:
    """Offset of the first tree of ``A C`` (total t) whose restriction to A is ``alpha``."""

    def compute():
        out = {}
        pos = 0
        for alpha in sorted(a for ch in chains(cat, cat.unit, A).values() for a in ch):
            a = alpha[-1][0] if alpha else cat.unit
            out[alpha] = pos
            pos += len(chains(cat, a, C).get(t, []))
        return out

    return cat.cached(('offs', A, C, t), compute)


def _split_basis(cat, a: int, C: tuple, t: int) -> list:
    """Labels ``(c, gamma, mu)`` of the basis ``(id_a (x) split_gamma) o split^{ac}_{t,mu}``."""
    out = []
    for c in range(cat.num_labels):
        m = cat.fusion[a, c, t]
        if m:
            out.extend((c, gamma, mu) for gamma in trees(cat, C, c) for mu in range(m))
    return out


def _conversion(cat, a: int, C: tuple, t: int):
    """Express the split basis of ``a (x) C -> t`` in left associated chains.

    Returns ``(W, W_inv, cols)`` with ``split_basis[j] = sum_k W[k, j] chain_k``,
    the chains being ``chains(cat, a, C)[t]``.
    """

    def compute():
        rows = chains(cat, a, C).get(t, [])
        cols = _split_basis(cat, a, C, t)
        W = np.zeros((len(rows), len(cols)), dtype=complex)
        if len(C) <= 1:
            if len(C) == 0:
                W[:] = np.eye(len(rows))
            else:
                # single strand: chains and split labels are both indexed by mu
                W[:] = np.eye(len(rows))
        else:
            row_idx = {r: i for i, r in enumerate(rows)}
            Cp, q = C[:-1], C[-1]
            for j, (c, gamma, mu) in enumerate(cols):
                gp, (c2, nu) = gamma[:-1], gamma[-1]
                cp = gp[-1][0]
                blk = cat.F(a, cp, q, t)
                jcol = blk.col_index[(c, nu, mu)]
                for (x, rho, sigma), irow in blk.row_index.items():
                    coeff = blk.inverse[jcol, irow]
                    if coeff == 0:
                        continue
                    Wsub, _, sub_cols = _conversion(cat, a, Cp, x)
                    jj = _split_index(cat, a, Cp, x)[(cp, gp, rho)]
                    sub_rows = chains(cat, a, Cp)[x]
                    step = ((t, sigma),)
                    for kk, k in enumerate(sub_rows):
                        v = Wsub[kk, jj]
                        if v != 0:
                            W[row_idx[k + step], j] += coeff * v
        Winv = np.linalg.inv(W) if W.size else W.T.copy()
        return W, Winv, cols

    return cat.cached(('conv', a, C, t), compute)


def _split_index(cat, a, C, t) -> dict:
    return cat.cached(('sidx', a, C, t),
                      lambda: {lab: j for j, lab in enumerate(_conversion(cat, a, C, t)[2])})


def _split_slices(cat, a, C, t) -> dict:
    """Row ranges ``c -> (start, stop)`` of the split basis grouped by middle charge c."""

    def compute():
        out = {}
        for j, (c, _, _) in enumerate(_conversion(cat, a, C, t)[2]):
            s, _ = out.get(c, (j, j))
            out[c] = (s, j + 1)
        return out

    return cat.cached(('sslc', a, C, t), compute)


def _right_id(f: Morphism, D: tuple) -> Morphism:
    """``f (x) id_D``."""
    cat = f.cat
    A, B = f.source, f.target
    src, tgt = A + D, B + D
    if not D:
        return f
    blocks = {}
    for t in _block_charges(cat, src, tgt):
        M = np.zeros((_ntrees(cat, tgt, t), _ntrees(cat, src, t)), dtype=complex)
        off_s = _prefix_offsets(cat, A, D, t)
        off_t = _prefix_offsets(cat, B, D, t)
        for a, fa in f.blocks.items():
            nk = len(chains(cat, a, D).get(t, []))
            if nk == 0:
                continue
            rows = np.array([off_t[beta] for beta in trees(cat, B, a)])
            cols = np.array([off_s[alpha] for alpha in trees(cat, A, a)])
            for p in range(nk):
                M[np.ix_(rows + p, cols + p)] = fa
        blocks[t] = M
    return Morphism(cat, src, tgt, blocks)


def _left_id(A: tuple, g: Morphism) -> Morphism:
    """``id_A (x) g``."""
    cat = g.cat
    C, D = g.source, g.target
    if not A:
        return g
    src, tgt = A + C, A + D
    blocks = {}
    achains = chains(cat, cat.unit, A)
    for t in _block_charges(cat, src, tgt):
        M = np.zeros((_ntrees(cat, tgt, t), _ntrees(cat, src, t)), dtype=complex)
        off_s = _prefix_offsets(cat, A, C, t)
        off_t = _prefix_offsets(cat, A, D, t)
        for a, alphas in achains.items():
            _, Wc_inv, cols_c = _conversion(cat, a, C, t)
            Wd, _, cols_d = _conversion(cat, a, D, t)
            if not cols_c or not cols_d:
                continue
            G = np.zeros((len(cols_d), len(cols_c)), dtype=complex)
            sl_c = _split_slices(cat, a, C, t)
            sl_d = _split_slices(cat, a, D, t)
            m_eye = {}
            for c, (s0, s1) in sl_c.items():
                if c not in sl_d or c not in g.blocks:
                    continue
                r0, r1 = sl_d[c]
                m = cat.fusion[a, c, t]
                if m not in m_eye:
                    m_eye[m] = np.eye(m)
                G[r0:r1, s0:s1] = np.kron(g.blocks[c], m_eye[m])
            sub = Wd @ G @ Wc_inv
            nr, nc = sub.shape
            for alpha in alphas:
                r, c0 = off_t[alpha], off_s[alpha]
                M[r:r + nr, c0:c0 + nc] = sub
        blocks[t] = M
    return Morphism(cat, src, tgt, blocks)


def tensor(f: Morphism, g: Morphism) -> Morphism:
    """``f (x) g``, placing `f` to the left of `g`."""
    if f.cat is not g.cat:
        raise ValueError('morphisms belong to different categories')
    return compose(_right_id(f, g.target), _left_id(f.source, g))


def embed(L: tuple, h: Morphism, R: tuple) -> Morphism:
    """``id_L (x) h (x) id_R``."""
    return _left_id(tuple(L), _right_id(h, tuple(R)))


# ---------------------------------------------------------------------------
# elementary morphisms


def vertex(cat, a: int, b: int, c: int, mu: int = 0) -> Morphism:
    """Splitting vertex ``c -> a b``."""
    M = Morphism(cat, (c,), (a, b))
    M.blocks[c][trees(cat, (a, b), c).index(((a, 0), (c, mu))), 0] = 1.
    return M


def covertex(cat, a: int, b: int, c: int, mu: int = 0) -> Morphism:
    """Fusion vertex ``a b -> c`` dual to :func:`vertex`."""
    M = Morphism(cat, (a, b), (c,))
    M.blocks[c][0, trees(cat, (a, b), c).index(((a, 0), (c, mu)))] = 1.
    return M


def braiding(cat, a: int, b: int, over: bool = True) -> Morphism:
    """Crossing of two simple strands ``a b -> b a``.

    ``over=True`` gives ``c_{a,b}`` (left strand over the right one); ``over=False``
    gives the inverse braiding ``c_{b,a}^{-1}`` (left strand under).
    """
    key = ('braid', a, b, over)

    def compute():
        blocks = {}
        for t in _block_charges(cat, (a, b), (b, a)):
            if over:
                blocks[t] = cat.R(a, b, t).T.copy()
            else:
                blocks[t] = np.linalg.inv(cat.R(b, a, t).T)
        return Morphism(cat, (a, b), (b, a), blocks)

    return cat.cached(key, compute)


def _unit_morph(cat, source, target, value) -> Morphism:
    M = Morphism(cat, source, target)
    M.blocks[cat.unit][0, 0] = value
    return M


def cup(cat, a, dual: bool = False) -> Morphism:
    """Creation morphism.

    ``dual=False``: ``coev_a: 1 -> a a^*``.  ``dual=True``: ``1 -> a^* a``, the
    coevaluation belonging to the right dual.
    """
    a = cat.index(a)
    ad = cat.dual[a]
    if dual:
        return _unit_morph(cat, (), (ad, a), 1. / cat.pivotal[a])
    return _unit_morph(cat, (), (a, ad), 1.)


def cap(cat, a, dual: bool = False) -> Morphism:
    """Annihilation morphism.

    ``dual=False``: ``a a^* -> 1`` (right evaluation), normalized so that
    ``cap(a) o cup(a) = d(a)``.  ``dual=True``: ``ev_a: a^* a -> 1``, the zig-zag
    partner of ``cup(a)``.
    """
    from .category_data import _epsilon
    a = cat.index(a)
    ad = cat.dual[a]
    if dual:
        return _unit_morph(cat, (ad, a), (), _epsilon(cat, a))
    return _unit_morph(cat, (a, ad), (), cat.pivotal[a] * _epsilon(cat, ad))


def cup_word(cat, X, dual: bool = False) -> Morphism:
    """Nested cups ``1 -> X X^v`` (or ``1 -> X^v X`` with ``dual=True``)."""
    X = cat.word(X)
    if not X:
        return Morphism.identity(cat, ())
    if dual:
        inner, x = X[:-1], X[-1]
        outer = cup(cat, x, dual=True)
        return compose(embed((cat.dual[x],), cup_word(cat, inner, True), (x,)), outer)
    x, inner = X[0], X[1:]
    outer = cup(cat, x)
    return compose(embed((x,), cup_word(cat, inner), (cat.dual[x],)), outer)


def cap_word(cat, X, dual: bool = False) -> Morphism:
    """Nested caps ``X X^v -> 1`` (or ``X^v X -> 1`` with ``dual=True``)."""
    X = cat.word(X)
    if not X:
        return Morphism.identity(cat, ())
    if dual:
        inner, x = X[:-1], X[-1]
        return compose(cap(cat, x, dual=True), embed((cat.dual[x],), cap_word(cat, inner, True), (x,)))
    x, inner = X[0], X[1:]
    return compose(cap(cat, x), embed((x,), cap_word(cat, inner), (cat.dual[x],)))


def r_move(cat, word, position: int, handedness: str = 'over') -> Morphism:
    """Braid the strands at `position` and ``position + 1`` of `word`."""
    word = cat.word(word)
    if not 0 <= position < len(word) - 1:
        raise IndexError(f'position {position} out of range for a word of length {len(word)}')
    if handedness not in ('over', 'under'):
        raise ValueError("handedness must be 'over' or 'under'")
    a, b = word[position], word[position + 1]
    c = braiding(cat, a, b, handedness == 'over')
    return embed(word[:position], c, word[position + 2:])


def f_move(cat, word, position: int) -> dict:
    """Basis change to trees in which strands `position`, ``position+1`` fuse first.

    Returns ``{t: (M, labels)}`` where the columns of ``M`` express the trees
    ``(alpha, (y, nu), (z, mu), rest)`` in the standard basis: ``alpha`` is a
    tree of the prefix with charge ``x``, ``nu: w_p w_{p+1} -> y``,
    ``mu: x y -> z`` and ``rest`` a chain from ``z`` over the remaining strands.
    """
    word = cat.word(word)
    p = position
    if not 0 <= p < len(word) - 1:
        raise IndexError(f'position {p} out of range for a word of length {len(word)}')
    pre, pair, post = word[:p], word[p:p + 2], word[p + 2:]
    out = {}
    for t in charges(cat, word):
        idx = _tree_index(cat, word, t)
        cols, vecs = [], []
        for x, alphas in sorted(chains(cat, cat.unit, pre).items()):
            for z in range(cat.num_labels):
                rest_chains = chains(cat, z, post).get(t, [])
                if not rest_chains:
                    continue
                W, _, labs = _conversion(cat, x, pair, z)
                krows = chains(cat, x, pair).get(z, [])
                for alpha in alphas:
                    for j, (y, gamma, mu) in enumerate(labs):
                        for rest in rest_chains:
                            v = np.zeros(len(idx), dtype=complex)
                            for kk, k in enumerate(krows):
                                v[idx[alpha + k + rest]] += W[kk, j]
                            cols.append((alpha, (y, gamma[-1][1]), (z, mu), rest))
                            vecs.append(v)
        out[t] = (np.array(vecs).T if vecs else np.zeros((0, 0)), cols)
    return out


# ---------------------------------------------------------------------------
# pairings, duals and traces


def _standard_split(cat, R: int, X: tuple) -> list[Morphism]:
    return [Morphism(cat, (R,), X, {R: np.eye(_ntrees(cat, X, R))[:, [k]]})
            for k in range(_ntrees(cat, X, R))]


def _standard_fuse(cat, R: int, X: tuple) -> list[Morphism]:
    return [Morphism(cat, X, (R,), {R: np.eye(_ntrees(cat, X, R))[[k], :]})
            for k in range(_ntrees(cat, X, R))]


def simple_pairing(cat, R, X, basis: list[Morphism] | None = None,
                   cobasis: list[Morphism] | None = None) -> np.ndarray:
    """Pairing matrix ``P[g, f]`` with ``g o f = P[g, f] id_R``.

    `basis` spans ``Hom(R, X)`` and `cobasis` spans ``Hom(X, R)``; both default to
    the standard tree bases.
    """
    R, X = cat.index(R), cat.word(X)
    basis = _standard_split(cat, R, X) if basis is None else basis
    cobasis = _standard_fuse(cat, R, X) if cobasis is None else cobasis
    P = np.zeros((len(cobasis), len(basis)), dtype=complex)
    for i, g in enumerate(cobasis):
        for j, f in enumerate(basis):
            P[i, j] = compose(g, f).scalar()
    return P


def dual_basis(cat, R, X, basis: list[Morphism] | None = None) -> list[Morphism]:
    """The basis ``{b*}`` of ``Hom(X, R)`` with ``b*_i o b_j = delta_ij id_R``.

    Solved from the pairing against the standard fusion trees.

    Raises
    ------
    np.linalg.LinAlgError
        If the pairing is singular, which signals corrupted category data.
    """
    R, X = cat.index(R), cat.word(X)
    basis = _standard_split(cat, R, X) if basis is None else list(basis)
    if not basis:
        return []
    cobasis = _standard_fuse(cat, R, X)
    P = simple_pairing(cat, R, X, basis, cobasis)
    D = np.linalg.inv(P)
    return [sum((D[i, k] * cobasis[k] for k in range(len(cobasis)) if D[i, k] != 0),
                Morphism.zeros(cat, X, (R,)))
            for i in range(len(basis))]


def decompose_identity(cat, X) -> list[tuple]:
    """Triples ``(R, b, b*)`` with ``sum b o b* = id_X``, b over a basis of ``Hom(R, X)``."""
    X = cat.word(X)
    out = []
    for R in range(cat.num_labels):
        basis = _standard_split(cat, R, X)
        for b, bs in zip(basis, dual_basis(cat, R, X, basis)):
            out.append((R, b, bs))
    return out


def trace_weights(cat, X) -> np.ndarray:
    """Coefficients ``w`` with ``trace(f) = w . f.coeffs`` for endomorphisms of X.

    Computed once per word by evaluating the closed diagram on each basis element.
    """
    X = cat.word(X)

    def compute():
        coev = cup_word(cat, X)
        ev = cap_word(cat, X)
        Xd = cat.dual_word(X)
        n = hom_dim(cat, X, X)
        w = np.zeros(n, dtype=complex)
        for k, b in enumerate(Morphism.basis(cat, X, X)):
            w[k] = compose(ev, compose(_right_id(b, Xd), coev)).scalar()
        return w

    return cat.cached(('trw', X), compute)


def trace(f: Morphism) -> complex:
    """Right trace ``cap_X o (f (x) id_{X^v}) o cup_X``."""
    if f.source != f.target:
        raise ValueError('trace needs an endomorphism')
    w = trace_weights(f.cat, f.source)
    return complex(w @ f.coeffs)


def left_trace(f: Morphism) -> complex:
    """Left trace ``ev_X o (id_{X^v} (x) f) o coev'_X``."""
    if f.source != f.target:
        raise ValueError('trace needs an endomorphism')
    cat, X = f.cat, f.source
    Xd = cat.dual_word(X)
    inner = compose(_left_id(Xd, f), cup_word(cat, X, dual=True))
    return compose(cap_word(cat, X, dual=True), inner).scalar()


def trace_pairing(f: Morphism, g: Morphism) -> complex:
    """``tr(g o f)`` for ``f: X -> Y`` and ``g: Y -> X``."""
    return trace(compose(g, f))
