"""Consistency checks of category data and the S-matrix."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .category_data import CategoryData
from .homspace import (Morphism, braiding, cap, compose, covertex, cup, embed, left_trace,
                       random_morphism, tensor, trace, vertex)

__all__ = ['AxiomReport', 'check_axioms', 'pentagon_residual', 'hexagon_residual', 's_matrix']


@dataclass
class AxiomReport:
    """Per-axiom maximal residuals.

    ``residuals`` maps axiom names to the largest violation found; the
    ``modularity`` entry is ``|det S|`` and passes when it exceeds the tolerance.
    """
    category: str
    tolerance: float
    residuals: dict = field(default_factory=dict)

    def passed_items(self) -> dict:
        out = {}
        for k, v in self.residuals.items():
            out[k] = v > self.tolerance if k == 'modularity' else v <= self.tolerance
        return out

    @property
    def passed(self) -> bool:
        return all(self.passed_items().values())

    def failures(self) -> list[str]:
        return [k for k, ok in self.passed_items().items() if not ok]


def pentagon_residual(cat: CategoryData) -> float:
    """Largest violation of the pentagon equation over all label tuples.

    With left trees ``(((a b)_x c)_y d)_t`` re-associated to ``(a (b (c d)_z)_w)_t``
    along both paths, compares::

        sum_lam F^{xcd}_t[(y,be,ga),(z,ka,lam)] F^{abz}_t[(x,al,lam),(w,rho,sig)]
        = sum F^{abc}_y[(x,al,be),(u,pi,om)] F^{aud}_t[(y,om,ga),(w,xi,sig)] F^{bcd}_w[(u,pi,xi),(z,ka,rho)]
    """
    n = cat.num_labels
    N = cat.fusion
    F = cat.F_entry
    worst = 0.
    L = range(n)
    for a, b, c, d in product(L, repeat=4):
        for x, y, t in product(L, repeat=3):
            if not (N[a, b, x] and N[x, c, y] and N[y, d, t]):
                continue
            for z, w in product(L, repeat=2):
                if not (N[c, d, z] and N[b, z, w] and N[a, w, t]):
                    continue
                for al, be, ga, ka, rho, sig in product(range(N[a, b, x]), range(N[x, c, y]), range(N[y, d, t]),
                                                        range(N[c, d, z]), range(N[b, z, w]), range(N[a, w, t])):
                    lhs = sum(F(x, c, d, t, y, z, be, ga, ka, lam) * F(a, b, z, t, x, w, al, lam, rho, sig)
                              for lam in range(N[x, z, t]))
                    rhs = 0.
                    for u in L:
                        for pi, om, xi in product(range(N[b, c, u]), range(N[a, u, y]), range(N[u, d, w])):
                            rhs += (F(a, b, c, y, x, u, al, be, pi, om) * F(a, u, d, t, y, w, om, ga, xi, sig)
                                    * F(b, c, d, w, u, z, pi, xi, ka, rho))
                    worst = max(worst, float(abs(lhs - rhs)))
    return worst


def _composite_braiding(cat, a: int, B: tuple, over: bool) -> Morphism:
    """Braiding of a simple `a` past the pair ``B = (b, c)`` via its fusion channels."""
    b, c = B
    total = Morphism.zeros(cat, (a, b, c), (b, c, a))
    for f in cat.fusion_outcomes(b, c):
        for nu in range(cat.fusion[b, c, f]):
            down = embed((a,), covertex(cat, b, c, f, nu), ())
            up = embed((), vertex(cat, b, c, f, nu), (a,))
            total = total + compose(up, compose(braiding(cat, a, f, over), down))
    return total


def _composite_braiding_left(cat, A: tuple, c: int, over: bool) -> Morphism:
    a, b = A
    total = Morphism.zeros(cat, (a, b, c), (c, a, b))
    for f in cat.fusion_outcomes(a, b):
        for nu in range(cat.fusion[a, b, f]):
            down = embed((), covertex(cat, a, b, f, nu), (c,))
            up = embed((c,), vertex(cat, a, b, f, nu), ())
            total = total + compose(up, compose(braiding(cat, f, c, over), down))
    return total


def hexagon_residual(cat: CategoryData, over: bool = True) -> float:
    """Largest violation of the two hexagon identities for one handedness.

    Checks ``c_{a, bc} = (id_b (x) c_{a,c}) (c_{a,b} (x) id_c)`` and
    ``c_{ab, c} = (c_{a,c} (x) id_b) (id_a (x) c_{b,c})``, where the braiding with a
    composite is assembled from its fusion channels.
    """
    worst = 0.
    L = range(cat.num_labels)
    for a, b, c in product(L, repeat=3):
        lhs = compose(embed((b,), braiding(cat, a, c, over), ()), embed((), braiding(cat, a, b, over), (c,)))
        worst = max(worst, (lhs - _composite_braiding(cat, a, (b, c), over)).max_abs())
        lhs = compose(embed((), braiding(cat, a, c, over), (b,)), embed((a,), braiding(cat, b, c, over), ()))
        worst = max(worst, (lhs - _composite_braiding_left(cat, (a, b), c, over)).max_abs())
    return worst


def _unit_residual(cat: CategoryData) -> float:
    u = cat.unit
    worst = 0.
    for key, blk in cat.f_symbols.items():
        if u in key[:3]:
            worst = max(worst, float(np.max(np.abs(blk.matrix - np.eye(len(blk.rows))))))
    for (a, b, c), R in cat.r_symbols.items():
        if u in (a, b):
            worst = max(worst, float(np.max(np.abs(R - np.eye(R.shape[0])))))
    worst = max(worst, abs(cat.pivotal[u] - 1))
    return worst


def _rigidity_residual(cat: CategoryData) -> float:
    """Zig-zag identities for both orientations."""
    worst = 0.
    for a in range(cat.num_labels):
        ad = cat.dual[a]
        ida = Morphism.identity(cat, (a,))
        z1 = compose(embed((a,), cap(cat, a, dual=True), ()), embed((), cup(cat, a), (a,)))
        z2 = compose(embed((), cap(cat, a), (a,)), embed((a,), cup(cat, a, dual=True), ()))
        worst = max(worst, (z1 - ida).max_abs(), (z2 - ida).max_abs())
        idd = Morphism.identity(cat, (ad,))
        z3 = compose(embed((), cap(cat, a, dual=True), (ad,)), embed((ad,), cup(cat, a), ()))
        z4 = compose(embed((ad,), cap(cat, a), ()), embed((), cup(cat, a, dual=True), (ad,)))
        worst = max(worst, (z3 - idd).max_abs(), (z4 - idd).max_abs())
    return worst


def _sphericality_residual(cat: CategoryData, seed: int = 0, max_len: int = 2) -> float:
    """Left trace minus right trace on random endomorphisms of short words."""
    from .homspace import all_words
    rng = np.random.default_rng(seed)
    worst = 0.
    for X in all_words(cat, max_len, 1):
        f = random_morphism(cat, X, X, rng)
        worst = max(worst, abs(trace(f) - left_trace(f)))
    return worst


def _duality_residual(cat: CategoryData) -> float:
    n = cat.num_labels
    d = cat.dual
    worst = 0.
    for a, b, c in product(range(n), repeat=3):
        worst = max(worst, abs(int(cat.fusion[a, b, c]) - int(cat.fusion[d[b], d[a], d[c]])))
        worst = max(worst, abs(int(cat.fusion[a, b, c]) - int(cat.fusion[b, a, c])))
    return float(worst)


def _dimension_residual(cat: CategoryData) -> float:
    """Compare loop values with Perron-Frobenius dimensions when the latter apply."""
    q = cat.qdim
    worst = 0.
    if np.all(np.abs(q.imag) <= cat.tolerance) and np.all(q.real > 0):
        for a in range(cat.num_labels):
            ev = np.linalg.eigvals(cat.fusion[a].astype(float))
            worst = max(worst, abs(np.max(ev.real) - q[a].real))
    # d(a) d(b) = sum_c N_ab^c d(c) holds in any spherical fusion category
    for a, b in product(range(cat.num_labels), repeat=2):
        worst = max(worst, abs(q[a] * q[b] - cat.fusion[a, b] @ q))
    worst = max(worst, max(0., cat.tolerance * 2 - float(np.min(np.abs(q)))))
    return float(worst)


def s_matrix(cat: CategoryData) -> np.ndarray:
    """Unnormalized S-matrix ``S[a, b] = tr(c_{b,a} o c_{a,b})`` (Hopf link).

    Each entry is obtained by evaluating the double crossing with the diagram
    engine and closing it with a trace.
    """
    from .diagram import DiagramBuilder, evaluate

    def compute():
        n = cat.num_labels
        S = np.zeros((n, n), dtype=complex)
        for a, b in product(range(n), repeat=2):
            d = DiagramBuilder(cat, (a, b)).cross(0).cross(0).build()
            S[a, b] = trace(evaluate(cat, d))
        return S

    return cat.cached(('smatrix',), compute).copy()


def check_axioms(cat: CategoryData, seed: int = 0) -> AxiomReport:
    """Evaluate every axiom of a spherical braided fusion category and modularity.

    Failures are reported in the returned :class:`AxiomReport`, never raised.
    """
    rep = AxiomReport(cat.name, cat.tolerance)
    rep.residuals['unit'] = _unit_residual(cat)
    rep.residuals['duality'] = _duality_residual(cat)
    rep.residuals['pentagon'] = pentagon_residual(cat)
    rep.residuals['hexagon_over'] = hexagon_residual(cat, True)
    rep.residuals['hexagon_under'] = hexagon_residual(cat, False)
    rep.residuals['rigidity'] = _rigidity_residual(cat)
    rep.residuals['sphericality'] = _sphericality_residual(cat, seed)
    rep.residuals['dimensions'] = _dimension_residual(cat)
    S = s_matrix(cat)
    rep.residuals['s_symmetry'] = float(np.max(np.abs(S - S.T)))
    rep.residuals['modularity'] = float(abs(np.linalg.det(S)))
    return rep
