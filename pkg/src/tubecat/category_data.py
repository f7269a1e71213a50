"""Skeletal modular tensor category data.

A category is stored skeletally: simple objects are integer labels, fusion is a
multiplicity table ``N[a, b, c] = dim Hom(a b, c)`` and the associator and
braiding are given by F- and R-symbols in a fixed gauge.

Conventions
-----------
Splitting trees are left associated.  For ``F^{abc}_d`` the rows are labelled by
``(e, mu, nu)`` of the left tree ``((a b)_e c)_d`` (``mu: a b -> e``,
``nu: e c -> d``) and the columns by ``(f, kappa, lambda)`` of the right tree
``(a (b c)_f)_d`` (``kappa: b c -> f``, ``lambda: a f -> d``), such that::

    left[e, mu, nu] = sum_f F[(e, mu, nu), (f, kappa, lambda)] right[f, kappa, lambda]

``R^{ab}_c[mu, nu]`` describes the braiding ``c_{a,b}: a b -> b a`` in which the
left strand passes over the right one::

    c_{a,b} o split^{ab}_{c, mu} = sum_nu R^{ab}_c[mu, nu] split^{ba}_{c, nu}

Diagrams are read from top to bottom and tensor products from left to right.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Any, Iterable, Mapping

import numpy as np

__all__ = [
    'CONVENTIONS', 'FBlock', 'SimpleLabel', 'CategoryData', 'make_category', 'load_category',
    'category_from_dict', 'category_to_dict', 'dump_category', 'builtin_category',
    'builtin_names', 'get_category', 'quantum_dimension', 'global_dimension', 'check_axioms',
    's_matrix', 'pointed_category', 'DEFAULT_TOLERANCE',
]

#: Orientation constants that every category file must repeat verbatim.
CONVENTIONS = {
    'f_symbols': 'left_to_right_associated',
    'r_symbols': 'left_over_right',
    'composition': 'top_to_bottom',
}

DEFAULT_TOLERANCE = 1e-8


class SimpleLabel(tuple):
    """A simple object, i.e. an ``(id, name)`` pair."""

    __slots__ = ()

    def __new__(cls, id: int, name: str):
        return tuple.__new__(cls, (int(id), str(name)))

    @property
    def id(self) -> int:
        return self[0]

    @property
    def name(self) -> str:
        return self[1]

    def __repr__(self):
        return f'SimpleLabel({self[0]}, {self[1]!r})'


@dataclass(frozen=True)
class FBlock:
    """The F-move matrix for one tuple ``(a, b, c, d)``.

    Attributes
    ----------
    rows : list of tuple
        Left-tree labels ``(e, mu, nu)``.
    cols : list of tuple
        Right-tree labels ``(f, kappa, lambda)``.
    matrix : 2D array
        ``matrix[i, j] = F[rows[i], cols[j]]``.
    inverse : 2D array
        Matrix inverse of `matrix`, rows indexed by `cols`, columns by `rows`.
    """
    rows: list
    cols: list
    matrix: np.ndarray
    inverse: np.ndarray
    row_index: dict
    col_index: dict


@dataclass(frozen=True, eq=False)
class CategoryData:
    """Immutable data of a skeletal modular tensor category.

    Use :func:`make_category`, :func:`load_category` or :func:`builtin_category`
    to construct instances; the constructor does no validation.

    Attributes
    ----------
    name : str
    labels : tuple of str
        Display names, indexed by label id.
    unit : int
        Label id of the tensor unit.
    dual : tuple of int
        ``dual[a]`` is the label of the dual object.
    fusion : 3D int array
        ``fusion[a, b, c] = N_{ab}^c``.
    f_symbols : dict
        ``(a, b, c, d) -> FBlock`` for every admissible tuple.
    r_symbols : dict
        ``(a, b, c) -> 2D array`` of shape ``(N_{ab}^c, N_{ba}^c)``.
    pivotal : 1D complex array
    qdim : 1D complex array
        Quantum dimensions, the value of the closed loop of each simple.
    global_dim : complex
    tolerance : float
    """
    name: str
    labels: tuple
    unit: int
    dual: tuple
    fusion: np.ndarray
    f_symbols: dict
    r_symbols: dict
    pivotal: np.ndarray
    qdim: np.ndarray = None
    global_dim: complex = None
    tolerance: float = DEFAULT_TOLERANCE
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: Any = field(default_factory=threading.RLock, repr=False, compare=False)

    @property
    def num_labels(self) -> int:
        return len(self.labels)

    @property
    def simples(self) -> list[SimpleLabel]:
        return [SimpleLabel(i, n) for i, n in enumerate(self.labels)]

    def simple(self, a) -> SimpleLabel:
        i = self.index(a)
        return SimpleLabel(i, self.labels[i])

    def index(self, a) -> int:
        """Resolve a label given as id, name or :class:`SimpleLabel`."""
        if isinstance(a, SimpleLabel):
            a = a.id
        if isinstance(a, (int, np.integer)) and not isinstance(a, bool):
            if 0 <= a < self.num_labels:
                return int(a)
            raise KeyError(f'label id {a} out of range for category {self.name!r}')
        if isinstance(a, str):
            try:
                return self.labels.index(a.strip())
            except ValueError:
                raise KeyError(f'unknown label {a!r} in category {self.name!r}') from None
        raise KeyError(f'cannot interpret {a!r} as a label')

    def word(self, labels) -> tuple:
        """Turn a word description into a tuple of label ids.

        Accepts a comma separated string (``''`` is the unit object), or an
        iterable of ids, names or :class:`SimpleLabel`.
        """
        if isinstance(labels, str):
            parts = [p for p in labels.split(',') if p.strip()]
            return tuple(self.index(p) for p in parts)
        if isinstance(labels, (int, np.integer, SimpleLabel)):
            return (self.index(labels),)
        return tuple(self.index(p) for p in labels)

    def word_name(self, word) -> str:
        return ','.join(self.labels[a] for a in word)

    def dual_word(self, word) -> tuple:
        return tuple(self.dual[a] for a in reversed(word))

    def fusion_outcomes(self, a: int, b: int) -> list[int]:
        return [c for c in range(self.num_labels) if self.fusion[a, b, c] > 0]

    def F(self, a: int, b: int, c: int, d: int) -> FBlock | None:
        """F-move block of ``(a, b, c; d)`` or None if not admissible."""
        return self.f_symbols.get((a, b, c, d))

    def F_entry(self, a, b, c, d, e, f, mu=0, nu=0, kappa=0, lam=0) -> complex:
        blk = self.f_symbols.get((a, b, c, d))
        if blk is None:
            return 0.
        i = blk.row_index.get((e, mu, nu))
        j = blk.col_index.get((f, kappa, lam))
        if i is None or j is None:
            return 0.
        return blk.matrix[i, j]

    def R(self, a: int, b: int, c: int) -> np.ndarray:
        return self.r_symbols[(a, b, c)]

    def cached(self, key, compute):
        """Memoize ``compute()`` under `key`; thread safe and transparent."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    def with_tolerance(self, tol: float) -> CategoryData:
        """A copy with another tolerance (caches are not shared)."""
        if not tol > 0:
            raise ValueError('tolerance must be positive')
        return make_category(self.name, self.labels, self.unit, self.dual, self.fusion,
                             _raw_f(self), _raw_r(self), self.pivotal, tolerance=tol)

    def __repr__(self):
        return f'<CategoryData {self.name!r} labels={list(self.labels)}>'


def _admissible_f_tuples(N: np.ndarray):
    n = N.shape[0]
    for a, b, c, d in product(range(n), repeat=4):
        rows = [(e, mu, nu) for e in range(n) for mu in range(N[a, b, e]) for nu in range(N[e, c, d])]
        if not rows:
            continue
        cols = [(f, ka, la) for f in range(n) for ka in range(N[b, c, f]) for la in range(N[a, f, d])]
        yield (a, b, c, d), rows, cols


def make_category(name: str, labels: Iterable[str], unit: int, dual: Iterable[int],
                  fusion: np.ndarray, f_entries: Mapping, r_entries: Mapping,
                  pivotal: Iterable[complex] | None = None, *,
                  tolerance: float = DEFAULT_TOLERANCE, defaults: bool = False) -> CategoryData:
    """Assemble and structurally validate category data.

    Parameters
    ----------
    name : str
    labels : list of str
    unit : int
    dual : list of int
    fusion : 3D int array
    f_entries : dict
        ``(a, b, c, d, e, f, mu, nu, kappa, lambda) -> value``.
    r_entries : dict
        ``(a, b, c, mu, nu) -> value``.
    pivotal : list of complex, optional
        Defaults to all ones.
    tolerance : float
    defaults : bool
        If True, missing entries of one-dimensional F blocks and of R-symbols with a unit
        label are set to 1.  Used for the compiled-in categories.

    Raises
    ------
    ValueError
        On inconsistent fusion rules, a non-involutive dual or missing symbols.
    """
    labels = tuple(labels)
    n = len(labels)
    N = np.asarray(fusion, dtype=int)
    if N.shape != (n, n, n) or np.any(N < 0):
        raise ValueError('fusion table must be a non-negative n x n x n array')
    dual = tuple(int(x) for x in dual)
    if len(dual) != n or any(dual[dual[a]] != a for a in range(n)):
        raise ValueError('dual table is not an involution')
    if not 0 <= unit < n:
        raise ValueError('unit label out of range')
    eye = np.eye(n, dtype=int)
    if not (np.array_equal(N[unit], eye) and np.array_equal(N[:, unit, :], eye)):
        raise ValueError('fusion with the unit must be trivial')
    for a in range(n):
        expect = np.zeros(n, dtype=int)
        expect[dual[a]] = 1
        if not np.array_equal(N[a, :, unit], expect):
            raise ValueError(f'{labels[a]} fuses to the unit with something other than its dual')
    f_symbols = {}
    for key, rows, cols in _admissible_f_tuples(N):
        if len(rows) != len(cols):
            raise ValueError(f'F block {key} is not square')
        mat = np.zeros((len(rows), len(cols)), dtype=complex)
        for i, (e, mu, nu) in enumerate(rows):
            for j, (f, ka, la) in enumerate(cols):
                k = key + (e, f, mu, nu, ka, la)
                if k in f_entries:
                    mat[i, j] = f_entries[k]
                elif defaults and len(rows) == 1:
                    mat[i, j] = 1.
                else:
                    names = ','.join(labels[x] for x in key + (e, f))
                    raise ValueError(f'missing F-symbol entry ({names}; {mu},{nu},{ka},{la})')
        try:
            inv = np.linalg.inv(mat)
        except np.linalg.LinAlgError:
            raise ValueError(f'F block {key} is singular') from None
        f_symbols[key] = FBlock(rows, cols, mat, inv, {r: i for i, r in enumerate(rows)},
                                {c: j for j, c in enumerate(cols)})
    r_symbols = {}
    for a, b, c in product(range(n), repeat=3):
        if N[a, b, c] == 0:
            continue
        if N[a, b, c] != N[b, a, c]:
            raise ValueError('fusion must be commutative for a braided category')
        mat = np.zeros((N[a, b, c], N[b, a, c]), dtype=complex)
        for mu, nu in product(range(N[a, b, c]), range(N[b, a, c])):
            k = (a, b, c, mu, nu)
            if k in r_entries:
                mat[mu, nu] = r_entries[k]
            elif defaults and unit in (a, b):
                mat[mu, nu] = 1. if mu == nu else 0.
            else:
                raise ValueError(f'missing R-symbol entry ({labels[a]},{labels[b]},{labels[c]}; {mu},{nu})')
        r_symbols[(a, b, c)] = mat
    piv = np.ones(n, dtype=complex) if pivotal is None else np.asarray(list(pivotal), dtype=complex)
    if piv.shape != (n,) or np.any(np.abs(piv) == 0):
        raise ValueError('pivotal coefficients must be nonzero, one per label')
    cat = CategoryData(name=name, labels=labels, unit=int(unit), dual=dual, fusion=N,
                       f_symbols=f_symbols, r_symbols=r_symbols, pivotal=piv,
                       tolerance=float(tolerance))
    qdim = np.array([_loop_value(cat, a) for a in range(n)], dtype=complex)
    object.__setattr__(cat, 'qdim', qdim)
    object.__setattr__(cat, 'global_dim', complex(np.sum(qdim ** 2)))
    return cat


def _epsilon(cat: CategoryData, a: int) -> complex:
    """Normalization of the left evaluation ``a^* a -> 1`` (zig-zag with the cup)."""
    ad, u = cat.dual[a], cat.unit
    return 1. / cat.F_entry(a, ad, a, a, u, u)


def _loop_value(cat: CategoryData, a: int) -> complex:
    # right evaluation o coevaluation of a: pivotal[a] * epsilon(a^*)
    return complex(cat.pivotal[a] * _epsilon(cat, cat.dual[a]))


def _raw_f(cat: CategoryData) -> dict:
    out = {}
    for key, blk in cat.f_symbols.items():
        for i, (e, mu, nu) in enumerate(blk.rows):
            for j, (f, ka, la) in enumerate(blk.cols):
                out[key + (e, f, mu, nu, ka, la)] = blk.matrix[i, j]
    return out


def _raw_r(cat: CategoryData) -> dict:
    out = {}
    for (a, b, c), mat in cat.r_symbols.items():
        for mu, nu in product(range(mat.shape[0]), range(mat.shape[1])):
            out[(a, b, c, mu, nu)] = mat[mu, nu]
    return out


def quantum_dimension(cat: CategoryData, S) -> complex:
    """Quantum dimension ``d(S) = tr(id_S)`` of a simple object.

    The value is computed by evaluating the trace of the identity with the
    diagram engine; it agrees with the cached ``cat.qdim``.
    """
    from .homspace import Morphism, trace
    s = cat.index(S)
    return trace(Morphism.identity(cat, (s,)))


def global_dimension(cat: CategoryData) -> complex:
    """Global dimension ``d(C) = sum_S d(S)^2``."""
    return complex(np.sum(cat.qdim ** 2))


# ---------------------------------------------------------------------------
# builtin categories

_PHI = (1 + np.sqrt(5)) / 2


def _group_fusion(n: int) -> np.ndarray:
    N = np.zeros((n, n, n), dtype=int)
    for a, b in product(range(n), repeat=2):
        N[a, b, (a + b) % n] = 1
    return N


def _trivial(tol):
    N = np.ones((1, 1, 1), dtype=int)
    return make_category('trivial', ['1'], 0, [0], N, {}, {}, tolerance=tol, defaults=True)


def _semion(tol):
    # the F-symbol -1 forces pivotal coefficient -1 for a positive dimension
    F = {(1, 1, 1, 1, 0, 0, 0, 0, 0, 0): -1.}
    R = {(1, 1, 0, 0, 0): 1j}
    return make_category('semion', ['1', 's'], 0, [0, 1], _group_fusion(2), F, R, [1., -1.],
                         tolerance=tol, defaults=True)


def _fibonacci(tol):
    N = np.zeros((2, 2, 2), dtype=int)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[1, 1, 0] = N[1, 1, 1] = 1
    F = {}
    mat = np.array([[1 / _PHI, _PHI ** -0.5], [_PHI ** -0.5, -1 / _PHI]])
    for e, f in product(range(2), repeat=2):
        F[(1, 1, 1, 1, e, f, 0, 0, 0, 0)] = mat[e, f]
    R = {(1, 1, 0, 0, 0): np.exp(-4j * np.pi / 5), (1, 1, 1, 0, 0): np.exp(3j * np.pi / 5)}
    return make_category('fibonacci', ['1', 'tau'], 0, [0, 1], N, F, R, tolerance=tol, defaults=True)


def _ising(tol):
    one, sig, psi = 0, 1, 2
    N = np.zeros((3, 3, 3), dtype=int)
    for a in range(3):
        N[one, a, a] = N[a, one, a] = 1
    N[sig, sig, one] = N[sig, sig, psi] = 1
    N[sig, psi, sig] = N[psi, sig, sig] = 1
    N[psi, psi, one] = 1
    F = {}
    mat = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    for (i, e), (j, f) in product(enumerate([one, psi]), repeat=2):
        F[(sig, sig, sig, sig, e, f, 0, 0, 0, 0)] = mat[i, j]
    F[(sig, psi, sig, psi, sig, sig, 0, 0, 0, 0)] = -1.
    F[(psi, sig, psi, sig, sig, sig, 0, 0, 0, 0)] = -1.
    R = {
        (sig, sig, one, 0, 0): np.exp(-1j * np.pi / 8),
        (sig, sig, psi, 0, 0): np.exp(3j * np.pi / 8),
        (sig, psi, sig, 0, 0): -1j,
        (psi, sig, sig, 0, 0): -1j,
        (psi, psi, one, 0, 0): -1.,
    }
    return make_category('ising', ['1', 'sigma', 'psi'], 0, [0, 1, 2], N, F, R,
                         tolerance=tol, defaults=True)


def pointed_category(n: int, tolerance: float = DEFAULT_TOLERANCE) -> CategoryData:
    """Pointed category of ``Z_n`` (n odd) with braiding ``exp(2 pi i a b / n)``."""
    if n < 1 or n % 2 == 0:
        raise ValueError('pointed builtin requires an odd order')
    R = {(a, b, (a + b) % n, 0, 0): np.exp(2j * np.pi * a * b / n) for a, b in product(range(n), repeat=2)}
    return make_category(f'z{n}', [str(a) for a in range(n)], 0, [(-a) % n for a in range(n)],
                         _group_fusion(n), {}, R, tolerance=tolerance, defaults=True)


_BUILTINS = {
    'trivial': _trivial,
    'semion': _semion,
    'fibonacci': _fibonacci,
    'ising': _ising,
    'z3': lambda tol: pointed_category(3, tol),
}


def builtin_names() -> list[str]:
    return list(_BUILTINS)


def builtin_category(name: str, tolerance: float = DEFAULT_TOLERANCE) -> CategoryData:
    """A compiled-in category: trivial, semion, fibonacci, ising or ``z<n>`` for odd n."""
    key = name.strip().lower()
    if key in _BUILTINS:
        return _BUILTINS[key](tolerance)
    if key.startswith('z') and key[1:].isdigit():
        return pointed_category(int(key[1:]), tolerance)
    raise KeyError(f'unknown builtin category {name!r}; choose from {builtin_names()} or z<odd n>')


def get_category(source: str, tolerance: float = DEFAULT_TOLERANCE) -> CategoryData:
    """Builtin name or path to a category file."""
    p = Path(source)
    if p.suffix == '.json' or p.exists():
        return load_category(p, tolerance)
    return builtin_category(source, tolerance)


# ---------------------------------------------------------------------------
# JSON documents


def _complex(v, what):
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise ValueError(f'{what}: expected [re, im], got {v!r}')
    return complex(float(v[0]), float(v[1]))


def category_from_dict(doc: Mapping, tolerance: float = DEFAULT_TOLERANCE) -> CategoryData:
    """Build a category from a parsed category document (see :func:`load_category`)."""
    if not isinstance(doc, Mapping):
        raise ValueError('category document must be a JSON object')
    required = ['name', 'labels', 'unit', 'dual', 'fusion', 'F', 'R', 'conventions']
    missing = [k for k in required if k not in doc]
    if missing:
        raise ValueError(f'category document lacks fields {missing}')
    conv = doc['conventions']
    if not isinstance(conv, Mapping) or any(conv.get(k) != v for k, v in CONVENTIONS.items()):
        raise ValueError(f'conventions block must equal {CONVENTIONS}')
    labels = list(doc['labels'])
    if not labels or not all(isinstance(s, str) for s in labels) or len(set(labels)) != len(labels):
        raise ValueError('labels must be a list of distinct strings')
    idx = {s: i for i, s in enumerate(labels)}

    def lab(s):
        if s not in idx:
            raise ValueError(f'unknown label {s!r}')
        return idx[s]

    n = len(labels)
    if not isinstance(doc['dual'], Mapping) or set(doc['dual']) != set(labels):
        raise ValueError('dual must map every label')
    dual = [lab(doc['dual'][s]) for s in labels]
    N = np.zeros((n, n, n), dtype=int)
    for entry in doc['fusion']:
        if len(entry) != 4 or not isinstance(entry[3], int):
            raise ValueError(f'bad fusion entry {entry!r}')
        N[lab(entry[0]), lab(entry[1]), lab(entry[2])] = entry[3]
    F = {}
    for ent in doc['F']:
        try:
            mu = list(ent.get('mu', [0, 0, 0, 0]))
            key = tuple(lab(ent[k]) for k in 'abcdef') + tuple(int(m) for m in mu)
        except (KeyError, TypeError) as err:
            raise ValueError(f'bad F entry {ent!r}') from err
        if len(key) != 10:
            raise ValueError(f'F entry needs four multiplicity indices: {ent!r}')
        F[key] = _complex(ent.get('v'), 'F entry')
    R = {}
    for ent in doc['R']:
        try:
            mu = list(ent.get('mu', [0, 0]))
            key = tuple(lab(ent[k]) for k in 'abc') + tuple(int(m) for m in mu)
        except (KeyError, TypeError) as err:
            raise ValueError(f'bad R entry {ent!r}') from err
        if len(key) != 5:
            raise ValueError(f'R entry needs two multiplicity indices: {ent!r}')
        R[key] = _complex(ent.get('v'), 'R entry')
    piv = doc.get('pivotal', {})
    pivotal = [_complex(piv[s], 'pivotal') if s in piv else 1. for s in labels]
    return make_category(str(doc['name']), labels, lab(doc['unit']), dual, N, F, R, pivotal,
                         tolerance=tolerance)


def load_category(path, tolerance: float = DEFAULT_TOLERANCE) -> CategoryData:
    """Load a category file (UTF-8 JSON).

    The document has the fields ``name``, ``labels``, ``unit``, ``dual``,
    ``fusion`` (``[a, b, c, N]`` entries), ``F`` (``{a,b,c,d,e,f,mu,v}``),
    ``R`` (``{a,b,c,mu,v}``), ``pivotal`` and ``conventions``, which must equal
    :data:`CONVENTIONS`.  Every entry of every admissible F block and R-symbol
    must be present.
    """
    with open(path, encoding='utf-8') as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as err:
            raise ValueError(f'{path}: not valid JSON ({err})') from err
    return category_from_dict(doc, tolerance)


def category_to_dict(cat: CategoryData) -> dict:
    L = cat.labels
    n = cat.num_labels

    def c(v):
        v = complex(v)
        return [v.real, v.imag]

    fusion = [[L[a], L[b], L[d], int(cat.fusion[a, b, d])]
              for a, b, d in product(range(n), repeat=3) if cat.fusion[a, b, d]]
    F = [{'a': L[a], 'b': L[b], 'c': L[cc], 'd': L[d], 'e': L[e], 'f': L[f],
          'mu': [mu, nu, ka, la], 'v': c(v)}
         for (a, b, cc, d, e, f, mu, nu, ka, la), v in sorted(_raw_f(cat).items())]
    R = [{'a': L[a], 'b': L[b], 'c': L[cc], 'mu': [mu, nu], 'v': c(v)}
         for (a, b, cc, mu, nu), v in sorted(_raw_r(cat).items())]
    return {
        'name': cat.name,
        'labels': list(L),
        'unit': L[cat.unit],
        'dual': {L[a]: L[cat.dual[a]] for a in range(n)},
        'fusion': fusion,
        'F': F,
        'R': R,
        'pivotal': {L[a]: c(cat.pivotal[a]) for a in range(n)},
        'conventions': dict(CONVENTIONS),
    }


def dump_category(cat: CategoryData, path) -> None:
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump(category_to_dict(cat), fh, indent=1)


def check_axioms(cat: CategoryData, seed: int = 0):
    """Evaluate all category axioms; see :func:`tubecat.axioms.check_axioms`."""
    from .axioms import check_axioms as run
    return run(cat, seed)


def s_matrix(cat: CategoryData) -> np.ndarray:
    """Unnormalized S-matrix from the Hopf link; see :func:`tubecat.axioms.s_matrix`."""
    from .axioms import s_matrix as run
    return run(cat)
