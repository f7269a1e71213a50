"""Slice-wise string diagrams, a small text format for them, and their evaluation.

A diagram is a list of horizontal slices read from top to bottom.  Each slice
tiles the current word of strands with cells:

========================  =============================================
``id <l>`` or ``id``      a strand passing straight through
``box <name>``            a bound morphism; consumes its source word
``over`` / ``under``      crossing of two adjacent strands, left strand over / under
``cup <l>``               creates ``l l*``; ``cup <l>*`` creates ``l* l``
``cap <l>``               annihilates ``l l*``; ``cap <l>*`` annihilates ``l* l``
========================  =============================================

Example (the Hopf link of ``a`` and ``b`` is the trace of the double braiding)::

    in a b
    over
    over
    out a b

``glue <l>`` marks a cylinder: the leftmost input strand and the rightmost output
strand are the same simple strand ``l`` winding around the back.  Lines may also
be separated by ``;`` and ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .category_data import CategoryData
from .homspace import Morphism, braiding, cap, compose, cup, embed

__all__ = [
    'Cell', 'Slice', 'DiagramIR', 'DiagramSyntaxError', 'DiagramBuilder', 'parse_diagram',
    'evaluate', 'evaluate_cylinder', 'stack',
]


@dataclass(frozen=True)
class Cell:
    """One cell of a slice.

    Attributes
    ----------
    kind : str
        One of ``'id', 'box', 'over', 'under', 'cup', 'cap'``.
    source, target : tuple of int
        The strands consumed and produced.
    name : str
        Box name (boxes only).
    dual : bool
        For cups and caps: True for the ``l* l`` orientation.
    """
    kind: str
    source: tuple
    target: tuple
    name: str = ''
    dual: bool = False


@dataclass(frozen=True)
class Slice:
    cells: tuple

    @property
    def source(self) -> tuple:
        return sum((c.source for c in self.cells), ())

    @property
    def target(self) -> tuple:
        return sum((c.target for c in self.cells), ())


@dataclass(frozen=True)
class DiagramIR:
    """A diagram between `boundary_in` and `boundary_out`.

    If `glue` is a label ``R``, the diagram lives on a cylinder and is read as a
    morphism ``R X -> Y R`` where ``boundary_in = (R,) + X`` and
    ``boundary_out = Y + (R,)``.
    """
    boundary_in: tuple
    boundary_out: tuple
    slices: tuple = ()
    glue: int | None = None

    def __post_init__(self):
        word = self.boundary_in
        for k, s in enumerate(self.slices):
            if s.source != word:
                raise ValueError(f'slice {k} consumes {s.source}, but the strands are {word}')
            word = s.target
        if word != self.boundary_out:
            raise ValueError(f'diagram ends with strands {word}, declared output {self.boundary_out}')
        if self.glue is not None:
            if not self.boundary_in or self.boundary_in[0] != self.glue:
                raise ValueError('glued strand must be the leftmost input strand')
            if not self.boundary_out or self.boundary_out[-1] != self.glue:
                raise ValueError('glued strand must be the rightmost output strand')

    @property
    def box_names(self) -> set:
        return {c.name for s in self.slices for c in s.cells if c.kind == 'box'}


def stack(d1: DiagramIR, d2: DiagramIR) -> DiagramIR:
    """`d1` on top of `d2`."""
    if d1.boundary_out != d2.boundary_in:
        raise ValueError('cannot stack diagrams with mismatched boundaries')
    return DiagramIR(d1.boundary_in, d2.boundary_out, d1.slices + d2.slices)


class DiagramSyntaxError(ValueError):
    """Error in diagram text, with 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f'line {line}, column {column}: {message}')
        self.line = line
        self.column = column


_TOKEN = re.compile(r'\s*([A-Za-z0-9_.\-+^\']+\*?)')


def _tokens(text: str, line: int, col0: int):
    """Split `text` into ``(token, column)`` pairs or raise on stray characters."""
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise DiagramSyntaxError(f'unexpected character {text[pos]!r}', line, col0 + pos + 1)
        out.append((m.group(1), col0 + m.start(1) + 1))
        pos = m.end()
    return out


def parse_diagram(text: str, cat: CategoryData, boxes: Mapping[str, object] | None = None) -> DiagramIR:
    """Parse diagram text into a :class:`DiagramIR`.

    Parameters
    ----------
    text : str
    cat : CategoryData
        Used to resolve label names.
    boxes : dict, optional
        ``name -> Morphism`` (or ``name -> (source, target)``) giving box shapes.

    Raises
    ------
    DiagramSyntaxError
        For unknown keywords or labels, width or label mismatches, unknown boxes,
        a missing ``in`` line, or a glue declaration on a composite strand.
    """
    boxes = {} if boxes is None else boxes
    lines = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split('#', 1)[0]
        col = 0
        for part in body.split(';'):
            if part.strip():
                lines.append((ln, col, part))
            col += len(part) + 1

    def label(tok, ln, col):
        try:
            return cat.index(tok)
        except KeyError:
            raise DiagramSyntaxError(f'unknown label {tok!r}', ln, col) from None

    def shape(name, ln, col):
        if name not in boxes:
            raise DiagramSyntaxError(f'unknown box {name!r}', ln, col)
        b = boxes[name]
        if isinstance(b, Morphism):
            return b.source, b.target
        src, tgt = b
        return cat.word(src), cat.word(tgt)

    boundary_in = boundary_out = glue = None
    slices = []
    word = None
    for ln, col0, part in lines:
        toks = _tokens(part.replace('|', ' '), ln, col0)
        head = toks[0][0]
        if head in ('in', 'out', 'glue') and '|' in part:
            raise DiagramSyntaxError(f"'|' is not allowed in a {head} line", ln, col0 + part.index('|') + 1)
        if head == 'in':
            if boundary_in is not None:
                raise DiagramSyntaxError('duplicate in line', ln, toks[0][1])
            boundary_in = tuple(label(t, ln, c) for t, c in toks[1:])
            word = boundary_in
            continue
        if head == 'out':
            if boundary_out is not None:
                raise DiagramSyntaxError('duplicate out line', ln, toks[0][1])
            boundary_out = tuple(label(t, ln, c) for t, c in toks[1:])
            continue
        if head == 'glue':
            if len(toks) != 2:
                col = toks[2][1] if len(toks) > 2 else toks[0][1]
                raise DiagramSyntaxError('glue takes exactly one simple label', ln, col)
            glue = label(toks[1][0], ln, toks[1][1])
            continue
        if word is None:
            raise DiagramSyntaxError('slice before the in line', ln, toks[0][1])
        if boundary_out is not None:
            raise DiagramSyntaxError('slice after the out line', ln, toks[0][1])
        # one slice: cells separated by '|'
        cells = []
        pos = 0
        col = col0
        for chunk in part.split('|'):
            ctoks = _tokens(chunk, ln, col)
            col += len(chunk) + 1
            if not ctoks:
                raise DiagramSyntaxError('empty cell', ln, col - len(chunk))
            kw, kcol = ctoks[0]
            args = ctoks[1:]
            if kw == 'cross':
                if len(args) != 1 or args[0][0] not in ('over', 'under'):
                    raise DiagramSyntaxError("cross needs 'over' or 'under'", ln, kcol)
                kw, kcol = args[0]
                args = []
            if kw == 'id':
                if len(args) > 1:
                    raise DiagramSyntaxError('id takes at most one label', ln, args[1][1])
                if pos >= len(word):
                    raise DiagramSyntaxError('width mismatch: no strand left for id', ln, kcol)
                lab = word[pos] if not args else label(args[0][0], ln, args[0][1])
                cells.append(Cell('id', (lab,), (lab,)))
            elif kw in ('over', 'under'):
                if args:
                    raise DiagramSyntaxError(f'{kw} takes no arguments', ln, args[0][1])
                if pos + 2 > len(word):
                    raise DiagramSyntaxError('width mismatch: crossing needs two strands', ln, kcol)
                a, b = word[pos], word[pos + 1]
                cells.append(Cell(kw, (a, b), (b, a)))
            elif kw in ('cup', 'cap'):
                if len(args) != 1:
                    raise DiagramSyntaxError(f'{kw} takes one label', ln, kcol)
                tok, tcol = args[0]
                dual = tok.endswith('*')
                a = label(tok.rstrip('*'), ln, tcol)
                pair = (cat.dual[a], a) if dual else (a, cat.dual[a])
                if kw == 'cup':
                    cells.append(Cell('cup', (), pair, dual=dual))
                else:
                    if pos + 2 > len(word):
                        raise DiagramSyntaxError('width mismatch: cap needs two strands', ln, kcol)
                    cells.append(Cell('cap', pair, (), dual=dual))
            elif kw == 'box':
                if len(args) != 1:
                    raise DiagramSyntaxError('box takes one name', ln, kcol)
                name, ncol = args[0]
                src, tgt = shape(name, ln, ncol)
                if pos + len(src) > len(word):
                    raise DiagramSyntaxError(f'width mismatch: box {name} needs {len(src)} strands', ln, ncol)
                cells.append(Cell('box', src, tgt, name=name))
            else:
                raise DiagramSyntaxError(f'unknown cell {kw!r}', ln, kcol)
            cell = cells[-1]
            got = word[pos:pos + len(cell.source)]
            if got != cell.source:
                names = cat.word_name
                raise DiagramSyntaxError(
                    f'label mismatch: cell expects [{names(cell.source)}], strands are [{names(got)}]', ln, kcol)
            pos += len(cell.source)
        if pos != len(word):
            raise DiagramSyntaxError(f'width mismatch: slice covers {pos} of {len(word)} strands', ln, col0 + 1)
        s = Slice(tuple(cells))
        slices.append(s)
        word = s.target
    if boundary_in is None:
        raise DiagramSyntaxError('missing in line', 1, 1)
    if boundary_out is None:
        boundary_out = word
    if boundary_out != word:
        ln = lines[-1][0] if lines else 1
        raise DiagramSyntaxError(
            f'width mismatch: declared output [{cat.word_name(boundary_out)}] but strands are [{cat.word_name(word)}]',
            ln, 1)
    if glue is not None:
        if not boundary_in or boundary_in[0] != glue or boundary_out[-1:] != (glue,):
            raise DiagramSyntaxError('glued strand must be a simple strand entering on the left and leaving on the right',
                                     1, 1)
    return DiagramIR(boundary_in, boundary_out, tuple(slices), glue)


class DiagramBuilder:
    """Incremental construction of a :class:`DiagramIR` one cell per slice.

    Each method appends a slice that applies one cell at strand position `at`
    and identities elsewhere.
    """

    def __init__(self, cat: CategoryData, boundary_in, glue=None):
        self.cat = cat
        self.boundary_in = cat.word(boundary_in)
        self.word = self.boundary_in
        self.slices = []
        self.glue = None if glue is None else cat.index(glue)

    def _apply(self, cell: Cell, at: int):
        n = len(cell.source)
        if self.word[at:at + n] != cell.source or at < 0 or at + n > len(self.word):
            raise ValueError(f'cell {cell.kind} does not fit strands {self.word} at {at}')
        left = [Cell('id', (x,), (x,)) for x in self.word[:at]]
        right = [Cell('id', (x,), (x,)) for x in self.word[at + n:]]
        s = Slice(tuple(left + [cell] + right))
        self.slices.append(s)
        self.word = s.target
        return self

    def box(self, name: str, source, target, at: int = 0):
        return self._apply(Cell('box', self.cat.word(source), self.cat.word(target), name=name), at)

    def cross(self, at: int, over: bool = True):
        a, b = self.word[at], self.word[at + 1]
        return self._apply(Cell('over' if over else 'under', (a, b), (b, a)), at)

    def cup(self, label, at: int, dual: bool = False):
        a = self.cat.index(label)
        pair = (self.cat.dual[a], a) if dual else (a, self.cat.dual[a])
        return self._apply(Cell('cup', (), pair, dual=dual), at)

    def cap(self, label, at: int, dual: bool = False):
        a = self.cat.index(label)
        pair = (self.cat.dual[a], a) if dual else (a, self.cat.dual[a])
        return self._apply(Cell('cap', pair, (), dual=dual), at)

    def cup_word(self, X, at: int, dual: bool = False):
        """Nested cups creating ``X X^v`` (or ``X^v X``) at position `at`."""
        X = self.cat.word(X)
        if dual:
            for k, x in enumerate(reversed(X)):
                self.cup(x, at + k, dual=True)
        else:
            for k, x in enumerate(X):
                self.cup(x, at + k)
        return self

    def cap_word(self, X, at: int, dual: bool = False):
        """Nested caps annihilating ``X X^v`` (or ``X^v X``) starting at `at`."""
        X = self.cat.word(X)
        n = len(X)
        if dual:
            for k, x in enumerate(X):
                self.cap(x, at + n - 1 - k, dual=True)
        else:
            for k, x in enumerate(reversed(X)):
                self.cap(x, at + n - 1 - k)
        return self

    def build(self) -> DiagramIR:
        return DiagramIR(self.boundary_in, self.word, tuple(self.slices), self.glue)


def _cell_morphism(cat: CategoryData, cell: Cell, bindings: Mapping) -> Morphism:
    if cell.kind == 'id':
        return Morphism.identity(cat, cell.source)
    if cell.kind == 'box':
        if cell.name not in bindings:
            raise KeyError(f'unbound box {cell.name!r}')
        m = bindings[cell.name]
        if m.source != cell.source or m.target != cell.target:
            raise ValueError(f'box {cell.name!r} bound to a morphism of the wrong shape')
        return m
    if cell.kind in ('over', 'under'):
        a, b = cell.source
        return braiding(cat, a, b, over=cell.kind == 'over')
    if cell.kind == 'cup':
        return cup(cat, cell.target[1] if cell.dual else cell.target[0], dual=cell.dual)
    if cell.kind == 'cap':
        return cap(cat, cell.source[1] if cell.dual else cell.source[0], dual=cell.dual)
    raise ValueError(f'unknown cell kind {cell.kind!r}')


def _slice_morphism(cat: CategoryData, s: Slice, bindings: Mapping) -> Morphism | None:
    """The morphism of one slice, or None if it is an identity."""
    result = None
    word = s.source
    pos = 0
    for cell in s.cells:
        n = len(cell.source)
        if cell.kind != 'id':
            # apply cells left to right; strands to the right still carry the old labels
            left = word[:pos]
            right = word[pos + n:]
            if cell.kind == 'box':
                m = embed(left, _cell_morphism(cat, cell, bindings), right)
            else:
                key = ('cell', left, cell, right)
                m = cat.cached(key, lambda: embed(left, _cell_morphism(cat, cell, bindings), right))
            result = m if result is None else compose(m, result)
            word = left + cell.target + right
        pos += len(cell.target)
    return result


def evaluate(cat: CategoryData, d: DiagramIR, bindings: Mapping[str, Morphism] | None = None) -> Morphism:
    """Evaluate a diagram without glue to a morphism ``boundary_in -> boundary_out``."""
    if d.glue is not None:
        raise ValueError('diagram has a glued strand; use evaluate_cylinder')
    return _run(cat, d, bindings or {})


def evaluate_cylinder(cat: CategoryData, d: DiagramIR, bindings: Mapping[str, Morphism] | None = None) -> Morphism:
    """Read a glued diagram vertically as an element of ``Hom(R X, Y R)``."""
    if d.glue is None:
        raise ValueError('diagram has no glued strand')
    return _run(cat, d, bindings or {})


def _run(cat, d, bindings) -> Morphism:
    missing = d.box_names - set(bindings)
    if missing:
        raise KeyError(f'unbound boxes {sorted(missing)}')
    result = Morphism.identity(cat, d.boundary_in)
    for s in d.slices:
        m = _slice_morphism(cat, s, bindings)
        if m is not None:
            result = compose(m, result)
    return result
