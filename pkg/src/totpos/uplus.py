"""The monoid U+(K) in chart coordinates.

An element of the fibre over ``w`` is stored as coordinates on the
canonical (lexicographically minimal) reduced word of ``w``. Charts are
related by braid moves ``i^a j^b i^c = j^{bc/(a+c)} i^{a+c} j^{ab/(a+c)}``
and commutations ``i^a j^b = j^b i^a``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import CartanGraph, WeylElement
from .semifield import RATFUNC, TROPICAL, Semifield, SemifieldMismatch, valuation

__all__ = [
    "ChartError",
    "UPlusElement",
    "unit",
    "from_generator",
    "from_chart",
    "braid_move_coords",
    "apply_move",
    "transition_coords",
    "chart_transition",
    "right_multiply",
    "mul",
    "mul_generator",
    "evaluate_word",
    "component",
    "tropicalize",
    "is_in_N_form",
]


class ChartError(ValueError):
    """A word is not a reduced expression of the required element."""


def braid_move_coords(a, b, c):
    """Coordinates after ``i^a j^b i^c -> j^a' i^b' j^c'``; the map is an involution."""
    s = a + c
    return b * c / s, s, a * b / s


def apply_move(word: tuple, coords: list, move) -> tuple:
    """Apply a ``("swap", p)`` or ``("braid", p)`` move in place on ``coords``; return the new word."""
    kind, p = move
    if kind == "swap":
        coords[p], coords[p + 1] = coords[p + 1], coords[p]
        return word[:p] + (word[p + 1], word[p]) + word[p + 2 :]
    if kind == "braid":
        coords[p], coords[p + 1], coords[p + 2] = braid_move_coords(*coords[p : p + 3])
        i, j = word[p], word[p + 1]
        return word[:p] + (j, i, j) + word[p + 3 :]
    raise ValueError(f"unknown move {kind!r}")


def _check_chart(graph: CartanGraph, w: WeylElement, chart: tuple):
    W = graph.weyl
    if len(chart) != len(w) or W.canonical(tuple(chart)) != w:
        raise ChartError(f"{chart!r} is not a reduced expression of {w.word!r}")


def transition_coords(graph: CartanGraph, chart, coords, target) -> list:
    """Coordinates in chart ``target`` of the element with ``coords`` in ``chart``."""
    chart, target = tuple(chart), tuple(target)
    if len(coords) != len(chart):
        raise ValueError("coordinate vector length does not match the chart")
    if chart == target:
        return list(coords)
    W = graph.weyl
    w = W.canonical(chart)
    if len(w) != len(chart):
        raise ChartError(f"{chart!r} is not reduced")
    _check_chart(graph, w, target)
    coords = list(coords)
    word = chart
    for move in W.braid_path(chart, target):
        word = apply_move(word, coords, move)
    return coords


def right_multiply(graph: CartanGraph, word: tuple, coords: list, i, a) -> tuple:
    """Canonical ``(word, coords)`` of ``phi_word(coords) * i^a``; ``word`` must be canonical."""
    W = graph.weyl
    if not W.descent_right(word, i):
        longer = W.canonical(word + (i,)).word
        return longer, transition_coords(graph, word + (i,), list(coords) + [a], longer)
    # i is a right descent: move to a chart ending in i and merge
    ending = W.canonical(word + (i,)).word + (i,)
    moved = transition_coords(graph, word, coords, ending)
    moved[-1] = moved[-1] + a
    return word, transition_coords(graph, ending, moved, word)


@dataclass(frozen=True, eq=False)
class UPlusElement:
    """``phi_chart(coords)`` in the fibre over ``w``.

    Elements built by this module use the canonical chart ``w.word``;
    :func:`chart_transition` produces views in other charts. Equality
    compares canonical forms.
    """

    graph: CartanGraph
    semifield: Semifield
    w: WeylElement
    chart: tuple
    coords: tuple

    @property
    def is_canonical(self) -> bool:
        return self.chart == self.w.word

    def canonical(self) -> "UPlusElement":
        if self.is_canonical:
            return self
        return chart_transition(self, self.w.word)

    def __eq__(self, other):
        if not isinstance(other, UPlusElement):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return (
            a.graph == b.graph
            and a.semifield == b.semifield
            and a.w == b.w
            and a.coords == b.coords
        )

    __hash__ = None

    def __mul__(self, other):
        return mul(self, other)

    def __repr__(self):
        body = " ".join(f"E{i}({a})" for i, a in zip(self.chart, self.coords))
        return f"UPlusElement({body or '1'})"


def unit(graph: CartanGraph, semifield: Semifield) -> UPlusElement:
    return UPlusElement(graph, semifield, WeylElement(()), (), ())


def from_generator(graph: CartanGraph, i, a) -> UPlusElement:
    graph.check_word((i,))
    return UPlusElement(graph, a.semifield, WeylElement((i,)), (i,), (a,))


def from_chart(graph: CartanGraph, chart, coords) -> UPlusElement:
    """``phi_chart(coords)`` for a reduced word ``chart``, returned in canonical form."""
    chart = graph.check_word(chart)
    coords = tuple(coords)
    if len(coords) != len(chart):
        raise ValueError("coordinate vector length does not match the chart")
    w = graph.weyl.canonical(chart)
    if len(w) != len(chart):
        raise ChartError(f"{chart!r} is not reduced")
    if not coords:
        raise ValueError("use unit() for the empty word")
    K = coords[0].semifield
    return UPlusElement(graph, K, w, w.word, tuple(transition_coords(graph, chart, coords, w.word)))


def evaluate_word(graph: CartanGraph, word, coords, semifield: Semifield | None = None) -> UPlusElement:
    """The product ``i1^a1 ... im^am`` for an arbitrary (not necessarily reduced) word."""
    coords = list(coords)
    if semifield is None:
        if not coords:
            raise ValueError("semifield required for the empty product")
        semifield = coords[0].semifield
    x = unit(graph, semifield)
    for i, a in zip(word, coords):
        x = mul_generator(x, i, a)
    return x


def chart_transition(x: UPlusElement, target) -> UPlusElement:
    target = x.graph.check_word(target)
    _check_chart(x.graph, x.w, target)
    coords = transition_coords(x.graph, x.chart, x.coords, target)
    return UPlusElement(x.graph, x.semifield, x.w, target, tuple(coords))


def mul_generator(x: UPlusElement, i, a) -> UPlusElement:
    if a.semifield != x.semifield:
        raise SemifieldMismatch("generator value from a different semifield")
    x = x.canonical()
    word, coords = right_multiply(x.graph, x.w.word, list(x.coords), i, a)
    return UPlusElement(x.graph, x.semifield, WeylElement(word), word, tuple(coords))


def mul(x: UPlusElement, y: UPlusElement) -> UPlusElement:
    if x.semifield != y.semifield:
        raise SemifieldMismatch("cannot multiply elements over different semifields")
    if x.graph != y.graph:
        raise ValueError("elements belong to different Cartan graphs")
    for i, a in zip(y.chart, y.coords):
        x = mul_generator(x, i, a)
    return x.canonical()


def component(x: UPlusElement) -> WeylElement:
    return x.w


def tropicalize(x: UPlusElement) -> UPlusElement:
    if x.semifield is not RATFUNC:
        raise SemifieldMismatch("tropicalization needs coordinates in Q(t)>0")
    return UPlusElement(x.graph, TROPICAL, x.w, x.chart, tuple(valuation(a) for a in x.coords))


def is_in_N_form(x: UPlusElement) -> bool:
    """Whether a tropical element lies in the image of N^m (any chart gives the same answer)."""
    if x.semifield is not TROPICAL:
        raise SemifieldMismatch("the N-form test applies to tropical elements")
    return all(a.value >= 0 for a in x.canonical().coords)
