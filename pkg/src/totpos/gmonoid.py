"""The monoid G(K) generated by ``i^a``, ``(-i)^a`` and the torus letters.

Canonical chart of an element of the fibre over ``(w, w')``::

    (-j1)...(-jn)  |  T(1) ... T(r)  |  i1 ... im
    canonical word of w'   each node once   canonical word of w
                           in node order

so right multiplication by a positive letter is the cheap case. A negative
letter is pushed left through the positive block with

    (i)^c (-i)^a = (-i)^{a/s} T_i^{s} (i)^{c/s},    s = 1 + ca,

commuting past ``(i)^c`` with ``i != j``; every torus letter produced on
the way is routed left into the torus block immediately, rescaling the
letters it passes through ``T_j^t (e i)^b = (e i)^{t^{e(i:j)} b} T_j^t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from . import uplus
from .coxeter import CartanGraph, WeylElement
from .semifield import RATFUNC, TROPICAL, Semifield, SemifieldMismatch, valuation
from .uplus import ChartError, UPlusElement

__all__ = [
    "Letter",
    "Pos",
    "Neg",
    "Torus",
    "GElement",
    "ChartError",
    "unit",
    "from_letter",
    "mul_letter_right",
    "mul",
    "evaluate_chart",
    "evaluate_word",
    "component",
    "chart_components",
    "canonical_chart",
    "charts",
    "apply_gmove",
    "path_to_canonical",
    "transition_coords",
    "chart_transition",
    "embed_uplus",
    "tropicalize",
]


class Letter(NamedTuple):
    """``sign`` is +1 for ``i``, -1 for ``-i`` and 0 for the torus letter of ``node``."""

    sign: int
    node: object

    def __str__(self):
        return {1: "E", -1: "F", 0: "T"}[self.sign] + str(self.node)


def Pos(i) -> Letter:
    return Letter(1, i)


def Neg(i) -> Letter:
    return Letter(-1, i)


def Torus(i) -> Letter:
    return Letter(0, i)


@dataclass(frozen=True, eq=False)
class GElement:
    """Canonical form of an element of ``G_{w,-w'}(K)``."""

    graph: CartanGraph
    semifield: Semifield
    w: WeylElement
    w_prime: WeylElement
    neg: tuple
    torus: tuple
    pos: tuple

    @property
    def chart(self) -> tuple:
        return canonical_chart(self.graph, self.w, self.w_prime)

    @property
    def coords(self) -> tuple:
        return self.neg + self.torus + self.pos

    @property
    def M(self) -> int:
        return len(self.w) + len(self.w_prime) + self.graph.rank

    def __eq__(self, other):
        if not isinstance(other, GElement):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.semifield == other.semifield
            and self.w == other.w
            and self.w_prime == other.w_prime
            and self.coords == other.coords
        )

    __hash__ = None

    def __mul__(self, other):
        return mul(self, other)

    def __repr__(self):
        return f"GElement({format_element(self)})"

    def to_json(self) -> dict:
        return {
            "w": [str(i) for i in self.w.word],
            "w_prime": [str(i) for i in self.w_prime.word],
            "coords": {
                "pos": [str(a) for a in self.pos],
                "torus": [str(a) for a in self.torus],
                "neg": [str(a) for a in self.neg],
            },
        }


def format_element(g: GElement) -> str:
    """Element literal for the canonical chart; unit torus letters are omitted."""
    one = g.semifield.one()
    atoms = []
    for letter, a in zip(g.chart, g.coords):
        if letter.sign == 0 and a == one:
            continue
        atoms.append(f"{letter}({a})")
    return " ".join(atoms) if atoms else f"T{g.graph.nodes[0]}({one})"


@lru_cache(maxsize=None)
def canonical_chart(graph: CartanGraph, w: WeylElement, w_prime: WeylElement) -> tuple:
    return (
        tuple(Neg(i) for i in w_prime.word)
        + tuple(Torus(i) for i in graph.nodes)
        + tuple(Pos(i) for i in w.word)
    )


def unit(graph: CartanGraph, semifield: Semifield) -> GElement:
    e = WeylElement(())
    return GElement(graph, semifield, e, e, (), (semifield.one(),) * graph.rank, ())


def _torus_scale(graph: CartanGraph, letters, coords, j, t, sign_factor):
    # rescale letters that a torus letter T_j^t passes: (e i)^b -> (e i)^{t^{sign_factor * e (i:j)} b}
    for k, i in enumerate(letters):
        n = sign_factor * graph.pairing(i, j)
        if n:
            coords[k] = coords[k] * t**n


def mul_letter_right(g: GElement, letter: Letter, a) -> GElement:
    """Canonical form of ``g * letter^a``."""
    if a.semifield != g.semifield:
        raise SemifieldMismatch("letter exponent from a different semifield")
    graph = g.graph
    sign, j = letter
    graph.check_word((j,))
    one = g.semifield.one()
    if sign == 1:
        word, pos = uplus.right_multiply(graph, g.w.word, list(g.pos), j, a)
        return GElement(graph, g.semifield, WeylElement(word), g.w_prime, g.neg, g.torus, tuple(pos))

    pos_word = g.w.word
    pos = list(g.pos)
    torus = list(g.torus)
    jx = graph.index[j]

    if sign == 0:
        if a == one:
            return g
        # (i)^b T_j^a = T_j^a (i)^{a^{-(i:j)} b}
        _torus_scale(graph, pos_word, pos, j, a, -1)
        torus[jx] = torus[jx] * a
        return GElement(graph, g.semifield, g.w, g.w_prime, g.neg, tuple(torus), tuple(pos))

    m = a
    for k in range(len(pos_word) - 1, -1, -1):
        if pos_word[k] != j:
            continue
        c = pos[k]
        s = one + c * m
        pos[k] = c / s
        # moving letter becomes (-j)^{m/s}; the emitted T_j^s passes it: m/s -> s^2 m/s
        m = m * s
        _torus_scale(graph, pos_word[:k], pos, j, s, -1)
        torus[jx] = torus[jx] * s
    # past the torus block: T_k^t (-j)^x = (-j)^{t^{-(j:k)} x} T_k^t
    for kx, node in enumerate(graph.nodes):
        n = -graph.pairing(j, node)
        if n:
            m = m * torus[kx] ** n
    neg_word, neg = uplus.right_multiply(graph, g.w_prime.word, list(g.neg), j, m)
    return GElement(
        graph, g.semifield, g.w, WeylElement(neg_word), tuple(neg), tuple(torus), tuple(pos)
    )


def from_letter(graph: CartanGraph, letter: Letter, a) -> GElement:
    return mul_letter_right(unit(graph, a.semifield), letter, a)


def evaluate_word(graph: CartanGraph, letters, coords, semifield: Semifield | None = None) -> GElement:
    """Product of arbitrary letters (no chart conditions)."""
    coords = list(coords)
    if len(coords) != len(letters):
        raise ValueError("one coordinate per letter is required")
    if semifield is None:
        if not coords:
            raise ValueError("semifield required for the empty product")
        semifield = coords[0].semifield
    g = unit(graph, semifield)
    for letter, a in zip(letters, coords):
        g = mul_letter_right(g, Letter(*letter), a)
    return g


def mul(g: GElement, h: GElement) -> GElement:
    if g.semifield != h.semifield:
        raise SemifieldMismatch("cannot multiply elements over different semifields")
    if g.graph != h.graph:
        raise ValueError("elements belong to different Cartan graphs")
    for letter, a in zip(h.chart, h.coords):
        g = mul_letter_right(g, letter, a)
    return g


def component(g: GElement) -> tuple:
    return g.w, g.w_prime


def chart_components(graph: CartanGraph, h) -> tuple:
    """``(w, w')`` for a valid chart ``h``; raises :class:`ChartError` otherwise."""
    W = graph.weyl
    h = tuple(Letter(*x) for x in h)
    pos = tuple(x.node for x in h if x.sign == 1)
    neg = tuple(x.node for x in h if x.sign == -1)
    tor = [x.node for x in h if x.sign == 0]
    graph.check_word(pos + neg + tuple(tor))
    if sorted(tor, key=graph.index.__getitem__) != list(graph.nodes):
        raise ChartError("a chart contains every torus letter exactly once")
    w, wp = W.canonical(pos), W.canonical(neg)
    if len(w) != len(pos) or len(wp) != len(neg):
        raise ChartError("signed subsequences of a chart must be reduced words")
    return w, wp


def evaluate_chart(graph: CartanGraph, h, coords) -> GElement:
    """``psi_h(coords)`` in canonical form."""
    h = tuple(Letter(*x) for x in h)
    chart_components(graph, h)
    coords = list(coords)
    if len(coords) != len(h):
        raise ValueError(f"chart has {len(h)} letters but {len(coords)} coordinates were given")
    return evaluate_word(graph, h, coords)


def charts(graph: CartanGraph, w: WeylElement, w_prime: WeylElement):
    """All charts of ``G_{w,-w'}`` (shuffles of reduced words and the torus letters)."""
    W = graph.weyl
    pos_words = W.reduced_expressions(w)
    neg_words = W.reduced_expressions(w_prime)
    tor = [Torus(i) for i in graph.nodes]
    M = len(w) + len(w_prime) + len(tor)

    def shuffles(seqs):
        seqs = [s for s in seqs if s]
        if not seqs:
            yield ()
            return
        for k, s in enumerate(seqs):
            rest = seqs[:k] + [s[1:]] + seqs[k + 1 :]
            for tail in shuffles(rest):
                yield (s[0],) + tail

    out = []
    for pw in pos_words:
        for nw in neg_words:
            # torus letters are distinct, so shuffle them as singleton sequences
            seqs = [tuple(Pos(i) for i in pw), tuple(Neg(i) for i in nw)] + [(t,) for t in tor]
            for h in shuffles(seqs):
                assert len(h) == M
                out.append(h)
    return out


# ---------------------------------------------------------------------------
# local moves between charts


def _swap_coords(graph, x: Letter, y: Letter, a, b):
    """Coordinates after swapping adjacent letters ``x^a y^b -> y^{b'} x^{a'}``."""
    if x.sign == 0 and y.sign != 0:
        # T_j^a (e i)^b = (e i)^{a^{e(i:j)} b} T_j^a
        n = y.sign * graph.pairing(y.node, x.node)
        return (b * a**n if n else b), a
    if x.sign != 0 and y.sign == 0:
        # (e i)^a T_j^b = T_j^b (e i)^{b^{-e(i:j)} a}
        n = -x.sign * graph.pairing(x.node, y.node)
        return b, (a * b**n if n else a)
    if x.sign == 0 and y.sign == 0:
        return b, a
    if x.node == y.node or (x.sign == y.sign and graph.pairing(x.node, y.node) != 0):
        raise ChartError(f"letters {x} and {y} do not commute")
    return b, a


def _exchange_forward(one, eps, a, b, c):
    """(e i)^a (-e i)^b T_i^c  ->  (-e i)^B T_i^C (e i)^A."""
    s = one + a * b
    return b / s, c * s**eps, a * c ** (-2 * eps) / s


def _exchange_backward(one, eps, B, C, A):
    """Inverse of :func:`_exchange_forward`."""
    c2 = C ** (2 * eps)
    d = one + A * B * c2
    return A * c2 / d, B * d, C * d ** (-eps)


def apply_gmove(graph: CartanGraph, word: tuple, coords: list, move, one=None) -> tuple:
    """Apply one local chart move in place on ``coords`` and return the new chart.

    Moves: ``("swap", p)``, ``("braid", p)`` on same-sign letters,
    ``("exchange", p)`` rewriting ``(e i)(-e i)T_i`` to ``(-e i)T_i(e i)`` and
    ``("exchange_inv", p)`` for the reverse.
    """
    kind, p = move
    if kind == "swap":
        x, y = word[p], word[p + 1]
        coords[p], coords[p + 1] = _swap_coords(graph, x, y, coords[p], coords[p + 1])
        return word[:p] + (y, x) + word[p + 2 :]
    if kind == "braid":
        x, y, z = word[p : p + 3]
        if not (x == z and x.sign == y.sign != 0 and graph.pairing(x.node, y.node) == -1):
            raise ChartError(f"no braid move at {p}")
        coords[p], coords[p + 1], coords[p + 2] = uplus.braid_move_coords(*coords[p : p + 3])
        return word[:p] + (y, x, y) + word[p + 3 :]
    if one is None:
        one = coords[p].semifield.one()
    x, y, z = word[p : p + 3]
    if kind == "exchange":
        if not (x.sign != 0 and y == Letter(-x.sign, x.node) and z == Torus(x.node)):
            raise ChartError(f"no exchange move at {p}")
        coords[p], coords[p + 1], coords[p + 2] = _exchange_forward(one, x.sign, *coords[p : p + 3])
        return word[:p] + (y, z, x) + word[p + 3 :]
    if kind == "exchange_inv":
        if not (z.sign != 0 and x == Letter(-z.sign, z.node) and y == Torus(z.node)):
            raise ChartError(f"no inverse exchange move at {p}")
        coords[p], coords[p + 1], coords[p + 2] = _exchange_backward(one, z.sign, *coords[p : p + 3])
        return word[:p] + (z, x, y) + word[p + 3 :]
    raise ValueError(f"unknown move {kind!r}")


_INVERSE = {"swap": "swap", "braid": "braid", "exchange": "exchange_inv", "exchange_inv": "exchange"}


def _letters_after(word, move):
    kind, p = move
    if kind == "swap":
        return word[:p] + (word[p + 1], word[p]) + word[p + 2 :]
    x, y, z = word[p : p + 3]
    if kind == "braid":
        return word[:p] + (y, x, y) + word[p + 3 :]
    if kind == "exchange":
        return word[:p] + (y, z, x) + word[p + 3 :]
    return word[:p] + (z, x, y) + word[p + 3 :]


@lru_cache(maxsize=None)
def path_to_canonical(graph: CartanGraph, h: tuple) -> tuple:
    """Local moves taking chart ``h`` to the canonical chart of its fibre.

    Torus letters are parked at the right end. Signed letters are sorted
    negative-before-positive; for equal nodes this uses the exchange move,
    which borrows the matching torus letter. Then the torus block is put in
    node order and each signed block is braided to its canonical word.
    """
    w, wp = chart_components(graph, h)
    word = tuple(Letter(*x) for x in h)
    moves = []

    def do(move):
        nonlocal word
        moves.append(move)
        word = _letters_after(word, move)

    n_signed = len(w) + len(wp)

    def park_torus():
        changed = True
        while changed:
            changed = False
            for p in range(len(word) - 1):
                if word[p].sign == 0 and word[p + 1].sign != 0:
                    do(("swap", p))
                    changed = True

    park_torus()
    while True:
        p = next(
            (k for k in range(n_signed - 1) if word[k].sign == 1 and word[k + 1].sign == -1),
            None,
        )
        if p is None:
            break
        if word[p].node != word[p + 1].node:
            do(("swap", p))
            continue
        q = word.index(Torus(word[p].node))
        while q > p + 2:
            do(("swap", q - 1))
            q -= 1
        do(("exchange", p))
        park_torus()

    r = graph.rank
    n_neg = len(wp)

    def rank_of(x):
        if x.sign == -1:
            return 0
        if x.sign == 0:
            return 1 + graph.index[x.node]
        return 1 + r

    changed = True
    while changed:
        changed = False
        for p in range(len(word) - 1):
            if rank_of(word[p]) > rank_of(word[p + 1]):
                do(("swap", p))
                changed = True

    W = graph.weyl
    neg_now = tuple(x.node for x in word[:n_neg])
    for kind, p in W.braid_path(neg_now, wp.word):
        do((kind, p))
    pos_start = n_neg + r
    pos_now = tuple(x.node for x in word[pos_start:])
    for kind, p in W.braid_path(pos_now, w.word):
        do((kind, pos_start + p))
    assert word == canonical_chart(graph, w, wp)
    return tuple(moves)


def _path_between(graph: CartanGraph, h: tuple, target: tuple):
    forward = path_to_canonical(graph, h)
    back = path_to_canonical(graph, target)
    return list(forward) + [(_INVERSE[k], p) for k, p in reversed(back)]


def transition_coords(graph: CartanGraph, h, coords, target) -> list:
    """Coordinates in chart ``target`` of ``psi_h(coords)``."""
    h = tuple(Letter(*x) for x in h)
    target = tuple(Letter(*x) for x in target)
    coords = list(coords)
    if len(coords) != len(h):
        raise ValueError("coordinate vector length does not match the chart")
    if chart_components(graph, h) != chart_components(graph, target):
        raise ChartError("target chart belongs to a different fibre")
    if h == target:
        return coords
    one = coords[0].semifield.one()
    word = h
    for move in _path_between(graph, h, target):
        word = apply_gmove(graph, word, coords, move, one)
    assert word == target
    return coords


def chart_transition(g: GElement, target) -> list:
    """Coordinates of ``g`` in the chart ``target``."""
    return transition_coords(g.graph, g.chart, g.coords, target)


def from_canonical_coords(graph: CartanGraph, w, w_prime, coords) -> GElement:
    coords = tuple(coords)
    n, r = len(w_prime), graph.rank
    if len(coords) != n + r + len(w):
        raise ValueError("wrong number of coordinates")
    K = coords[0].semifield
    return GElement(graph, K, w, w_prime, coords[:n], coords[n : n + r], coords[n + r :])


def embed_uplus(x: UPlusElement, sign: int = 1) -> GElement:
    """Image of ``x`` under ``i^a -> i^a`` (sign +1) or ``i^a -> (-i)^a`` (sign -1)."""
    x = x.canonical()
    g = unit(x.graph, x.semifield)
    e = WeylElement(())
    if sign == 1:
        return GElement(x.graph, x.semifield, x.w, e, (), g.torus, x.coords)
    if sign == -1:
        return GElement(x.graph, x.semifield, e, x.w, x.coords, g.torus, ())
    raise ValueError("sign must be +1 or -1")


def tropicalize(g: GElement) -> GElement:
    if g.semifield is not RATFUNC:
        raise SemifieldMismatch("tropicalization needs coordinates in Q(t)>0")

    def v(xs):
        return tuple(valuation(a) for a in xs)

    return GElement(g.graph, TROPICAL, g.w, g.w_prime, v(g.neg), v(g.torus), v(g.pos))
