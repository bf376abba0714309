"""Cartan graphs, Weyl groups and reduced words.

Group elements are handled through the geometric representation on the
root lattice: ``s_i(v) = v - (sum_j A[i][j] v_j) e_i``. A letter ``i`` is a
right descent of ``w`` iff ``w(alpha_i)`` is a negative root. This works
whether or not the Cartan matrix is positive definite.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

__all__ = [
    "CartanGraph",
    "WeylElement",
    "InfiniteGroupError",
    "cartan_matrix",
    "is_positive_definite",
    "type_A",
    "cartan_type",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 10**6

Node = Hashable
Word = tuple


class InfiniteGroupError(RuntimeError):
    """Raised when a finiteness-dependent computation exceeds its exploration cap."""


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element stored as its lexicographically minimal reduced word."""

    word: tuple

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self):
        return len(self.word)


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True)
class CartanGraph:
    """A finite graph (I, H); the node order fixes the total order on I.

    ``edges`` is a multiset of two-element node pairs; repeated pairs raise
    the multiplicity of the edge.
    """

    nodes: tuple
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node names")
        known = set(self.nodes)
        for e in self.edges:
            if len(e) != 2 or e[0] == e[1]:
                raise ValueError(f"edge {e!r} must join two distinct nodes")
            if e[0] not in known or e[1] not in known:
                raise ValueError(f"edge {e!r} mentions an unknown node")

    @classmethod
    def from_json(cls, data) -> "CartanGraph":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        return cls(tuple(data["nodes"]), tuple(tuple(e) for e in data.get("edges", ())))

    @classmethod
    def load(cls, path) -> "CartanGraph":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {"nodes": list(self.nodes), "edges": [list(e) for e in self.edges]}

    @property
    def rank(self) -> int:
        return len(self.nodes)

    @cached_property
    def index(self) -> dict:
        return {n: k for k, n in enumerate(self.nodes)}

    @cached_property
    def cartan(self) -> tuple:
        r = self.rank
        A = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
        for a, b in self.edges:
            i, j = self.index[a], self.index[b]
            A[i][j] -= 1
            A[j][i] -= 1
        return tuple(tuple(row) for row in A)

    def pairing(self, i: Node, j: Node) -> int:
        """The Cartan entry ``(i:j)``."""
        return self.cartan[self.index[i]][self.index[j]]

    @cached_property
    def weyl(self) -> "WeylGroup":
        return WeylGroup(self)

    def key(self, word: Iterable[Node]) -> tuple:
        """Sort key comparing words lexicographically in the node order."""
        return tuple(self.index[i] for i in word)

    def check_word(self, word) -> tuple:
        word = tuple(word)
        for i in word:
            if i not in self.index:
                raise ValueError(f"unknown letter {i!r}")
        return word


def cartan_matrix(graph: CartanGraph) -> tuple:
    return graph.cartan


def is_positive_definite(A: Sequence[Sequence[int]]) -> bool:
    """All leading principal minors positive, computed exactly."""
    n = len(A)
    for k in range(1, n + 1):
        if _det([[Fraction(A[i][j]) for j in range(k)] for i in range(k)]) <= 0:
            return False
    return True


def _det(m) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def type_A(n: int) -> CartanGraph:
    """The path graph 1 - 2 - ... - n."""
    return CartanGraph(tuple(range(1, n + 1)), tuple((k, k + 1) for k in range(1, n)))


def cartan_type(name: str) -> CartanGraph:
    """Small named graphs: ``A<n>``, ``A1xA1`` and ``double`` (one double edge)."""
    if name == "A1xA1":
        return CartanGraph((1, 2))
    if name == "double":
        return CartanGraph((1, 2), ((1, 2), (1, 2)))
    if name.startswith("A") and name[1:].isdigit() and int(name[1:]) >= 1:
        return type_A(int(name[1:]))
    raise ValueError(f"unknown Cartan type {name!r}")


class WeylGroup:
    """Word-level operations in the Coxeter group of a Cartan graph."""

    def __init__(self, graph: CartanGraph):
        self.graph = graph
        r = graph.rank
        A = graph.cartan
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        self.identity_matrix = ident
        # column j of S_i is e_j - A[i][j] e_i
        self._reflections = {}
        for node, i in graph.index.items():
            rows = [list(row) for row in ident]
            for j in range(r):
                rows[i][j] -= A[i][j]
            self._reflections[node] = tuple(tuple(row) for row in rows)
        self.matrix = lru_cache(maxsize=None)(self._matrix)
        self.canonical = lru_cache(maxsize=None)(self._canonical)
        self.reduced_expressions = lru_cache(maxsize=None)(self._reduced_expressions)
        self.braid_path = lru_cache(maxsize=None)(self._braid_path)

    def reflection(self, i: Node):
        return self._reflections[i]

    def _matrix(self, word: tuple) -> tuple:
        """Matrix of ``s_{i1} ... s_{im}`` acting on root coordinates."""
        m = self.identity_matrix
        for i in word:
            m = _matmul(m, self._reflections[i])
        return m

    @staticmethod
    def _negative_column(m, j) -> bool:
        # roots are either nonnegative or nonpositive; check the first nonzero entry
        for row in m:
            if row[j]:
                return row[j] < 0
        raise AssertionError("zero root")

    def _canonical(self, word: tuple) -> WeylElement:
        g = self.graph
        word = g.check_word(word)
        w = self.matrix(word)
        winv = self.matrix(word[::-1])
        out = []
        # peel the smallest left descent each round: gives the lex-min reduced word
        while w != self.identity_matrix:
            for node in g.nodes:
                if self._negative_column(winv, g.index[node]):
                    s = self._reflections[node]
                    w = _matmul(s, w)
                    winv = _matmul(winv, s)
                    out.append(node)
                    break
            else:  # pragma: no cover - a nonidentity element always has a descent
                raise AssertionError("no left descent found")
        return WeylElement(tuple(out))

    def element(self, word) -> WeylElement:
        return self.canonical(tuple(word))

    def length(self, word) -> int:
        return len(self.canonical(tuple(word)))

    def is_reduced(self, word) -> bool:
        word = tuple(word)
        return len(self.canonical(word)) == len(word)

    def multiply(self, w: WeylElement, v: WeylElement) -> WeylElement:
        return self.canonical(w.word + v.word)

    def descent_right(self, w: WeylElement | tuple, i: Node) -> bool:
        word = w.word if isinstance(w, WeylElement) else tuple(w)
        return self._negative_column(self.matrix(word), self.graph.index[i])

    def descent_left(self, w: WeylElement | tuple, i: Node) -> bool:
        word = w.word if isinstance(w, WeylElement) else tuple(w)
        return self._negative_column(self.matrix(word[::-1]), self.graph.index[i])

    def demazure(self, w: WeylElement, v: WeylElement) -> WeylElement:
        """Demazure product: absorb each letter of ``v`` unless it is a right descent."""
        word = w.word
        for i in v.word:
            if not self.descent_right(word, i):
                word = self.canonical(word + (i,)).word
        return WeylElement(word)

    def braid_neighbours(self, word: tuple):
        """Words one braid or commutation move away, with the move that produces them."""
        g = self.graph
        out = []
        for p in range(len(word) - 1):
            a, b = word[p], word[p + 1]
            if a != b and g.pairing(a, b) == 0:
                out.append((("swap", p), word[:p] + (b, a) + word[p + 2 :]))
            if p + 2 < len(word) and word[p + 2] == a and a != b and g.pairing(a, b) == -1:
                out.append((("braid", p), word[:p] + (b, a, b) + word[p + 3 :]))
        return out

    def _reduced_expressions(self, w: WeylElement) -> tuple:
        start = self.canonical(w.word).word
        seen = {start}
        queue = deque([start])
        while queue:
            word = queue.popleft()
            for _, nxt in self.braid_neighbours(word):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return tuple(sorted(seen, key=self.graph.key))

    def _braid_path(self, src: tuple, dst: tuple) -> tuple:
        """Shortest list of moves from ``src`` to ``dst``; ties broken lexicographically."""
        if src == dst:
            return ()
        parent = {src: None}
        queue = deque([src])
        while queue:
            word = queue.popleft()
            nbrs = sorted(self.braid_neighbours(word), key=lambda mv: self.graph.key(mv[1]))
            for move, nxt in nbrs:
                if nxt in parent:
                    continue
                parent[nxt] = (word, move)
                if nxt == dst:
                    path = []
                    cur = nxt
                    while parent[cur] is not None:
                        prev, mv = parent[cur]
                        path.append(mv)
                        cur = prev
                    return tuple(reversed(path))
                queue.append(nxt)
        raise ValueError(f"{dst!r} is not a reduced word of the same element as {src!r}")

    def is_finite(self) -> bool:
        return is_positive_definite(self.graph.cartan)

    def longest_element(self, cap: int = DEFAULT_CAP) -> WeylElement:
        """Grow by ascents until none remain; raises if the length exceeds ``cap``."""
        if not self.is_finite():
            raise InfiniteGroupError("Cartan matrix is not positive definite: W is infinite")
        word = ()
        while True:
            for i in self.graph.nodes:
                if not self.descent_right(word, i):
                    word = self.canonical(word + (i,)).word
                    break
            else:
                return WeylElement(word)
            if len(word) > cap:
                raise InfiniteGroupError(f"length exceeded cap {cap}")

    def elements(self, cap: int = DEFAULT_CAP) -> list:
        """All elements by breadth-first search, sorted by (length, word)."""
        e = WeylElement(())
        seen = {e}
        layer = [e]
        while layer:
            nxt = []
            for w in layer:
                for i in self.graph.nodes:
                    if not self.descent_right(w, i):
                        v = self.canonical(w.word + (i,))
                        if v not in seen:
                            seen.add(v)
                            nxt.append(v)
                            if len(seen) > cap:
                                raise InfiniteGroupError(f"more than {cap} elements")
            layer = nxt
        return sorted(seen, key=lambda w: (len(w), self.graph.key(w.word)))
