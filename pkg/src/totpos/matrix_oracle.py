"""Exact type-A matrix model of the monoids, used as independent ground truth.

Node ``k``-th in graph order becomes position ``k+1`` of an ``(r+1) x (r+1)``
matrix; the graph must be the path ``nodes[0] - nodes[1] - ...``. Everything
is plain :class:`fractions.Fraction` arithmetic with no symbolic library.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .coxeter import CartanGraph

__all__ = [
    "ExactMatrix",
    "generator_matrix",
    "evaluate",
    "evaluate_letters",
    "path_positions",
    "all_minors_nonnegative",
    "all_minors_positive",
    "charpoly",
    "sturm_positive_roots",
    "eigenvalues_real_distinct_positive",
    "vandermonde",
    "random_positive",
    "relation_instances",
    "verify_relations",
    "gk_check",
]


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.n != other.n:
            raise ValueError("size mismatch")
        cols = list(zip(*other.rows))
        return ExactMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def minor(self, rows, cols) -> Fraction:
        return _det([[self.rows[i][j] for j in cols] for i in rows])

    def det(self) -> Fraction:
        return _det([list(row) for row in self.rows])

    def minors(self):
        """Yield ``(rows, cols, value)`` for every square minor."""
        n = self.n
        for s in range(1, n + 1):
            for rows in itertools.combinations(range(n), s):
                for cols in itertools.combinations(range(n), s):
                    yield rows, cols, self.minor(rows, cols)

    def tolist(self) -> list:
        return [[str(x) for x in row] for row in self.rows]


def _det(m) -> Fraction:
    m = [list(row) for row in m]
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


def generator_matrix(letter, a, n: int) -> ExactMatrix:
    """Matrix of ``letter^a`` in SL_n; ``letter = (sign, position)`` with 1-based position."""
    sign, i = letter
    if not 1 <= i <= n - 1:
        raise ValueError(f"position {i} out of range for SL_{n}")
    a = Fraction(a)
    rows = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    if sign == 1:
        rows[i - 1][i] = a
    elif sign == -1:
        rows[i][i - 1] = a
    elif sign == 0:
        rows[i - 1][i - 1] = a
        rows[i][i] = 1 / a
    else:
        raise ValueError(f"bad sign {sign!r}")
    return ExactMatrix(tuple(map(tuple, rows)))


def path_positions(graph: CartanGraph) -> dict:
    """Node -> 1-based matrix position; the graph must be the type-A path in node order."""
    expected = {frozenset((graph.nodes[k], graph.nodes[k + 1])) for k in range(graph.rank - 1)}
    edges = [frozenset(e) for e in graph.edges]
    if len(edges) != len(set(edges)) or set(edges) != expected:
        raise ValueError("the matrix model needs a type A path graph listed in path order")
    return {node: k + 1 for k, node in enumerate(graph.nodes)}


def _fraction(a) -> Fraction:
    return a.value if hasattr(a, "value") else Fraction(a)


def evaluate_letters(graph: CartanGraph, letters, coords) -> ExactMatrix:
    pos = path_positions(graph)
    n = graph.rank + 1
    m = ExactMatrix.identity(n)
    for (sign, node), a in zip(letters, coords):
        m = m @ generator_matrix((sign, pos[node]), _fraction(a), n)
    return m


def evaluate(element) -> ExactMatrix:
    """Matrix of a rational ``UPlusElement`` or ``GElement`` (product over its chart)."""
    if hasattr(element, "pos"):
        return evaluate_letters(element.graph, element.chart, element.coords)
    return evaluate_letters(element.graph, [(1, i) for i in element.chart], element.coords)


def all_minors_nonnegative(m: ExactMatrix) -> bool:
    return all(v >= 0 for _, _, v in m.minors())


def all_minors_positive(m: ExactMatrix) -> bool:
    return all(v > 0 for _, _, v in m.minors())


# ---------------------------------------------------------------------------
# polynomials as coefficient lists, lowest degree first


def charpoly(m: ExactMatrix) -> list:
    """Coefficients of ``det(x I - m)``, lowest degree first (Faddeev-LeVerrier)."""
    n = m.n
    coeffs = [Fraction(0)] * n + [Fraction(1)]
    mk = ExactMatrix(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)))
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
        shifted = tuple(
            tuple(mk.rows[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n)
        )
        mk = m @ ExactMatrix(shifted)
        c = -sum(mk.rows[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return coeffs


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _derivative(p):
    return _trim([k * p[k] for k in range(1, len(p))])


def _rem(a, b):
    a = _trim(a)
    b = _trim(b)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for k in range(len(b)):
            a[shift + k] -= f * b[k]
        a = _trim(a)
    return a


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def _sturm_sequence(p):
    seq = [_trim(p), _derivative(p)]
    while seq[-1]:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return seq


def sturm_positive_roots(p) -> int:
    """Number of distinct real roots of ``p`` in ``(0, oo)``."""
    p = _trim(p)
    if len(p) <= 1:
        return 0
    seq = _sturm_sequence(p)
    at_zero = [q[0] if q else Fraction(0) for q in seq]
    # roots at 0 are excluded: the count on (0, oo) is V(0+) - V(oo)
    if p[0] == 0:
        eps = _positive_lower_bound(p)
        at_zero = [_evaluate(q, eps) for q in seq]
    at_inf = [q[-1] for q in seq]
    return _sign_changes(at_zero) - _sign_changes(at_inf)


def _evaluate(p, x):
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def _positive_lower_bound(p):
    # Cauchy bound on 1/root for the part of p without roots at 0, halved
    k = next(i for i, c in enumerate(p) if c != 0)
    q = p[k:]
    bound = 1 + max(abs(c / q[0]) for c in q[1:])
    return Fraction(1, 2) / bound


def _is_squarefree(p) -> bool:
    p = _trim(p)
    g = p
    h = _derivative(p)
    while h:
        g, h = h, _rem(g, h)
    return len(g) == 1


def eigenvalues_real_distinct_positive(m: ExactMatrix) -> bool:
    p = charpoly(m)
    return _is_squarefree(p) and sturm_positive_roots(p) == m.n


def vandermonde(xs) -> ExactMatrix:
    xs = [Fraction(x) for x in xs]
    if any(x <= 0 for x in xs) or any(a >= b for a, b in zip(xs, xs[1:])):
        raise ValueError("Vandermonde fixture needs increasing positive nodes")
    return ExactMatrix(tuple(tuple(x**j for j in range(len(xs))) for x in xs))


# ---------------------------------------------------------------------------
# relations checked in the matrix model


def random_positive(rng: random.Random, top: int = 9) -> Fraction:
    return Fraction(rng.randint(1, top), rng.randint(1, top))


def relation_instances(n: int, rng: random.Random):
    """Yield ``(name, lhs_letters, lhs_coords, rhs_letters, rhs_coords)`` for SL_n.

    Letters are ``(sign, position)``; every relation of U+ and G is
    instantiated for every applicable pair of positions and sign.
    """
    r = n - 1
    cart = lambda i, j: 2 if i == j else (-1 if abs(i - j) == 1 else 0)  # noqa: E731
    rp = lambda: random_positive(rng)  # noqa: E731
    for e in (1, -1):
        tag = "+" if e == 1 else "-"
        for i in range(1, r + 1):
            a, b = rp(), rp()
            yield f"additivity {tag}", [(e, i), (e, i)], [a, b], [(e, i)], [a + b]
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                if cart(i, j) == -1:
                    a, b, c = rp(), rp(), rp()
                    s = a + c
                    yield (
                        f"braid {tag}",
                        [(e, i), (e, j), (e, i)],
                        [a, b, c],
                        [(e, j), (e, i), (e, j)],
                        [b * c / s, s, a * b / s],
                    )
                elif i != j and cart(i, j) == 0:
                    a, b = rp(), rp()
                    yield f"commutation {tag}", [(e, i), (e, j)], [a, b], [(e, j), (e, i)], [b, a]
        for i in range(1, r + 1):
            a, b = rp(), rp()
            s = 1 + a * b
            yield (
                f"exchange {tag}",
                [(e, i), (-e, i)],
                [a, b],
                [(-e, i), (0, i), (e, i)],
                [b / s, s**e, a / s],
            )
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                a, b = rp(), rp()
                yield (
                    f"torus conjugation {tag}",
                    [(0, j), (e, i)],
                    [a, b],
                    [(e, i), (0, j)],
                    [a ** (e * cart(i, j)) * b, a],
                )
                if i != j:
                    yield f"cross commutation {tag}", [(e, i), (-e, j)], [a, b], [(-e, j), (e, i)], [b, a]
    for i in range(1, r + 1):
        a, b = rp(), rp()
        yield "torus product", [(0, i), (0, i)], [a, b], [(0, i)], [a * b]
        yield "torus unit", [(0, i)], [Fraction(1)], [], []
        for j in range(1, r + 1):
            if i != j:
                yield "torus commutation", [(0, i), (0, j)], [a, b], [(0, j), (0, i)], [b, a]


def _product(letters, coords, n):
    m = ExactMatrix.identity(n)
    for letter, a in zip(letters, coords):
        m = m @ generator_matrix(letter, a, n)
    return m


def verify_relations(n: int, trials: int = 100, seed: int = 0) -> dict:
    """Check every relation instance ``trials`` times in SL_n; returns name -> [passed, total]."""
    rng = random.Random(seed)
    report: dict = {}
    for _ in range(trials):
        for name, lw, lc, rw, rc in relation_instances(n, rng):
            ok = _product(lw, lc, n) == _product(rw, rc, n)
            entry = report.setdefault(name, [0, 0])
            entry[0] += ok
            entry[1] += 1
    return report


def gk_check(graph: CartanGraph, trials: int = 50, seed: int = 0) -> dict:
    """Random elements of the big cell ``G_{w_I,-w_I}(Q>0)``: minors, eigenvalues and determinant."""
    from . import gmonoid
    from .semifield import PosRational

    rng = random.Random(seed)
    w0 = graph.weyl.longest_element()
    h = gmonoid.canonical_chart(graph, w0, w0)
    results = {"trials": trials, "all_minors_positive": 0, "eigenvalues_ok": 0, "det_one": 0}
    for _ in range(trials):
        coords = [PosRational(random_positive(rng)) for _ in h]
        g = gmonoid.evaluate_chart(graph, h, coords)
        m = evaluate(g)
        results["all_minors_positive"] += all_minors_positive(m)
        results["eigenvalues_ok"] += eigenvalues_real_distinct_positive(m)
        results["det_one"] += m.det() == 1
    results["passed"] = all(
        results[k] == trials for k in ("all_minors_positive", "eigenvalues_ok", "det_one")
    )
    return results
