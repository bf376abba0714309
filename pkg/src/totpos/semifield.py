"""Semifields used as coordinate domains for the totally positive monoids.

Five instances are provided:

* ``RATIONAL``  -- positive rationals, ordinary ``+`` and ``*``.
* ``RATFUNC``   -- rational functions ``t^e f0/f1`` over Q with ``f0(0), f1(0) > 0``.
* ``TROPICAL``  -- the integers with ``min`` as sum and ``+`` as product.
* ``TRIVIAL``   -- the one-element semifield.
* ``formal(m)`` -- rational functions in ``X1..Xm`` written as ratios of
  polynomials with nonnegative coefficients (subtraction-free expressions).

Values support the Python operators ``+ * / **``. Mixing values from
different semifields raises :class:`SemifieldMismatch`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

__all__ = [
    "SemifieldMismatch",
    "NotPositive",
    "Semifield",
    "SemifieldValue",
    "PosRational",
    "PosRatFunc",
    "TropicalInt",
    "TrivialOne",
    "FormalRatFunc",
    "RATIONAL",
    "RATFUNC",
    "TROPICAL",
    "TRIVIAL",
    "formal",
    "formal_ring",
    "add",
    "mul",
    "div",
    "one",
    "power",
    "collapse",
    "valuation",
    "normalize",
    "substitute",
    "to_fraction",
]


class SemifieldMismatch(TypeError):
    """Operands live in different semifields."""


class NotPositive(ValueError):
    """A candidate value violates the positivity invariant of its semifield."""


T_RING, T = ring("t", QQ)


@lru_cache(maxsize=None)
def formal_ring(m: int):
    """Polynomial ring Q[X1..Xm] with graded lexicographic order, X1 > ... > Xm."""
    names = [f"X{k}" for k in range(1, m + 1)]
    return ring(names, QQ, grlex)[0]


def to_fraction(c) -> Fraction:
    """Convert a ground-domain coefficient (gmpy2/sympy rational) to a Fraction."""
    return Fraction(int(c.numerator), int(c.denominator))


class SemifieldValue:
    """Common operator plumbing; subclasses implement ``_add``, ``_mul``, ``_div``."""

    __slots__ = ()

    @property
    def semifield(self) -> "Semifield":
        raise NotImplementedError

    def _check(self, other):
        if type(other) is not type(self):
            raise SemifieldMismatch(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        self._check(other)
        return self._add(other)

    def __mul__(self, other):
        self._check(other)
        return self._mul(other)

    def __truediv__(self, other):
        self._check(other)
        return self._div(other)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("semifield powers take integer exponents")
        if n < 0:
            return self.semifield.one() / self._pow(-n)
        return self._pow(n)

    def _pow(self, n: int):
        result = self.semifield.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result


class PosRational(SemifieldValue):
    __slots__ = ("value",)

    def __init__(self, value):
        value = Fraction(value)
        if value <= 0:
            raise NotPositive(f"{value} is not a positive rational")
        self.value = value

    @property
    def semifield(self):
        return RATIONAL

    def _add(self, other):
        return _posrat(self.value + other.value)

    def _mul(self, other):
        return _posrat(self.value * other.value)

    def _div(self, other):
        return _posrat(self.value / other.value)

    def _pow(self, n):
        return _posrat(self.value**n)

    def __eq__(self, other):
        return type(other) is PosRational and self.value == other.value

    def __hash__(self):
        return hash(("Q+", self.value))

    def __repr__(self):
        return f"PosRational({self.value})"

    def __str__(self):
        return str(self.value)


def _posrat(value: Fraction) -> PosRational:
    # closure is guaranteed by the caller; skip re-validation
    x = PosRational.__new__(PosRational)
    x.value = value
    return x


def _t_valuation(p: PolyElement) -> int:
    return min(monom[0] for monom in p.keys())


def _shift_down(p: PolyElement, k: int) -> PolyElement:
    if k == 0:
        return p
    return T_RING.from_dict({(monom[0] - k,): c for monom, c in p.items()})


def _const_term(p: PolyElement):
    return p.get((0,), QQ.zero)


class PosRatFunc(SemifieldValue):
    """``t**e * num / den`` with num(0) > 0, den(0) == 1 and gcd(num, den) == 1."""

    __slots__ = ("e", "num", "den")

    def __init__(self, e: int, num, den=None):
        num = T_RING(num)
        den = T_RING.one if den is None else T_RING(den)
        e, num, den = _normalize_ratfunc(e, num, den)
        self.e, self.num, self.den = e, num, den

    @property
    def semifield(self):
        return RATFUNC

    @classmethod
    def _raw(cls, e, num, den):
        x = cls.__new__(cls)
        x.e, x.num, x.den = _normalize_ratfunc(e, num, den)
        return x

    def _add(self, other):
        # factor out the smaller t-power; constant terms stay positive
        if self.e <= other.e:
            lo, hi = self, other
        else:
            lo, hi = other, self
        shift = T_RING({(hi.e - lo.e,): 1})
        num = lo.num * hi.den + shift * hi.num * lo.den
        return PosRatFunc._raw(lo.e, num, lo.den * hi.den)

    def _mul(self, other):
        return PosRatFunc._raw(self.e + other.e, self.num * other.num, self.den * other.den)

    def _div(self, other):
        return PosRatFunc._raw(self.e - other.e, self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        return (
            type(other) is PosRatFunc
            and self.e == other.e
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash(("Q(t)+", self.e, frozenset(self.num.items()), frozenset(self.den.items())))

    def __repr__(self):
        return f"PosRatFunc({self})"

    def __str__(self):
        parts = []
        if self.e == 1:
            parts.append("t")
        elif self.e != 0:
            parts.append(f"t^{self.e}")
        if self.num != T_RING.one or not parts:
            parts.append(_paren(format_t_poly(self.num)))
        text = "*".join(parts)
        if self.den != T_RING.one:
            text += "/" + _paren(format_t_poly(self.den), force=True)
        return text


def _paren(text: str, force: bool = False) -> str:
    if force or any(op in text for op in "+-*/"):
        return f"({text})"
    return text


def format_t_poly(p: PolyElement) -> str:
    """Ascending-degree text for a polynomial in t, parseable by :mod:`totpos.syntax`."""
    if not p:
        return "0"
    out = []
    for (d,), c in sorted(p.items()):
        c = to_fraction(c)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if d == 0:
            body = str(c)
        else:
            tpow = "t" if d == 1 else f"t^{d}"
            body = tpow if c == 1 else f"{c}*{tpow}"
        out.append((sign, body))
    first_sign, first_body = out[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in out[1:]:
        text += sign + body
    return text


def _normalize_ratfunc(e: int, num: PolyElement, den: PolyElement):
    if not num or not den:
        raise NotPositive("rational function with a zero numerator or denominator")
    vn, vd = _t_valuation(num), _t_valuation(den)
    e = e + vn - vd
    num, den = _shift_down(num, vn), _shift_down(den, vd)
    num, den = num.cancel(den)
    c0 = _const_term(den)
    num, den = num.quo_ground(c0), den.quo_ground(c0)
    if _const_term(num) <= 0:
        raise NotPositive("numerator and denominator constant terms must have the same sign")
    return e, num, den


class TropicalInt(SemifieldValue):
    __slots__ = ("value",)

    def __init__(self, value: int):
        self.value = int(value)

    @property
    def semifield(self):
        return TROPICAL

    def _add(self, other):
        return TropicalInt(min(self.value, other.value))

    def _mul(self, other):
        return TropicalInt(self.value + other.value)

    def _div(self, other):
        return TropicalInt(self.value - other.value)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("semifield powers take integer exponents")
        return TropicalInt(n * self.value)

    def __eq__(self, other):
        return type(other) is TropicalInt and self.value == other.value

    def __hash__(self):
        return hash(("Z-trop", self.value))

    def __repr__(self):
        return f"TropicalInt({self.value})"

    def __str__(self):
        return f"trop:{self.value}"


class TrivialOne(SemifieldValue):
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @property
    def semifield(self):
        return TRIVIAL

    def _add(self, other):
        return self

    _mul = _div = _add

    def __pow__(self, n):
        return self

    def __eq__(self, other):
        return type(other) is TrivialOne

    def __hash__(self):
        return hash("unit")

    def __repr__(self):
        return "TrivialOne()"

    def __str__(self):
        return "unit"


class FormalRatFunc(SemifieldValue):
    """Ratio of two nonzero polynomials in X1..Xm with nonnegative rational coefficients.

    The fraction is reduced by the polynomial gcd whenever the reduced pair
    still has nonnegative coefficients; otherwise the nonnegative
    representative is kept, so equality is tested by cross-multiplication.
    The denominator is scaled so its leading coefficient (grlex) is 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, nvars: int | None = None):
        if isinstance(num, PolyElement):
            R = num.ring
        else:
            if nvars is None:
                raise ValueError("nvars is required for non-polynomial input")
            R = formal_ring(nvars)
        num = R(num)
        den = R.one if den is None else R(den)
        self.num, self.den = _normalize_formal(num, den)

    @classmethod
    def _raw(cls, num, den):
        x = cls.__new__(cls)
        x.num, x.den = _normalize_formal(num, den)
        return x

    @property
    def nvars(self) -> int:
        return self.num.ring.ngens

    @property
    def semifield(self):
        return formal(self.nvars)

    def _check(self, other):
        super()._check(other)
        if other.num.ring != self.num.ring:
            raise SemifieldMismatch("formal rational functions over different variable sets")

    def _add(self, other):
        if self.den == other.den:
            return FormalRatFunc._raw(self.num + other.num, self.den)
        return FormalRatFunc._raw(self.num * other.den + other.num * self.den, self.den * other.den)

    def _mul(self, other):
        return FormalRatFunc._raw(self.num * other.num, self.den * other.den)

    def _div(self, other):
        return FormalRatFunc._raw(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if type(other) is not FormalRatFunc or other.num.ring != self.num.ring:
            return False
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None  # representatives are not unique

    def nterms(self) -> int:
        return len(self.num) + len(self.den)

    def __repr__(self):
        return f"FormalRatFunc({self})"

    def __str__(self):
        if self.den == self.num.ring.one:
            return str(self.num.as_expr())
        return f"({self.num.as_expr()})/({self.den.as_expr()})"


def _nonnegative(p: PolyElement) -> bool:
    return all(c >= 0 for c in p.values())


def _normalize_formal(num: PolyElement, den: PolyElement):
    if not num or not den:
        raise NotPositive("subtraction-free rational functions have nonzero numerator and denominator")
    if not (_nonnegative(num) and _nonnegative(den)):
        raise NotPositive("subtraction-free rational functions need nonnegative coefficients")
    if den.is_ground:
        pass
    elif num.is_ground:
        pass
    else:
        p, q = num.cancel(den)
        if q.LC < 0:
            p, q = -p, -q
        if _nonnegative(p) and _nonnegative(q):
            num, den = p, q
    lc = den.LC
    if lc != 1:
        num, den = num.quo_ground(lc), den.quo_ground(lc)
    return num, den


class Semifield:
    """One of the concrete semifields; knows its unit and how to embed Q>0 constants."""

    name: str

    def one(self) -> SemifieldValue:
        raise NotImplementedError

    def const(self, q) -> SemifieldValue:
        """Image of the positive rational ``q`` under the canonical map Q>0 -> K."""
        raise NotImplementedError

    def __repr__(self):
        return f"<semifield {self.name}>"


class _Rationals(Semifield):
    name = "rational"

    def one(self):
        return _posrat(Fraction(1))

    def const(self, q):
        return PosRational(q)


class _RatFuncs(Semifield):
    name = "ratfunc"

    def one(self):
        return PosRatFunc._raw(0, T_RING.one, T_RING.one)

    def const(self, q):
        q = Fraction(q)
        return PosRatFunc(0, T_RING(QQ(q.numerator, q.denominator)))

    @property
    def t(self) -> PosRatFunc:
        return PosRatFunc(1, T_RING.one)


class _Tropical(Semifield):
    name = "tropical"

    def one(self):
        return TropicalInt(0)

    def const(self, q):
        if Fraction(q) <= 0:
            raise NotPositive(f"{q} is not positive")
        return TropicalInt(0)


class _Trivial(Semifield):
    name = "trivial"

    def one(self):
        return TrivialOne()

    def const(self, q):
        return TrivialOne()


class FormalSemifield(Semifield):
    def __init__(self, nvars: int):
        self.nvars = nvars
        self.name = f"formal[{nvars}]"
        self.ring = formal_ring(nvars)

    def one(self):
        return FormalRatFunc._raw(self.ring.one, self.ring.one)

    def const(self, q):
        q = Fraction(q)
        return FormalRatFunc(self.ring(QQ(q.numerator, q.denominator)))

    def gens(self) -> list[FormalRatFunc]:
        return [FormalRatFunc(x) for x in self.ring.gens]

    def __eq__(self, other):
        return isinstance(other, FormalSemifield) and other.nvars == self.nvars

    def __hash__(self):
        return hash(("formal", self.nvars))


RATIONAL = _Rationals()
RATFUNC = _RatFuncs()
TROPICAL = _Tropical()
TRIVIAL = _Trivial()


@lru_cache(maxsize=None)
def formal(nvars: int) -> FormalSemifield:
    return FormalSemifield(nvars)


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def div(x, y):
    return x / y


def power(x, n: int):
    return x**n


def one(semifield: Semifield):
    return semifield.one()


def collapse(x: SemifieldValue) -> TrivialOne:
    """The homomorphism K -> {1}."""
    if not isinstance(x, SemifieldValue):
        raise TypeError(f"{x!r} is not a semifield value")
    return TrivialOne()


def valuation(f: PosRatFunc) -> TropicalInt:
    """Tropical valuation ``t^e f0/f1 -> e``."""
    if type(f) is not PosRatFunc:
        raise SemifieldMismatch("valuation is defined on rational functions in t only")
    return TropicalInt(f.e)


def normalize(num, den, variant: str) -> SemifieldValue:
    """Build a canonical value from a raw numerator/denominator pair.

    ``variant`` is one of ``"rational"``, ``"ratfunc"``, ``"formal"``.
    For ``"ratfunc"`` the inputs are polynomials in t (anything ``T_RING``
    accepts); for ``"formal"`` they are polynomials of one ``formal_ring``.
    """
    if variant == "rational":
        return PosRational(Fraction(num) / Fraction(den))
    if variant == "ratfunc":
        return PosRatFunc(0, T_RING(num), T_RING(den))
    if variant == "formal":
        return FormalRatFunc._raw(num, den)
    raise ValueError(f"unknown variant {variant!r}")


def _eval_poly(p: PolyElement, args, K: Semifield):
    # every coefficient is a positive rational, so the sum is subtraction-free
    cache = [dict() for _ in args]

    def pw(k, e):
        got = cache[k].get(e)
        if got is None:
            got = cache[k][e] = args[k] ** e
        return got

    total = None
    for monom, c in p.items():
        term = K.const(to_fraction(c))
        for k, e in enumerate(monom):
            if e:
                term = term * pw(k, e)
        total = term if total is None else total + term
    return total


def substitute(f: FormalRatFunc, args) -> SemifieldValue:
    """Evaluate the subtraction-free expression ``f`` at ``args`` in their semifield."""
    args = list(args)
    if len(args) != f.nvars:
        raise ValueError(f"expected {f.nvars} arguments, got {len(args)}")
    if not args:
        raise ValueError("substitution needs at least one argument")
    K = args[0].semifield
    for a in args[1:]:
        if a.semifield != K:
            raise SemifieldMismatch("substitution arguments from different semifields")
    return _eval_poly(f.num, args, K) / _eval_poly(f.den, args, K)


def content(p: PolyElement) -> Fraction:
    """Positive rational c with p/c integral and primitive."""
    coeffs = [to_fraction(c) for c in p.values()]
    num = 0
    den = 1
    for c in coeffs:
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    return Fraction(num, den)
