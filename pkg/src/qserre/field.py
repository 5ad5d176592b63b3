"""Exact arithmetic in the rational function field Q(r, s).

A :class:`RatF` is a reduced fraction ``num/den`` of integer bivariate
polynomials (``Poly2``).  The canonical form has ``gcd(num, den) = 1`` and a
positive leading coefficient of ``den`` in graded-lexicographic order with
``r > s``, so equality is structural.  Polynomial multiplication and gcd are
delegated to FLINT's ``fmpz_mpoly``.
"""

from __future__ import annotations

from fractions import Fraction

import flint

from . import exprparse

CTX = flint.fmpz_mpoly_ctx.get(("r", "s"), "deglex")
Poly2 = flint.fmpz_mpoly

_P0 = CTX.constant(0)
_P1 = CTX.constant(1)
_PR, _PS = CTX.gens()


def poly_from_terms(terms: dict[tuple[int, int], int]) -> Poly2:
    """Build a Poly2 from ``{(i, j): c}`` meaning ``c * r^i * s^j``."""
    return CTX.from_dict({k: v for k, v in terms.items() if v})


def poly_terms(p: Poly2) -> dict[tuple[int, int], int]:
    return {k: int(v) for k, v in p.to_dict().items()}


def _poly_eval(p: Poly2, r0: Fraction, s0: Fraction) -> Fraction:
    total = Fraction(0)
    for (i, j), c in p.terms():
        total += int(c) * r0 ** int(i) * s0 ** int(j)
    return total


class RatF:
    """Element of Q(r, s), always stored in canonical reduced form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, *, _reduced=False):
        num = _as_poly(num)
        den = _P1 if den is None else _as_poly(den)
        if not _reduced:
            if den.is_zero():
                raise ZeroDivisionError("RatF with zero denominator")
            if num.is_zero():
                den = _P1
            elif not den.is_one():
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
                if den.leading_coefficient() < 0:
                    num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "RatF":
        """Parse a scalar expression in ``r``, ``s`` and integers."""
        tree = exprparse.parse(text)

        def lookup(name):
            if name == "r":
                return R
            if name == "s":
                return S
            raise exprparse.ParseError(f"unknown symbol {name!r}", text, tree_pos(tree, name))

        return exprparse.evaluate(tree, lookup, const=as_ratf)

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "RatF":
        """``c * r^i * s^j`` with possibly negative exponents."""
        num = poly_from_terms({(max(i, 0), max(j, 0)): c})
        den = poly_from_terms({(max(-i, 0), max(-j, 0)): 1})
        return cls(num, den, _reduced=True) if c > 0 or c < 0 else ZERO

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatF(self.num + other.num, _P1, _reduced=True)
        if self.den == other.den:
            return RatF(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            return RatF(self.num * other.den + other.num * self.den, self.den * other.den)
        a = other.den / g
        return RatF(self.num * a + other.num * (self.den / g), self.den * a)

    __radd__ = __add__

    def __neg__(self):
        return RatF(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return RatF(self.num * other, self.den, _reduced=self.den.is_one())
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatF(self.num * other.num, _P1, _reduced=True)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        # cross cancellation keeps both factors reduced
        a_num, b_den = self.num, other.den
        if not b_den.is_one():
            g = a_num.gcd(b_den)
            if not g.is_one():
                a_num, b_den = a_num / g, b_den / g
        b_num, a_den = other.num, self.den
        if not a_den.is_one():
            g = b_num.gcd(a_den)
            if not g.is_one():
                b_num, a_den = b_num / g, a_den / g
        num, den = a_num * b_num, a_den * b_den
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatF(num, den, _reduced=True)

    __rmul__ = __mul__

    def inv(self) -> "RatF":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(r,s)")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatF(num, den, _reduced=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            return ONE
        return RatF(self.num**n, self.den**n, _reduced=True)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    # evaluation / printing -------------------------------------------------
    def eval(self, r0, s0) -> Fraction:
        """Value at the rational point ``(r0, s0)``."""
        r0, s0 = Fraction(r0), Fraction(s0)
        d = _poly_eval(self.den, r0, s0)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at (r, s) = ({r0}, {s0})")
        return _poly_eval(self.num, r0, s0) / d

    def complexity(self) -> int:
        """Rough size measure used for pivot choice."""
        return len(self.num.to_dict()) + len(self.den.to_dict()) + self.num.total_degree() + self.den.total_degree()

    def __str__(self):
        num = str(self.num)
        if self.den.is_one():
            return num
        den = str(self.den)
        if len(self.num.to_dict()) > 1:
            num = f"({num})"
        if len(self.den.to_dict()) > 1 or not self.den.is_constant() and "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatF({str(self)!r})"


def _as_poly(x) -> Poly2:
    if isinstance(x, Poly2):
        return x
    if isinstance(x, int):
        return CTX.constant(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Poly2")


def _coerce(x):
    if isinstance(x, RatF):
        return x
    if isinstance(x, int):
        return RatF(CTX.constant(x), _P1, _reduced=True)
    if isinstance(x, Fraction):
        return RatF(CTX.constant(x.numerator), CTX.constant(x.denominator))
    return None


def as_ratf(x) -> RatF:
    y = _coerce(x)
    if y is None:
        raise TypeError(f"not a scalar: {x!r}")
    return y


def tree_pos(tree, name) -> int:
    if tree[0] == "sym" and tree[1] == name:
        return tree[2]
    if tree[0] in ("num", "sym"):
        return 0
    for sub in tree[1:]:
        if isinstance(sub, tuple):
            p = tree_pos(sub, name)
            if p:
                return p
    return 0


ZERO = RatF(_P0, _P1, _reduced=True)
ONE = RatF(_P1, _P1, _reduced=True)
R = RatF(_PR, _P1, _reduced=True)
S = RatF(_PS, _P1, _reduced=True)


def add(a: RatF, b: RatF) -> RatF:
    return a + b


def mul(a: RatF, b: RatF) -> RatF:
    return a * b


def inv(a: RatF) -> RatF:
    return a.inv()


def is_zero(a: RatF) -> bool:
    return a.is_zero()


def rs_power(i: int, j: int) -> RatF:
    """The Laurent monomial ``r^i s^j``."""
    return RatF.monomial(i, j)
