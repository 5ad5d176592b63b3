"""Iterated skew-polynomial (PBW) algebras with optionally invertible variables.

An algebra is presented by ordered variables ``X_1 < ... < X_n`` and, for
every pair ``j > i``, a rewrite rule::

    X_j X_i  ->  q(j, i) X_i X_j + c(j, i)

where ``c(j, i)`` is a combination of the constant and of single variables
strictly between ``X_i`` and ``X_j``.  Normal forms are ascending-index
monomials ``X_1^{a_1} ... X_n^{a_n}``; exponents of invertible variables may
be negative.  Products are computed by memoised confluent rewriting, with a
closed form for purely q-commuting swaps.

Public indices (JSON keys, :func:`ore_data`) are 1-based like the variable
names; internal exponent tuples are 0-based.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from . import exprparse
from .field import ONE, ZERO, RatF, as_ratf

Mono = tuple  # tuple[int, ...]


class SpecError(ValueError):
    """Structural problem in an algebra presentation."""


def _acc(target: dict, key, value):
    v = target.get(key)
    v = value if v is None else v + value
    if v:
        target[key] = v
    else:
        target.pop(key, None)


class Element:
    """Finite combination of normal monomials with coefficients in Q(r, s)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "AlgebraSpec", terms: dict | None = None):
        self.alg = alg
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # arithmetic -------------------------------------------------------------
    def _scalar(self, x):
        try:
            return as_ratf(x)
        except TypeError:
            return None

    def __add__(self, other):
        if not isinstance(other, Element):
            c = self._scalar(other)
            if c is None:
                return NotImplemented
            other = self.alg.scalar(c)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.alg.mul(self, other)
        c = self._scalar(other)
        if c is None:
            return NotImplemented
        if not c:
            return Element(self.alg)
        return Element(self.alg, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = self._scalar(other)
        if c is None:
            return NotImplemented
        if not c:
            return Element(self.alg)
        return Element(self.alg, {m: c * v for m, v in self.terms.items()})

    def __truediv__(self, other):
        c = self._scalar(other)
        if c is None:
            raise TypeError("elements can only be divided by scalars")
        return self * c.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.alg.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse(self) -> "Element":
        """Inverse of a scalar multiple of an invertible monomial."""
        if len(self.terms) != 1:
            raise ValueError(f"only monomials can be inverted here, got {self}")
        (m, c), = self.terms.items()
        for i, e in enumerate(m):
            if e and not self.alg.invertible[i]:
                raise ValueError(f"{self.alg.vars[i]} is not invertible")
        cand = Element(self.alg, {tuple(-e for e in m): ONE})
        prod = self * cand
        if not prod.is_scalar() or not prod:
            raise ValueError(f"monomial {self} has no monomial inverse")
        return cand * prod.scalar_value().inv()

    # comparison / inspection ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Element):
            return (self.alg is other.alg or self.alg == other.alg) and self.terms == other.terms
        c = self._scalar(other)
        if c is None:
            return NotImplemented
        return self.terms == self.alg.scalar(c).terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        zero = self.alg.zero_mono
        return all(m == zero for m in self.terms)

    def scalar_value(self) -> RatF:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        return self.terms.get(self.alg.zero_mono, ZERO)

    def coeff(self, mono) -> RatF:
        return self.terms.get(tuple(mono), ZERO)

    def support(self) -> list:
        return sorted(self.terms, key=mono_order_key)

    def degree(self) -> int:
        return max((sum(abs(e) for e in m) for m in self.terms), default=0)

    def weight(self):
        """Common weight of all terms, or None when not homogeneous."""
        return self.alg.is_homogeneous(self)

    def weight_components(self) -> dict:
        out: dict = {}
        for m, c in self.terms.items():
            out.setdefault(self.alg.weight_of(m), {})[m] = c
        return {w: Element(self.alg, t) for w, t in out.items()}

    def map_coeffs(self, f) -> "Element":
        return Element(self.alg, {m: f(c) for m, c in self.terms.items()})

    def eval(self, r0, s0) -> dict:
        """Coefficients evaluated at a rational point, keyed by monomial."""
        return {m: c.eval(r0, s0) for m, c in self.terms.items()}

    def __str__(self):
        return format_terms(self.terms, self.alg.vars)

    def __repr__(self):
        return f"Element({str(self)!r})"


def mono_order_key(m):
    return (sum(abs(e) for e in m), m)


def _coeff_str(c: RatF) -> tuple[str, bool]:
    """String for a coefficient and whether it is a bare +-1."""
    if c == 1:
        return "", True
    if c == -1:
        return "-", True
    text = str(c)
    simple = c.is_polynomial() and len(c.num.to_dict()) == 1
    if not simple:
        text = f"({text})"
    return text, False


def format_mono(m, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(terms: dict, names, mono_fmt=None) -> str:
    if not terms:
        return "0"
    mono_fmt = mono_fmt or format_mono
    out = []
    for m in sorted(terms, key=mono_order_key):
        c = terms[m]
        mono = mono_fmt(m, names)
        cs, unit = _coeff_str(c)
        if not mono:
            term = str(c) if c.is_polynomial() and len(c.num.to_dict()) == 1 else f"({c})"
        elif unit:
            term = f"{cs}{mono}"
        else:
            term = f"{cs}*{mono}"
        out.append(term)
    text = " + ".join(out)
    return text.replace("+ -", "- ")


class AlgebraSpec:
    """Skew-PBW presentation together with its (memoised) multiplication."""

    def __init__(self, vars, q=None, c=None, invertible=None, weights=None, name=""):
        self.vars = tuple(vars)
        n = len(self.vars)
        if len(set(self.vars)) != n:
            raise SpecError("duplicate variable names")
        self.name = name
        self.n = n
        self.invertible = tuple(bool(x) for x in (invertible or [False] * n))
        if len(self.invertible) != n:
            raise SpecError("invertible flags do not match the variables")
        self.weights = tuple(tuple(w) for w in weights) if weights is not None else None
        if self.weights is not None and len(self.weights) != n:
            raise SpecError("weights do not match the variables")
        self.q = {}
        for (j, i), v in (q or {}).items():
            if not (0 <= i < j < n):
                raise SpecError(f"q key ({j + 1},{i + 1}) must satisfy j > i")
            v = as_ratf(v)
            if not v:
                raise SpecError(f"q({j + 1},{i + 1}) must be nonzero")
            self.q[(j, i)] = v
        for j in range(n):
            for i in range(j):
                self.q.setdefault((j, i), ONE)
        self.c = {}
        for (j, i), terms in (c or {}).items():
            terms = terms.terms if isinstance(terms, Element) else terms
            terms = {tuple(m): as_ratf(v) for m, v in terms.items() if v}
            if terms:
                self.c[(j, i)] = terms
        self.zero_mono = (0,) * n
        self._check_structure()
        self._mul_cache: dict = {}
        self._pow_cache: dict = {}
        self._swap_cache: dict = {}

    # structure --------------------------------------------------------------
    def _check_structure(self):
        for (j, i), terms in self.c.items():
            if not (0 <= i < j < self.n):
                raise SpecError(f"correction key ({j + 1},{i + 1}) must satisfy j > i")
            if self.invertible[i] and self.invertible[j]:
                raise SpecError(
                    f"correction c({j + 1},{i + 1}) between two invertible variables is not supported")
            for m in terms:
                if len(m) != self.n:
                    raise SpecError(f"correction c({j + 1},{i + 1}) has a malformed monomial")
                nz = [(p, e) for p, e in enumerate(m) if e]
                if len(nz) > 1 or (nz and nz[0][1] != 1):
                    raise SpecError(
                        f"correction c({j + 1},{i + 1}) must be a combination of 1 and single variables")
                if nz and not (i < nz[0][0] < j):
                    raise SpecError(
                        f"correction c({j + 1},{i + 1}) uses {self.vars[nz[0][0]]}, "
                        f"which is not strictly between {self.vars[i]} and {self.vars[j]}")
                if self.weights is not None:
                    want = tuple(a + b for a, b in zip(self.weights[i], self.weights[j]))
                    if self.weight_of(m) != want:
                        raise SpecError(f"correction c({j + 1},{i + 1}) is not homogeneous of weight {want}")

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return (self.vars, self.invertible, self.weights, self.q, self.c) == (
            other.vars, other.invertible, other.weights, other.q, other.c)

    __hash__ = object.__hash__

    def __repr__(self):
        return f"AlgebraSpec({self.name or ','.join(self.vars)})"

    def index(self, name: str) -> int:
        return self.vars.index(name)

    def with_changes(self, *, q=None, c=None, invertible=None, name=None) -> "AlgebraSpec":
        """Copy with some presentation data replaced (q/c merged per key)."""
        newq = dict(self.q)
        newq.update(q or {})
        newc = dict(self.c)
        for k, v in (c or {}).items():
            newc[k] = v
        return AlgebraSpec(self.vars, newq, newc, invertible if invertible is not None else self.invertible,
                           self.weights, name if name is not None else self.name)

    # element constructors ---------------------------------------------------
    def zero(self) -> Element:
        return Element(self)

    def one(self) -> Element:
        return Element(self, {self.zero_mono: ONE})

    def scalar(self, c) -> Element:
        return Element(self, {self.zero_mono: as_ratf(c)})

    def monomial(self, exps, coeff=ONE) -> Element:
        exps = tuple(exps)
        if len(exps) != self.n:
            raise ValueError("exponent tuple has the wrong length")
        for i, e in enumerate(exps):
            if e < 0 and not self.invertible[i]:
                raise ValueError(f"negative exponent on non-invertible {self.vars[i]}")
        return Element(self, {exps: as_ratf(coeff)})

    def gen(self, name_or_index) -> Element:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        m = [0] * self.n
        m[i] = 1
        return Element(self, {tuple(m): ONE})

    def gens(self) -> list[Element]:
        return [self.gen(i) for i in range(self.n)]

    def parse(self, text: str, extra: dict | None = None) -> Element:
        """Parse an element string such as ``-r^-2*X2 + 3 X1^2 X4``.

        ``extra`` maps further symbol names to Elements (named elements).
        """
        tree = exprparse.parse(text)
        from .field import R, S

        def lookup(name):
            if name == "r":
                return R
            if name == "s":
                return S
            if name in self.vars:
                return self.gen(name)
            if extra and name in extra:
                return extra[name]
            from .field import tree_pos
            raise exprparse.ParseError(f"unknown symbol {name!r}", text, tree_pos(tree, name))

        def divide(a, b):
            if isinstance(b, Element):
                if not b.is_scalar():
                    raise exprparse.ParseError("division by a non-scalar", text, 0)
                b = b.scalar_value()
            return a * as_ratf(b).inv()

        val = exprparse.evaluate(tree, lookup, divide, const=as_ratf)
        return val if isinstance(val, Element) else self.scalar(val)

    # weights ----------------------------------------------------------------
    def weight_of(self, m) -> tuple:
        if self.weights is None:
            raise ValueError("algebra has no weights")
        w = [0] * len(self.weights[0])
        for e, wt in zip(m, self.weights):
            if e:
                for t in range(len(w)):
                    w[t] += e * wt[t]
        return tuple(w)

    def is_homogeneous(self, a: Element):
        ws = {self.weight_of(m) for m in a.terms}
        if len(ws) == 1:
            return ws.pop()
        if not ws:
            return tuple(0 for _ in self.weights[0]) if self.weights else None
        return None

    # multiplication ---------------------------------------------------------
    def mul(self, a: Element, b: Element) -> Element:
        out: dict = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                cab = ca * cb
                for m, c in self._mono_mul(ma, mb).items():
                    _acc(out, m, cab * c)
        return Element(self, out)

    def commutator(self, a: Element, b: Element) -> Element:
        return self.mul(a, b) - self.mul(b, a)

    def mono_mul(self, a, b) -> dict:
        """Normal form of ``X^a X^b`` as ``{monomial: coeff}`` (do not mutate)."""
        return self._mono_mul(tuple(a), tuple(b))

    def _mono_mul(self, a, b):
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        j = next((p for p, e in enumerate(b) if e), None)
        if j is None:
            res = {a: ONE}
        else:
            part = self._mono_times_pow(a, j, b[j])
            rest = b[:j] + (0,) + b[j + 1:]
            if not any(rest):
                res = part
            else:
                res = {}
                for m, c in part.items():
                    for m2, c2 in self._mono_mul(m, rest).items():
                        _acc(res, m2, c * c2)
        self._mul_cache[key] = res
        return res

    def _mono_times_pow(self, a, j, e):
        """Normal form of ``X^a * X_j^e``."""
        key = (a, j, e)
        hit = self._pow_cache.get(key)
        if hit is not None:
            return hit
        high = [k for k in range(j + 1, self.n) if a[k]]
        if not high or all((k, j) not in self.c for k in high):
            coeff = ONE
            for k in high:
                coeff = coeff * self.q[(k, j)] ** (a[k] * e)
            new = list(a)
            new[j] += e
            if new[j] < 0 and not self.invertible[j]:
                raise ValueError(f"negative power of non-invertible {self.vars[j]}")
            res = {tuple(new): coeff}
        else:
            k = high[-1]
            prefix = a[:k] + (0,) + a[k + 1:]
            res = {}
            for m, c in self._swap(k, a[k], j, e).items():
                for m2, c2 in self._mono_mul(prefix, m).items():
                    _acc(res, m2, c * c2)
        self._pow_cache[key] = res
        return res

    def _pair(self, j, e, k, a) -> Mono:
        m = [0] * self.n
        m[j] += e
        m[k] += a
        return tuple(m)

    def _swap(self, k, a, j, e):
        """Normal form of ``X_k^a X_j^e`` for ``k > j``."""
        key = (k, a, j, e)
        hit = self._swap_cache.get(key)
        if hit is not None:
            return hit
        q = self.q[(k, j)]
        corr = self.c.get((k, j))
        res: dict = {}
        if not corr:
            res = {self._pair(j, e, k, a): q ** (a * e)}
        elif abs(a) == 1 and abs(e) == 1:
            xj_inv = self._pair(j, -1, k, 0)
            xk_inv = self._pair(j, 0, k, -1)
            if a == 1 and e == 1:
                res = {self._pair(j, 1, k, 1): q}
                for m, c in corr.items():
                    _acc(res, m, c)
            elif a == 1 and e == -1:
                qi = q.inv()
                res = {self._pair(j, -1, k, 1): qi}
                for m, c in corr.items():
                    left = self._mono_mul(xj_inv, m)
                    for m1, c1 in left.items():
                        for m2, c2 in self._mono_mul(m1, xj_inv).items():
                            _acc(res, m2, -qi * c * c1 * c2)
            elif a == -1 and e == 1:
                qi = q.inv()
                res = {self._pair(j, 1, k, -1): qi}
                for m, c in corr.items():
                    left = self._mono_mul(xk_inv, m)
                    for m1, c1 in left.items():
                        for m2, c2 in self._mono_mul(m1, xk_inv).items():
                            _acc(res, m2, -qi * c * c1 * c2)
            else:
                raise SpecError("correction between two inverted variables")
        elif abs(a) > 1:
            sg = 1 if a > 0 else -1
            rest = self._pair(j, 0, k, a - sg)
            for m, c in self._swap(k, sg, j, e).items():
                for m2, c2 in self._mono_mul(rest, m).items():
                    _acc(res, m2, c * c2)
        else:
            sg = 1 if e > 0 else -1
            last = self._pair(j, sg, k, 0)
            for m, c in self._swap(k, a, j, e - sg).items():
                for m2, c2 in self._mono_mul(m, last).items():
                    _acc(res, m2, c * c2)
        self._swap_cache[key] = res
        return res

    # enumeration --------------------------------------------------------------
    def monomials(self, maxdeg: int, window: int | None = None) -> Iterator[Mono]:
        """Normal monomials with total |exponent| <= maxdeg.

        Invertible variables range over ``[-window, window]`` when a window
        is given (the total-degree bound then only applies to the others).
        """
        ranges = []
        for inv in self.invertible:
            if inv:
                w = maxdeg if window is None else window
                ranges.append(range(-w, w + 1))
            else:
                ranges.append(range(0, maxdeg + 1))
        for m in itertools.product(*ranges):
            tot = sum(abs(e) for e, inv in zip(m, self.invertible) if not inv or window is None)
            if tot <= maxdeg:
                yield m

    def monomials_of_weight(self, w, maxdeg: int, window: int | None = None) -> list:
        w = tuple(w)
        return [m for m in self.monomials(maxdeg, window) if self.weight_of(m) == w]


# ---------------------------------------------------------------------------
# confluence / Ore data / counting


@dataclass
class OverlapCheck:
    word: str
    ok: bool
    left: str
    right: str


@dataclass
class ConfluenceReport:
    checks: list[OverlapCheck] = field(default_factory=list)

    @property
    def confluent(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[OverlapCheck]:
        return [c for c in self.checks if not c.ok]

    def triples(self) -> list[OverlapCheck]:
        return [c for c in self.checks if c.word.count(" ") == 2 and "^-1" not in c.word]


def _letter(spec, i, sign):
    m = [0] * spec.n
    m[i] = sign
    return spec.monomial(m)


def validate_spec(spec: AlgebraSpec) -> ConfluenceReport:
    """Check both reductions of every ambiguity ``X_k X_j X_i`` (``k > j > i``).

    Inverse letters of invertible variables are included, together with
    the overlaps ``X_k^e X_j^d X_j^-d`` and ``X_k^e X_k^-e X_j^d``.
    """
    rep = ConfluenceReport()

    def signs(i):
        return (1, -1) if spec.invertible[i] else (1,)

    def name(i, sg):
        return spec.vars[i] if sg == 1 else f"{spec.vars[i]}^-1"

    def check(letters):
        a, b, c = (_letter(spec, i, sg) for i, sg in letters)
        left = (a * b) * c
        right = a * (b * c)
        word = " ".join(name(i, sg) for i, sg in letters)
        rep.checks.append(OverlapCheck(word, left == right, str(left), str(right)))

    n = spec.n
    for k in range(n - 1, -1, -1):
        for j in range(k - 1, -1, -1):
            for i in range(j - 1, -1, -1):
                for sk in signs(k):
                    for sj in signs(j):
                        for si in signs(i):
                            check([(k, sk), (j, sj), (i, si)])
    for k in range(n):
        for j in range(k):
            for sk in signs(k):
                for sj in signs(j):
                    if spec.invertible[j]:
                        check([(k, sk), (j, sj), (j, -sj)])
                    if spec.invertible[k]:
                        check([(k, sk), (k, -sk), (j, sj)])
    return rep


@dataclass
class OreData:
    j: int
    tau: dict  # variable name -> scalar q with tau_j(X_i) = q X_i
    delta: dict  # variable name -> Element
    issues: list[str]

    @property
    def consistent(self) -> bool:
        return not self.issues


def ore_data(spec: AlgebraSpec, j: int) -> OreData:
    """Skew-derivation data of the ``j``-th extension (1-based ``2 <= j <= n``).

    ``X_j X_i = tau_j(X_i) X_j + delta_j(X_i)`` for ``i < j``.  The report
    checks that tau_j preserves the relations among ``X_1..X_{j-1}`` and
    that delta_j is a left tau_j-derivation on every generator pair.
    """
    if not 2 <= j <= spec.n:
        raise ValueError(f"ore_data needs 2 <= j <= {spec.n}")
    jj = j - 1
    tau = {spec.vars[i]: spec.q[(jj, i)] for i in range(jj)}
    delta = {spec.vars[i]: Element(spec, spec.c.get((jj, i), {})) for i in range(jj)}
    issues = []

    def tau_of(i):
        return spec.gen(i) * spec.q[(jj, i)]

    def tau_elem(x: Element) -> Element:
        out = spec.zero()
        for m, c in x.terms.items():
            scale = ONE
            for p, e in enumerate(m):
                if e:
                    scale = scale * spec.q[(jj, p)] ** e
            out = out + spec.monomial(m, c * scale)
        return out

    def delta_elem(x: Element) -> Element:
        # corrections are linear in single variables
        out = spec.zero()
        for m, c in x.terms.items():
            nz = [p for p, e in enumerate(m) if e]
            if nz:
                out = out + delta[spec.vars[nz[0]]] * c
        return out

    for i2 in range(jj):
        for i1 in range(i2):
            q = spec.q[(i2, i1)]
            corr = Element(spec, spec.c.get((i2, i1), {}))
            x1, x2 = spec.gen(i1), spec.gen(i2)
            # tau_j must respect X_{i2} X_{i1} = q X_{i1} X_{i2} + corr
            t_res = tau_of(i2) * tau_of(i1) - q * (tau_of(i1) * tau_of(i2)) - tau_elem(corr)
            if t_res:
                issues.append(f"tau_{j} breaks {spec.vars[i2]}{spec.vars[i1]} relation: residual {t_res}")
            d1, d2 = delta[spec.vars[i1]], delta[spec.vars[i2]]
            lhs = tau_of(i2) * d1 + d2 * x1
            rhs = q * (tau_of(i1) * d2 + d1 * x2) + delta_elem(corr)
            d_res = lhs - rhs
            if d_res:
                issues.append(f"delta_{j} breaks {spec.vars[i2]}{spec.vars[i1]} relation: residual {d_res}")
    return OreData(j, tau, delta, issues)


def dimension_count(spec: AlgebraSpec, n: int) -> int:
    """Number of normal monomials of total (absolute) degree <= n.

    Invertible variables contribute ``|exponent|`` to the degree.
    """
    return sum(1 for _ in spec.monomials(n))


def binomial_growth(nvars: int, n: int) -> int:
    return math.comb(n + nvars, nvars)


# ---------------------------------------------------------------------------
# JSON documents


def _pair_key(text: str) -> tuple[int, int]:
    t = text.strip().strip("()")
    a, b = t.split(",")
    return int(a) - 1, int(b) - 1


def spec_to_dict(spec: AlgebraSpec) -> dict:
    return {
        "name": spec.name,
        "vars": list(spec.vars),
        "invertible": list(spec.invertible),
        "q": {f"({j + 1},{i + 1})": str(v) for (j, i), v in sorted(spec.q.items()) if v != 1},
        "c": {f"({j + 1},{i + 1})": format_terms(t, spec.vars) for (j, i), t in sorted(spec.c.items())},
        "weights": [list(w) for w in spec.weights] if spec.weights is not None else None,
    }


def spec_to_json(spec: AlgebraSpec) -> str:
    return json.dumps(spec_to_dict(spec), indent=2, sort_keys=True)


class SpecDocumentError(ValueError):
    """Invalid algebra-spec document; message carries the location."""


def spec_from_dict(doc: dict, source: str = "<spec>") -> AlgebraSpec:
    try:
        vars_ = doc["vars"]
    except (KeyError, TypeError):
        raise SpecDocumentError(f"{source}: missing 'vars' list") from None
    n = len(vars_)
    invertible = doc.get("invertible") or [False] * n
    q = {}
    for key, val in (doc.get("q") or {}).items():
        try:
            q[_pair_key(key)] = RatF.parse(val) if isinstance(val, str) else as_ratf(val)
        except (ValueError, TypeError) as exc:
            raise SpecDocumentError(f"{source}: q[{key!r}]: {exc}") from None
    bare = AlgebraSpec(vars_, q, None, invertible, None)
    c = {}
    for key, val in (doc.get("c") or {}).items():
        try:
            c[_pair_key(key)] = bare.parse(val).terms
        except (ValueError, TypeError) as exc:
            raise SpecDocumentError(f"{source}: c[{key!r}]: {exc}") from None
    weights = doc.get("weights")
    try:
        return AlgebraSpec(vars_, q, c, invertible, weights, doc.get("name", ""))
    except SpecError as exc:
        raise SpecDocumentError(f"{source}: {exc}") from None


def spec_from_json(text: str, source: str = "<spec>") -> AlgebraSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecDocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return spec_from_dict(doc, source)


def eval_terms(terms: dict, r0, s0) -> dict:
    return {m: Fraction(c.eval(r0, s0)) for m, c in terms.items()}
