"""Free associative algebra on e1, e2 over Q(r, s) and a bounded ideal-membership oracle.

Words are tuples over ``{0, 1}`` (``0 = e1``, ``1 = e2``).  Membership of an
element in the two-sided ideal generated by the q-Serre relators is decided
degree by degree: the padded relators ``u * R_i * v`` are weight-homogeneous,
so each weight component of the query is tested against the span of the
padded relators of that weight only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import exprparse
from .field import ONE, ZERO, R, S, as_ratf, tree_pos
from .linalg import SparseEchelon

LETTERS = ("e1", "e2")


def _acc(target, key, value):
    v = target.get(key)
    v = value if v is None else v + value
    if v:
        target[key] = v
    else:
        target.pop(key, None)


class FreeElt:
    """Finite combination of words in e1, e2."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {tuple(w): as_ratf(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, w, coeff=ONE) -> "FreeElt":
        return cls({tuple(w): coeff})

    @classmethod
    def scalar(cls, c) -> "FreeElt":
        return cls({(): as_ratf(c)})

    def __add__(self, other):
        if not isinstance(other, FreeElt):
            try:
                other = FreeElt.scalar(other)
            except TypeError:
                return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return FreeElt(out)

    __radd__ = __add__

    def __neg__(self):
        return FreeElt({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FreeElt):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    _acc(out, w1 + w2, c1 * c2)
            return FreeElt(out)
        try:
            c = as_ratf(other)
        except TypeError:
            return NotImplemented
        return FreeElt({w: v * c for w, v in self.terms.items()})

    def __rmul__(self, other):
        try:
            c = as_ratf(other)
        except TypeError:
            return NotImplemented
        return FreeElt({w: c * v for w, v in self.terms.items()})

    def __truediv__(self, other):
        return self * as_ratf(other).inv()

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers do not exist in the free algebra")
        out = FreeElt.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, FreeElt):
            return self.terms == other.terms
        try:
            return self.terms == FreeElt.scalar(other).terms
        except TypeError:
            return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def weight(self):
        """Letter counts ``(#e1, #e2)`` if homogeneous, else None."""
        ws = {word_weight(w) for w in self.terms}
        if len(ws) == 1:
            return ws.pop()
        return (0, 0) if not ws else None

    def components(self) -> dict:
        out: dict = {}
        for w, c in self.terms.items():
            out.setdefault(word_weight(w), {})[w] = c
        return {k: FreeElt(v) for k, v in out.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = format_word(w)
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"FreeElt({str(self)!r})"


def word_weight(w) -> tuple[int, int]:
    ones = sum(w)
    return (len(w) - ones, ones)


def format_word(w) -> str:
    out = []
    for letter, grp in itertools.groupby(w):
        k = len(list(grp))
        out.append(LETTERS[letter] + (f"^{k}" if k > 1 else ""))
    return "*".join(out)


E1 = FreeElt.word((0,))
E2 = FreeElt.word((1,))


def serre_relators() -> tuple[FreeElt, FreeElt]:
    """The two q-Serre relators, of weights (2,1) and (1,3)."""
    r2s2 = R**2 + S**2
    trip = R**2 + R * S + S**2
    r1 = E1 * E1 * E2 - r2s2 * (E1 * E2 * E1) + (R**2 * S**2) * (E2 * E1 * E1)
    r2 = (E1 * E2**3 - trip * (E2 * E1 * E2 * E2)
          + (R * S * trip) * (E2 * E2 * E1 * E2) - (R**3 * S**3) * (E2**3 * E1))
    return r1, r2


def named_elements() -> dict[str, FreeElt]:
    """Defining expressions of the named symbols in terms of e1, e2."""
    e3 = E1 * E2 - R**2 * (E2 * E1)
    x3 = E2 * e3 - S**-2 * (e3 * E2)
    kappa = S**-2 - (R * S).inv()
    w = x3 + kappa * (e3 * E2)
    zp = E1 * w - S**4 * (w * E1)
    return {"e1": E1, "e2": E2, "e3": e3, "X1": E1, "X2": e3, "X3": x3, "X4": E2, "W": w, "Zp": zp}


_NAMED = None


def expand(expr) -> FreeElt:
    """Expand an expression over e1, e2, e3, X1..X4, W, Zp (and r, s) into words."""
    global _NAMED
    if _NAMED is None:
        _NAMED = named_elements()
    text = expr
    tree = exprparse.parse(expr) if isinstance(expr, str) else expr

    def lookup(name):
        if name == "r":
            return R
        if name == "s":
            return S
        if name in _NAMED:
            return _NAMED[name]
        raise exprparse.ParseError(f"unknown symbol {name!r}", str(text), tree_pos(tree, name))

    def divide(a, b):
        if isinstance(b, FreeElt):
            if set(b.terms) - {()}:
                raise ValueError("division by a non-scalar")
            b = b.terms.get((), ZERO)
        return a * as_ratf(b).inv()

    val = exprparse.evaluate(tree, lookup, divide, const=as_ratf)
    return val if isinstance(val, FreeElt) else FreeElt.scalar(val)


def words_of_weight(p: int, q: int) -> list[tuple]:
    """All words with p letters e1 and q letters e2."""
    n = p + q
    out = []
    for pos in itertools.combinations(range(n), q):
        w = [0] * n
        for i in pos:
            w[i] = 1
        out.append(tuple(w))
    return out


@dataclass
class MembershipCertificate:
    """``sum coeff * u * R_idx * v`` over the stored triples."""

    terms: list = field(default_factory=list)  # (u, relator index, v, coeff)

    def expand(self) -> FreeElt:
        rels = serre_relators()
        out = FreeElt()
        for u, idx, v, coeff in self.terms:
            out = out + coeff * (FreeElt.word(u) * rels[idx] * FreeElt.word(v))
        return out

    def __len__(self):
        return len(self.terms)


def _padded_relators(weight: tuple[int, int]):
    rels = serre_relators()
    out = []
    for idx, rel in enumerate(rels):
        rw = rel.weight()
        p, q = weight[0] - rw[0], weight[1] - rw[1]
        if p < 0 or q < 0:
            continue
        for pad in words_of_weight(p, q):
            for cut in range(len(pad) + 1):
                u, v = pad[:cut], pad[cut:]
                out.append((u, idx, v, FreeElt.word(u) * rel * FreeElt.word(v)))
    return out


def ideal_member(x: FreeElt, degbound: int = 7):
    """Decide membership of ``x`` in the Serre ideal truncated at ``degbound``.

    Returns ``(True, certificate)`` or ``(False, None)``.  The certificate is
    re-expanded and compared with ``x`` before it is returned.
    """
    if x.degree() > degbound:
        raise ValueError(f"degbound {degbound} is below the degree {x.degree()} of the query")
    cert = MembershipCertificate()
    for wt, comp in sorted(x.components().items()):
        gens = _padded_relators(wt)
        ech = SparseEchelon()
        for *_, vec in gens:
            ech.insert(vec.terms)
        combo = ech.express(comp.terms)
        if combo is None:
            return False, None
        for k in sorted(combo):
            u, idx, v, _ = gens[k]
            cert.terms.append((u, idx, v, combo[k]))
    if cert.expand() != x:
        raise AssertionError("membership certificate does not reproduce the query")
    return True, cert


def to_pbw(x: FreeElt, alg, images=None):
    """Image of ``x`` under ``e1 -> images[0]``, ``e2 -> images[1]``.

    Defaults to ``X1`` and ``X4`` of the target algebra.
    """
    if images is None:
        images = (alg.gen("X1"), alg.gen("X4"))
    cache: dict = {(): alg.one()}

    def word_image(w):
        hit = cache.get(w)
        if hit is None:
            hit = word_image(w[:-1]) * images[w[-1]]
            cache[w] = hit
        return hit

    out = alg.zero()
    for w, c in x.terms.items():
        out = out + word_image(w) * c
    return out


def random_word_expr(rng, maxlen: int) -> FreeElt:
    """Random combination of a few words with small integer coefficients."""
    out = FreeElt()
    for _ in range(rng.randint(1, 3)):
        n = rng.randint(1, maxlen)
        w = tuple(rng.randint(0, 1) for _ in range(n))
        out = out + FreeElt.word(w, rng.choice([-2, -1, 1, 2, 3]))
    return out
