"""The Hopf algebras U>=0 and V-check: tensors, axiom checks, units and automorphism scans.

Both algebras are PBW algebras whose first two variables are invertible
group-likes (``w1, w2`` or ``k1, k2``) followed by ``X1..X4``.  Maps are
specified on the algebra generators (group-likes and ``e1 = X1``,
``e2 = X4``) and extended through the word expressions of ``X2``, ``X3``.

Scalars gamma_1, gamma_2, lambda_1, lambda_2 of automorphism candidates are
carried as formal markers: a :class:`Marked` value maps marker exponent
vectors to ring elements, so independence of the markers is observed rather
than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import free
from .algebras import NamedAlgebra, U_C, U_Q, U_WEIGHTS
from .field import ONE, ZERO, R, S, RatF, as_ratf
from .linalg import solve
from .pbw import AlgebraSpec, Element, format_mono, mono_order_key

P = RatF.parse


def _acc(target, key, value):
    v = target.get(key)
    v = value if v is None else v + value
    if v:
        target[key] = v
    else:
        target.pop(key, None)


# ---------------------------------------------------------------------------
# tensors


class Tensor:
    """Element of the n-fold tensor power of a PBW algebra."""

    __slots__ = ("spec", "n", "terms")

    def __init__(self, spec: AlgebraSpec, n: int, terms=None):
        self.spec = spec
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def pure(cls, *factors: Element) -> "Tensor":
        spec = factors[0].alg
        out: dict = {}
        for combo in itertools.product(*(f.terms.items() for f in factors)):
            key = tuple(m for m, _ in combo)
            c = ONE
            for _, v in combo:
                c = c * v
            _acc(out, key, c)
        return cls(spec, len(factors), out)

    @classmethod
    def one(cls, spec, n) -> "Tensor":
        return cls(spec, n, {(spec.zero_mono,) * n: ONE})

    def _coerce(self, other):
        if isinstance(other, Tensor):
            return other
        try:
            c = as_ratf(other)
        except TypeError:
            return None
        return Tensor.one(self.spec, self.n) * c

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return Tensor(self.spec, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Tensor(self.spec, self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Tensor):
            if other.n != self.n:
                raise ValueError("tensor powers differ")
            out: dict = {}
            mm = self.spec.mono_mul
            for ka, ca in self.terms.items():
                for kb, cb in other.terms.items():
                    parts = [mm(a, b) for a, b in zip(ka, kb)]
                    base = ca * cb
                    for combo in itertools.product(*(p.items() for p in parts)):
                        c = base
                        for _, v in combo:
                            c = c * v
                        _acc(out, tuple(m for m, _ in combo), c)
            return Tensor(self.spec, self.n, out)
        try:
            c = as_ratf(other)
        except TypeError:
            return NotImplemented
        return Tensor(self.spec, self.n, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        try:
            c = as_ratf(other)
        except TypeError:
            return NotImplemented
        return self * c

    def inverse(self) -> "Tensor":
        if len(self.terms) != 1:
            raise ValueError("only pure monomial tensors are inverted")
        (key, c), = self.terms.items()
        facs = [Element(self.spec, {m: ONE}).inverse() for m in key]
        return Tensor.pure(*facs) * c.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Tensor.one(self.spec, self.n)
        for _ in range(e):
            out = out * self
        return out

    def concat(self, other: "Tensor") -> "Tensor":
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                _acc(out, ka + kb, ca * cb)
        return Tensor(self.spec, self.n + other.n, out)

    def __eq__(self, other):
        if isinstance(other, Tensor):
            return self.n == other.n and self.terms == other.terms
        o = self._coerce(other)
        return NotImplemented if o is None else self.terms == o.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.spec.vars
        parts = []
        for key in sorted(self.terms, key=lambda k: tuple(mono_order_key(m) for m in k)):
            c = self.terms[key]
            body = " ⊗ ".join(format_mono(m, names) or "1" for m in key)
            cs = str(c)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"({cs})*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Tensor({str(self)!r})"


# ---------------------------------------------------------------------------
# formal markers


MARKERS = ("gamma1", "gamma2", "lambda1", "lambda2")


class Marked:
    """Laurent polynomial in the formal markers with ring-element coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def lift(cls, obj, exps=(0, 0, 0, 0)):
        return cls({tuple(exps): obj})

    def __add__(self, other):
        if not isinstance(other, Marked):
            other = Marked.lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            nv = v if cur is None else cur + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return Marked(out)

    __radd__ = __add__

    def __neg__(self):
        return Marked({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Marked):
            out = Marked()
            for ka, va in self.terms.items():
                for kb, vb in other.terms.items():
                    out = out + Marked({tuple(x + y for x, y in zip(ka, kb)): va * vb})
            return out
        return Marked({k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other):
        return Marked({k: other * v for k, v in self.terms.items()})

    def inverse(self) -> "Marked":
        if len(self.terms) != 1:
            raise ValueError("only single-marker values are inverted")
        (k, v), = self.terms.items()
        return Marked({tuple(-x for x in k): v.inverse()})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def substitute(self, values: dict):
        """Evaluate the markers named in ``values``; others stay formal."""
        out = Marked()
        for k, v in self.terms.items():
            c = ONE
            nk = list(k)
            for i, name in enumerate(MARKERS):
                if name in values:
                    c = c * as_ratf(values[name]) ** k[i]
                    nk[i] = 0
            out = out + Marked({tuple(nk): v * c})
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            mk = "*".join(f"{n}^{e}" if e != 1 else n for n, e in zip(MARKERS, k) if e)
            parts.append(f"[{mk or '1'}]({self.terms[k]})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# algebras


def _hopf_spec(group, chars, name) -> AlgebraSpec:
    """Two invertible group-likes followed by X1..X4 of U.

    ``chars[l](p, q)`` is the scalar with ``g_l X = chars[l](wt X) X g_l``.
    """
    vars_ = tuple(group) + ("X1", "X2", "X3", "X4")
    q = {}
    for (j, i), v in U_Q.items():
        q[(j + 2, i + 2)] = P(v)
    for xi, wt in enumerate(U_WEIGHTS):
        for l in range(2):
            q[(xi + 2, l)] = chars[l](*wt).inv()
    bare = AlgebraSpec(vars_, q)
    c = {}
    for (j, i), text in U_C.items():
        c[(j + 2, i + 2)] = bare.parse(text).terms
    weights = [(0, 0), (0, 0)] + list(U_WEIGHTS)
    return AlgebraSpec(vars_, q, c, (True, True, False, False, False, False), weights, name)


def _chi_k1(p, q):
    return S ** (-2 * p) * (R * S) ** q


def _chi_k2(p, q):
    return (R * S) ** (-p) * R ** q


def _chi_w1(p, q):
    return (R**2 * S**-2) ** p * S ** (2 * q)


def _chi_w2(p, q):
    return R ** (-2 * p) * (R * S**-1) ** q


@lru_cache(maxsize=None)
def build_vcheck() -> NamedAlgebra:
    spec = _hopf_spec(("k1", "k2"), (_chi_k1, _chi_k2), "Vcheck")
    return NamedAlgebra("Vcheck", spec, {"k1": spec.gen("k1"), "k2": spec.gen("k2"),
                                         "e1": spec.gen("X1"), "e2": spec.gen("X4")})


@lru_cache(maxsize=None)
def build_ugeq0() -> NamedAlgebra:
    spec = _hopf_spec(("w1", "w2"), (_chi_w1, _chi_w2), "Ugeq0")
    return NamedAlgebra("Ugeq0", spec, {"w1": spec.gen("w1"), "w2": spec.gen("w2"),
                                        "e1": spec.gen("X1"), "e2": spec.gen("X4")})


def group_names(alg: NamedAlgebra) -> tuple[str, str]:
    return alg.spec.vars[0], alg.spec.vars[1]


# defining relators as word sums over the generator names
def relators(alg: NamedAlgebra) -> list[tuple[str, list]]:
    g1, g2 = group_names(alg)
    chars = (_chi_k1, _chi_k2) if g1 == "k1" else (_chi_w1, _chi_w2)
    out = [(f"{g1}{g2}", [(ONE, (g1, g2)), (-ONE, (g2, g1))])]
    for l, g in enumerate((g1, g2)):
        for ename, wt in (("e1", (1, 0)), ("e2", (0, 1))):
            out.append((f"{g}{ename}", [(ONE, (g, ename)), (-chars[l](*wt), (ename, g))]))
    for idx, rel in enumerate(free.serre_relators(), start=1):
        out.append((f"R{idx}", [(c, tuple(free.LETTERS[x] for x in w)) for w, c in rel.terms.items()]))
    return out


def _var_words(alg: NamedAlgebra) -> dict[str, list]:
    g1, g2 = group_names(alg)
    named = free.named_elements()
    out = {g1: [(ONE, (g1,))], g2: [(ONE, (g2,))]}
    for name in ("X1", "X2", "X3", "X4"):
        out[name] = [(c, tuple(free.LETTERS[x] for x in w)) for w, c in sorted(named[name].terms.items())]
    return out


def eval_words(terms, images: dict, one, reverse=False):
    total = None
    for coeff, word in terms:
        prod = one
        for letter in (reversed(word) if reverse else word):
            prod = prod * images[letter]
        prod = prod * coeff
        total = prod if total is None else total + prod
    return total if total is not None else one * ZERO


class AlgebraMap:
    """Homomorphism (or anti-homomorphism) out of a Hopf PBW algebra."""

    def __init__(self, alg: NamedAlgebra, images: dict, one, anti: bool = False):
        self.alg = alg
        self.images = dict(images)
        self.one = one
        self.anti = anti
        words = _var_words(alg)
        self.var_images = [eval_words(words[v], self.images, one, anti) for v in alg.spec.vars]
        self._pow: dict = {}

    def _power(self, i, e):
        key = (i, e)
        hit = self._pow.get(key)
        if hit is None:
            base = self.var_images[i]
            if e < 0:
                base = base.inv() if isinstance(base, RatF) else base.inverse()
                e2 = -e
            else:
                e2 = e
            hit = self.one
            for _ in range(e2):
                hit = hit * base
            self._pow[key] = hit
        return hit

    def mono(self, m):
        out = self.one
        idx = [i for i, e in enumerate(m) if e]
        if self.anti:
            idx.reverse()
        for i in idx:
            out = out * self._power(i, m[i])
        return out

    def __call__(self, x: Element):
        out = None
        for m, c in x.terms.items():
            t = self.mono(m) * c
            out = t if out is None else out + t
        return out if out is not None else self.one * ZERO

    def relator_residuals(self) -> dict:
        return {name: eval_words(terms, self.images, self.one, self.anti) for name, terms in relators(self.alg)}


# ---------------------------------------------------------------------------
# Hopf data and axioms


@dataclass
class HopfData:
    delta: dict  # generator name -> Tensor (2 factors)
    counit: dict  # generator name -> RatF
    antipode: dict  # generator name -> Element


def _gens(alg):
    return alg.designated


def standard_hopf(alg: NamedAlgebra, antipode: str = "solved") -> HopfData:
    """Coproduct and counit on generators; antipode ``solved`` or ``printed``."""
    spec = alg.spec
    g1, g2 = group_names(alg)
    G = _gens(alg)
    if g1 == "k1":
        gl1 = spec.parse("k1^2 k2^-2")
        gl2 = spec.parse("k1^-1 k2^2")
    else:
        gl1, gl2 = G["w1"], G["w2"]
    one = spec.one()
    delta = {
        g1: Tensor.pure(G[g1], G[g1]),
        g2: Tensor.pure(G[g2], G[g2]),
        "e1": Tensor.pure(G["e1"], one) + Tensor.pure(gl1, G["e1"]),
        "e2": Tensor.pure(G["e2"], one) + Tensor.pure(gl2, G["e2"]),
    }
    counit = {g1: ONE, g2: ONE, "e1": ZERO, "e2": ZERO}
    h = HopfData(delta, counit, {})
    if antipode == "printed":
        h.antipode = {g1: G[g1] ** -1, g2: G[g2] ** -1, "e1": -(gl1 * G["e1"]), "e2": -(gl2 * G["e2"])}
    else:
        h.antipode = solve_antipode(alg, delta, counit)
    return h


def solve_antipode(alg: NamedAlgebra, delta: dict, counit: dict) -> dict:
    """Antipode forced by the convolution identity on group-like / skew-primitive generators."""
    spec = alg.spec
    G = _gens(alg)
    one = spec.one()
    out = {}
    for name, d in delta.items():
        x = G[name]
        if d == Tensor.pure(x, x):
            out[name] = x ** -1
            continue
        rest = d - Tensor.pure(x, one)
        if len(rest.terms) != 1:
            raise ValueError(f"{name} is neither group-like nor skew-primitive")
        (key, c), = rest.terms.items()
        if c != 1 or Element(spec, {key[1]: ONE}) != x:
            raise ValueError(f"{name} is neither group-like nor skew-primitive")
        g = Element(spec, {key[0]: ONE})
        out[name] = -(g ** -1 * x)
    return out


def delta_map(alg, h: HopfData) -> AlgebraMap:
    return AlgebraMap(alg, h.delta, Tensor.one(alg.spec, 2))


def counit_map(alg, h: HopfData) -> AlgebraMap:
    return AlgebraMap(alg, h.counit, ONE)


def antipode_map(alg, h: HopfData) -> AlgebraMap:
    return AlgebraMap(alg, h.antipode, alg.spec.one(), anti=True)


def _apply_on_factor(t: Tensor, k: int, f) -> Tensor:
    """Apply ``f`` (Element -> Tensor or scalar) to factor ``k`` of every term."""
    spec = t.spec
    out = None
    for key, c in t.terms.items():
        img = f(Element(spec, {key[k]: ONE}))
        left = [Element(spec, {m: ONE}) for m in key[:k]]
        right = [Element(spec, {m: ONE}) for m in key[k + 1:]]
        if isinstance(img, Tensor):
            piece = img
            if left:
                piece = Tensor.pure(*left).concat(piece)
            if right:
                piece = piece.concat(Tensor.pure(*right))
        else:
            rest = left + right
            piece = (Tensor.pure(*rest) if len(rest) > 1 else rest[0]) * img
        piece = piece * c
        out = piece if out is None else out + piece
    return out


@dataclass
class AxiomReport:
    checks: dict = field(default_factory=dict)  # name -> residual (str), "0" when it holds

    @property
    def ok(self) -> bool:
        return all(v == "0" for v in self.checks.values())

    def failing(self) -> list[str]:
        return [k for k, v in self.checks.items() if v != "0"]


def verify_bialgebra(alg: NamedAlgebra, h: HopfData) -> AxiomReport:
    rep = AxiomReport()
    dm = delta_map(alg, h)
    em = counit_map(alg, h)
    for name, res in dm.relator_residuals().items():
        rep.checks[f"delta.{name}"] = str(res)
    for name, res in em.relator_residuals().items():
        rep.checks[f"counit.{name}"] = str(res)
    G = _gens(alg)
    for name in h.delta:
        d = h.delta[name]
        left = _apply_on_factor(d, 0, dm)
        right = _apply_on_factor(d, 1, dm)
        rep.checks[f"coassoc.{name}"] = str(left - right)
        x = G[name]
        rep.checks[f"counit_left.{name}"] = str(_apply_on_factor(d, 0, em) - x)
        rep.checks[f"counit_right.{name}"] = str(_apply_on_factor(d, 1, em) - x)
    return rep


def convolution(alg, h: HopfData, name: str, side: str) -> Element:
    """``m(S (x) id) Delta(x) - eps(x)`` (side ``left``) or ``m(id (x) S)...`` (``right``)."""
    spec = alg.spec
    sm = antipode_map(alg, h)
    out = spec.zero()
    for (a, b), c in h.delta[name].terms.items():
        ea, eb = Element(spec, {a: ONE}), Element(spec, {b: ONE})
        out = out + (sm(ea) * eb if side == "left" else ea * sm(eb)) * c
    return out - spec.one() * h.counit[name]


def verify_antipode(alg: NamedAlgebra, h: HopfData) -> AxiomReport:
    rep = AxiomReport()
    for name in h.delta:
        for side in ("left", "right"):
            rep.checks[f"convolution_{side}.{name}"] = str(convolution(alg, h, name, side))
    for name, res in antipode_map(alg, h).relator_residuals().items():
        rep.checks[f"anti.{name}"] = str(res)
    return rep


def embed_ugeq0() -> AlgebraMap:
    """U>=0 -> V-check with w1 -> k1^2 k2^-2, w2 -> k1^-1 k2^2."""
    u0, v = build_ugeq0(), build_vcheck()
    vs = v.spec
    imgs = {"w1": vs.parse("k1^2 k2^-2"), "w2": vs.parse("k1^-1 k2^2"),
            "e1": vs.gen("X1"), "e2": vs.gen("X4")}
    return AlgebraMap(u0, imgs, vs.one())


# ---------------------------------------------------------------------------
# units


@dataclass
class UnitResult:
    candidate: Element
    inverse: Element | None


def _k_degree(spec, m):
    return (m[0], m[1])


def _bigraded_index(spec, window: int, degree: int) -> dict:
    out: dict = {}
    for m in spec.monomials(degree, window):
        out.setdefault((_k_degree(spec, m), spec.weight_of(m)), []).append(m)
    return out


def _slice(spec, u: Element, index: dict) -> list:
    """Monomials an inverse of ``u`` may use, from the two gradings.

    The algebra is a domain graded by k-exponents and by the X-weight; when
    ``u`` is homogeneous for one of them, an inverse is homogeneous of the
    opposite degree.
    """
    kdeg = {_k_degree(spec, m) for m in u.terms}
    xw = {spec.weight_of(m) for m in u.terms}
    kt = tuple(-x for x in next(iter(kdeg))) if len(kdeg) == 1 else None
    xt = tuple(-x for x in next(iter(xw))) if len(xw) == 1 else None
    out = []
    for (kd, wt), monos in index.items():
        if (kt is None or kd == kt) and (xt is None or wt == xt):
            out.extend(monos)
    return out


def find_inverse(u: Element, window: int = 3, degree: int = 3, index: dict | None = None) -> Element | None:
    """Two-sided inverse of ``u`` supported in the window, or None."""
    spec = u.alg
    if index is None:
        index = _bigraded_index(spec, window, degree)
    support = _slice(spec, u, index)
    if not support:
        return None
    cols = [(u * spec.monomial(m)).terms for m in support]
    sol = solve(cols, spec.one().terms)
    if sol is None:
        return None
    v = Element(spec, {m: c for m, c in zip(support, sol) if c})
    return v if v * u == 1 and u * v == 1 else None


def unit_candidates(alg: NamedAlgebra, window: int = 3, degree: int = 3) -> list[Element]:
    spec = alg.spec
    monos = list(spec.monomials(degree, window))
    cands = [spec.monomial(m) for m in monos]
    one = spec.one()
    for m in monos:
        if any(m) and not (any(m[2:]) and any(m[:2])):
            cands.append(one + spec.monomial(m))
    kmonos = [m for m in monos if not any(m[2:]) and any(m[:2])]
    for a, b in itertools.combinations(kmonos[:: max(1, len(kmonos) // 12)], 2):
        cands.append(spec.monomial(a) + spec.monomial(b))
    return cands


def units_scan(alg: NamedAlgebra | None = None, window: int = 3, degree: int = 3) -> list[UnitResult]:
    """Candidates within the window that have an inverse within the window."""
    alg = alg or build_vcheck()
    index = _bigraded_index(alg.spec, window, degree)
    found = []
    for u in unit_candidates(alg, window, degree):
        inv = find_inverse(u, window, degree, index)
        if inv is not None:
            found.append(UnitResult(u, inv))
    return found


def is_group_like_monomial(x: Element) -> bool:
    if len(x.terms) != 1:
        return False
    (m,) = x.terms
    return not any(m[2:])


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class AutoCandidate:
    sigma: str = "id"  # "id" or "swap"
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0
    values: tuple = ()  # optional (marker name, value) pairs; others stay formal

    @classmethod
    def parse(cls, text: str) -> "AutoCandidate":
        fields = {}
        vals = []
        for tok in text.split():
            key, _, val = tok.partition("=")
            if key == "sigma":
                fields["sigma"] = {"id": "id", "swap": "swap", "(12)": "swap"}[val]
            elif key in "abcd" and len(key) == 1:
                fields[key] = int(val)
            elif key in MARKERS:
                vals.append((key, val))
            else:
                raise ValueError(f"unknown candidate field {key!r}")
        return cls(values=tuple(vals), **fields)

    def __str__(self):
        s = f"sigma={self.sigma} a={self.a} b={self.b} c={self.c} d={self.d}"
        return s + "".join(f" {k}={v}" for k, v in self.values)


def _marker(i):
    e = [0, 0, 0, 0]
    e[i] = 1
    return tuple(e)


def candidate_images(theta: AutoCandidate, alg: NamedAlgebra | None = None) -> dict:
    alg = alg or build_vcheck()
    spec = alg.spec
    G = _gens(alg)
    sw = theta.sigma == "swap"
    k = [G["k1"], G["k2"]]
    e = [G["e1"], G["e2"]]
    imgs = {
        "k1": Marked.lift(k[1 if sw else 0], _marker(2)),
        "k2": Marked.lift(k[0 if sw else 1], _marker(3)),
        "e1": Marked.lift(spec.monomial((theta.a, theta.b, 0, 0, 0, 0)) * e[1 if sw else 0], _marker(0)),
        "e2": Marked.lift(spec.monomial((theta.c, theta.d, 0, 0, 0, 0)) * e[0 if sw else 1], _marker(1)),
    }
    if theta.values:
        vals = dict(theta.values)
        vals = {k2: P(v) if isinstance(v, str) else v for k2, v in vals.items()}
        imgs = {n: x.substitute(vals) for n, x in imgs.items()}
    return imgs


def theta_map(theta: AutoCandidate, alg=None) -> AlgebraMap:
    alg = alg or build_vcheck()
    return AlgebraMap(alg, candidate_images(theta, alg), Marked.lift(alg.spec.one()))


@dataclass
class AutoReport:
    residuals: dict  # relator name -> Marked residual
    marker_classes: dict  # relator name -> distinct marker monomials over its words
    inverse_ok: bool | None = None

    @property
    def ok(self) -> bool:
        return not any(self.residuals.values()) and self.inverse_ok is not False


def inverse_candidate(theta: AutoCandidate) -> AutoCandidate | None:
    if theta.sigma != "id":
        return None
    return AutoCandidate("id", -theta.a, -theta.b, -theta.c, -theta.d)


def is_automorphism(theta: AutoCandidate, alg: NamedAlgebra | None = None, check_inverse: bool = True) -> AutoReport:
    alg = alg or build_vcheck()
    tm = theta_map(theta, alg)
    res = tm.relator_residuals()
    exps = {n: next(iter(x.terms)) for n, x in tm.images.items()}
    classes = {}
    for name, terms in relators(alg):
        classes[name] = len({tuple(map(sum, zip(*(exps[l] for l in w)))) for _, w in terms})
    rep = AutoReport(res, classes)
    if check_inverse and not any(res.values()):
        inv = inverse_candidate(theta)
        if inv is not None:
            # theta composed with the candidate inverse must rescale each generator
            im = theta_map(inv, alg)
            G = _gens(alg)
            rep.inverse_ok = True
            for name in ("k1", "k2", "e1", "e2"):
                (pre,) = im.images[name].terms.values()
                comp = tm(pre)
                vals = list(comp.terms.values())
                if len(vals) != 1 or len(vals[0].terms) != 1 or set(vals[0].terms) != set(G[name].terms):
                    rep.inverse_ok = False
    return rep


def closed_form_solutions(window: int = 3) -> set:
    rng = range(-window, window + 1)
    return {(a, b, c, d) for a, b, c, d in itertools.product(rng, repeat=4) if b == 2 * c and a + 2 * c + d == 0}


def auto_scan(window: int = 3, jobs: int = 1) -> list[tuple[int, int, int, int]]:
    """All (a, b, c, d) in the window for which the sigma = id candidate preserves the relations."""
    alg = build_vcheck()
    tuples = list(itertools.product(range(-window, window + 1), repeat=4))

    def ok(t):
        return not any(is_automorphism(AutoCandidate("id", *t), alg, check_inverse=False).residuals.values())

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(jobs) as pool:
            flags = list(pool.map(ok, tuples))
    else:
        flags = [ok(t) for t in tuples]
    return [t for t, f in zip(tuples, flags) if f]


def transposition_failures(window: int = 1) -> list[tuple[AutoCandidate, list[str]]]:
    """Every swap candidate in the window together with its failing relators."""
    out = []
    alg = build_vcheck()
    for t in itertools.product(range(-window, window + 1), repeat=4):
        cand = AutoCandidate("swap", *t)
        rep = is_automorphism(cand, alg, check_inverse=False)
        out.append((cand, sorted(k for k, v in rep.residuals.items() if v)))
    return out


# Hopf compatibility ---------------------------------------------------------


def delta_compat_residual(theta: AutoCandidate, name: str, alg=None, h: HopfData | None = None) -> Marked:
    """``Delta(theta(x)) - (theta (x) theta)(Delta(x))`` with formal markers."""
    alg = alg or build_vcheck()
    h = h or standard_hopf(alg)
    spec = alg.spec
    tm = theta_map(theta, alg)
    dm = delta_map(alg, h)
    img = tm.images[name]
    lhs = Marked({k: dm(v) for k, v in img.terms.items()})
    rhs = Marked()
    for (a, b), c in h.delta[name].terms.items():
        ta = tm(Element(spec, {a: ONE}))
        tb = tm(Element(spec, {b: ONE}))
        for ka, va in ta.terms.items():
            for kb, vb in tb.terms.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                rhs = rhs + Marked({key: Tensor.pure(va, vb) * c})
    return lhs - rhs


def _marker_equations(res: Marked) -> list[dict]:
    """Split a residual into scalar polynomial equations in the markers."""
    by_mono: dict = {}
    for mk, t in res.terms.items():
        for key, c in t.terms.items():
            by_mono.setdefault(key, {})[mk] = c
    return [eq for eq in by_mono.values() if eq]


def _solve_binomials(eqs: list[dict]):
    """Solve marker equations; returns (values, feasible).

    Single-term equations are infeasible (markers are nonzero); binomial
    ones fix a marker when the exponent difference is a unit vector.
    """
    values: dict = {}
    changed = True
    pending = [dict(e) for e in eqs]
    while changed:
        changed = False
        nxt = []
        for eq in pending:
            red: dict = {}
            for mk, c in eq.items():
                nk = list(mk)
                for i, name in enumerate(MARKERS):
                    if name in values and nk[i]:
                        c = c * values[name] ** nk[i]
                        nk[i] = 0
                _acc(red, tuple(nk), c)
            if not red:
                continue
            if len(red) == 1:
                return values, False
            if len(red) == 2:
                (m1, c1), (m2, c2) = sorted(red.items())
                diff = [x - y for x, y in zip(m1, m2)]
                nz = [i for i, x in enumerate(diff) if x]
                if len(nz) == 1 and abs(diff[nz[0]]) == 1:
                    val = -c2 / c1
                    values[MARKERS[nz[0]]] = val if diff[nz[0]] == 1 else val.inv()
                    changed = True
                    continue
            nxt.append(red)
        pending = nxt
    if pending:
        return values, None
    return values, True


@dataclass
class HopfSurvivor:
    exps: tuple
    values: dict  # forced marker values
    free_markers: list


def hopf_auto_scan(window: int = 3, jobs: int = 1) -> list[HopfSurvivor]:
    alg = build_vcheck()
    h = standard_hopf(alg)
    out = []
    for t in auto_scan(window, jobs):
        cand = AutoCandidate("id", *t)
        eqs = []
        for name in ("k1", "k2", "e1", "e2"):
            eqs.extend(_marker_equations(delta_compat_residual(cand, name, alg, h)))
        values, feasible = _solve_binomials(eqs)
        if feasible:
            out.append(HopfSurvivor(t, {k: str(v) for k, v in sorted(values.items())},
                                    [m for m in MARKERS if m not in values]))
    return out


def hopf_check(theta: AutoCandidate, alg=None) -> dict:
    """Delta-compatibility residuals of a concrete candidate (markers substituted where given)."""
    alg = alg or build_vcheck()
    h = standard_hopf(alg)
    return {name: delta_compat_residual(theta, name, alg, h) for name in ("k1", "k2", "e1", "e2")}


def antipode_naturality(theta: AutoCandidate, alg=None) -> dict:
    """``S(theta(x)) - theta(S(x))`` on the generators."""
    alg = alg or build_vcheck()
    h = standard_hopf(alg)
    tm = theta_map(theta, alg)
    sm = antipode_map(alg, h)
    out = {}
    for name in ("k1", "k2", "e1", "e2"):
        lhs = Marked({k: sm(v) for k, v in tm.images[name].terms.items()})
        out[name] = lhs - tm(h.antipode[name])
    return out


# matrices --------------------------------------------------------------------


def theta_matrix(theta: AutoCandidate) -> tuple[tuple[int, int], tuple[int, int]]:
    """Exponent matrix of the images of k1, k2 (rows) in k1, k2 (columns)."""
    imgs = candidate_images(theta)
    rows = []
    for name in ("k1", "k2"):
        (elt,) = imgs[name].terms.values()
        (m,) = elt.terms
        rows.append((m[0], m[1]))
    return tuple(rows)


def is_permutation(M) -> bool:
    return sorted(map(tuple, M)) == [(0, 1), (1, 0)]


def perm_matrix_check(bound: int = 5) -> tuple[int, list]:
    """Enumerate nonnegative 2x2 integer matrices with entries <= bound.

    Returns the number enumerated and those with determinant +-1 whose
    inverse is again nonnegative.
    """
    found = []
    count = 0
    rng = range(bound + 1)
    for x, y, z, w in itertools.product(rng, repeat=4):
        count += 1
        det = x * w - y * z
        if det not in (1, -1):
            continue
        inv = ((w * det, -y * det), (-z * det, x * det))
        if all(v >= 0 for row in inv for v in row):
            found.append(((x, y), (z, w)))
    return count, found
