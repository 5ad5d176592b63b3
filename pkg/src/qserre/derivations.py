"""Derivations of U: Leibniz checks, inner derivations, weight scans and HH^1 at bounded degree."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebras import build_u
from .field import ONE, ZERO, RatF, as_ratf
from .linalg import SparseEchelon, matrix_rank, nullspace, solve, sparse_nullspace
from .pbw import AlgebraSpec, Element

# relation (j, i) of the PBW presentation -> its number in the defining list
RELATION_NUMBER = {(1, 0): 1, (2, 0): 2, (2, 1): 3, (3, 0): 4, (3, 1): 5, (3, 2): 6}


def _u() -> AlgebraSpec:
    return build_u().spec


class Derivation:
    """Linear map on U given by its values on X1..X4."""

    def __init__(self, images, spec: AlgebraSpec | None = None, name: str = ""):
        self.spec = spec or _u()
        self.images = [x if isinstance(x, Element) else self.spec.parse(str(x)) for x in images]
        self.name = name
        if len(self.images) != self.spec.n:
            raise ValueError("one image per generator is required")

    @classmethod
    def parse(cls, texts, name=""):
        spec = _u()
        return cls([spec.parse(t) for t in texts], spec, name)

    def __add__(self, other):
        return Derivation([a + b for a, b in zip(self.images, other.images)], self.spec)

    def __sub__(self, other):
        return Derivation([a - b for a, b in zip(self.images, other.images)], self.spec)

    def __mul__(self, c):
        c = as_ratf(c)
        return Derivation([a * c for a in self.images], self.spec)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.images == other.images

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.images)

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.images) + ")"

    def __repr__(self):
        return f"Derivation{self}"

    def vector(self) -> dict:
        return {(i, m): c for i, x in enumerate(self.images) for m, c in x.terms.items()}

    def apply(self, x: Element) -> Element:
        """Extend by the Leibniz rule along the PBW word of each monomial."""
        spec = self.spec
        gens = spec.gens()
        out = spec.zero()
        for m, c in x.terms.items():
            word = [i for i, e in enumerate(m) for _ in range(e)]
            if any(e < 0 for e in m):
                raise ValueError("Leibniz extension is only implemented for polynomial monomials")
            prefix = spec.one()
            for k, i in enumerate(word):
                suffix = spec.one()
                for j in word[k + 1:]:
                    suffix = suffix * gens[j]
                out = out + prefix * self.images[i] * suffix * c
                prefix = prefix * gens[i]
        return out

    def weight_components(self) -> dict:
        spec = self.spec
        out: dict = {}
        for i, x in enumerate(self.images):
            for m, c in x.terms.items():
                w = tuple(a - b for a, b in zip(spec.weight_of(m), spec.weights[i]))
                out.setdefault(w, [dict() for _ in range(spec.n)])[i][m] = c
        return {w: Derivation([Element(spec, t) for t in ts], spec) for w, ts in out.items()}


def relation_residuals(images, spec: AlgebraSpec | None = None) -> dict:
    """Leibniz residual of each defining relation, keyed by its number."""
    spec = spec or _u()
    gens = spec.gens()
    out = {}
    for (j, i), num in sorted(RELATION_NUMBER.items(), key=lambda kv: kv[1]):
        q = spec.q[(j, i)]
        res = images[j] * gens[i] + gens[j] * images[i] - q * (images[i] * gens[j] + gens[i] * images[j])
        for m, c in spec.c.get((j, i), {}).items():
            nz = [p for p, e in enumerate(m) if e]
            if nz:
                res = res - images[nz[0]] * c
        out[num] = res
    return out


@dataclass
class DerivationReport:
    residuals: dict

    @property
    def valid(self) -> bool:
        return not any(self.residuals.values())

    def failing(self) -> list[int]:
        return [k for k, v in self.residuals.items() if v]


def is_derivation(d: Derivation) -> DerivationReport:
    return DerivationReport(relation_residuals(d.images, d.spec))


def inner(t: Element) -> Derivation:
    spec = t.alg
    return Derivation([t * g - g * t for g in spec.gens()], spec, "ad")


def d1() -> Derivation:
    return Derivation.parse(["X1", "X2", "X3", "0"], "D1")


def d2() -> Derivation:
    """Second scaling derivation with D2(X3) = 2 X3."""
    return Derivation.parse(["0", "X2", "2 X3", "X4"], "D2")


def d2_paper() -> Derivation:
    """The second derivation as printed, D2(X3) = X3."""
    return Derivation.parse(["0", "X2", "X3", "X4"], "D2 printed")


def scaling(alphas) -> Derivation:
    spec = _u()
    return Derivation([spec.gen(i) * as_ratf(a) for i, a in enumerate(alphas)], spec)


@dataclass
class ScalingConstraints:
    basis: list  # kernel vectors (alpha_1..alpha_4)
    equations: list  # independent integer rows c with sum c_i alpha_i = 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def satisfied_by(self, alphas) -> bool:
        return all(sum(c * a for c, a in zip(row, alphas)) == 0 for row in self.equations)


def scaling_constraints() -> ScalingConstraints:
    """Linear conditions on alpha for X_i -> alpha_i X_i to be a derivation."""
    spec = _u()
    cols = []
    for k in range(spec.n):
        imgs = [spec.zero()] * spec.n
        imgs[k] = spec.gen(k)
        col = {}
        for num, res in relation_residuals(imgs, spec).items():
            for m, c in res.terms.items():
                col[(num, m)] = c
        cols.append(col)
    basis = [tuple(v) for v in nullspace(cols)]
    keys = sorted(set().union(*cols))
    rows = []
    for key in keys:
        row = [cols[k].get(key, ZERO) for k in range(spec.n)]
        if any(row) and matrix_rank([list(r) for r in rows] + [row]) > len(rows):
            rows.append(row)
    equations = [_integer_row(r) for r in rows]
    return ScalingConstraints(basis, equations)


def _integer_row(row) -> tuple:
    """Scale a row of proportional constants to a primitive integer row."""
    lead = next(x for x in row if x)
    scaled = [x / lead for x in row]
    if not all(x.is_constant() for x in scaled):
        raise ValueError("constraint row is not proportional to an integer row")
    fr = [Fraction(int(x.num.leading_coefficient()), int(x.den.leading_coefficient())) if x else Fraction(0)
          for x in scaled]
    den = math.lcm(*(f.denominator for f in fr))
    ints = [int(f * den) for f in fr]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints)


# ---------------------------------------------------------------------------
# weight scans


def _unknowns(spec, w, degbound):
    out = []
    for i in range(spec.n):
        target = tuple(a + b for a, b in zip(spec.weights[i], w))
        if any(t < 0 for t in target):
            continue
        for m in spec.monomials_of_weight(target, degbound):
            out.append((i, m))
    return out


def derivation_space(w, degbound: int) -> list[Derivation]:
    """Basis of derivations of weight w whose images have degree <= degbound."""
    spec = _u()
    unknowns = _unknowns(spec, tuple(w), degbound)
    if not unknowns:
        return []
    cols = []
    for i, m in unknowns:
        imgs = [spec.zero()] * spec.n
        imgs[i] = spec.monomial(m)
        col = {}
        for num, res in relation_residuals(imgs, spec).items():
            for mm, c in res.terms.items():
                col[(num, mm)] = c
        cols.append(col)
    out = []
    for vec in sparse_nullspace(cols, order=_grlex_key):
        imgs = [dict() for _ in range(spec.n)]
        for k, c in vec.items():
            i, m = unknowns[k]
            imgs[i][m] = c
        out.append(Derivation([Element(spec, t) for t in imgs], spec))
    return out


def _grlex_key(key):
    num, m = key
    return (sum(m), m, num)


def inner_space(w, degbound: int) -> list[Derivation]:
    """Basis of inner derivations of weight w whose images stay within degbound.

    Spans ``ad_t`` over monomials t of weight w and degree <= degbound, then
    keeps the combinations whose components above degbound cancel.
    """
    spec = _u()
    w = tuple(w)
    if any(x < 0 for x in w):
        return []
    ts = [m for m in spec.monomials_of_weight(w, degbound) if any(m)]
    if not ts:
        return []
    vecs = [inner(spec.monomial(m)).vector() for m in ts]
    high = [{k: c for k, c in v.items() if sum(k[1]) > degbound} for v in vecs]
    if any(high):
        combos = sparse_nullspace(high)
    else:
        combos = [{k: ONE} for k in range(len(ts))]
    gens = []
    for combo in combos:
        vec: dict = {}
        for k, c in combo.items():
            for key, v in vecs[k].items():
                nv = vec.get(key, ZERO) + c * v
                if nv:
                    vec[key] = nv
                else:
                    vec.pop(key, None)
        if vec:
            gens.append(vec)
    if not gens:
        return []
    basis = []
    ech = SparseEchelon()
    for g in gens:
        if ech.insert(g):
            imgs = [dict() for _ in range(spec.n)]
            for (i, m), c in g.items():
                imgs[i][m] = c
            basis.append(Derivation([Element(spec, t) for t in imgs], spec))
    return basis


def window_weights(bound: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)]


@dataclass
class HH1Row:
    weight: tuple
    der_dim: int
    inner_dim: int

    @property
    def outer(self) -> int:
        return self.der_dim - self.inner_dim


@dataclass
class HH1Scan:
    window: int
    degbound: int
    rows: list

    @property
    def total(self) -> int:
        return sum(r.outer for r in self.rows)

    def support(self) -> list[tuple]:
        return [r.weight for r in self.rows if r.outer]


def hh1_scan(window: int = 2, degbound: int = 6, jobs: int = 1) -> HH1Scan:
    weights = window_weights(window)

    def one(w):
        return HH1Row(w, len(derivation_space(w, degbound)), len(inner_space(w, degbound)))

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(jobs) as pool:
            rows = list(pool.map(one, weights))
    else:
        rows = [one(w) for w in weights]
    return HH1Scan(window, degbound, rows)


# ---------------------------------------------------------------------------
# decomposition D = ad_t + mu1 D1 + mu2 D2


@dataclass
class Decomposition:
    t: Element
    mu1: RatF
    mu2: RatF
    unique: bool


class DecompositionError(ValueError):
    pass


def decompose(d: Derivation, degbound: int = 6) -> Decomposition:
    """Solve ``d = ad_t + mu1 D1 + mu2 D2`` exactly, weight by weight.

    ``t`` is returned without constant term; uniqueness of the solution is
    checked by the rank of each system.
    """
    spec = d.spec
    t = spec.zero()
    mu1 = mu2 = ZERO
    unique = True
    for w, comp in sorted(d.weight_components().items()):
        ts = [m for m in spec.monomials_of_weight(w, degbound) if any(m)] if min(w) >= 0 else []
        cols = [inner(spec.monomial(m)).vector() for m in ts]
        extra = [d1().vector(), d2().vector()] if w == (0, 0) else []
        allcols = cols + extra
        rhs = comp.vector()
        if not allcols:
            raise DecompositionError(f"no candidates for weight {w} within degree {degbound}")
        sol = solve(allcols, rhs)
        if sol is None:
            raise DecompositionError(f"weight {w} component is not inner + span(D1, D2) within degree {degbound}")
        if sparse_nullspace(allcols):
            unique = False
        for m, c in zip(ts, sol):
            if c:
                t = t + spec.monomial(m, c)
        if extra:
            mu1, mu2 = sol[-2], sol[-1]
    rebuilt = inner(t) + d1() * mu1 + d2() * mu2
    if rebuilt != d:
        raise DecompositionError("decomposition does not reproduce the derivation")
    return Decomposition(t, mu1, mu2, unique)


def random_element(rng, maxdeg: int = 4, terms: int = 3) -> Element:
    spec = _u()
    monos = [m for m in spec.monomials(maxdeg) if any(m)]
    out = spec.zero()
    for m in rng.sample(monos, terms):
        out = out + spec.monomial(m, rng.choice([-3, -2, -1, 1, 2, 5]))
    return out
