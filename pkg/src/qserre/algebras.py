"""Concrete algebras: U, gr U, the localisation chain, the torus Q4, W, Z' and the embedding I."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import free
from .field import R, S, RatF
from .linalg import matrix_rank, solve, sparse_nullspace
from .pbw import AlgebraSpec, Element

P = RatF.parse

U_VARS = ("X1", "X2", "X3", "X4")
U_WEIGHTS = ((1, 0), (1, 1), (1, 2), (0, 1))

# X_j X_i = q X_i X_j + c, rearranged from the six defining identities
U_Q = {
    (1, 0): "s^-2",
    (2, 0): "r^-2*s^-2",
    (2, 1): "r^-1*s^-1",
    (3, 0): "r^-2",
    (3, 1): "s^-2",
    (3, 2): "r^-1*s^-1",
}
U_C = {(3, 0): "-r^-2*X2", (3, 1): "X3"}

# the identities in the form lhs = 0, written with the generators of U
LEMMA12 = [
    ("lemma12.1", "X1 X2 - s^2 X2 X1"),
    ("lemma12.2", "X1 X3 - r^2 s^2 X3 X1"),
    ("lemma12.3", "X2 X3 - r s X3 X2"),
    ("lemma12.4", "X1 X4 - r^2 X4 X1 - X2"),
    ("lemma12.5", "X2 X4 - s^2 X4 X2 + s^2 X3"),
    ("lemma12.6", "X4 X3 - r^-1 s^-1 X3 X4"),
]

W_TEXT = "X3 + (s^-2 - r^-1 s^-1) X2 X4"
ZP_TEXT = "X1 W - s^4 W X1"

WZ_IDENTITIES = [
    ("wz.1", "X1 W - r^2 s^2 W X1 - (1 - r^-1 s) X2^2"),
    ("wz.2", "X2 W - s^2 W X2"),
    ("wz.3", "X3 W - W X3"),
    ("wz.4", "X4 W - s^-2 W X4"),
    ("wz.5", "X1 Zp - r^2 s^2 Zp X1"),
    ("wz.6", "X2 Zp - Zp X2"),
    ("wz.7", "X3 Zp - r^-2 s^-2 Zp X3"),
    ("wz.8", "X4 Zp - r^-2 s^-2 Zp X4"),
]

# T_i T_j = q T_j T_i for i < j as printed; the (1,4) entry pairs T4 with T2
TORUS_PRINTED = {
    (1, 2): ("s^2", (2, 1)),
    (1, 3): ("r^2*s^2", (3, 1)),
    (1, 4): ("r^2", (4, 2)),
    (2, 3): ("r*s", (3, 2)),
    (2, 4): ("s^2", (4, 2)),
    (3, 4): ("r*s", (4, 3)),
}

LAMBDA_TEXT = "r/((r^2 - s^2)*(r - s))"


@dataclass
class NamedAlgebra:
    name: str
    spec: AlgebraSpec
    designated: dict = field(default_factory=dict)  # e1/e2 (and k's) -> Element

    def __repr__(self):
        return f"NamedAlgebra({self.name})"

    def gen(self, name):
        return self.spec.gen(name)

    def serre_residuals(self) -> tuple[Element, Element]:
        imgs = (self.designated["e1"], self.designated["e2"])
        return tuple(free.to_pbw(rel, self.spec, imgs) for rel in free.serre_relators())


def _u_spec(name="U", invertible=None, corrections=True) -> AlgebraSpec:
    q = {k: P(v) for k, v in U_Q.items()}
    bare = AlgebraSpec(U_VARS, q)
    c = {k: bare.parse(v).terms for k, v in U_C.items()} if corrections else None
    return AlgebraSpec(U_VARS, q, c, invertible, U_WEIGHTS, name)


def _u_named(spec) -> NamedAlgebra:
    return NamedAlgebra(spec.name, spec, {"e1": spec.gen("X1"), "e2": spec.gen("X4")})


@lru_cache(maxsize=None)
def build_u() -> NamedAlgebra:
    return _u_named(_u_spec())


@lru_cache(maxsize=None)
def build_gr_u() -> NamedAlgebra:
    spec = _u_spec("grU", corrections=False)
    return NamedAlgebra("grU", spec, {"e1": spec.gen("X1"), "e2": spec.gen("X4")})


@lru_cache(maxsize=None)
def build_q4() -> NamedAlgebra:
    """Quantum torus in T1..T4 (T1T4 = r^2 T4T1, the derived relation)."""
    q = {
        (1, 0): P("s^-2"),
        (2, 0): P("r^-2*s^-2"),
        (2, 1): P("r^-1*s^-1"),
        (3, 0): P("r^-2"),
        (3, 1): P("s^-2"),
        (3, 2): P("r^-1*s^-1"),
    }
    spec = AlgebraSpec(("T1", "T2", "T3", "T4"), q, None, (True,) * 4, U_WEIGHTS, "Q4")
    alg = NamedAlgebra("Q4", spec)
    emb = embedding_i(target=alg)
    alg.designated = {"e1": emb.images[0], "e2": emb.images[3]}
    return alg


@lru_cache(maxsize=None)
def build_chain() -> tuple[NamedAlgebra, NamedAlgebra, NamedAlgebra, NamedAlgebra]:
    """B4, B3, B2 (X1, then X2, then X3 inverted) and the torus Q4 = B1."""
    out = []
    for k in (4, 3, 2):
        inv = tuple(i < 5 - k for i in range(4))
        out.append(_u_named(_u_spec(f"B{k}", inv)))
    out.append(build_q4())
    return tuple(out)


def algebra_by_name(name: str) -> NamedAlgebra:
    key = name.lower()
    if key == "u":
        return build_u()
    if key == "gru":
        return build_gr_u()
    if key in ("b4", "b3", "b2"):
        return build_chain()[4 - int(key[1])]
    if key in ("q4", "b1"):
        return build_q4()
    if key in ("ugeq0", "vcheck"):
        from . import hopf
        return hopf.build_ugeq0() if key == "ugeq0" else hopf.build_vcheck()
    raise KeyError(f"unknown algebra {name!r}")


# ---------------------------------------------------------------------------
# named elements and identities


def element_w(spec: AlgebraSpec | None = None) -> Element:
    spec = spec or build_u().spec
    return spec.parse(W_TEXT)


def element_zprime(spec: AlgebraSpec | None = None) -> Element:
    spec = spec or build_u().spec
    return spec.parse(ZP_TEXT, {"W": element_w(spec)})


def named_elements(spec: AlgebraSpec | None = None) -> dict:
    spec = spec or build_u().spec
    return {"W": element_w(spec), "Zp": element_zprime(spec)}


@dataclass
class IdentityCheck:
    id: str
    text: str
    residual: Element
    oracle: bool | None = None  # free-algebra membership, when requested

    @property
    def ok(self) -> bool:
        return not self.residual and self.oracle is not False


def _check_identities(table, degbound=None) -> list[IdentityCheck]:
    spec = build_u().spec
    extra = named_elements(spec)
    out = []
    for ident, text in table:
        res = spec.parse(text, extra)
        oracle = None
        if degbound is not None:
            oracle, _ = free.ideal_member(free.expand(text), degbound)
        out.append(IdentityCheck(ident, text, res, oracle))
    return out


def verify_lemma12(degbound: int | None = 6) -> list[IdentityCheck]:
    return _check_identities(LEMMA12, degbound)


def verify_w_identities(degbound: int | None = 7) -> list[IdentityCheck]:
    return _check_identities(WZ_IDENTITIES, degbound)


# ---------------------------------------------------------------------------
# morphisms and the embedding into the torus


class Morphism:
    """Algebra map given on generators; ``check`` verifies every relation."""

    def __init__(self, source: AlgebraSpec, target: AlgebraSpec, images, name=""):
        self.source = source
        self.target = target
        self.images = list(images)
        self.name = name
        if len(self.images) != source.n:
            raise ValueError("one image per source variable is required")
        self._pow: dict = {}

    def _power(self, i, e):
        key = (i, e)
        hit = self._pow.get(key)
        if hit is None:
            hit = self.images[i] ** e
            self._pow[key] = hit
        return hit

    def __call__(self, x: Element) -> Element:
        out = self.target.zero()
        for m, c in x.terms.items():
            img = self.target.one()
            for i, e in enumerate(m):
                if e:
                    img = img * self._power(i, e)
            out = out + img * c
        return out

    def relation_residuals(self) -> dict:
        """Residual of every rewrite relation ``X_j X_i - q X_i X_j - c``."""
        src = self.source
        out = {}
        for j in range(src.n):
            for i in range(j):
                lhs = self.images[j] * self.images[i] - src.q[(j, i)] * (self.images[i] * self.images[j])
                corr = Element(src, src.c.get((j, i), {}))
                out[f"{src.vars[j]}{src.vars[i]}"] = lhs - self(corr)
        return out

    def serre_residuals(self, e1="X1", e2="X4") -> tuple[Element, Element]:
        imgs = (self.images[self.source.index(e1)], self.images[self.source.index(e2)])
        return tuple(free.to_pbw(rel, self.target, imgs) for rel in free.serre_relators())

    def check(self) -> bool:
        return not any(self.relation_residuals().values())


def _x4_image_parts(q4: AlgebraSpec, c2: RatF):
    t4 = q4.gen("T4")
    mid = q4.parse("(s^4 - r^2 s^2) T2^-1 T3")
    tail = q4.parse("T2 T1^-1") * c2
    return t4 + mid + tail


def lambda_value() -> RatF:
    return P(LAMBDA_TEXT)


def embedding_i(lam: RatF | None = None, c2: RatF | None = None, target: NamedAlgebra | None = None) -> Morphism:
    """The map X1, X2, X3 -> T1, T2, T3 and X4 -> lam (T4 + ... )."""
    q4 = (target or build_q4()).spec
    lam = lambda_value() if lam is None else lam
    c2 = P("r^-1*s - 1") if c2 is None else c2
    imgs = [q4.gen("T1"), q4.gen("T2"), q4.gen("T3"), _x4_image_parts(q4, c2) * lam]
    return Morphism(build_u().spec, q4, imgs, "I")


@dataclass
class LambdaSolution:
    value: RatF | None
    nullity: int
    note: str = ""


def solve_lambda(c2: RatF | None = None) -> LambdaSolution:
    """Solve for the scalar making the X1X4 relation hold under the embedding.

    The image of ``X1 X4 - r^2 X4 X1 - X2`` is ``lam * A - T2`` with ``A``
    computed in the torus; the single unknown is found by exact linear solve.
    """
    q4 = build_q4().spec
    c2 = P("r^-1*s - 1") if c2 is None else c2
    t1, t2 = q4.gen("T1"), q4.gen("T2")
    y = _x4_image_parts(q4, c2)
    a = t1 * y - R**2 * (y * t1)
    col = a.terms
    sol = solve([col], t2.terms)
    nullity = 1 - matrix_rank([[v] for v in col.values()]) if col else 1
    if sol is None:
        return LambdaSolution(None, nullity, "no scalar makes the relation hold")
    return LambdaSolution(sol[0], nullity)


@dataclass
class T4Report:
    residual: Element
    w_image_ok: bool
    z_image_ok: bool


def t4_consistency() -> T4Report:
    q4 = build_q4().spec
    emb = embedding_i()
    t1, t2, t3, t4 = q4.gens()
    kappa = P("s^-2 - r^-1*s^-1")
    w2 = t3 + kappa * (t2 * emb.images[3])
    z2 = t1 * w2 - S**4 * (w2 * t1)
    res = t2 ** -1 * z2 * t1 ** -1 - t4
    u = build_u().spec
    return T4Report(res, emb(element_w(u)) == w2, emb(element_zprime(u)) == z2)


@dataclass
class TorusRelation:
    pair: tuple[int, int]
    derived: RatF | None  # q with T_i T_j = q T_j T_i
    printed: RatF
    printed_partner: tuple[int, int]

    @property
    def discrepancy(self) -> bool:
        return self.printed_partner != (self.pair[1], self.pair[0]) or self.derived != self.printed


def t_elements_b3() -> list[Element]:
    """T1..T4 inside B3, with T4 = X2^-1 Z' X1^-1."""
    b3 = build_chain()[1].spec
    x1, x2, x3, _ = b3.gens()
    return [x1, x2, x3, x2 ** -1 * element_zprime(b3) * x1 ** -1]


def _ratio(a: Element, b: Element) -> RatF | None:
    """Scalar q with a = q b, or None."""
    if not b:
        return None
    m = next(iter(b.terms))
    q = a.coeff(m) / b.coeff(m)
    return q if a == b * q else None


def derive_torus_relations() -> list[TorusRelation]:
    ts = t_elements_b3()
    out = []
    for (i, j), (text, partner) in sorted(TORUS_PRINTED.items()):
        ti, tj = ts[i - 1], ts[j - 1]
        q = _ratio(ti * tj, tj * ti)
        out.append(TorusRelation((i, j), q, P(text), partner))
    return out


def x4_from_t_b3() -> Element:
    """Residual of ``X4 - lam (T4 + ...)`` computed inside B3."""
    b3 = build_chain()[1].spec
    t1, t2, t3, t4 = t_elements_b3()
    c2 = P("r^-1*s - 1")
    y = t4 + P("s^4 - r^2*s^2") * (t2 ** -1 * t3) + c2 * (t2 * t1 ** -1)
    return b3.gen("X4") - lambda_value() * y


# ---------------------------------------------------------------------------
# centres


def center_scan(alg: NamedAlgebra | AlgebraSpec, degbound: int, window: int | None = None, gens=None) -> list[Element]:
    """Basis of central elements among monomials within the bound.

    Polynomial algebras test commutation with the designated e-generators;
    Laurent windows apply ``|exponent| <= window`` to invertible variables.
    """
    if isinstance(alg, NamedAlgebra):
        spec = alg.spec
        if gens is None:
            gens = list(alg.designated.values()) if alg.designated and not any(spec.invertible) else spec.gens()
    else:
        spec = alg
        gens = gens or spec.gens()
    classes: dict = {}
    for m in spec.monomials(degbound, window):
        classes.setdefault(spec.weight_of(m), []).append(m)
    basis = []
    for w in sorted(classes):
        monos = classes[w]
        cols = []
        for m in monos:
            x = spec.monomial(m)
            col = {}
            for gi, g in enumerate(gens):
                for mm, c in spec.commutator(x, g).terms.items():
                    col[(gi, mm)] = c
            cols.append(col)
        for vec in sparse_nullspace(cols):
            basis.append(Element(spec, {monos[k]: v for k, v in vec.items()}))
    return basis


def _rs_exponents(q: RatF) -> tuple[int, int]:
    """Exponents (i, j) of a Laurent monomial r^i s^j."""
    (num_m, num_c), = q.num.to_dict().items()
    (den_m, den_c), = q.den.to_dict().items()
    if abs(int(num_c)) != 1 or int(den_c) != 1:
        raise ValueError(f"{q} is not a Laurent monomial in r, s")
    return int(num_m[0]) - int(den_m[0]), int(num_m[1]) - int(den_m[1])


def graded_center_system(gens=("X1", "X4")) -> list[tuple[int, int, int, int]]:
    """Integer equations on (a, b, c, d) for a gr U monomial to commute with the generators.

    Moving ``g`` past ``X_k`` multiplies by ``r^i s^j``; the exponents of
    r and s accumulated over ``X^(a,b,c,d)`` must both vanish.
    """
    spec = build_gr_u().spec
    eqs = []
    for g in gens:
        gi = spec.index(g)
        r_row, s_row = [], []
        for k in range(spec.n):
            if k == gi:
                i, j = 0, 0
            elif k < gi:
                i, j = _rs_exponents(spec.q[(gi, k)])
            else:
                i, j = _rs_exponents(spec.q[(k, gi)].inv())
            r_row.append(i)
            s_row.append(j)
        eqs.extend([tuple(r_row), tuple(s_row)])
    return eqs


def satisfies(eqs, exps) -> bool:
    return all(sum(c * e for c, e in zip(eq, exps)) == 0 for eq in eqs)


def graded_center_solution_rank(eqs=None) -> int:
    eqs = eqs or graded_center_system()
    return matrix_rank([list(e) for e in eqs])
