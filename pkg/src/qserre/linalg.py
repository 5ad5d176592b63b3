"""Exact linear algebra over Q(r, s).

Two independent routes are provided:

* :func:`echelon_form` / :func:`nullspace` / :func:`solve` -- dense
  fraction-free (Bareiss) elimination over Z[r, s] after clearing row
  denominators; back substitution happens in Q(r, s).
* :class:`SparseEchelon` -- incremental sparse elimination over Q(r, s)
  keyed by a total order on coordinates, which also records how each
  basis vector was combined from the inserted vectors.  It is used for
  ideal-membership certificates and as a cross-check of the dense route.

Vectors are ``dict[key, RatF]`` with sortable keys; matrices are given as
lists of column vectors, the natural shape when every unknown contributes
one residual vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .field import CTX, ONE, ZERO, Poly2, RatF, as_ratf

_P1 = CTX.constant(1)


def _lcm(a: Poly2, b: Poly2) -> Poly2:
    if a.is_one():
        return b
    if b.is_one():
        return a
    return a * (b / a.gcd(b))


def _row_keys(cols: Sequence[dict]) -> list:
    keys = set()
    for c in cols:
        keys.update(c)
    return sorted(keys)


def _poly_size(p: Poly2) -> tuple[int, int]:
    return (p.total_degree(), len(p))


@dataclass
class Echelon:
    """Fraction-free row echelon form of a matrix over Z[r, s].

    ``rows[i]`` is the i-th echelon row (polynomial entries), ``pivots[i]``
    its pivot column.  Rows beyond ``rank`` are zero and dropped.
    """

    rows: list[list[Poly2]]
    pivots: list[int]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)


def echelon_form(matrix: Sequence[Sequence[RatF]]) -> Echelon:
    """Bareiss elimination of a dense row-major matrix of RatF entries."""
    ncols = len(matrix[0]) if matrix else 0
    rows = []
    for row in matrix:
        den = _P1
        for x in row:
            den = _lcm(den, as_ratf(x).den)
        prow = []
        for x in row:
            x = as_ratf(x)
            prow.append(x.num if den.is_one() else x.num * (den / x.den))
        if any(not p.is_zero() for p in prow):
            rows.append(prow)
    m = len(rows)
    prev = _P1
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        best = None
        for i in range(r, m):
            p = rows[i][c]
            if not p.is_zero():
                size = _poly_size(p)
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        i = best[1]
        rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        pc = prow[c]
        for i in range(r + 1, m):
            row = rows[i]
            ic = row[c]
            if ic.is_zero() and pc == prev:
                # the Bareiss update is the identity on this row
                continue
            for j in range(c + 1, ncols):
                v = pc * row[j]
                if not ic.is_zero() and not prow[j].is_zero():
                    v -= ic * prow[j]
                if not prev.is_one() and not v.is_zero():
                    v = v / prev
                row[j] = v
            row[c] = CTX.constant(0)
        prev = pc
        pivots.append(c)
        r += 1
    return Echelon(rows[:r], pivots, ncols)


def _back_substitute(ech: Echelon, free: int) -> list[RatF]:
    """Kernel vector with ``x[free] = 1`` and other free variables zero."""
    x = [ZERO] * ech.ncols
    x[free] = ONE
    for i in range(ech.rank - 1, -1, -1):
        row = ech.rows[i]
        pc = ech.pivots[i]
        acc = ZERO
        for j in range(pc + 1, ech.ncols):
            if x[j] and not row[j].is_zero():
                acc = acc + RatF(row[j]) * x[j]
        x[pc] = -acc / RatF(row[pc]) if acc else ZERO
    return x


def _to_dense(cols: Sequence[dict], keys=None):
    keys = _row_keys(cols) if keys is None else keys
    return [[c.get(k, ZERO) for c in cols] for k in keys]


def nullspace(cols: Sequence[dict]) -> list[list[RatF]]:
    """Basis of ``{x : sum_j x[j] * cols[j] = 0}``, one vector per free column."""
    n = len(cols)
    if n == 0:
        return []
    dense = _to_dense(cols)
    if not dense:
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    ech = echelon_form(dense)
    pivset = set(ech.pivots)
    return [_back_substitute(ech, f) for f in range(n) if f not in pivset]


def rank(cols: Sequence[dict]) -> int:
    if not cols:
        return 0
    dense = _to_dense(cols)
    if not dense:
        return 0
    return echelon_form(dense).rank


def solve(cols: Sequence[dict], rhs: dict) -> list[RatF] | None:
    """One solution of ``sum_j x[j] * cols[j] = rhs`` (free variables zero), or None."""
    n = len(cols)
    keys = sorted(set(rhs).union(*[set(c) for c in cols]))
    if not keys:
        return [ZERO] * n
    aug = [[c.get(k, ZERO) for c in cols] + [-rhs.get(k, ZERO)] for k in keys]
    ech = echelon_form(aug)
    if n in ech.pivots:
        return None
    x = _back_substitute(ech, n)
    return x[:n]


def matrix_rank(matrix: Sequence[Sequence]) -> int:
    """Rank of a dense row-major matrix of ints / Fractions / RatF."""
    if not matrix or not matrix[0]:
        return 0
    return echelon_form([[as_ratf(x) for x in row] for row in matrix]).rank


class SparseEchelon:
    """Incrementally maintained echelon basis of a span, with provenance.

    Each stored row has a distinct leading key (the largest key under
    ``order``) normalised to coefficient 1, together with the combination
    ``{generator index: coefficient}`` of inserted vectors producing it.
    """

    def __init__(self, order=None):
        self.order = order or (lambda k: k)
        self.rows: dict[Hashable, tuple[dict, dict]] = {}
        self.count = 0

    def _lead(self, vec):
        return max(vec, key=self.order)

    def reduce(self, vec: dict, combo: dict | None = None):
        """Top-reduce ``vec``; returns the remainder and the updated combination."""
        vec = dict(vec)
        combo = dict(combo or {})
        while vec:
            lead = self._lead(vec)
            if lead not in self.rows:
                break
            row, rcombo = self.rows[lead]
            f = vec[lead]
            for k, v in row.items():
                nv = vec.get(k, ZERO) - f * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in rcombo.items():
                nv = combo.get(k, ZERO) - f * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return vec, combo

    def insert(self, vec: dict) -> bool:
        """Add a generator; returns True when it enlarged the span."""
        idx = self.count
        self.count += 1
        rem, combo = self.reduce(vec, {idx: ONE})
        if not rem:
            return False
        lead = self._lead(rem)
        f = rem[lead].inv()
        self.rows[lead] = ({k: v * f for k, v in rem.items()}, {k: v * f for k, v in combo.items()})
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def express(self, vec: dict) -> dict | None:
        """Coefficients over inserted generators reproducing ``vec``, or None."""
        rem, combo = self.reduce(vec, {})
        if rem:
            return None
        return {k: -v for k, v in combo.items()}


def sparse_nullspace(cols: Sequence[dict], order=None) -> list[dict]:
    """Kernel basis via :class:`SparseEchelon`; vectors as ``{column: coeff}``."""
    ech = SparseEchelon(order)
    kernel = []
    for j, col in enumerate(cols):
        idx = ech.count
        rem, combo = ech.reduce(col, {idx: ONE})
        ech.count += 1
        if not rem:
            kernel.append(combo)
        else:
            lead = ech._lead(rem)
            f = rem[lead].inv()
            ech.rows[lead] = ({k: v * f for k, v in rem.items()}, {k: v * f for k, v in combo.items()})
    return kernel


def span_equal(a: Iterable[Sequence[RatF]], b: Iterable[Sequence[RatF]]) -> bool:
    """Whether two lists of vectors span the same subspace."""
    a, b = list(a), list(b)
    ra = matrix_rank(a) if a else 0
    rb = matrix_rank(b) if b else 0
    rab = matrix_rank(a + b) if a or b else 0
    return ra == rb == rab
