"""Bicharacters on Z^I: evaluation, pullback, Cartan rows, reflections, bounds, rho."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from gmpy2 import mpq

from .errors import ReflectionUndefined
from .exactfield import INF, UnitValue, unit_order
from .linalg import int_identity, int_inverse

Weight = Tuple[int, ...]

CARTAN_CAP = 64


def simple_root(i: int, rank: int) -> Weight:
    return tuple(int(j == i) for j in range(rank))


def height(a: Sequence[int]) -> int:
    return sum(a)


def wadd(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wscale(k: int, a: Sequence[int]) -> Weight:
    return tuple(k * x for x in a)


def is_nonneg(a: Sequence[int]) -> bool:
    return all(x >= 0 for x in a)


@dataclass(frozen=True)
class Bicharacter:
    """chi(alpha_i, alpha_j) = q[i][j]; all entries live in one Q(zeta_n)."""

    q: Tuple[Tuple[UnitValue, ...], ...]

    def __post_init__(self):
        q = tuple(tuple(row) for row in self.q)
        r = len(q)
        if r == 0 or any(len(row) != r for row in q):
            raise ValueError("bicharacter matrix must be square and nonempty")
        orders = {v.n for row in q for v in row}
        if len(orders) != 1:
            raise ValueError(f"mixed cyclotomic orders {sorted(orders)}")
        object.__setattr__(self, "q", q)

    @property
    def rank(self) -> int:
        return len(self.q)

    @property
    def n(self) -> int:
        return self.q[0][0].n

    @classmethod
    def from_units(cls, rows: Sequence[Sequence[UnitValue]]) -> "Bicharacter":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def cartan_type(cls, cartan: Sequence[Sequence[int]], d: Sequence[int], q: UnitValue) -> "Bicharacter":
        """chi(alpha_i, alpha_j) = q^(d_i c_ij)."""
        r = len(cartan)
        return cls(tuple(tuple(q ** (d[i] * cartan[i][j]) for j in range(r)) for i in range(r)))

    def eval(self, a: Sequence[int], b: Sequence[int]) -> UnitValue:
        rat = mpq(1)
        ze = 0
        za = 0
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.q[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                k = ai * bj
                v = row[j]
                if v.rat != 1:
                    rat *= v.rat ** k
                ze += v.zeta_exp * k
                za += v.z_exp * k
        return UnitValue(rat, ze, za, self.n)

    __call__ = eval

    def diag(self, a: Sequence[int]) -> UnitValue:
        return self.eval(a, a)

    def op(self) -> "Bicharacter":
        """chi^op(a, b) = chi(b, a)."""
        r = self.rank
        return Bicharacter(tuple(tuple(self.q[j][i] for j in range(r)) for i in range(r)))

    def inverse(self) -> "Bicharacter":
        return Bicharacter(tuple(tuple(v.inverse() for v in row) for row in self.q))

    def offdiag_product(self, i: int, j: int) -> UnitValue:
        return self.q[i][j] * self.q[j][i]

    def to_json(self) -> list:
        return [[v.to_json() for v in row] for row in self.q]

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(v) for v in row) for row in self.q) + "]"


@dataclass(frozen=True)
class CartanRow:
    p: int
    entries: Optional[Tuple[int, ...]]
    defined: bool


def eval_chi(chi: Bicharacter, a: Sequence[int], b: Sequence[int]) -> UnitValue:
    return chi.eval(a, b)


def pullback(chi: Bicharacter, w: Sequence[Sequence[int]]) -> Bicharacter:
    """(w*chi)(a, b) = chi(w^-1 a, w^-1 b); w acts on column vectors."""
    winv = int_inverse(w)
    r = chi.rank
    cols = [tuple(winv[k][i] for k in range(r)) for i in range(r)]
    return Bicharacter(tuple(tuple(chi.eval(cols[i], cols[j]) for j in range(r)) for i in range(r)))


def bound(chi: Bicharacter, a: Sequence[int]):
    """Least m with (m)_{chi(a,a)} = 0, or INF."""
    o = unit_order(chi.diag(a))
    if o == 1:
        return INF
    return o


def _qnum_vanishes(m: int, q: UnitValue) -> bool:
    # (m)_q = 0 in characteristic 0 iff q != 1 and q^m = 1
    o = unit_order(q)
    return o != INF and o > 1 and m % o == 0


def cartan_row(chi: Bicharacter, p: int, cap: int = CARTAN_CAP) -> CartanRow:
    qpp = chi.q[p][p]
    entries = []
    for j in range(chi.rank):
        if j == p:
            entries.append(2)
            continue
        prod = chi.offdiag_product(p, j)
        found = None
        acc = prod
        for m in range(cap + 1):
            if _qnum_vanishes(m + 1, qpp) or acc.is_one():
                found = m
                break
            acc = acc * qpp
        if found is None:
            return CartanRow(p, None, False)
        entries.append(-found)
    return CartanRow(p, tuple(entries), True)


def is_p_finite(chi: Bicharacter, p: int, cap: int = CARTAN_CAP) -> bool:
    return cartan_row(chi, p, cap).defined


def cartan_matrix(chi: Bicharacter, cap: int = CARTAN_CAP) -> Optional[Tuple[Tuple[int, ...], ...]]:
    """C^chi as a tuple of rows, or None if some row is undefined."""
    rows = []
    for p in range(chi.rank):
        row = cartan_row(chi, p, cap)
        if not row.defined:
            return None
        rows.append(row.entries)
    return tuple(rows)


def sigma_matrix(cartan_row_entries: Sequence[int], p: int) -> Tuple[Tuple[int, ...], ...]:
    """Matrix of sigma_p: alpha_j -> alpha_j - c_pj alpha_p (columns are images)."""
    r = len(cartan_row_entries)
    m = [list(row) for row in int_identity(r)]
    for j in range(r):
        m[p][j] -= cartan_row_entries[j]
    return tuple(tuple(row) for row in m)


def sigma(chi: Bicharacter, p: int, cap: int = CARTAN_CAP) -> Tuple[Tuple[int, ...], ...]:
    row = cartan_row(chi, p, cap)
    if not row.defined:
        raise ReflectionUndefined(f"reflection undefined: chi is not {p + 1}-finite")
    return sigma_matrix(row.entries, p)


def reflect(chi: Bicharacter, p: int, cap: int = CARTAN_CAP) -> Bicharacter:
    """r_p(chi), computed as the pullback along sigma_p."""
    return pullback(chi, sigma(chi, p, cap))


def reflect_formula(chi: Bicharacter, p: int, cap: int = CARTAN_CAP) -> Bicharacter:
    """r_p(chi) from the entrywise formulas; independent of pullback."""
    row = cartan_row(chi, p, cap)
    if not row.defined:
        raise ReflectionUndefined(f"reflection undefined: chi is not {p + 1}-finite")
    c = row.entries
    q = chi.q
    qpp = q[p][p]
    r = chi.rank
    out = []
    for i in range(r):
        line = []
        for j in range(r):
            if i == p and j == p:
                v = qpp
            elif i == p:
                v = q[p][j].inverse() * qpp ** c[j]
            elif j == p:
                v = q[i][p].inverse() * qpp ** c[i]
            else:
                v = q[i][j] * q[i][p] ** (-c[j]) * q[p][j] ** (-c[i]) * qpp ** (c[i] * c[j])
            line.append(v)
        out.append(tuple(line))
    return Bicharacter(tuple(out))


class Rho:
    """The character rho^chi: Z^I -> units with rho(alpha_i) = chi(alpha_i, alpha_i)."""

    def __init__(self, chi: Bicharacter):
        self.chi = chi
        self.gens = tuple(chi.q[i][i] for i in range(chi.rank))

    def __call__(self, a: Sequence[int]) -> UnitValue:
        acc = UnitValue.one(self.chi.n)
        for g, k in zip(self.gens, a):
            if k:
                acc = acc * g ** k
        return acc


def rho(chi: Bicharacter) -> Rho:
    return Rho(chi)
