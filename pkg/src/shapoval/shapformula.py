"""Partition functions, PBW dimensions, formal characters, the dot action and
the closed-form Shapovalov determinant together with its U_q(g) / u_q(g)
specializations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .bicharacter import (
    Bicharacter,
    Weight,
    bound,
    height,
    is_nonneg,
    rho,
    sigma,
    simple_root,
    wadd,
    wscale,
    wsub,
)
from .errors import HypothesisError
from .exactfield import INF, UnitValue
from .laurent import LPoly
from .u0ring import U0Poly, lattice_hnf, quotient_specialize, quotient_specialize_lpoly
from .weylgroupoid import Caps, DEFAULT_CAPS, RootSystemRecord, roots_of


# ----------------------------------------------------------------------
# counting
# ----------------------------------------------------------------------

def _count(alpha: Weight, items: Tuple[Tuple[Weight, int, object], ...]) -> int:
    """Number of (m_mu) with sum m_mu beta_mu = alpha and lo_mu <= m_mu < hi_mu."""

    @lru_cache(maxsize=None)
    def go(idx: int, rem: Weight) -> int:
        if idx == len(items):
            return int(not any(rem))
        beta, lo, hi = items[idx]
        total = 0
        m = lo
        cur = wsub(rem, wscale(lo, beta))
        while m < hi and is_nonneg(cur):
            total += go(idx + 1, cur)
            m += 1
            cur = wsub(cur, beta)
        return total

    if not is_nonneg(alpha):
        return 0
    return go(0, tuple(alpha))


def _check_root(roots: RootSystemRecord, beta: Weight) -> Weight:
    beta = tuple(beta)
    if beta not in roots.bounds:
        raise ValueError(f"{beta} is not a positive root")
    return beta


def partition(roots: RootSystemRecord, alpha: Weight, beta: Weight, t: int) -> int:
    """P(alpha, beta; t): bounded multiplicity vectors summing to alpha with m_beta >= t."""
    beta = _check_root(roots, beta)
    b = roots.bounds[beta]
    if not (1 <= t < b):
        raise ValueError(f"t={t} outside 1 <= t < b({beta}) = {b}")
    items = tuple((g, t if g == beta else 0, roots.bounds[g]) for g in roots.positive_roots)
    return _count(tuple(alpha), items)


def pbw_dim(roots: RootSystemRecord, alpha: Weight) -> int:
    items = tuple((g, 0, roots.bounds[g]) for g in roots.positive_roots)
    return _count(tuple(alpha), items)


def t_range(roots: RootSystemRecord, alpha: Weight, beta: Weight) -> range:
    """1 <= t < b(beta), truncated at max{m : m beta <= alpha}."""
    b = roots.bounds[tuple(beta)]
    tmax = min((a // x for a, x in zip(alpha, beta) if x), default=0)
    hi = tmax + 1 if b == INF else min(b, tmax + 1)
    return range(1, hi)


# ----------------------------------------------------------------------
# formal characters
# ----------------------------------------------------------------------

@dataclass
class FormalCharSeries:
    """sum c_alpha e^{-alpha}; keys are alpha (so the usual support is N0^I).

    cutoff bounds |alpha| for truncated series; None means exact (finite) data."""

    rank: int
    terms: Dict[Weight, int] = field(default_factory=dict)
    cutoff: Optional[int] = None

    def clean(self) -> "FormalCharSeries":
        self.terms = {a: c for a, c in self.terms.items()
                      if c and (self.cutoff is None or height(a) <= self.cutoff)}
        return self

    def __add__(self, other: "FormalCharSeries") -> "FormalCharSeries":
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return FormalCharSeries(self.rank, out, _min_cut(self.cutoff, other.cutoff)).clean()

    def __sub__(self, other: "FormalCharSeries") -> "FormalCharSeries":
        return self + other.scale(-1)

    def scale(self, k: int) -> "FormalCharSeries":
        return FormalCharSeries(self.rank, {a: k * c for a, c in self.terms.items()}, self.cutoff).clean()

    def __mul__(self, other: "FormalCharSeries") -> "FormalCharSeries":
        cut = _min_cut(self.cutoff, other.cutoff)
        out: Dict[Weight, int] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                s = wadd(a, b)
                if cut is not None and height(s) > cut:
                    continue
                out[s] = out.get(s, 0) + c * d
        return FormalCharSeries(self.rank, out, cut).clean()

    def truncate(self, cutoff: int) -> "FormalCharSeries":
        return FormalCharSeries(self.rank, dict(self.terms), _min_cut(self.cutoff, cutoff)).clean()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalCharSeries):
            return NotImplemented
        cut = _min_cut(self.cutoff, other.cutoff)
        a = self.truncate(cut).terms if cut is not None else self.terms
        b = other.truncate(cut).terms if cut is not None else other.terms
        return a == b

    @classmethod
    def one(cls, rank: int, cutoff: Optional[int] = None) -> "FormalCharSeries":
        return cls(rank, {(0,) * rank: 1}, cutoff)

    @classmethod
    def geometric(cls, beta: Weight, lo: int, hi, cutoff: Optional[int]) -> "FormalCharSeries":
        """sum_{lo <= m < hi} e^{-m beta} (hi may be INF when a cutoff is given)."""
        if hi == INF and cutoff is None:
            raise ValueError("infinite geometric series needs a cutoff")
        out = {}
        m = lo
        while m < hi:
            a = wscale(m, beta)
            if cutoff is not None and height(a) > cutoff:
                break
            out[a] = 1
            m += 1
        return cls(len(beta), out, cutoff)


def _min_cut(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _weights_up_to(rank: int, cutoff: int):
    def rec(prefix, left):
        if len(prefix) == rank:
            yield tuple(prefix)
            return
        for v in range(left + 1):
            yield from rec(prefix + [v], left - v)
    yield from rec([], cutoff)


def weights_up_to(rank: int, cutoff: int) -> List[Weight]:
    """All alpha in N0^I with |alpha| <= cutoff, ordered by height then lex-descending."""
    ws = list(_weights_up_to(rank, cutoff))
    ws.sort(key=lambda a: (height(a), tuple(-x for x in a)))
    return ws


def full_height(roots: RootSystemRecord) -> Optional[int]:
    """Height of the top degree sum (b-1) beta of U^-, or None if some bound is infinite."""
    if any(b == INF for b in roots.bounds.values()):
        return None
    return sum((roots.bounds[g] - 1) * height(g) for g in roots.positive_roots)


def fch_verma(roots: RootSystemRecord, cutoff: Optional[int]) -> FormalCharSeries:
    """sum_alpha pbw_dim(alpha) e^{-alpha} by direct counting."""
    r = len(roots.positive_roots[0])
    if cutoff is None:
        if full_height(roots) is None:
            raise ValueError("infinite bounds need an explicit cutoff")
        # every bound is finite: walk the box of multiplicity vectors once
        terms: dict = {}
        gens = roots.positive_roots
        for ms in itertools.product(*(range(roots.bounds[g]) for g in gens)):
            a = tuple(sum(m * g[i] for m, g in zip(ms, gens)) for i in range(r))
            terms[a] = terms.get(a, 0) + 1
        return FormalCharSeries(r, terms, None).clean()
    terms = {a: pbw_dim(roots, a) for a in weights_up_to(r, cutoff)}
    return FormalCharSeries(r, terms, cutoff).clean()


def hilbert_product(roots: RootSystemRecord, cutoff: Optional[int]) -> FormalCharSeries:
    """prod_beta (1 - e^{-b beta}) / (1 - e^{-beta}) as a product of geometric series."""
    r = len(roots.positive_roots[0])
    acc = FormalCharSeries.one(r, cutoff)
    for g in roots.positive_roots:
        acc = acc * FormalCharSeries.geometric(g, 0, roots.bounds[g], cutoff)
    return acc


def submodule_char(roots: RootSystemRecord, beta: Weight, t: int, cutoff: int) -> FormalCharSeries:
    """sum_alpha P(alpha, beta; t) e^{-alpha}, truncated at cutoff."""
    beta = _check_root(roots, beta)
    b = roots.bounds[beta]
    if not (1 <= t < b):
        raise ValueError(f"t={t} outside 1 <= t < b({beta}) = {b}")
    r = len(beta)
    terms = {a: partition(roots, a, beta, t) for a in weights_up_to(r, cutoff)}
    return FormalCharSeries(r, terms, cutoff).clean()


def submodule_char_product(roots: RootSystemRecord, beta: Weight, t: int, cutoff: int) -> FormalCharSeries:
    """submodule_char rebuilt as a product of geometric series."""
    beta = tuple(beta)
    acc = FormalCharSeries.geometric(beta, t, roots.bounds[beta], cutoff)
    for g in roots.positive_roots:
        if g != beta:
            acc = acc * FormalCharSeries.geometric(g, 0, roots.bounds[g], cutoff)
    return acc


def weighted_root_sums(roots: RootSystemRecord, alpha: Weight) -> Tuple[Weight, Weight]:
    """(alpha * dim, sum_beta sum_t P(alpha, beta; t) beta)."""
    r = len(alpha)
    lhs = wscale(pbw_dim(roots, alpha), alpha)
    rhs = (0,) * r
    for g in roots.positive_roots:
        for t in t_range(roots, alpha, g):
            rhs = wadd(rhs, wscale(partition(roots, alpha, g, t), g))
    return lhs, rhs


def sdot_weight(chi: Bicharacter, p: int, alpha: Weight) -> Weight:
    """sigma_p(alpha) + (1 - b(alpha_p)) alpha_p."""
    r = chi.rank
    b = bound(chi, simple_root(p, r))
    if b == INF:
        raise ValueError(f"dot action needs a finite bound at alpha_{p + 1}")
    s = sigma(chi, p)
    img = tuple(sum(s[i][j] * alpha[j] for j in range(r)) for i in range(r))
    return wadd(img, wscale(1 - b, simple_root(p, r)))


def sdot_apply(chi: Bicharacter, p: int, s):
    """Dot action on a weight or termwise on a series (e^{-a} -> e^{sdot(-a)})."""
    if isinstance(s, FormalCharSeries):
        out = {}
        for a, c in s.terms.items():
            key = wscale(-1, sdot_weight(chi, p, wscale(-1, a)))
            out[key] = out.get(key, 0) + c
        # the image of a truncated series is not a truncation; keep exact terms only
        return FormalCharSeries(s.rank, out, None).clean()
    return sdot_weight(chi, p, tuple(s))


# ----------------------------------------------------------------------
# determinant factorization
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LinearFactor:
    """kcoeff * K_root - lcoeff * L_root."""

    root: Weight
    t: int
    kcoeff: UnitValue
    lcoeff: UnitValue

    @property
    def as_poly(self) -> U0Poly:
        return U0Poly.binomial(self.root, self.kcoeff, self.lcoeff, self.kcoeff.n)

    def as_lpoly(self) -> LPoly:
        r = len(self.root)
        n = self.kcoeff.n
        zero = (0,) * r
        k = LPoly.monomial(1 + 2 * r, n, (self.kcoeff.z_exp,) + tuple(self.root) + zero,
                           self.kcoeff.cyclotomic())
        l = LPoly.monomial(1 + 2 * r, n, (self.lcoeff.z_exp,) + zero + tuple(self.root),
                           self.lcoeff.cyclotomic())
        return k - l

    def __str__(self) -> str:
        b = "".join(f"{x}" for x in self.root)
        return f"({self.kcoeff}*K[{b}] - {self.lcoeff}*L[{b}])"

    def to_json(self) -> dict:
        return {"root": list(self.root), "t": self.t,
                "K_coeff": self.kcoeff.to_json(), "L_coeff": self.lcoeff.to_json()}


@dataclass
class Factorization:
    rank: int
    n: int
    factors: List[Tuple[LinearFactor, int]]

    def expand_lpoly(self) -> LPoly:
        acc = LPoly.one(1 + 2 * self.rank, self.n)
        for f, mult in self.factors:
            acc = acc * f.as_lpoly() ** mult
        return acc

    def expand(self) -> U0Poly:
        return U0Poly.from_lpoly(self.expand_lpoly(), self.rank)

    def total_degree(self) -> int:
        return sum(m for _, m in self.factors)

    def to_json(self) -> list:
        return [dict(f.to_json(), multiplicity=m) for f, m in self.factors]

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"{f}^{m}" if m != 1 else str(f) for f, m in self.factors)


def check_formula_hypothesis(chi: Bicharacter, roots: RootSystemRecord) -> None:
    for g in roots.positive_roots:
        if chi.diag(g).is_one():
            raise HypothesisError(f"hypothesis chi(beta,beta) != 1 violated at beta={list(g)}")


def shapdet_formula(chi: Bicharacter, roots: RootSystemRecord, alpha: Weight) -> Factorization:
    """prod_beta prod_t (rho(beta) K_beta - chi(beta,beta)^t L_beta)^{P(alpha, beta; t)}."""
    check_formula_hypothesis(chi, roots)
    alpha = tuple(alpha)
    rh = rho(chi)
    factors = []
    if is_nonneg(alpha):
        for g in roots.positive_roots:
            qbb = chi.diag(g)
            rg = rh(g)
            for t in t_range(roots, alpha, g):
                mult = partition(roots, alpha, g, t)
                if mult:
                    factors.append((LinearFactor(g, t, rg, qbb ** t), mult))
    return Factorization(chi.rank, chi.n, factors)


def shapdet_for(chi: Bicharacter, alpha: Weight, caps: Caps = DEFAULT_CAPS) -> Factorization:
    _, roots = roots_of(chi, caps)
    return shapdet_formula(chi, roots, alpha)


# ----------------------------------------------------------------------
# U_q(g) and u_q(g)
# ----------------------------------------------------------------------

CARTAN_TYPES = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-1, 2)),
    "C2": ((2, -1), (-2, 2)),
    "G2": ((2, -3), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
}

SYMMETRIZERS = {"A1": (1,), "A2": (1, 1), "B2": (2, 1), "C2": (1, 2), "G2": (1, 3), "A3": (1, 1, 1)}


@dataclass(frozen=True)
class QuotientFactor:
    root: Weight
    t: int
    poly: U0Poly


@dataclass
class QuotientFactorization:
    rank: int
    n: int
    factors: List[Tuple[QuotientFactor, int]]
    lattice: Optional[Tuple[Weight, ...]] = None

    def expand(self) -> U0Poly:
        acc = U0Poly.one(self.rank, self.n)
        for f, m in self.factors:
            acc = acc * f.poly ** m
        if self.lattice:
            acc = quotient_specialize(acc, self.lattice)
        return acc

    def to_json(self) -> list:
        return [{"root": list(f.root), "t": f.t, "factor": f.poly.to_json(),
                 "text": str(f.poly), "multiplicity": m} for f, m in self.factors]

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"({f.poly})^{m}" for f, m in self.factors)


def uqg_bicharacter(cartan: Sequence[Sequence[int]], d: Sequence[int], q: UnitValue) -> Bicharacter:
    for i in range(len(cartan)):
        for j in range(len(cartan)):
            if d[i] * cartan[i][j] != d[j] * cartan[j][i]:
                raise ValueError("d does not symmetrize the Cartan matrix")
    for m in range(1, max(d) + 1):
        if (q ** (2 * m)).is_one():
            raise HypothesisError(f"q^{2 * m} = 1 violates the U_q(g) hypothesis")
    return Bicharacter.cartan_type(cartan, d, q)


def small_lattice(roots: RootSystemRecord) -> Tuple[Weight, ...]:
    gens = []
    for g in roots.positive_roots:
        b = roots.bounds[g]
        if b == INF:
            raise HypothesisError("small quotient needs q to be a root of unity")
        gens.append(wscale(b, g))
    return tuple(gens)


def uqg_shapdet(cartan: Sequence[Sequence[int]], d: Sequence[int], q: UnitValue, alpha: Weight,
                small: bool, caps: Caps = DEFAULT_CAPS) -> QuotientFactorization:
    """Specialize the factorization along K_i L_i = 1 (and K_beta^{b(beta)} = 1 when small)."""
    if small and q.order() == INF:
        raise HypothesisError("small=true requires q to be a root of unity")
    chi = uqg_bicharacter(cartan, d, q)
    _, roots = roots_of(chi, caps)
    fac = shapdet_formula(chi, roots, alpha)
    lattice = small_lattice(roots) if small else None
    out = []
    for f, m in fac.factors:
        out.append((QuotientFactor(f.root, f.t, quotient_specialize(f.as_poly, lattice)), m))
    return QuotientFactorization(chi.rank, chi.n, out, lattice)


def specialize_lpoly(p: LPoly, rank: int, lattice: Optional[Sequence[Weight]] = None) -> LPoly:
    hnf = lattice_hnf(lattice) if lattice else None
    return quotient_specialize_lpoly(p, rank, hnf)
