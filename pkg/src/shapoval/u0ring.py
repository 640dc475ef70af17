"""The commutative Laurent ring U0 = k[K_i^{+-1}, L_i^{+-1}] and weight characters.

A U0Poly maps (kexp, lexp) pairs to nonzero RationalFunction coefficients.
Heavy arithmetic happens in LPoly with variables (z, K_1..K_r, L_1..L_r); the
conversions below move between the two pictures.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import sympy
from sympy.matrices.normalforms import hermite_normal_form

from .bicharacter import Weight
from .exactfield import RationalFunction, UnitValue
from .laurent import LPoly

Monomial = Tuple[Weight, Weight]
FieldValue = Union[RationalFunction, UnitValue]


def _rf(x, n: int) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, UnitValue):
        return x.to_field()
    return RationalFunction.constant(n, x)


class U0Poly:
    """Finite sum of c * K_beta L_gamma with c in Q(zeta_n)(z)."""

    __slots__ = ("rank", "n", "terms")

    def __init__(self, rank: int, n: int, terms: Optional[Dict[Monomial, FieldValue]] = None):
        self.rank = rank
        self.n = n
        self.terms: Dict[Monomial, RationalFunction] = {}
        for (k, l), c in (terms or {}).items():
            k, l = tuple(k), tuple(l)
            if len(k) != rank or len(l) != rank:
                raise ValueError("exponent length does not match rank")
            c = _rf(c, n)
            if c:
                self.terms[(k, l)] = c

    @classmethod
    def _raw(cls, rank: int, n: int, terms: dict) -> "U0Poly":
        obj = object.__new__(cls)
        obj.rank, obj.n, obj.terms = rank, n, terms
        return obj

    # constructors ------------------------------------------------------
    @classmethod
    def zero(cls, rank: int, n: int) -> "U0Poly":
        return cls._raw(rank, n, {})

    @classmethod
    def one(cls, rank: int, n: int) -> "U0Poly":
        z = (0,) * rank
        return cls._raw(rank, n, {(z, z): RationalFunction.constant(n, 1)})

    @classmethod
    def monomial(cls, kexp: Sequence[int], lexp: Sequence[int], coeff: FieldValue, n: int) -> "U0Poly":
        return cls(len(kexp), n, {(tuple(kexp), tuple(lexp)): coeff})

    @classmethod
    def K(cls, i: int, rank: int, n: int) -> "U0Poly":
        e = tuple(int(j == i) for j in range(rank))
        return cls.monomial(e, (0,) * rank, 1, n)

    @classmethod
    def L(cls, i: int, rank: int, n: int) -> "U0Poly":
        e = tuple(int(j == i) for j in range(rank))
        return cls.monomial((0,) * rank, e, 1, n)

    @classmethod
    def binomial(cls, beta: Weight, a: FieldValue, b: FieldValue, n: int) -> "U0Poly":
        """a K_beta - b L_beta."""
        r = len(beta)
        zero = (0,) * r
        beta = tuple(beta)
        if not any(beta):
            return cls(r, n, {(zero, zero): _rf(a, n) - _rf(b, n)})
        return cls(r, n, {(beta, zero): a, (zero, beta): _rf(b, n) * -1})

    # LPoly bridge ------------------------------------------------------
    def to_lpoly(self) -> LPoly:
        r = self.rank
        nv = 1 + 2 * r
        out = {}
        for (k, l), c in self.terms.items():
            for za, cc in c.to_laurent().items():
                out[(za,) + k + l] = cc
        return LPoly(nv, self.n, out)

    @classmethod
    def from_lpoly(cls, p: LPoly, rank: int) -> "U0Poly":
        groups: Dict[Monomial, dict] = {}
        for e, c in p.terms.items():
            key = (e[1:1 + rank], e[1 + rank:])
            groups.setdefault(key, {})[e[0]] = c
        terms = {key: RationalFunction.from_laurent(p.n, zs) for key, zs in groups.items()}
        return cls._raw(rank, p.n, {k: v for k, v in terms.items() if v})

    # ring structure ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, U0Poly):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "U0Poly") -> "U0Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                s = v + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return U0Poly._raw(self.rank, self.n, out)

    def __neg__(self) -> "U0Poly":
        return U0Poly._raw(self.rank, self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "U0Poly") -> "U0Poly":
        return self + (-other)

    def scale(self, c: FieldValue) -> "U0Poly":
        c = _rf(c, self.n)
        if not c:
            return U0Poly.zero(self.rank, self.n)
        return U0Poly._raw(self.rank, self.n, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other: "U0Poly") -> "U0Poly":
        return u0_mul(self, other)

    def __pow__(self, k: int) -> "U0Poly":
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            ((kexp, lexp), c), = self.terms.items()
            inv = U0Poly.monomial(tuple(-x for x in kexp), tuple(-x for x in lexp), _rf(c, self.n).inverse(), self.n)
            return inv ** -k
        acc = U0Poly.one(self.rank, self.n)
        for _ in range(k):
            acc = acc * self
        return acc

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=lambda m: m[0] + m[1])

    def support(self) -> Iterable[Monomial]:
        return self.terms.keys()

    # display -----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0][0] + t[0][1], reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (k, l), c in self.sorted_terms():
            mono = _mono_str(k, "K") + _mono_str(l, "L")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono.lstrip("*"))
            elif cs == "-1":
                parts.append("-" + mono.lstrip("*"))
            else:
                parts.append(f"({cs})" + mono)
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def __repr__(self) -> str:
        return f"U0Poly({self})"

    def to_json(self) -> list:
        return [{"K": list(k), "L": list(l), "coeff": str(c)} for (k, l), c in self.sorted_terms()]


def _mono_str(e: Sequence[int], sym: str) -> str:
    out = ""
    for i, v in enumerate(e):
        if v == 1:
            out += f"*{sym}{i + 1}"
        elif v:
            out += f"*{sym}{i + 1}^{v}"
    return out


def u0_mul(x: U0Poly, y: U0Poly) -> U0Poly:
    out: Dict[Monomial, RationalFunction] = {}
    for (k1, l1), c1 in x.terms.items():
        for (k2, l2), c2 in y.terms.items():
            m = (tuple(a + b for a, b in zip(k1, k2)), tuple(a + b for a, b in zip(l1, l2)))
            p = c1 * c2
            v = out.get(m)
            out[m] = p if v is None else v + p
    return U0Poly._raw(x.rank, x.n, {m: c for m, c in out.items() if c})


def normalize_unit(p: U0Poly) -> U0Poly:
    """Divide by the coefficient of the lex-greatest monomial of (kexp, lexp)."""
    if not p.terms:
        raise ZeroDivisionError("normalize_unit of the zero polynomial")
    lead = p.terms[p.leading_monomial()]
    if lead == RationalFunction.constant(p.n, 1):
        return p
    inv = lead.inverse()
    return U0Poly._raw(p.rank, p.n, {m: c * inv for m, c in p.terms.items()})


def equal_up_to_unit(x: U0Poly, y: U0Poly) -> bool:
    if not x.terms or not y.terms:
        return not x.terms and not y.terms
    return normalize_unit(x) == normalize_unit(y)


@dataclass(frozen=True)
class WeightCharacter:
    """Lambda with Lambda(K_i) = kvals[i], Lambda(L_i) = lvals[i]."""

    kvals: Tuple[FieldValue, ...]
    lvals: Tuple[FieldValue, ...]

    def __post_init__(self):
        for v in self.kvals + self.lvals:
            if isinstance(v, RationalFunction) and not v:
                raise ValueError("character values must be nonzero")

    @property
    def rank(self) -> int:
        return len(self.kvals)

    @property
    def n(self) -> int:
        return self.kvals[0].n

    @classmethod
    def trivial(cls, rank: int, n: int) -> "WeightCharacter":
        one = UnitValue.one(n)
        return cls((one,) * rank, (one,) * rank)

    def is_unit_valued(self) -> bool:
        return all(isinstance(v, UnitValue) for v in self.kvals + self.lvals)

    def on_monomial(self, kexp: Sequence[int], lexp: Sequence[int]) -> FieldValue:
        if self.is_unit_valued():
            acc = UnitValue.one(self.n)
            for v, e in zip(self.kvals + self.lvals, tuple(kexp) + tuple(lexp)):
                if e:
                    acc = acc * v ** e
            return acc
        acc = RationalFunction.constant(self.n, 1)
        for v, e in zip(self.kvals + self.lvals, tuple(kexp) + tuple(lexp)):
            if e:
                acc = acc * _rf(v, self.n) ** e
        return acc

    def K(self, beta: Sequence[int]) -> FieldValue:
        return self.on_monomial(beta, (0,) * self.rank)

    def L(self, beta: Sequence[int]) -> FieldValue:
        return self.on_monomial((0,) * self.rank, beta)

    def __mul__(self, other: "WeightCharacter") -> "WeightCharacter":
        def m(a, b):
            if isinstance(a, UnitValue) and isinstance(b, UnitValue):
                return a * b
            return _rf(a, self.n) * _rf(b, self.n)
        return WeightCharacter(tuple(m(a, b) for a, b in zip(self.kvals, other.kvals)),
                               tuple(m(a, b) for a, b in zip(self.lvals, other.lvals)))

    def values_equal(self, other: "WeightCharacter") -> bool:
        return all(_rf(a, self.n) == _rf(b, self.n)
                   for a, b in zip(self.kvals + self.lvals, other.kvals + other.lvals))

    def to_json(self) -> dict:
        return {"K": [str(v) for v in self.kvals], "L": [str(v) for v in self.lvals]}


def char_eval(lam: WeightCharacter, p: U0Poly) -> RationalFunction:
    acc = RationalFunction.constant(p.n, 0)
    for (k, l), c in p.terms.items():
        acc = acc + c * _rf(lam.on_monomial(k, l), p.n)
    return acc


def char_eval_lpoly(lam: WeightCharacter, p: LPoly, rank: int) -> LPoly:
    """Evaluate Lambda on an LPoly in (z, K, L); unit-valued Lambda only.

    The result is an LPoly in the single variable z."""
    if not lam.is_unit_valued():
        raise ValueError("char_eval_lpoly needs a unit-valued character")
    out: dict = {}
    cache: dict = {}
    for e, c in p.terms.items():
        key = e[1:]
        u = cache.get(key)
        if u is None:
            u = lam.on_monomial(key[:rank], key[rank:])
            cache[key] = u
        ze = e[0] + u.z_exp
        val = c * u.cyclotomic()
        v = out.get((ze,))
        out[(ze,)] = val if v is None else v + val
    return LPoly(1, p.n, {e: c for e, c in out.items() if c})


def lattice_hnf(generators: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Column Hermite normal form of the lattice spanned by the generators, as rows."""
    m = sympy.Matrix([list(g) for g in generators]).T
    h = hermite_normal_form(m)
    return tuple(tuple(int(h[i, j]) for j in range(h.shape[1])) for i in range(h.shape[0]))


def reduce_mod_lattice(v: Sequence[int], hnf: Sequence[Sequence[int]]) -> Weight:
    """Canonical representative of v modulo the lattice with upper-triangular HNF columns."""
    r = len(hnf)
    if any(len(row) != r for row in hnf):
        raise ValueError("lattice is not of full rank")
    v = list(v)
    for j in range(r - 1, -1, -1):
        d = hnf[j][j]
        k = v[j] // d
        if k:
            for i in range(j + 1):
                v[i] -= k * hnf[i][j]
    return tuple(v)


def quotient_specialize(p: U0Poly, lattice: Optional[Sequence[Sequence[int]]] = None) -> U0Poly:
    """Set L_i = K_i^{-1}; if a lattice of K-exponents is given, also set K_beta = 1 on it."""
    hnf = lattice_hnf(lattice) if lattice else None
    out: Dict[Monomial, RationalFunction] = {}
    zero = (0,) * p.rank
    for (k, l), c in p.terms.items():
        e = tuple(a - b for a, b in zip(k, l))
        if hnf is not None:
            e = reduce_mod_lattice(e, hnf)
        m = (e, zero)
        v = out.get(m)
        out[m] = c if v is None else v + c
    return U0Poly._raw(p.rank, p.n, {m: c for m, c in out.items() if c})


def quotient_specialize_lpoly(p: LPoly, rank: int, hnf=None) -> LPoly:
    """LPoly version: exponents (z, K, L) -> (z, K - L, 0) with optional lattice reduction."""
    zero = (0,) * rank

    def fn(e):
        k = tuple(a - b for a, b in zip(e[1:1 + rank], e[1 + rank:]))
        if hnf is not None:
            k = reduce_mod_lattice(k, hnf)
        return (e[0],) + k + zero

    return p.substitute(fn)
