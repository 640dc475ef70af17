"""Sparse multivariate Laurent polynomials over Q(zeta_N).

This is the working ring for Gram matrices and fraction-free elimination.
Exponent vectors are tuples; the term order is Python tuple order (lex).
"""
from __future__ import annotations

from typing import Dict, Iterable, Tuple

from .exactfield import Cyclotomic

Exp = Tuple[int, ...]


class NotDivisible(ArithmeticError):
    pass


def _mk(nvars: int, n: int, terms: dict) -> "LPoly":
    obj = object.__new__(LPoly)
    obj.nvars = nvars
    obj.n = n
    obj.terms = terms
    return obj


class LPoly:
    """sum c_e x^e with e in Z^nvars, c_e in Q(zeta_n); immutable by convention."""

    __slots__ = ("nvars", "n", "terms")

    def __init__(self, nvars: int, n: int, terms: Dict[Exp, Cyclotomic] = None):
        self.nvars = nvars
        self.n = n
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length, expected {nvars}")
                if not isinstance(c, Cyclotomic):
                    c = Cyclotomic.rational(n, c)
                if c:
                    self.terms[tuple(e)] = c

    @classmethod
    def zero(cls, nvars: int, n: int) -> "LPoly":
        return _mk(nvars, n, {})

    @classmethod
    def one(cls, nvars: int, n: int) -> "LPoly":
        return _mk(nvars, n, {(0,) * nvars: Cyclotomic.one(n)})

    @classmethod
    def monomial(cls, nvars: int, n: int, exp: Iterable[int], coeff: Cyclotomic = None) -> "LPoly":
        c = Cyclotomic.one(n) if coeff is None else coeff
        if not c:
            return _mk(nvars, n, {})
        return _mk(nvars, n, {tuple(exp): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def lead(self) -> Tuple[Exp, Cyclotomic]:
        e = max(self.terms)
        return e, self.terms[e]

    def trail(self) -> Tuple[Exp, Cyclotomic]:
        e = min(self.terms)
        return e, self.terms[e]

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Cyclotomic:
        return self.terms.get((0,) * self.nvars, Cyclotomic.zero(self.n))

    def __add__(self, other: "LPoly") -> "LPoly":
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = v + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return _mk(self.nvars, self.n, out)

    def __neg__(self) -> "LPoly":
        return _mk(self.nvars, self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LPoly") -> "LPoly":
        return self + (-other)

    def scale(self, c: Cyclotomic) -> "LPoly":
        if not c:
            return _mk(self.nvars, self.n, {})
        return _mk(self.nvars, self.n, {e: v * c for e, v in self.terms.items()})

    def shift(self, exp: Exp, c: Cyclotomic = None) -> "LPoly":
        """Multiply by the monomial c * x^exp."""
        if c is None:
            return _mk(self.nvars, self.n,
                       {tuple(a + b for a, b in zip(e, exp)): v for e, v in self.terms.items()})
        if not c:
            return _mk(self.nvars, self.n, {})
        return _mk(self.nvars, self.n,
                   {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()})

    def __mul__(self, other: "LPoly") -> "LPoly":
        if not self.terms or not other.terms:
            return _mk(self.nvars, self.n, {})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                v = out.get(e)
                out[e] = p if v is None else v + p
        return _mk(self.nvars, self.n, {e: c for e, c in out.items() if c})

    def __pow__(self, k: int) -> "LPoly":
        if k < 0:
            if len(self.terms) != 1:
                raise NotDivisible("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return _mk(self.nvars, self.n, {tuple(k * a for a in e): c ** k})
        acc = LPoly.one(self.nvars, self.n)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def divexact(self, other: "LPoly") -> "LPoly":
        """Exact quotient self / other in the Laurent ring; raises NotDivisible."""
        if not other.terms:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self.terms:
            return _mk(self.nvars, self.n, {})
        de, dc = other.lead()
        if len(other.terms) == 1:
            inv = dc.inverse()
            neg = tuple(-a for a in de)
            return self.shift(neg, inv)
        inv = dc.inverse()
        # every quotient exponent e obeys e >= trail(self) - trail(other)
        te, _ = self.trail()
        td, _ = other.trail()
        floor = tuple(a - b for a, b in zip(te, td))
        rem = dict(self.terms)
        quot: dict = {}
        dterms = list(other.terms.items())
        while rem:
            re_ = max(rem)
            e = tuple(a - b for a, b in zip(re_, de))
            if e < floor:
                raise NotDivisible("Laurent division is not exact")
            c = rem[re_] * inv
            quot[e] = c
            for ee, cc in dterms:
                k = tuple(a + b for a, b in zip(e, ee))
                v = rem.get(k)
                prod = cc * c
                if v is None:
                    rem[k] = -prod
                else:
                    s = v - prod
                    if s:
                        rem[k] = s
                    else:
                        del rem[k]
        return _mk(self.nvars, self.n, quot)

    def substitute(self, fn) -> "LPoly":
        """Apply an exponent map fn(exp) -> exp termwise (monomial substitution)."""
        out: dict = {}
        for e, c in self.terms.items():
            k = fn(e)
            v = out.get(k)
            out[k] = c if v is None else v + c
        return _mk(self.nvars, self.n, {e: c for e, c in out.items() if c})

    def __repr__(self) -> str:
        if not self.terms:
            return "LPoly(0)"
        inner = " + ".join(f"({c})*x^{e}" for e, c in sorted(self.terms.items(), reverse=True))
        return f"LPoly({inner})"
