"""Exact arithmetic in Q(zeta_N), in Q(zeta_N)(z), and in the unit group
{c * zeta_N^e * z^a}.

Cyclotomic numbers are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1)
reduced modulo the N-th cyclotomic polynomial, so equality is equality of
coefficient vectors.  Rational functions are kept gcd-reduced with a monic
denominator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import sympy
from gmpy2 import mpq

__all__ = [
    "INF",
    "Cyclotomic",
    "RationalFunction",
    "UnitValue",
    "field_arith",
    "unit_order",
    "qnum",
    "qfact",
    "qnum_qfact",
    "gaussian_binomial",
]

INF = math.inf

_ZERO = mpq(0)
_ONE = mpq(1)


class _CycloData:
    """Reduction tables for one cyclotomic order."""

    def __init__(self, n: int):
        x = sympy.Symbol("x")
        poly = sympy.Poly(sympy.cyclotomic_poly(n, x), x)
        phi_coeffs = [int(c) for c in reversed(poly.all_coeffs())]
        self.n = n
        self.phi = phi = len(phi_coeffs) - 1
        # zeta^k in the power basis for 0 <= k < max(n, 2 phi)
        table = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(max(n, 2 * phi)):
            table.append(tuple(mpq(v) for v in cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(phi):
                    cur[i] -= top * phi_coeffs[i]
        self.pow = table
        self.zero = tuple([_ZERO] * phi)
        self.one = table[0]


@lru_cache(maxsize=None)
def _cyclo(n: int) -> _CycloData:
    return _CycloData(n)


def _mk(n: int, c: tuple) -> "Cyclotomic":
    obj = object.__new__(Cyclotomic)
    obj.n = n
    obj.c = c
    return obj


class Cyclotomic:
    """An element of Q(zeta_n)."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs: Sequence = ()):
        data = _cyclo(n)
        vals = [mpq(v) for v in coeffs]
        if len(vals) > data.phi:
            # reduce a longer vector in the monomial basis
            acc = list(data.zero)
            for k, v in enumerate(vals):
                if v:
                    row = data.pow[k % n]
                    for i in range(data.phi):
                        acc[i] += v * row[i]
            vals = acc
        vals += [_ZERO] * (data.phi - len(vals))
        self.n = n
        self.c = tuple(vals)

    # constructors ------------------------------------------------------
    @staticmethod
    def zero(n: int) -> "Cyclotomic":
        return _mk(n, _cyclo(n).zero)

    @staticmethod
    def one(n: int) -> "Cyclotomic":
        return _mk(n, _cyclo(n).one)

    @staticmethod
    def rational(n: int, r) -> "Cyclotomic":
        data = _cyclo(n)
        return _mk(n, (mpq(r),) + data.zero[1:])

    @staticmethod
    def zeta_power(n: int, e: int, scale=_ONE) -> "Cyclotomic":
        row = _cyclo(n).pow[e % n]
        if scale == 1:
            return _mk(n, row)
        s = mpq(scale)
        return _mk(n, tuple(s * v for v in row))

    # predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self.n == other.n and self.c == other.c
        if isinstance(other, (int, mpq)) or hasattr(other, "numerator"):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.n, self.c))

    # arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise ValueError(f"cyclotomic orders differ: {self.n} vs {other.n}")
            return other
        return Cyclotomic.rational(self.n, other)

    def __add__(self, other) -> "Cyclotomic":
        o = self._coerce(other)
        return _mk(self.n, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other) -> "Cyclotomic":
        o = self._coerce(other)
        return _mk(self.n, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other) -> "Cyclotomic":
        return self._coerce(other) - self

    def __neg__(self) -> "Cyclotomic":
        return _mk(self.n, tuple(-a for a in self.c))

    def __mul__(self, other) -> "Cyclotomic":
        if not isinstance(other, Cyclotomic):
            r = mpq(other)
            return _mk(self.n, tuple(r * a for a in self.c))
        if other.n != self.n:
            raise ValueError(f"cyclotomic orders differ: {self.n} vs {other.n}")
        a, b = self.c, other.c
        phi = len(a)
        if phi == 1:
            return _mk(self.n, (a[0] * b[0],))
        conv = [_ZERO] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        res = conv[:phi]
        table = _cyclo(self.n).pow
        for k in range(phi, 2 * phi - 1):
            v = conv[k]
            if v:
                row = table[k]
                for i in range(phi):
                    if row[i]:
                        res[i] += v * row[i]
        return _mk(self.n, tuple(res))

    __rmul__ = __mul__

    def mul_zeta(self, e: int) -> "Cyclotomic":
        """Multiply by zeta^e."""
        e %= self.n
        if e == 0:
            return self
        return self * _mk(self.n, _cyclo(self.n).pow[e])

    def inverse(self) -> "Cyclotomic":
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        phi = len(self.c)
        if phi == 1:
            return _mk(self.n, (1 / self.c[0],))
        # columns: self * zeta^j ; solve M x = e_0
        cols = [self.mul_zeta(j).c for j in range(phi)]
        m = [[cols[j][i] for j in range(phi)] + [_ONE if i == 0 else _ZERO]
             for i in range(phi)]
        for col in range(phi):
            piv = next(r for r in range(col, phi) if m[r][col])
            m[col], m[piv] = m[piv], m[col]
            inv = 1 / m[col][col]
            m[col] = [v * inv for v in m[col]]
            for r in range(phi):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return _mk(self.n, tuple(m[i][phi] for i in range(phi)))

    def __truediv__(self, other) -> "Cyclotomic":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "Cyclotomic":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        acc = Cyclotomic.one(self.n)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __repr__(self) -> str:
        return f"Cyclotomic({self.n}, {[str(v) for v in self.c]})"

    def __str__(self) -> str:
        parts = []
        for i, v in enumerate(self.c):
            if not v:
                continue
            if i == 0:
                parts.append(str(v))
            else:
                mono = "zeta" if i == 1 else f"zeta^{i}"
                parts.append(mono if v == 1 else ("-" + mono if v == -1 else f"{v}*{mono}"))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out


# ----------------------------------------------------------------------
# dense univariate polynomials over Q(zeta): lists, low degree first
# ----------------------------------------------------------------------

def _pstrip(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _padd(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = out[i] + v
    return _pstrip(out)


def _pneg(a: list) -> list:
    return [-v for v in a]


def _pmul(a: list, b: list, n: int) -> list:
    if not a or not b:
        return []
    out = [Cyclotomic.zero(n)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
    return _pstrip(out)


def _pdivmod(a: list, b: list, n: int) -> tuple:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = b[-1].inverse()
    q = [Cyclotomic.zero(n)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        f = a[-1] * inv_lead
        shift = len(a) - len(b)
        q[shift] = f
        for i, bi in enumerate(b):
            if bi:
                a[shift + i] = a[shift + i] - f * bi
        a.pop()
        _pstrip(a)
    return _pstrip(q), a


def _pmonic(a: list) -> list:
    if not a or a[-1] == 1:
        return a
    inv = a[-1].inverse()
    return [v * inv for v in a]


def _pgcd(a: list, b: list, n: int) -> list:
    while b:
        _, r = _pdivmod(a, b, n)
        a, b = b, r
    return _pmonic(a)


def _is_monomial(p: list) -> bool:
    return bool(p) and not any(p[:-1])


def _low_zeros(p: list) -> int:
    k = 0
    while k < len(p) and not p[k]:
        k += 1
    return k


class RationalFunction:
    """An element of Q(zeta_n)(z) as a reduced fraction with monic denominator."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num: Sequence, den: Sequence = None, _reduced: bool = False):
        self.n = n
        num = _pstrip([c if isinstance(c, Cyclotomic) else Cyclotomic.rational(n, c) for c in num])
        if den is None:
            den = [Cyclotomic.one(n)]
        else:
            den = _pstrip([c if isinstance(c, Cyclotomic) else Cyclotomic.rational(n, c) for c in den])
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if _reduced:
            self.num, self.den = tuple(num), tuple(den)
            return
        self.num, self.den = RationalFunction._normalize(n, num, den)

    @staticmethod
    def _normalize(n: int, num: list, den: list) -> tuple:
        if not num:
            return (), (Cyclotomic.one(n),)
        if _is_monomial(den):
            # only powers of z can cancel
            k = min(_low_zeros(num), len(den) - 1)
            if k:
                num = num[k:]
                den = den[k:]
        else:
            g = _pgcd(list(den), list(num), n)
            if len(g) > 1:
                num, _ = _pdivmod(num, g, n)
                den, _ = _pdivmod(den, g, n)
        lead = den[-1]
        if lead != 1:
            inv = lead.inverse()
            num = [v * inv for v in num]
            den = [v * inv for v in den]
        return tuple(num), tuple(den)

    @classmethod
    def _raw(cls, n, num, den) -> "RationalFunction":
        obj = object.__new__(cls)
        obj.n = n
        obj.num, obj.den = cls._normalize(n, num, den)
        return obj

    # constructors ------------------------------------------------------
    @classmethod
    def constant(cls, n: int, value) -> "RationalFunction":
        c = value if isinstance(value, Cyclotomic) else Cyclotomic.rational(n, value)
        return cls(n, [c], _reduced=not c.is_zero()) if c else cls(n, [])

    @classmethod
    def z(cls, n: int, power: int = 1) -> "RationalFunction":
        return cls.from_laurent(n, {power: Cyclotomic.one(n)})

    @classmethod
    def from_laurent(cls, n: int, terms: dict) -> "RationalFunction":
        """Build from a mapping z-exponent -> Cyclotomic."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls(n, [])
        lo = min(terms)
        hi = max(terms)
        shift = -lo if lo < 0 else 0
        zero = Cyclotomic.zero(n)
        num = [zero] * (hi + shift + 1)
        for e, c in terms.items():
            num[e + shift] = c
        den = [zero] * shift + [Cyclotomic.one(n)]
        return cls(n, num, den, _reduced=True)

    # queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_laurent(self) -> bool:
        return _is_monomial(list(self.den))

    def to_laurent(self) -> dict:
        """Return {z-exponent: Cyclotomic}; requires a power of z as denominator."""
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial in z")
        shift = len(self.den) - 1
        return {i - shift: c for i, c in enumerate(self.num) if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            if isinstance(other, UnitValue):
                other = other.to_field()
            else:
                try:
                    other = RationalFunction.constant(self.n, other)
                except (TypeError, ValueError):
                    return NotImplemented
        return self.n == other.n and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.n != self.n:
                raise ValueError(f"cyclotomic orders differ: {self.n} vs {other.n}")
            return other
        if isinstance(other, UnitValue):
            return other.to_field()
        return RationalFunction.constant(self.n, other)

    def __add__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        n = self.n
        if self.den == o.den:
            return RationalFunction._raw(n, _padd(list(self.num), list(o.num)), list(self.den))
        a = _pmul(list(self.num), list(o.den), n)
        b = _pmul(list(o.num), list(self.den), n)
        return RationalFunction._raw(n, _padd(a, b), _pmul(list(self.den), list(o.den), n))

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(self.n, _pneg(list(self.num)), list(self.den), _reduced=True)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        n = self.n
        return RationalFunction._raw(n, _pmul(list(self.num), list(o.num), n),
                                     _pmul(list(self.den), list(o.den), n))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction._raw(self.n, list(self.den), list(self.num))

    def __truediv__(self, other) -> "RationalFunction":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        acc = RationalFunction.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        num = _poly_str(self.num)
        if len(self.den) == 1:
            return num
        return f"({num})/({_poly_str(self.den)})"


def _poly_str(p: Sequence) -> str:
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        cs = str(c)
        if i == 0:
            parts.append(cs)
            continue
        mono = "z" if i == 1 else f"z^{i}"
        if cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append("-" + mono)
        elif " " in cs:
            parts.append(f"({cs})*{mono}")
        else:
            parts.append(f"{cs}*{mono}")
    out = parts[0]
    for q in parts[1:]:
        out += (" - " + q[1:]) if q.startswith("-") else (" + " + q)
    return out


@dataclass(frozen=True)
class UnitValue:
    """The unit rat * zeta_n^zeta_exp * z^z_exp with rat a positive rational."""

    rat: mpq
    zeta_exp: int
    z_exp: int
    n: int

    def __post_init__(self):
        rat = mpq(self.rat)
        if rat <= 0:
            raise ValueError("rational part of a unit must be positive (use zeta for signs)")
        if self.n < 2 or self.n % 2:
            raise ValueError(f"cyclotomic order must be even, got {self.n}")
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "zeta_exp", self.zeta_exp % self.n)

    @classmethod
    def one(cls, n: int) -> "UnitValue":
        return cls(_ONE, 0, 0, n)

    @classmethod
    def zeta(cls, n: int, e: int = 1) -> "UnitValue":
        return cls(_ONE, e, 0, n)

    @classmethod
    def zvar(cls, n: int, a: int = 1) -> "UnitValue":
        return cls(_ONE, 0, a, n)

    @classmethod
    def minus_one(cls, n: int) -> "UnitValue":
        return cls(_ONE, n // 2, 0, n)

    def __mul__(self, other: "UnitValue") -> "UnitValue":
        if not isinstance(other, UnitValue):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"cyclotomic orders differ: {self.n} vs {other.n}")
        return UnitValue(self.rat * other.rat, self.zeta_exp + other.zeta_exp,
                         self.z_exp + other.z_exp, self.n)

    def inverse(self) -> "UnitValue":
        return UnitValue(1 / self.rat, -self.zeta_exp, -self.z_exp, self.n)

    def __truediv__(self, other: "UnitValue") -> "UnitValue":
        return self * other.inverse()

    def __pow__(self, k: int) -> "UnitValue":
        return UnitValue(self.rat ** k, self.zeta_exp * k, self.z_exp * k, self.n)

    def is_one(self) -> bool:
        return self.rat == 1 and self.zeta_exp == 0 and self.z_exp == 0

    def order(self):
        """Multiplicative order, or INF."""
        return unit_order(self)

    def cyclotomic(self) -> Cyclotomic:
        """The factor rat * zeta^e (dropping z^a)."""
        return Cyclotomic.zeta_power(self.n, self.zeta_exp, self.rat)

    def to_field(self) -> RationalFunction:
        return RationalFunction.from_laurent(self.n, {self.z_exp: self.cyclotomic()})

    def __str__(self) -> str:
        parts = []
        if self.rat != 1:
            parts.append(str(self.rat))
        if self.zeta_exp:
            if self.zeta_exp == self.n // 2:
                parts.insert(0, "-")
            else:
                parts.append(f"zeta{self.n}^{self.zeta_exp}")
        if self.z_exp:
            parts.append("z" if self.z_exp == 1 else f"z^{self.z_exp}")
        if not parts or parts == ["-"]:
            parts.append("1")
        text = "*".join(p for p in parts if p != "-")
        return ("-" + text) if parts[0] == "-" else text

    def to_json(self) -> dict:
        return {"rat": str(self.rat), "zeta": self.zeta_exp, "z": self.z_exp}


FieldLike = Union[RationalFunction, UnitValue, Cyclotomic, int]


def _as_field(x: FieldLike, n: int) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, UnitValue):
        return x.to_field()
    return RationalFunction.constant(n, x)


def field_arith(x: RationalFunction, y: RationalFunction, kind: str) -> RationalFunction:
    """Exact field operation; kind is one of add, mul, inv, neg (inv/neg ignore y)."""
    if kind == "add":
        return x + y
    if kind == "mul":
        return x * y
    if kind == "inv":
        return x.inverse()
    if kind == "neg":
        return -x
    raise ValueError(f"unknown field operation {kind!r}")


def unit_order(q: UnitValue):
    """Multiplicative order of q, or INF if q is not a root of unity."""
    if q.rat != 1 or q.z_exp != 0:
        return INF
    return q.n // math.gcd(q.n, q.zeta_exp)


def qnum(n: int, q: FieldLike, order: int = None) -> RationalFunction:
    """(n)_q = 1 + q + ... + q^(n-1)."""
    if isinstance(q, UnitValue):
        order = q.n
        terms: dict = {}
        p = UnitValue.one(q.n)
        for _ in range(n):
            c = terms.get(p.z_exp)
            terms[p.z_exp] = p.cyclotomic() if c is None else c + p.cyclotomic()
            p = p * q
        return RationalFunction.from_laurent(q.n, terms)
    qf = _as_field(q, order if order is not None else q.n)
    acc = RationalFunction.constant(qf.n, 0)
    p = RationalFunction.constant(qf.n, 1)
    for _ in range(n):
        acc = acc + p
        p = p * qf
    return acc


def qfact(n: int, q: FieldLike) -> RationalFunction:
    """(n)!_q = (1)_q (2)_q ... (n)_q, with (0)!_q = 1."""
    order = q.n
    acc = RationalFunction.constant(order, 1)
    for j in range(1, n + 1):
        acc = acc * qnum(j, q)
    return acc


def qnum_qfact(n: int, q: FieldLike, kind: str) -> RationalFunction:
    if kind == "num":
        return qnum(n, q)
    if kind == "fact":
        return qfact(n, q)
    raise ValueError(f"kind must be 'num' or 'fact', got {kind!r}")


def gaussian_binomial(m: int, k: int, q: FieldLike) -> RationalFunction:
    """Gaussian binomial [m choose k]_q via the q-Pascal rule (no division)."""
    qf = _as_field(q, q.n)
    one = RationalFunction.constant(qf.n, 1)
    if k < 0 or k > m:
        return RationalFunction.constant(qf.n, 0)
    # row[j] = [i choose j]_q
    row = [one]
    for i in range(1, m + 1):
        new = [one]
        qpow = qf
        for j in range(1, i):
            # [i, j] = [i-1, j-1] + q^j [i-1, j]
            new.append(row[j - 1] + qpow * row[j])
            qpow = qpow * qf
        new.append(one)
        row = new
    return row[k]
