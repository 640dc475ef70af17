"""Weight characters on Verma modules: the Z^I shift, the reflection action VT_p,
irreducibility via the determinant factors, hyperplane test points and
radical coranks of Lambda(Sh)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .bicharacter import Bicharacter, Weight, bound, reflect, rho, sigma, simple_root
from .errors import HypothesisError
from .exactfield import INF, RationalFunction, UnitValue, qnum
from .linalg import int_matvec
from .nicholsoracle import (
    DegreeBasis,
    FreeWord,
    NicholsOracle,
    matrix_rank,
    oracle_for,
)
from .u0ring import WeightCharacter, _rf, char_eval
from .weylgroupoid import RootSystemRecord


@dataclass
class VermaDegreeData:
    lam: WeightCharacter
    degree: Weight
    basis: DegreeBasis
    gram_lambda: list
    corank: int


@dataclass(frozen=True)
class IrreducibilityResult:
    irreducible: bool
    failure: Optional[Tuple[Weight, int]] = None


def zich_shift(chi: Bicharacter, alpha: Weight) -> WeightCharacter:
    """kappa_alpha(K_beta L_beta') = chi(beta, alpha) chi(alpha, beta')^-1."""
    r = chi.rank
    alpha = tuple(alpha)
    ks = tuple(chi.eval(simple_root(i, r), alpha) for i in range(r))
    ls = tuple(chi.eval(alpha, simple_root(i, r)).inverse() for i in range(r))
    return WeightCharacter(ks, ls)


def _vmul(a, b, n: int):
    if isinstance(a, UnitValue) and isinstance(b, UnitValue):
        return a * b
    return _rf(a, n) * _rf(b, n)


def vt_reflect(lam: WeightCharacter, chi: Bicharacter, p: int) -> WeightCharacter:
    """VT_p^chi(Lambda), a character for r_p(chi), stored by generator values."""
    r = chi.rank
    ap = simple_root(p, r)
    b = bound(chi, ap)
    if b == INF:
        raise HypothesisError(f"VT_{p + 1} needs a finite bound b(alpha_{p + 1})")
    chi2 = reflect(chi, p)
    s = sigma(chi2, p)
    n = chi.n
    ks, ls = [], []
    for i in range(r):
        ai = simple_root(i, r)
        img = int_matvec(s, ai)
        kv = _vmul(lam.K(img), chi2.eval(ai, ap) ** (b - 1), n)
        lv = _vmul(lam.L(img), chi2.eval(ap, ai).inverse() ** (b - 1), n)
        ks.append(kv)
        ls.append(lv)
    return WeightCharacter(tuple(ks), tuple(ls))


def vt_word(lam: WeightCharacter, chi: Bicharacter, letters: Sequence[int]) -> Tuple[WeightCharacter, Bicharacter]:
    """Apply VT_{i_1} first (at chi), then VT_{i_2} at r_{i_1}(chi), and so on."""
    cur = chi
    for p in letters:
        lam = vt_reflect(lam, cur, p)
        cur = reflect(cur, p)
    return lam, cur


def kl_inverse(lam: WeightCharacter, alpha: Weight):
    """Lambda(K_alpha L_alpha^-1)."""
    return lam.on_monomial(alpha, tuple(-x for x in alpha))


def vt_invariant_sides(lam: WeightCharacter, chi: Bicharacter, p: int, alpha: Weight):
    """Both sides of rho^{r_p chi}(sigma alpha) VT(Lambda)(K L^-1 at sigma alpha) = rho^chi(alpha) Lambda(K_alpha L_alpha^-1)."""
    chi2 = reflect(chi, p)
    s = sigma(chi, p)
    sa = int_matvec(s, alpha)
    vt = vt_reflect(lam, chi, p)
    n = chi.n
    lhs = _vmul(rho(chi2)(sa), kl_inverse(vt, sa), n)
    rhs = _vmul(rho(chi)(alpha), kl_inverse(lam, alpha), n)
    return _rf(lhs, n), _rf(rhs, n)


def _factor_value(chi: Bicharacter, lam: WeightCharacter, beta: Weight, t: int) -> RationalFunction:
    n = chi.n
    v = _vmul(rho(chi)(beta), kl_inverse(lam, beta), n)
    return _rf(v, n) - _rf(chi.diag(beta) ** t, n)


def _require_x4(roots: RootSystemRecord) -> None:
    if roots.klass not in ("X4", "X5"):
        raise HypothesisError("the irreducibility criterion needs all bounds finite (chi in X4)")


def vanishing_factors(chi: Bicharacter, roots: RootSystemRecord, lam: WeightCharacter) -> List[Tuple[Weight, int]]:
    _require_x4(roots)
    out = []
    for g in roots.positive_roots:
        for t in range(1, roots.bounds[g]):
            if not _factor_value(chi, lam, g, t):
                out.append((g, t))
    return out


def verma_irreducible(chi: Bicharacter, roots: RootSystemRecord, lam: WeightCharacter) -> IrreducibilityResult:
    bad = vanishing_factors(chi, roots, lam)
    if not bad:
        return IrreducibilityResult(True)
    return IrreducibilityResult(False, bad[0])


def _unit_root(u: UnitValue, k: int) -> Optional[UnitValue]:
    """Some unit v with v^k = u, if one exists in the unit group."""
    if k == 1:
        return u
    if k < 0:
        v = _unit_root(u, -k)
        return v.inverse() if v is not None else None
    if u.z_exp % k:
        return None
    num, den = int(u.rat.numerator), int(u.rat.denominator)
    rn, rd = round(num ** (1 / k)), round(den ** (1 / k))
    if rn ** k != num or rd ** k != den:
        return None
    for e in range(u.n):
        if (e * k - u.zeta_exp) % u.n == 0:
            return UnitValue(mpq(rn, rd), e, u.z_exp // k, u.n)
    return None


def _g_candidates(rank: int, limit: int = 6):
    for k in range(limit + 1):
        level = [g for g in itertools.product(range(-k, k + 1), repeat=rank)
                 if max((abs(x) for x in g), default=0) == k]
        level.sort(key=lambda g: (tuple(abs(x) for x in g), tuple(-x for x in g)))
        yield from level


def lambda_on_hyperplane(chi: Bicharacter, roots: RootSystemRecord, beta: Weight, t: int,
                         max_tries: int = 500) -> WeightCharacter:
    """A unit-valued Lambda on exactly one of the hyperplanes rho(beta) Lambda(K_beta L_beta^-1) = chi(beta,beta)^t."""
    beta = tuple(beta)
    _require_x4(roots)
    if beta not in roots.bounds:
        raise ValueError(f"{beta} is not a positive root")
    b = roots.bounds[beta]
    if not (1 <= t < b):
        raise ValueError(f"t={t} outside 1 <= t < b({beta}) = {b}")
    r = chi.rank
    n = chi.n
    for g in roots.positive_roots:
        if g != beta and _parallel(g, beta):
            raise HypothesisError("parallel roots: cannot isolate hyperplane")
    target = chi.diag(beta) ** t / rho(chi)(beta)
    k = next((i for i, x in enumerate(beta) if x == 1), None)
    if k is None:
        k = next(i for i, x in enumerate(beta) if x)
    ck = _unit_root(target, beta[k])
    if ck is None:
        raise HypothesisError("construction failed: no root of the target value in the unit group")
    one = UnitValue.one(n)
    lone = (one,) * r
    tries = 0
    for g in _g_candidates(r):
        if sum(a * x for a, x in zip(g, beta)):
            continue
        tries += 1
        if tries > max_tries:
            break
        ks = tuple((ck if i == k else one) * UnitValue.zvar(n, g[i]) for i in range(r))
        lam = WeightCharacter(ks, lone)
        if vanishing_factors(chi, roots, lam) == [(beta, t)]:
            return lam
    raise HypothesisError(f"construction failed for beta={list(beta)}, t={t}")


def _parallel(a: Weight, b: Weight) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(len(a)))


def radical_dim(chi: Bicharacter, lam: WeightCharacter, alpha: Weight,
                oracle: Optional[NicholsOracle] = None) -> VermaDegreeData:
    o = oracle or oracle_for(chi)
    basis = o.nichols_basis(alpha)
    gram = o.lambda_gram(lam, alpha)
    rk = matrix_rank(gram, chi.n) if basis.rank else 0
    return VermaDegreeData(lam, tuple(alpha), basis, gram, basis.rank - rk)


def infer_t(chi: Bicharacter, lam: WeightCharacter, p: int) -> int:
    """The t with Lambda(K_p L_p^-1) = q^(t-1), 1 <= t < b; HypothesisError otherwise."""
    r = chi.rank
    ap = simple_root(p, r)
    q = chi.q[p][p]
    b = bound(chi, ap)
    if q.is_one() or b == INF:
        raise HypothesisError("regime needs q_pp a root of unity different from 1")
    val = _rf(kl_inverse(lam, ap), chi.n)
    for t in range(1, b):
        if val == _rf(q ** (t - 1), chi.n):
            return t
    raise HypothesisError("Lambda(K_p L_p^-1) is not of the form q^(t-1) with 1 <= t < b")


def hw_coeff_check(chi: Bicharacter, lam: WeightCharacter, p: int, m: int,
                   oracle: Optional[NicholsOracle] = None) -> RationalFunction:
    """Scalar c with E_p F_p^m v = c F_p^(m-1) v, from straightening; checked against the closed form."""
    o = oracle or oracle_for(chi)
    t = infer_t(chi, lam, p)
    n = chi.n
    if m == 0:
        return RationalFunction.constant(n, 0)
    target = (p,) * (m - 1)
    acc = RationalFunction.constant(n, 0)
    for term in o.straighten(FreeWord((p,), "E"), FreeWord((p,) * m, "F")):
        if term.eword.letters or term.fword.letters != target:
            continue
        acc = acc + char_eval(lam, term.mid)
    q = chi.q[p][p]
    closed = qnum(m, q) * _rf(lam.L(simple_root(p, chi.rank)), n) * (_rf(q ** (t - m), n) - 1)
    if acc != closed:
        raise AssertionError(f"E_pF_p^m coefficient {acc} differs from closed form {closed}")
    return acc


def generic_lambda(chi: Bicharacter, exponents: Sequence[int] = None) -> WeightCharacter:
    """Lambda(K_i) = z^{g_i}, Lambda(L_i) = 1 with distinct large exponents by default."""
    r = chi.rank
    n = chi.n
    g = exponents or [7 + 11 * i for i in range(r)]
    return WeightCharacter(tuple(UnitValue.zvar(n, g[i]) for i in range(r)), (UnitValue.one(n),) * r)
