"""Brute-force side: straightening in the double, the Harish-Chandra map, the
Shapovalov form on words, the eta pairing and its radical, and determinants.

Everything is computed from the defining relations

    K_i E_j K_i^-1 = q_ij E_j        L_i E_j L_i^-1 = q_ji^-1 E_j
    K_i F_j K_i^-1 = q_ij^-1 F_j     L_i F_j L_i^-1 = q_ji F_j
    E_i F_j - F_j E_i = delta_ij (K_i - L_i)

Words are tuples of 0-based letters.  Internally U0 elements are LPoly in the
variables (z, K_1..K_r, L_1..L_r) and field elements are LPoly in z alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .bicharacter import Bicharacter, Weight, simple_root
from .exactfield import RationalFunction, UnitValue
from .laurent import LPoly
from .linalg import bareiss_det, field_pivot_columns, pivot_columns, transpose
from .u0ring import U0Poly, WeightCharacter, char_eval, char_eval_lpoly

Word = Tuple[int, ...]


@dataclass(frozen=True)
class FreeWord:
    letters: Word
    species: str = "F"

    def __post_init__(self):
        if self.species not in ("E", "F"):
            raise ValueError("species must be 'E' or 'F'")
        object.__setattr__(self, "letters", tuple(self.letters))

    def degree(self, rank: int) -> Weight:
        d = word_degree(self.letters, rank)
        return d if self.species == "E" else tuple(-x for x in d)

    def omega(self) -> "FreeWord":
        """The antiautomorphism swapping E_i and F_i: reverse and switch species."""
        return FreeWord(tuple(reversed(self.letters)), "E" if self.species == "F" else "F")

    def __add__(self, other: "FreeWord") -> "FreeWord":
        if other.species != self.species:
            raise ValueError("cannot concatenate words of different species")
        return FreeWord(self.letters + other.letters, self.species)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(f"{self.species}{i + 1}" for i in self.letters)


@dataclass(frozen=True)
class StraightTerm:
    fword: FreeWord
    mid: U0Poly
    eword: FreeWord

    def __str__(self) -> str:
        return f"{self.fword}*({self.mid})*{self.eword}"


@dataclass
class DegreeBasis:
    degree: Weight
    words: List[Word]
    gram_eta: List[List[RationalFunction]]
    rank: int
    all_words: List[Word]


def word_degree(w: Sequence[int], rank: int) -> Weight:
    d = [0] * rank
    for i in w:
        d[i] += 1
    return tuple(d)


def words_of_degree(alpha: Sequence[int]) -> List[Word]:
    """All words with letter multiset alpha, in lexicographic order."""
    alpha = list(alpha)
    out: List[Word] = []

    def rec(prefix: list, left: list):
        if not any(left):
            out.append(tuple(prefix))
            return
        for i, c in enumerate(left):
            if c:
                left[i] -= 1
                prefix.append(i)
                rec(prefix, left)
                prefix.pop()
                left[i] += 1

    if all(a >= 0 for a in alpha):
        rec([], alpha)
    return out


def _remove(v: Word, j: int) -> Word:
    return v[:j] + v[j + 1:]


def lpoly_to_field(p: LPoly) -> RationalFunction:
    return RationalFunction.from_laurent(p.n, {e[0]: c for e, c in p.terms.items()})


class NicholsOracle:
    """Per-bicharacter caches for Sh, eta, bases and determinants."""

    def __init__(self, chi: Bicharacter):
        self.chi = chi
        self.rank = r = chi.rank
        self.n = chi.n
        self.nv = 1 + 2 * r
        self._zero_u = (0,) * r
        self._one = LPoly.one(self.nv, self.n)
        self._one_z = LPoly.one(1, self.n)
        self._pi: Dict[Tuple[Word, Word], LPoly] = {}
        self._pi2: Dict[Tuple[Word, Word], LPoly] = {}
        self._eta: Dict[Tuple[Word, Word], LPoly] = {}
        self._eta2: Dict[Tuple[Word, Word], LPoly] = {}
        self._straight: Dict[Tuple[Word, Word], dict] = {}
        self._bases: Dict[Weight, DegreeBasis] = {}
        self._gram: Dict[Weight, List[List[LPoly]]] = {}
        self._dets: Dict[Weight, LPoly] = {}
        self._x: Dict[Tuple[int, Weight], LPoly] = {}

    # helpers -----------------------------------------------------------
    def _chi(self, a: Weight, b: Weight) -> UnitValue:
        return self.chi.eval(a, b)

    def _mono(self, u: UnitValue, kexp: Weight = None, lexp: Weight = None) -> LPoly:
        k = kexp or self._zero_u
        l = lexp or self._zero_u
        return LPoly.monomial(self.nv, self.n, (u.z_exp,) + tuple(k) + tuple(l), u.cyclotomic())

    def _zscalar(self, u: UnitValue) -> LPoly:
        return LPoly.monomial(1, self.n, (u.z_exp,), u.cyclotomic())

    def _deg(self, w: Word) -> Weight:
        return word_degree(w, self.rank)

    def _xfactor(self, i: int, gamma: Weight) -> LPoly:
        """chi(alpha_i, gamma)^-1 K_i - chi(gamma, alpha_i) L_i: (K_i - L_i) moved right past F(gamma)."""
        key = (i, gamma)
        x = self._x.get(key)
        if x is None:
            ai = simple_root(i, self.rank)
            c1 = self._chi(ai, gamma).inverse()
            c2 = self._chi(gamma, ai)
            x = self._mono(c1, kexp=ai) - self._mono(c2, lexp=ai)
            self._x[key] = x
        return x

    def _twist_past_e(self, x: LPoly, delta: Weight) -> LPoly:
        """X' with E(delta) X = X' E(delta)."""
        if not any(delta):
            return x
        r = self.rank
        out = LPoly.zero(self.nv, self.n)
        for e, c in x.terms.items():
            k, l = e[1:1 + r], e[1 + r:]
            u = self._chi(k, delta).inverse() * self._chi(delta, l)
            out = out + LPoly.monomial(self.nv, self.n, e, c).shift(
                (u.z_exp,) + (0,) * (2 * r), u.cyclotomic())
        return out

    # straightening -----------------------------------------------------
    def _straighten(self, w: Word, v: Word) -> dict:
        key = (w, v)
        hit = self._straight.get(key)
        if hit is not None:
            return hit
        if not w:
            res = {(v, ()): self._one}
        elif not v:
            res = {((), w): self._one}
        else:
            i = w[-1]
            wp = w[:-1]
            res: dict = {}

            def put(k, val):
                cur = res.get(k)
                val = val if cur is None else cur + val
                if val:
                    res[k] = val
                elif cur is not None:
                    del res[k]

            # F_v E_i part: E_{w'} F_v then append E_i
            for (a, b), m in self._straighten(wp, v).items():
                put((a, b + (i,)), m)
            for j, vj in enumerate(v):
                if vj != i:
                    continue
                x = self._xfactor(i, self._deg(v[j + 1:]))
                for (a, b), m in self._straighten(wp, _remove(v, j)).items():
                    put((a, b), m * self._twist_past_e(x, self._deg(b)))
        self._straight[key] = res
        return res

    def straighten(self, e: FreeWord, f: FreeWord) -> List[StraightTerm]:
        """e * f as a sum of F * U0 * E terms (deterministic order)."""
        if e.species != "E" or f.species != "F":
            raise ValueError("straighten expects an E-word and an F-word")
        res = self._straighten(e.letters, f.letters)
        out = []
        for (a, b) in sorted(res, key=lambda k: (len(k[0]), k[0], len(k[1]), k[1])):
            out.append(StraightTerm(FreeWord(a, "F"), U0Poly.from_lpoly(res[(a, b)], self.rank),
                                    FreeWord(b, "E")))
        return out

    @staticmethod
    def harish_chandra(terms: Sequence[StraightTerm]) -> U0Poly:
        acc = None
        for t in terms:
            if not t.fword.letters and not t.eword.letters:
                acc = t.mid if acc is None else acc + t.mid
        if acc is None:
            if not terms:
                raise ValueError("harish_chandra of an empty term list has no rank")
            return U0Poly.zero(terms[0].mid.rank, terms[0].mid.n)
        return acc

    # Harish-Chandra projection of E_w F_v ------------------------------
    def pi_lp(self, w: Word, v: Word) -> LPoly:
        """pi(E_w F_v): peel the last E-letter through F_v."""
        key = (w, v)
        hit = self._pi.get(key)
        if hit is not None:
            return hit
        if not w or not v:
            res = self._one if not w and not v else LPoly.zero(self.nv, self.n)
        else:
            i = w[-1]
            wp = w[:-1]
            res = LPoly.zero(self.nv, self.n)
            for j, vj in enumerate(v):
                if vj == i:
                    sub = self.pi_lp(wp, _remove(v, j))
                    if sub:
                        res = res + sub * self._xfactor(i, self._deg(v[j + 1:]))
        self._pi[key] = res
        return res

    def pi_deriv_lp(self, w: Word, v: Word) -> LPoly:
        """pi(E_w F_v) using [E, F_i] = d^K_i(E) K_i - L_i d^L_i(E) on the first F-letter."""
        key = (w, v)
        hit = self._pi2.get(key)
        if hit is not None:
            return hit
        if not w or not v:
            res = self._one if not w and not v else LPoly.zero(self.nv, self.n)
        else:
            r = self.rank
            i = v[0]
            vpp = v[1:]
            ai = simple_root(i, r)
            dpp = self._deg(vpp)
            res = LPoly.zero(self.nv, self.n)
            kpart = LPoly.zero(self.nv, self.n)
            lpart = LPoly.zero(self.nv, self.n)
            for p, wp in enumerate(w):
                if wp != i:
                    continue
                sub = self.pi_deriv_lp(_remove(w, p), vpp)
                if not sub:
                    continue
                ck = self._chi(ai, self._deg(w[p + 1:]))
                cl = self._chi(self._deg(w[:p]), ai)
                kpart = kpart + sub * self._mono(ck)
                lpart = lpart + sub * self._mono(cl)
            if kpart:
                # pi(X K_i F'') = chi(alpha_i, deg F'')^-1 pi(X F'') K_i
                res = res + kpart * self._mono(self._chi(ai, dpp).inverse(), kexp=ai)
            if lpart:
                res = res - lpart * self._mono(UnitValue.one(self.n), lexp=ai)
        self._pi2[key] = res
        return res

    def sh_lp(self, u: Word, v: Word) -> LPoly:
        """Sh(F_u, F_v) = pi(Omega(F_u) F_v) = pi(E_{rev u} F_v)."""
        return self.pi_lp(tuple(reversed(u)), v)

    def shap_form_entry(self, u: FreeWord, v: FreeWord) -> U0Poly:
        if u.species != "F" or v.species != "F":
            raise ValueError("shap_form_entry expects F-words")
        return U0Poly.from_lpoly(self.sh_lp(u.letters, v.letters), self.rank)

    # eta pairing -------------------------------------------------------
    def eta_lp(self, w: Word, v: Word) -> LPoly:
        """eta(E_w, F_v): the L_alpha coefficient of pi(E_w F_v), as a polynomial in z."""
        key = (w, v)
        hit = self._eta.get(key)
        if hit is not None:
            return hit
        if not w or not v:
            res = self._one_z if not w and not v else LPoly.zero(1, self.n)
        else:
            i = w[-1]
            wp = w[:-1]
            ai = simple_root(i, self.rank)
            res = LPoly.zero(1, self.n)
            for j, vj in enumerate(v):
                if vj == i:
                    sub = self.eta_lp(wp, _remove(v, j))
                    if sub:
                        res = res - sub * self._zscalar(self._chi(self._deg(v[j + 1:]), ai))
        self._eta[key] = res
        return res

    def eta_deriv_lp(self, w: Word, v: Word) -> LPoly:
        """eta(E_w, F_i F_v'') = -eta(d^L_i E_w, F_v'')."""
        key = (w, v)
        hit = self._eta2.get(key)
        if hit is not None:
            return hit
        if not w or not v:
            res = self._one_z if not w and not v else LPoly.zero(1, self.n)
        else:
            i = v[0]
            ai = simple_root(i, self.rank)
            res = LPoly.zero(1, self.n)
            for p, wp in enumerate(w):
                if wp == i:
                    sub = self.eta_deriv_lp(_remove(w, p), v[1:])
                    if sub:
                        res = res - sub * self._zscalar(self._chi(self._deg(w[:p]), ai))
        self._eta2[key] = res
        return res

    def eta_gram_lp(self, alpha: Weight) -> List[List[LPoly]]:
        alpha = tuple(alpha)
        g = self._gram.get(alpha)
        if g is None:
            words = words_of_degree(alpha)
            g = [[self.eta_lp(tuple(reversed(u)), v) for v in words] for u in words]
            self._gram[alpha] = g
        return g

    def eta_gram(self, alpha: Weight) -> List[List[RationalFunction]]:
        """Gram matrix (u, v) -> eta(Omega(F_u), F_v) over all words of degree alpha."""
        return [[lpoly_to_field(x) for x in row] for row in self.eta_gram_lp(alpha)]

    # bases -------------------------------------------------------------
    def nichols_basis(self, alpha: Weight) -> DegreeBasis:
        alpha = tuple(alpha)
        hit = self._bases.get(alpha)
        if hit is not None:
            return hit
        words = words_of_degree(alpha)
        gram = self.eta_gram_lp(alpha)
        rows = independent_rows(gram, self.n)
        basis = DegreeBasis(alpha, [words[i] for i in rows],
                            [[lpoly_to_field(gram[i][j]) for j in rows] for i in rows],
                            len(rows), words)
        self._bases[alpha] = basis
        return basis

    def dim(self, alpha: Weight) -> int:
        return self.nichols_basis(alpha).rank

    # determinants ------------------------------------------------------
    def sh_matrix_lp(self, alpha: Weight) -> List[List[LPoly]]:
        words = self.nichols_basis(alpha).words
        return [[self.sh_lp(u, v) for v in words] for u in words]

    def det_brute_lp(self, alpha: Weight) -> LPoly:
        alpha = tuple(alpha)
        d = self._dets.get(alpha)
        if d is None:
            d = bareiss_det(self.sh_matrix_lp(alpha), self._one)
            self._dets[alpha] = d
        return d

    def det_brute(self, alpha: Weight) -> U0Poly:
        return U0Poly.from_lpoly(self.det_brute_lp(alpha), self.rank)

    # Verma forms -------------------------------------------------------
    def lambda_gram(self, lam: WeightCharacter, alpha: Weight):
        """Lambda applied entrywise to Sh on the Nichols basis of degree alpha."""
        words = self.nichols_basis(alpha).words
        if lam.is_unit_valued():
            return [[char_eval_lpoly(lam, self.sh_lp(u, v), self.rank) for v in words] for u in words]
        return [[char_eval(lam, U0Poly.from_lpoly(self.sh_lp(u, v), self.rank)) for v in words]
                for u in words]


def independent_rows(matrix: Sequence[Sequence], n: int) -> List[int]:
    """Indices of the lexicographically first maximal set of independent rows."""
    if not matrix:
        return []
    cols = transpose(matrix)
    return independent_columns(cols, n)


def independent_columns(matrix: Sequence[Sequence], n: int) -> List[int]:
    if not matrix or not matrix[0]:
        return []
    sample = matrix[0][0]
    if isinstance(sample, LPoly):
        if all(x.is_constant() for row in matrix for x in row):
            const = [[x.constant_value() for x in row] for row in matrix]
            return field_pivot_columns(const)
        return pivot_columns(matrix, LPoly.one(sample.nvars, n))
    return field_pivot_columns(matrix)


def matrix_rank(matrix: Sequence[Sequence], n: int) -> int:
    return len(independent_columns(matrix, n))


@lru_cache(maxsize=64)
def oracle_for(chi: Bicharacter) -> NicholsOracle:
    return NicholsOracle(chi)


# functional front door -------------------------------------------------

def straighten(chi: Bicharacter, e: FreeWord, f: FreeWord) -> List[StraightTerm]:
    return oracle_for(chi).straighten(e, f)


def harish_chandra(terms: Sequence[StraightTerm]) -> U0Poly:
    return NicholsOracle.harish_chandra(terms)


def shap_form_entry(chi: Bicharacter, u: FreeWord, v: FreeWord) -> U0Poly:
    return oracle_for(chi).shap_form_entry(u, v)


def eta_gram(chi: Bicharacter, alpha: Weight) -> List[List[RationalFunction]]:
    return oracle_for(chi).eta_gram(alpha)


def nichols_basis(chi: Bicharacter, alpha: Weight) -> DegreeBasis:
    return oracle_for(chi).nichols_basis(alpha)


def det_brute(chi: Bicharacter, alpha: Weight) -> U0Poly:
    return oracle_for(chi).det_brute(alpha)
