"""Cartan schemes, Weyl groupoids and root systems generated by a bicharacter."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .bicharacter import (
    CARTAN_CAP,
    Bicharacter,
    Weight,
    bound,
    cartan_row,
    height,
    is_nonneg,
    reflect,
    sigma_matrix,
    simple_root,
    wadd,
    wscale,
)
from .errors import CapExceededError, HypothesisError
from .exactfield import INF
from .linalg import int_identity, int_inverse, int_matmul, int_matvec

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Caps:
    max_objects: int = 512
    max_length: int = 64
    cartan_cap: int = CARTAN_CAP


DEFAULT_CAPS = Caps()


class NotInX2Error(HypothesisError):
    def __init__(self, obj: int, index: int):
        super().__init__(f"not in X2 at object {obj}, index {index + 1}")
        self.obj = obj
        self.index = index


@dataclass
class CartanScheme:
    objects: List[Bicharacter]
    reflections: Dict[Tuple[int, int], int]
    cartan: Dict[int, Matrix]

    @property
    def rank(self) -> int:
        return self.objects[0].rank

    def index_of(self, chi: Bicharacter) -> int:
        return self.objects.index(chi)

    def sigma(self, obj: int, i: int) -> Matrix:
        return sigma_matrix(self.cartan[obj][i], i)


@dataclass(frozen=True)
class GroupoidWord:
    """letters are applied left to right starting at source; matrix is
    sigma_{i_k} ... sigma_{i_1} with each factor taken at its own object."""

    source: int
    letters: Tuple[int, ...]
    matrix: Matrix
    target: int

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class RootSystemRecord:
    object: int
    positive_roots: Tuple[Weight, ...]
    bounds: Dict[Weight, object] = field(hash=False)
    klass: str = "X3"

    def bound(self, beta: Weight):
        return self.bounds[tuple(beta)]


def _root_key(a: Weight):
    return (height(a), tuple(-x for x in a))


def orbit(chi: Bicharacter, caps: Caps = DEFAULT_CAPS) -> CartanScheme:
    """Breadth-first closure of {chi} under the reflections r_p."""
    objects = [chi]
    ids = {chi: 0}
    reflections: Dict[Tuple[int, int], int] = {}
    cartan: Dict[int, Matrix] = {}
    queue = deque([0])
    r = chi.rank
    while queue:
        a = queue.popleft()
        rows = []
        for p in range(r):
            row = cartan_row(objects[a], p, caps.cartan_cap)
            if not row.defined:
                raise NotInX2Error(a, p)
            rows.append(row.entries)
        cartan[a] = tuple(rows)
        for p in range(r):
            img = reflect(objects[a], p, caps.cartan_cap)
            b = ids.get(img)
            if b is None:
                if len(objects) >= caps.max_objects:
                    raise CapExceededError(
                        f"cap exceeded: more than {caps.max_objects} objects, orbit possibly infinite")
                b = len(objects)
                objects.append(img)
                ids[img] = b
                queue.append(b)
            reflections[(a, p)] = b
    return CartanScheme(objects, reflections, cartan)


def _morphisms(scheme: CartanScheme, obj: int, caps: Caps):
    """BFS over (end object, inverse matrix) for morphisms out of obj.

    Returns dict state -> (length, parent state, letter)."""
    r = scheme.rank
    start = (obj, int_identity(r))
    seen = {start: (0, None, None)}
    frontier = [start]
    length = 0
    while frontier:
        if length >= caps.max_length:
            raise CapExceededError(
                f"cap exceeded: words longer than {caps.max_length}, root system possibly infinite")
        length += 1
        nxt = []
        for state in frontier:
            a, minv = state
            for i in range(r):
                b = scheme.reflections[(a, i)]
                # sigma_i is its own inverse, taken at the current object a
                new = (b, int_matmul(minv, scheme.sigma(a, i)))
                if new not in seen:
                    seen[new] = (length, state, i)
                    nxt.append(new)
        frontier = nxt
    return seen


def positive_roots(scheme: CartanScheme, obj: int = 0, caps: Caps = DEFAULT_CAPS) -> RootSystemRecord:
    chi = scheme.objects[obj]
    r = scheme.rank
    states = _morphisms(scheme, obj, caps)
    roots = set()
    for (_, minv) in states:
        for j in range(r):
            v = tuple(minv[k][j] for k in range(r))
            roots.add(v)
    pos = sorted((v for v in roots if is_nonneg(v)), key=_root_key)
    for v in roots:
        if not is_nonneg(v) and not is_nonneg(tuple(-x for x in v)):
            raise HypothesisError(f"root {v} is neither positive nor negative")
    bounds = {b: bound(chi, b) for b in pos}
    klass = "X3"
    if all(bounds[b] != INF for b in pos):
        klass = "X4"
        if all(not chi.diag(b).is_one() for b in pos):
            klass = "X5"
    return RootSystemRecord(obj, tuple(pos), bounds, klass)


def roots_of(chi: Bicharacter, caps: Caps = DEFAULT_CAPS) -> Tuple[CartanScheme, RootSystemRecord]:
    scheme = orbit(chi, caps)
    return scheme, positive_roots(scheme, 0, caps)


def word_from_letters(scheme: CartanScheme, source: int, letters: Sequence[int]) -> GroupoidWord:
    r = scheme.rank
    a = source
    mat = int_identity(r)
    for i in letters:
        mat = int_matmul(scheme.sigma(a, i), mat)
        a = scheme.reflections[(a, i)]
    return GroupoidWord(source, tuple(letters), mat, a)


def reduce_word(scheme: CartanScheme, w: GroupoidWord, caps: Caps = DEFAULT_CAPS) -> GroupoidWord:
    """A shortest word with the same source, target and matrix."""
    goal = (w.target, int_inverse(w.matrix))
    states = _morphisms(scheme, w.source, caps)
    if goal not in states:
        raise ValueError("word is not a morphism of this scheme")
    letters = []
    state = goal
    while True:
        _, parent, letter = states[state]
        if parent is None:
            break
        letters.append(letter)
        state = parent
    letters.reverse()
    out = word_from_letters(scheme, w.source, letters)
    assert out.matrix == w.matrix and out.target == w.target and len(out) <= len(w)
    return out


def length(scheme: CartanScheme, w: GroupoidWord, caps: Caps = DEFAULT_CAPS) -> int:
    return len(reduce_word(scheme, w, caps))


def _greedy_letters(scheme: CartanScheme, obj: int) -> List[int]:
    """i_1, ..., i_n with beta_nu = sigma_{i_1} ... sigma_{i_{nu-1}} (alpha_{i_nu}), starting at obj."""
    r = scheme.rank
    a = obj
    m = int_identity(r)
    letters = []
    while True:
        choice = None
        for i in range(r):
            img = int_matvec(m, simple_root(i, r))
            if is_nonneg(img):
                choice = i
                break
        if choice is None:
            return letters
        letters.append(choice)
        m = int_matmul(m, scheme.sigma(a, choice))
        a = scheme.reflections[(a, choice)]
        if len(letters) > 10_000:
            raise CapExceededError("cap exceeded in longest word construction")


def longest_word(scheme: CartanScheme, obj: int = 0, caps: Caps = DEFAULT_CAPS) -> GroupoidWord:
    """Longest word ending at obj (application order is the reverse of the greedy letters)."""
    rec = positive_roots(scheme, obj, caps)
    greedy = _greedy_letters(scheme, obj)
    # follow the greedy letters forward to find the source of the reversed word
    a = obj
    for i in greedy:
        a = scheme.reflections[(a, i)]
    w = word_from_letters(scheme, a, tuple(reversed(greedy)))
    if w.target != obj:
        raise AssertionError("longest word does not end at the requested object")
    if len(w) != len(rec.positive_roots):
        raise AssertionError(f"greedy word has length {len(w)}, expected {len(rec.positive_roots)}")
    return w


def beta_sequence(scheme: CartanScheme, w: GroupoidWord) -> List[Weight]:
    """beta_nu = 1_chi sigma_{i_1} ... sigma_{i_{nu-1}} (alpha_{i_nu}) for a word ending at chi."""
    r = scheme.rank
    letters = list(reversed(w.letters))
    a = w.target
    m = int_identity(r)
    betas = []
    for i in letters:
        betas.append(int_matvec(m, simple_root(i, r)))
        m = int_matmul(m, scheme.sigma(a, i))
        a = scheme.reflections[(a, i)]
    if len(set(betas)) != len(betas) or not all(is_nonneg(b) for b in betas):
        raise ValueError("word is not reduced: beta sequence repeats or leaves the positive cone")
    return betas


def classify(chi: Bicharacter, caps: Caps = DEFAULT_CAPS) -> str:
    """Largest class among not_X1, X1, ..., X5 containing chi; CapExceededError if undecided."""
    r = chi.rank
    if not all(cartan_row(chi, p, caps.cartan_cap).defined for p in range(r)):
        return "not_X1"
    try:
        scheme = orbit(chi, caps)
    except NotInX2Error:
        return "X1"
    try:
        rec = positive_roots(scheme, 0, caps)
    except CapExceededError as exc:
        raise CapExceededError(f"undecided: {exc}") from exc
    return rec.klass


def cone_roots(rec: RootSystemRecord, i: int, j: int) -> List[Weight]:
    return [b for b in rec.positive_roots
            if all(x == 0 for k, x in enumerate(b) if k not in (i, j))]


def coxeter_number(rec: RootSystemRecord, i: int, j: int) -> int:
    """m_{i,j} by direct counting of positive roots in the (i, j) cone."""
    return len(cone_roots(rec, i, j))


def _alternating(scheme: CartanScheme, obj: int, i: int, j: int, m: int) -> GroupoidWord:
    letters = [i, j] * m
    return word_from_letters(scheme, obj, letters)


def coxeter_relations(scheme: CartanScheme, records: Dict[int, RootSystemRecord]) -> List[str]:
    """(s_i s_j)^{m_ij} 1_a is the identity morphism for every object and i != j."""
    r = scheme.rank
    bad = []
    ident = int_identity(r)
    for a in range(len(scheme.objects)):
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                m = coxeter_number(records[a], i, j)
                w = _alternating(scheme, a, i, j, m)
                if w.target != a or w.matrix != ident:
                    bad.append(f"Coxeter relation fails at object {a}, pair ({i + 1},{j + 1})")
    return bad


def all_records(scheme: CartanScheme, caps: Caps = DEFAULT_CAPS) -> Dict[int, RootSystemRecord]:
    return {a: positive_roots(scheme, a, caps) for a in range(len(scheme.objects))}


def check_axioms(scheme: CartanScheme, records: Optional[Dict[int, RootSystemRecord]] = None,
                 caps: Caps = DEFAULT_CAPS) -> List[str]:
    """Return human-readable violations of (C1), (C2), (R1)-(R4) and the Cartan/root-string rule."""
    r = scheme.rank
    bad: List[str] = []
    nobj = len(scheme.objects)
    for a in range(nobj):
        for i in range(r):
            b = scheme.reflections[(a, i)]
            if scheme.reflections[(b, i)] != a:
                bad.append(f"(C1) r_{i + 1}^2 != id at object {a}")
            for j in range(r):
                if scheme.cartan[a][i][j] != scheme.cartan[b][i][j]:
                    bad.append(f"(C2) c_{i + 1}{j + 1} differs between object {a} and r_{i + 1}({a})={b}")
    if bad:
        # root systems are attached to Cartan schemes only; stop at the first layer
        return bad
    if records is None:
        try:
            records = all_records(scheme, caps)
        except CapExceededError as exc:
            bad.append(f"(R) root systems could not be enumerated: {exc}")
            return bad
    for a in range(nobj):
        rec = records[a]
        pos = set(rec.positive_roots)
        if not all(is_nonneg(x) for x in pos):
            bad.append(f"(R1) object {a} has a positive root outside N0^I")
        for i in range(r):
            ai = simple_root(i, r)
            multiples = [x for x in pos if all(v == 0 for k, v in enumerate(x) if k != i)]
            if multiples != [ai]:
                bad.append(f"(R2) object {a}: roots on the line of alpha_{i + 1} are {sorted(multiples)}")
            b = scheme.reflections[(a, i)]
            sig = scheme.sigma(a, i)
            full_a = pos | {wscale(-1, x) for x in pos}
            full_b = set(records[b].positive_roots)
            full_b |= {wscale(-1, x) for x in full_b}
            if {int_matvec(sig, x) for x in full_a} != full_b:
                bad.append(f"(R3) sigma_{i + 1} does not map R at object {a} onto R at object {b}")
            for j in range(r):
                if j == i:
                    continue
                m = coxeter_number(rec, i, j)
                c = a
                for _ in range(m):
                    c = scheme.reflections[(c, i)]
                    c = scheme.reflections[(c, j)]
                if c != a:
                    bad.append(f"(R4) (r_{i + 1} r_{j + 1})^{m} does not fix object {a}")
                aj = simple_root(j, r)
                string = 0
                while wadd(aj, wscale(string + 1, ai)) in pos:
                    string += 1
                if -scheme.cartan[a][i][j] != string:
                    bad.append(f"(cm) object {a}: -c_{i + 1}{j + 1}={-scheme.cartan[a][i][j]} "
                               f"but the alpha_{i + 1}-string through alpha_{j + 1} has length {string}")
    return bad


def tamper(scheme: CartanScheme, obj: int, i: int, j: int, delta: int = -1) -> CartanScheme:
    """Copy of the scheme with one Cartan entry altered (negative control)."""
    cart = dict(scheme.cartan)
    rows = [list(row) for row in cart[obj]]
    rows[i][j] += delta
    cart[obj] = tuple(tuple(row) for row in rows)
    return replace(scheme, cartan=cart)
