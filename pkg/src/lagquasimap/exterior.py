"""Exterior algebra of C^{2n}, contraction by Omega, and Northeast normal forms.

Basis vectors are e_x for x in <n>, ordered -n < ... < -1 < 1 < ... < n, and
Omega = sum_i e_{-i} ^ e_i.  Contraction removes a pair {-i, i}: the two
vectors are first moved to the front by adjacent transpositions and the
resulting permutation sign is recorded.  Wedging a dual form with Omega is the
transpose of this map, so <Omega ^ phi, v> = <phi, Omega -| v> exactly.
"""
from fractions import Fraction
from itertools import combinations
import json

from .combinatorics import (
    SignedSequence, DomainError, alphabet, perm_sign, pi, northeast_representative,
)
from . import linalg


class _Sparse:
    """Rational combination of increasing tuples over <n>."""

    def __init__(self, n, k, terms=None):
        self.n, self.k = n, k
        self.terms = {}
        for key, c in (terms or {}).items():
            key = tuple(key.entries) if isinstance(key, SignedSequence) else tuple(key)
            if len(key) != k or list(key) != sorted(set(key)):
                raise DomainError(f"{key} is not an increasing {k}-subset")
            c = Fraction(c)
            if c:
                self.terms[key] = self.terms.get(key, 0) + c
        self.terms = {a: c for a, c in self.terms.items() if c}

    def _new(self, terms):
        return type(self)(self.n, self.k, terms)

    def __add__(self, other):
        t = dict(self.terms)
        for a, c in other.terms.items():
            t[a] = t.get(a, 0) + c
        return self._new(t)

    def __neg__(self):
        return self._new({a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, s):
        return self._new({a: s * c for a, c in self.terms.items()})

    def __eq__(self, other):
        return type(self) is type(other) and (self.n, self.k) == (other.n, other.k) \
            and self.terms == other.terms

    def __getitem__(self, key):
        key = tuple(key.entries) if isinstance(key, SignedSequence) else tuple(key)
        return self.terms.get(key, Fraction(0))

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        s = ""
        for a in sorted(self.terms):
            c = self.terms[a]
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            s += f" {sign} {mag}{self._sym}_{_word(a, self.n)}"
        return s[3:] if s.startswith(" + ") else "-" + s[3:]

    __repr__ = __str__


def _word(a, n):
    parts = [(r"\bar" + str(-x)) if x < 0 else str(x) for x in a]
    return ("," if n >= 10 else "").join(parts) or "()"


class MultiVector(_Sparse):
    _sym = "v"


class LinearFunctional(_Sparse):
    _sym = "p"

    def __init__(self, n, k, terms=None, level=0):
        super().__init__(n, k, terms)
        self.level = level

    def _new(self, terms):
        return LinearFunctional(self.n, self.k, terms, self.level)

    def __eq__(self, other):
        return super().__eq__(other) and self.level == other.level

    def pair(self, v):
        return sum((c * v.terms.get(a, 0) for a, c in self.terms.items()), Fraction(0))

    def evaluate(self, point):
        """Value at a point given as {(seq-tuple, level): value}."""
        return sum((c * point[(a, self.level)] for a, c in self.terms.items()), Fraction(0))


def contraction_sign(seq, i):
    """Sign for removing -i and i from the increasing tuple seq."""
    p = seq.index(-i)
    q = seq.index(i)
    return -1 if (p + q - 1) % 2 else 1


def contract_omega(v):
    if v.k < 2:
        raise DomainError("contraction needs degree at least 2")
    out = {}
    for a, c in v.terms.items():
        s = set(a)
        for i in range(1, v.n + 1):
            if i in s and -i in s:
                b = tuple(x for x in a if x not in (i, -i))
                out[b] = out.get(b, 0) + contraction_sign(a, i) * c
    return MultiVector(v.n, v.k - 2, out)


def wedge_omega(phi):
    """Omega ^ phi for a dual form phi of degree k (result has degree k+2)."""
    out = {}
    for a, c in phi.terms.items():
        s = set(a)
        for i in range(1, phi.n + 1):
            if i not in s and -i not in s:
                word = (-i, i) + tuple(a)
                b = tuple(sorted(word))
                out[b] = out.get(b, 0) + perm_sign(word) * c
    level = getattr(phi, "level", 0)
    return LinearFunctional(phi.n, phi.k + 2, out, level)


def coordinate(alpha, level=0):
    a = tuple(alpha.entries) if isinstance(alpha, SignedSequence) else tuple(alpha)
    return LinearFunctional(len(a), len(a), {a: 1}, level)


def linear_forms_L(d, n):
    """Generators Omega ^ p_alpha^{(a)} of L_{d,n}; alpha runs over (n-2)-subsets of <n>."""
    if n < 2:
        return []
    out = []
    for a in range(d + 1):
        for alpha in combinations(alphabet(n), n - 2):
            out.append(wedge_omega(LinearFunctional(n, n - 2, {alpha: 1}, a)))
    return out


class Weight:
    def __init__(self, h, H):
        self.h = tuple(h)
        self.H = H

    def key(self):
        return (self.H, self.h)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Weight(h={list(self.h)}, H={self.H})"


def weight_of(alpha, level=0, d=0, n=None):
    """(d - 2a) H* + sum_i h*_{alpha_i}, with h*_{-i} = -h*_i."""
    a = tuple(alpha.entries) if isinstance(alpha, SignedSequence) else tuple(alpha)
    if n is None:
        n = len(a)
    s = set(a)
    h = tuple(int(i in s) - int(-i in s) for i in range(1, n + 1))
    return Weight(h, d - 2 * level)


def form_weight(form, d=0):
    ws = {weight_of(a, form.level, d, form.n).key() for a in form.terms}
    if len(ws) != 1:
        raise DomainError("form is not homogeneous")
    return ws.pop()


class Matching:
    """Bijection alpha -> complement of alpha in [2m]."""

    def __init__(self, alpha, images):
        self.alpha = tuple(sorted(alpha))
        m = len(self.alpha)
        comp = [x for x in range(1, 2 * m + 1) if x not in self.alpha]
        if any(x < 1 or x > 2 * m for x in self.alpha):
            raise DomainError("alpha must lie in [2m]")
        self.map = dict(zip(self.alpha, images)) if not isinstance(images, dict) else dict(images)
        if sorted(self.map) != list(self.alpha) or sorted(self.map.values()) != comp:
            raise DomainError(f"{images} is not a matching of {self.alpha}")

    @classmethod
    def canonical(cls, alpha):
        alpha = tuple(sorted(alpha))
        m = len(alpha)
        comp = [x for x in range(1, 2 * m + 1) if x not in alpha]
        return cls(alpha, comp)

    def is_descending(self):
        return all(self.map[a] < a for a in self.alpha)


def zero_weight_sequence(alpha_plus, m):
    """Full weight-zero sequence (-alpha_+) u alpha_+ over <2m>."""
    return tuple(sorted([-x for x in alpha_plus] + list(alpha_plus)))


def kernel_element(alpha_plus, matching=None):
    alpha_plus = tuple(sorted(alpha_plus))
    m = len(alpha_plus)
    M = Matching.canonical(alpha_plus) if matching is None else matching
    if M.alpha != alpha_plus:
        raise DomainError("matching is for a different alpha")
    terms = {}
    for mask in range(1 << m):
        s = set(alpha_plus)
        for j, a in enumerate(alpha_plus):
            if mask >> j & 1:
                s.discard(a)
                s.add(M.map[a])
        key = zero_weight_sequence(sorted(s), m)
        sign = -1 if bin(mask).count("1") % 2 else 1
        terms[key] = terms.get(key, 0) + sign
    return MultiVector(2 * m, 2 * m, terms)


def zero_weight_dimension(m):
    """dim ker(Omega -| .) on the weight-zero part of wedge^{2m} C^{4m}."""
    n = 2 * m
    src = list(combinations(range(1, n + 1), m))
    tgt = {t: k for k, t in enumerate(combinations(range(1, n + 1), m - 1))}
    # rows indexed by target, columns by source
    rows = [[0] * len(src) for _ in tgt]
    for j, a in enumerate(src):
        v = MultiVector(n, n, {zero_weight_sequence(a, m): 1})
        for b, c in contract_omega(v).terms.items():
            rows[tgt[tuple(x for x in b if x > 0)]][j] += int(c)
    if not rows:
        return len(src)
    return len(src) - linalg.rank(rows)


def northeast_sequences_zero_weight(m):
    out = []
    for a in combinations(range(1, 2 * m + 1), m):
        if SignedSequence(zero_weight_sequence(a, m)).is_northeast():
            out.append(a)
    return out


def weight_zero_pairs(m):
    """Admissible pairs (diagonal included) of D_{0,2m} whose weights cancel."""
    from .poset import build_doset
    ds = build_doset(0, 2 * m)
    out = []
    for i, j in [(i, i) for i in range(len(ds))] + sorted(ds.pairs):
        lo, hi = ds.elements[i].seq, ds.elements[j].seq
        if all(x + y == 0 for x, y in zip(weight_of(lo).h, weight_of(hi).h)):
            out.append((lo, hi))
    return out


def _alpha_plus_key(a):
    return (tuple(x for x in a if x > 0), a)


def _slice_normal_form(forms_keys, coords, n):
    """Normal form on one weight slice.  forms_keys: list of dicts {coord: coeff}."""
    ne = [c for c in coords if SignedSequence(c).is_northeast()]
    non = [c for c in coords if not SignedSequence(c).is_northeast()]
    non.sort(key=_alpha_plus_key)
    ne.sort(key=_alpha_plus_key)
    cols = non + ne
    idx = {c: j for j, c in enumerate(cols)}
    rows = [[0] * len(cols) for _ in forms_keys]
    for r, f in enumerate(forms_keys):
        for c, v in f.items():
            rows[r][idx[c]] = v
    R, piv = linalg.rref(rows, len(cols))
    if sorted(piv) != list(range(len(non))):
        raise AssertionError("Northeast coordinates do not form a basis on this weight slice")
    out = {}
    for row, pc in zip(R, piv):
        out[cols[pc]] = {cols[j]: -row[j] for j in range(len(non), len(cols)) if row[j] != 0}
    for c in ne:
        out[c] = {c: Fraction(1)}
    return out


def northeast_normal_form(d, n, level_forms=None):
    """{(seq, a): {(NE seq, a): coeff}} expressing each p_seq^{(a)} through Northeast
    coordinates modulo L_{d,n}.  Computed once per weight slice and shared across levels."""
    forms = level_forms if level_forms is not None else linear_forms_L(0, n)
    slices = {}
    for f in forms:
        w = form_weight(f, 0)[1]
        slices.setdefault(w, []).append(dict(f.terms))
    coords_by_w = {}
    for c in combinations(alphabet(n), n):
        coords_by_w.setdefault(weight_of(SignedSequence(c)).h, []).append(c)
    base = {}
    for w, coords in coords_by_w.items():
        base.update(_slice_normal_form(slices.get(w, []), coords, n))
    out = {}
    for a in range(d + 1):
        for c, comb in base.items():
            out[(c, a)] = {(b, a): v for b, v in comb.items()}
    return out


def normal_form_functional(nf, alpha, level=0):
    a = tuple(alpha.entries) if isinstance(alpha, SignedSequence) else tuple(alpha)
    comb = nf[(a, level)]
    return LinearFunctional(len(a), len(a), {b: v for (b, _), v in comb.items()}, level)


def reduced_form(nf, alpha, level=0):
    """l'_alpha = p_alpha - (normal form of p_alpha); zero for Northeast alpha."""
    a = tuple(alpha.entries) if isinstance(alpha, SignedSequence) else tuple(alpha)
    return coordinate(a, level) - normal_form_functional(nf, a, level)


def in_span(forms, target):
    """Whether the functional target lies in the span of forms (exact)."""
    keys = sorted({k for f in forms for k in f.terms} | set(target.terms))
    idx = {k: j for j, k in enumerate(keys)}
    rows = []
    for f in forms:
        r = [0] * len(keys)
        for k, v in f.terms.items():
            r[idx[k]] = v
        rows.append(r)
    r0 = linalg.rank(rows) if rows else 0
    t = [0] * len(keys)
    for k, v in target.terms.items():
        t[idx[k]] = v
    return linalg.rank(rows + [t]) == r0


def normal_form_json(nf):
    out = []
    for (c, a) in sorted(nf):
        out.append({"index": [list(c), a],
                    "combination": [[str(v), [list(b), lv]] for (b, lv), v in sorted(nf[(c, a)].items())]})
    return json.dumps(out, sort_keys=True)


def fiber_representative(alpha):
    lo, hi = pi(SignedSequence(alpha))
    return tuple(northeast_representative(lo, hi).entries)
