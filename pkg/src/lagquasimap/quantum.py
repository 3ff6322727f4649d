"""Pieri-type products in the quantum cohomology of LG(n).

Schubert classes are indexed by symmetric partitions in the n x n square.
Multiplication by the simple class is the cover sum in P_{d,n}: weight 2 for
covers adding a mirrored pair of boxes, 1 for a diagonal box, and 1 for the
level-raising cover (remove the hook (n, 1^{n-1}), multiply by q).
"""
import json

from .combinatorics import SignedSequence, DomainError, partition_to_sequence
from .poset import PosetElement, covers, SAME_LEVEL_DOSET, SAME_LEVEL_PLAIN, LEVEL_JUMP

WEIGHT = {SAME_LEVEL_DOSET: 2, SAME_LEVEL_PLAIN: 1, LEVEL_JUMP: 1}


def _norm(lam):
    return tuple(x for x in lam if x > 0)


def as_partition(alpha, n):
    if isinstance(alpha, SignedSequence):
        lam = alpha.partition()
    else:
        lam = _norm(alpha)
    seq = partition_to_sequence(lam, n)
    if not seq.is_admissible():
        raise DomainError(f"{lam} is not symmetric")
    return lam


class QHElement:
    """Finite Z-combination of sigma_lambda q^e, stored as {(lambda, e): coeff}."""

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        for (lam, e), c in (terms or {}).items():
            if c:
                key = (_norm(lam), e)
                self.terms[key] = self.terms.get(key, 0) + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def schubert(cls, lam, n, q=0):
        return cls(n, {(as_partition(lam, n), q): 1})

    def __eq__(self, other):
        return isinstance(other, QHElement) and self.n == other.n and self.terms == other.terms

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return QHElement(self.n, t)

    def coefficient(self, lam, q=0):
        return self.terms.get((_norm(lam), q), 0)

    def is_zero(self):
        return not self.terms

    def _sorted(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], sum(kv[0][0]), kv[0][0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (lam, e), c in self._sorted():
            s = f"{c}·σ[{','.join(map(str, lam))}]"
            if e:
                s += f"·q^{e}"
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self):
        return {"n": self.n, "terms": [[list(lam), e, c] for (lam, e), c in self._sorted()]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def classical_pieri(alpha, n):
    lam = as_partition(alpha, n)
    x = PosetElement(0, partition_to_sequence(lam, n))
    out = {}
    for y, t in covers(x, 0):
        key = (y.seq.partition(), 0)
        out[key] = out.get(key, 0) + WEIGHT[t]
    return QHElement(n, out)


def hook_removal(alpha, n):
    """The symmetric partition left after removing the hook (n, 1^{n-1}), or None."""
    lam = as_partition(alpha, n)
    if len(lam) < n or lam[0] < n:
        return None
    return _norm(tuple(x - 1 for x in lam[1:]))


def quantum_pieri(x, n, d=None):
    """x * sigma_box; q-exponents above d are dropped (d=None: no truncation)."""
    if not isinstance(x, QHElement):
        x = QHElement.schubert(x, n)
    out = {}
    for (lam, a), c in x.terms.items():
        if d is not None and a > d:
            raise DomainError(f"q-exponent {a} exceeds d = {d}")
        el = PosetElement(a, partition_to_sequence(lam, n))
        for y, t in covers(el, d):
            key = (y.seq.partition(), y.level)
            out[key] = out.get(key, 0) + c * WEIGHT[t]
    return QHElement(n, out)


def dual_partition(alpha, n):
    """Rotated complement in the n x n square."""
    lam = as_partition(alpha, n)
    lam = tuple(lam) + (0,) * (n - len(lam))
    return _norm(tuple(n - lam[n - 1 - r] for r in range(n)))


def corank(alpha, d, n):
    """Length of any saturated chain from alpha^{(0)} to the top of P_{d,n}."""
    x = PosetElement(0, partition_to_sequence(as_partition(alpha, n), n))
    k = 0
    while True:
        c = covers(x, d)
        if not c:
            return k
        x = c[0][0]
        k += 1


def schubert_variety_degree(alpha, d, n):
    lam = as_partition(alpha, n)
    x = QHElement.schubert(lam, n)
    for _ in range(corank(lam, d, n)):
        x = quantum_pieri(x, n, d)
    return x.coefficient((n,) * n, d)
