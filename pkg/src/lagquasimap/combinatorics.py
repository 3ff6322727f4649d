"""Signed sequences, their partitions, and the Lagrangian involution.

A sequence alpha is a strictly increasing tuple of n entries from the alphabet
<n> = (-n, ..., -1, 1, ..., n).  Integer order agrees with the alphabet order,
and the entry -i is written as \\bar{i} in text.  Sequences correspond to
partitions inside the n x n square; the smallest sequence
(-n, ..., -1) is the empty partition and (1, ..., n) is the full square.
"""
from dataclasses import dataclass
from itertools import combinations
import re


class ParseError(ValueError):
    pass


class DomainError(ValueError):
    """Input outside the domain of a map, e.g. a non-admissible pair."""


def alphabet(n):
    return tuple(range(-n, 0)) + tuple(range(1, n + 1))


def position(x, n):
    """0-based position of x in the alphabet <n>."""
    if x == 0 or abs(x) > n:
        raise DomainError(f"{x} is not in the alphabet of size {2 * n}")
    return x + n if x < 0 else x + n - 1


def letter(p, n):
    """Inverse of position."""
    return p - n if p < n else p - n + 1


def perm_sign(seq):
    """Sign of the permutation sorting seq (distinct entries), by inversion count."""
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


@dataclass(frozen=True, order=True)
class SignedSequence:
    entries: tuple

    def __post_init__(self):
        e = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", e)
        n = len(e)
        if any(x == 0 or abs(x) > n for x in e):
            raise DomainError(f"entries of {e} must lie in the alphabet of size {2 * n}")
        if any(e[i] >= e[i + 1] for i in range(n - 1)):
            raise DomainError(f"{e} is not strictly increasing")

    @property
    def n(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    # text forms

    @classmethod
    def parse(cls, text):
        return cls(parse_entries(text))

    def to_text(self):
        parts = [(r"\bar" + str(-x)) if x < 0 else str(x) for x in self.entries]
        return ("," if self.n >= 10 else "").join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SignedSequence({self.to_text()!r})"

    # partitions

    def partition(self):
        return sequence_to_partition(self)

    @classmethod
    def from_partition(cls, lam, n):
        return partition_to_sequence(lam, n)

    def boxes(self):
        return partition_boxes(self.partition())

    # involution

    def transpose(self):
        n = self.n
        neg = {-x for x in self.entries}
        return SignedSequence(tuple(x for x in alphabet(n) if x not in neg))

    def is_admissible(self):
        return all(-x not in self.entries for x in self.entries)

    def negatives(self):
        return tuple(x for x in self.entries if x < 0)

    def positives(self):
        return tuple(x for x in self.entries if x > 0)

    def durfee(self):
        """Side of the Durfee square; equals the number of positive entries."""
        return len(self.positives())

    def is_northeast(self):
        return is_northeast(self.partition())

    def is_southwest(self):
        return self.transpose().is_northeast()


def parse_entries(text):
    """Parse '\\bar4\\bar213', '\\bar{10},3,...' or '-4,-2,1,3' (also JSON lists)."""
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    s = text.strip()
    if s.startswith("["):
        import json
        try:
            return tuple(int(x) for x in json.loads(s))
        except (ValueError, TypeError) as exc:
            raise ParseError(f"bad sequence {text!r}") from exc
    tok = re.compile(r"\s*(\\bar\s*\{\s*(\d+)\s*\}|\\bar\s*(\d)|-(\d+)|(\d))\s*")
    if "," in s:
        tok = re.compile(r"\s*(\\bar\s*\{\s*(\d+)\s*\}|\\bar\s*(\d+)|-(\d+)|(\d+))\s*")
    out = []
    i = 0
    s2 = s.replace(",", " ")
    while i < len(s2):
        if s2[i].isspace():
            i += 1
            continue
        m = tok.match(s2, i)
        if not m or m.end() == i:
            raise ParseError(f"cannot parse sequence {text!r} at offset {i}")
        if m.group(2) or m.group(3) or m.group(4):
            out.append(-int(m.group(2) or m.group(3) or m.group(4)))
        else:
            out.append(int(m.group(5)))
        i = m.end()
    if not out:
        raise ParseError(f"empty sequence {text!r}")
    return tuple(out)


def sequence_to_partition(alpha):
    """Row r (1-based, top to bottom) has pos(alpha_{n+1-r}) - (n - r) boxes."""
    e = alpha.entries if isinstance(alpha, SignedSequence) else tuple(alpha)
    n = len(e)
    rows = [position(e[n - r], n) - (n - r) for r in range(1, n + 1)]
    return tuple(x for x in rows if x > 0)


def partition_to_sequence(lam, n):
    lam = tuple(lam) + (0,) * (n - len(lam))
    if len(lam) > n or any(x > n or x < 0 for x in lam) or any(
            lam[i] < lam[i + 1] for i in range(n - 1)):
        raise DomainError(f"{lam} does not fit in the {n} x {n} square")
    e = [0] * n
    for r in range(1, n + 1):
        e[n - r] = letter(lam[r - 1] + n - r, n)
    return SignedSequence(tuple(e))


def conjugate(lam):
    lam = [x for x in lam if x > 0]
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > c) for c in range(lam[0]))


def partition_boxes(lam):
    """Boxes (r, c), 1-based, row r from the top and column c from the left."""
    return frozenset((r, c) for r, row in enumerate(lam, 1) for c in range(1, row + 1))


def boxes_to_partition(boxes):
    rows = {}
    for r, c in boxes:
        rows[r] = rows.get(r, 0) + 1
    lam = tuple(rows.get(r, 0) for r in range(1, len(rows) + 1))
    if partition_boxes(lam) != frozenset(boxes):
        raise DomainError("box set is not a Young diagram")
    return lam


def is_northeast(lam):
    """Every box on or below the diagonal has its mirror image in the diagram."""
    B = partition_boxes(lam)
    return all((c, r) in B for (r, c) in B if r >= c)


def durfee_size(lam):
    return sum(1 for i, x in enumerate(lam, 1) if x >= i)


def strict_partition(alpha):
    """Shifted strict partition of an admissible sequence: boxes on or above the diagonal."""
    if not alpha.is_admissible():
        raise DomainError(f"{alpha} is not admissible")
    lam = alpha.partition()
    return tuple(x - i for i, x in enumerate(lam) if x - i > 0)


def sigma(alpha):
    """Sign with p_alpha = sigma * p_{alpha^t} on the Lagrangian locus.

    With eps the absolute values of the negative entries and phi the positive
    entries (complements taken in 1..n),
    sigma = sgn(eps^c, eps) * sgn(phi, phi^c).
    """
    n = alpha.n
    eps = sorted(-x for x in alpha.negatives())
    phi = sorted(alpha.positives())
    ec = [i for i in range(1, n + 1) if i not in eps]
    pc = [i for i in range(1, n + 1) if i not in phi]
    return perm_sign(ec + eps) * perm_sign(phi + pc)


def sigma_literal(alpha):
    """sgn(alpha_+^c, alpha_+) * sgn(alpha_-, alpha_-^c) read verbatim.

    Differs from sigma by (-1)^(k(n-k)), k the number of positive entries, and
    does not satisfy the involution identity when k(n-k) is odd.
    """
    n = alpha.n
    pos = set(alpha.positives())
    neg = set(alpha.negatives())
    pc = [i for i in range(1, n + 1) if i not in pos]
    nc = [-i for i in range(n, 0, -1) if -i not in neg]
    return perm_sign(pc + sorted(pos)) * perm_sign(sorted(neg) + nc)


def meet(alpha, beta):
    return SignedSequence(tuple(min(a, b) for a, b in zip(alpha, beta)))


def join(alpha, beta):
    return SignedSequence(tuple(max(a, b) for a, b in zip(alpha, beta)))


def bruhat_leq(alpha, beta):
    return all(a <= b for a, b in zip(alpha, beta))


def pi(alpha):
    """alpha -> (alpha meet alpha^t, alpha join alpha^t)."""
    t = alpha.transpose()
    return meet(alpha, t), join(alpha, t)


def all_sequences(n):
    for c in combinations(alphabet(n), n):
        yield SignedSequence(c)


def admissible_sequences(n):
    """All 2^n admissible sequences, one for each set of positive entries."""
    out = []
    for k in range(n + 1):
        for pos in combinations(range(1, n + 1), k):
            neg = [-i for i in range(1, n + 1) if i not in pos]
            out.append(SignedSequence(tuple(sorted(neg + list(pos)))))
    return sorted(out)


def _components(cells):
    cells = set(cells)
    comps = []
    while cells:
        start = cells.pop()
        comp = {start}
        stack = [start]
        while stack:
            r, c = stack.pop()
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in cells:
                    cells.remove(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(frozenset(comp))
    return sorted(comps, key=sorted)


def fiber_components(lo, hi):
    """Edge-connected components of the part of hi minus lo strictly above the diagonal."""
    _check_pair(lo, hi)
    diff = hi.boxes() - lo.boxes()
    return _components([(r, c) for (r, c) in diff if c > r])


def _check_pair(lo, hi):
    if lo.n != hi.n:
        raise DomainError("sequences of different length")
    if not (lo.is_admissible() and hi.is_admissible()):
        raise DomainError(f"({lo}, {hi}) is not a pair of admissible sequences")
    if not bruhat_leq(lo, hi):
        raise DomainError(f"{lo} is not below {hi}")
    if lo.durfee() != hi.durfee():
        raise DomainError(f"({lo}, {hi}) have different Durfee squares")


def fiber(lo, hi):
    """All alpha with pi(alpha) = (lo, hi); there are 2^k of them, k = #components."""
    comps = fiber_components(lo, hi)
    base = lo.boxes()
    n = lo.n
    out = []
    for mask in range(1 << len(comps)):
        B = set(base)
        for i, S in enumerate(comps):
            B |= S if mask >> i & 1 else {(c, r) for (r, c) in S}
        gamma = partition_to_sequence(boxes_to_partition(B), n)
        if pi(gamma) != (lo, hi):
            raise DomainError(f"({lo}, {hi}) is not in the image of pi")
        out.append(gamma)
    return sorted(out)


def northeast_representative(lo, hi):
    """The unique Northeast element of the fiber over (lo, hi)."""
    comps = fiber_components(lo, hi)
    B = set(lo.boxes())
    for S in comps:
        B |= S
    return partition_to_sequence(boxes_to_partition(B), lo.n)
