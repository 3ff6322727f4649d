"""The poset P_{d,n} of admissible levelled sequences and the doset D_{d,n}.

Elements are alpha^{(a)} with alpha admissible and 0 <= a <= d.  The order is
alpha^{(a)} <= beta^{(b)} iff a <= b and alpha_i <= beta_{b-a+i}.

For lattice operations each element is sent to an increasing integer vector
E with E_i = pos(alpha_{i+a}), positions taken in 1..2n and extended
periodically by alpha_{i+n} = alpha_i + 2n.  Componentwise comparison of these
vectors is exactly the order above, so meet and join are componentwise min and
max.  Row i of the associated box set has E_i - i boxes.
"""
from collections import deque
from dataclasses import dataclass
import json

from .combinatorics import (
    SignedSequence, DomainError, admissible_sequences, position, letter,
    partition_boxes, boxes_to_partition, partition_to_sequence,
)

SAME_LEVEL_DOSET = 1
SAME_LEVEL_PLAIN = 2
LEVEL_JUMP = 3


class ResourceLimitError(RuntimeError):
    pass


DEFAULT_MAX_ELEMENTS = 4096


@dataclass(frozen=True, order=True)
class PosetElement:
    level: int
    seq: SignedSequence

    def __post_init__(self):
        if not isinstance(self.seq, SignedSequence):
            object.__setattr__(self, "seq", SignedSequence(tuple(self.seq)))
        if self.level < 0:
            raise DomainError("negative level")

    @property
    def n(self):
        return self.seq.n

    def __str__(self):
        return f"{self.seq}^({self.level})"

    def sort_key(self):
        return (self.level, self.seq.entries)


def leq(x, y):
    if x.n != y.n:
        raise DomainError("elements from different contexts")
    a, b = x.level, y.level
    if a > b:
        return False
    c = b - a
    n = x.n
    return all(x.seq[i] <= y.seq[i + c] for i in range(n - c))


def embed(x):
    """Increasing integer vector representing x (see module docstring)."""
    n = x.n
    p = [position(v, x.n) + 1 for v in x.seq]
    return tuple(p[(i + x.level) % n] + 2 * n * ((i + x.level) // n) for i in range(n))


def unembed(E, n):
    m = 2 * n
    level = sum((e - 1) // m for e in E)
    ent = sorted(letter((e - 1) % m, n) for e in E)
    return PosetElement(level, SignedSequence(tuple(ent)))


def box_set(x):
    """Box set of x: row i (1-based) holds E_i - i boxes.  Inclusion is the order."""
    E = embed(x)
    return frozenset((i, c) for i, e in enumerate(E, 1) for c in range(1, e - i + 1))


def from_box_set(B, n):
    rows = [0] * n
    for i, c in B:
        rows[i - 1] = max(rows[i - 1], c)
    return unembed(tuple(r + i for i, r in enumerate(rows, 1)), n)


def meet(x, y):
    return from_box_set(box_set(x) & box_set(y), x.n)


def join(x, y):
    return from_box_set(box_set(x) | box_set(y), x.n)


def _same_level_covers(seq):
    """Covers of a symmetric partition: add a diagonal box or a mirrored pair."""
    n = seq.n
    lam = seq.partition()
    B = partition_boxes(lam)
    rows = list(lam) + [0] * (n - len(lam))
    out = []
    for r in range(1, n + 1):
        c = rows[r - 1] + 1
        if c > n or c < r:
            continue
        new = set(B) | {(r, c), (c, r)}
        try:
            mu = boxes_to_partition(new)
        except DomainError:
            continue
        kind = SAME_LEVEL_PLAIN if r == c else SAME_LEVEL_DOSET
        out.append((partition_to_sequence(mu, n), kind))
    return out


def hook_jump(seq):
    """alpha with n replaced by -n, or None.  This is the level-raising cover."""
    n = seq.n
    if n not in seq.entries:
        return None
    return SignedSequence(tuple(sorted([-n] + [v for v in seq.entries if v != n])))


def covers(x, d=None):
    """All (y, type) with x covered by y in P_{d,n}; d=None means no level cap."""
    out = [(PosetElement(x.level, s), k) for s, k in _same_level_covers(x.seq)]
    h = hook_jump(x.seq)
    if h is not None and (d is None or x.level < d):
        out.append((PosetElement(x.level + 1, h), LEVEL_JUMP))
    return sorted(out, key=lambda t: t[0].sort_key())


def poset_elements(d, n, max_elements=DEFAULT_MAX_ELEMENTS):
    size = (d + 1) * (1 << n)
    if size > max_elements:
        raise ResourceLimitError(f"P_{{{d},{n}}} has {size} elements, cap is {max_elements}")
    adm = admissible_sequences(n)
    return sorted((PosetElement(a, s) for a in range(d + 1) for s in adm),
                  key=PosetElement.sort_key)


class Doset:
    """A finite poset with a doset of off-diagonal pairs.

    elements: hashable labels; order[i][j] true iff elements[i] <= elements[j];
    pairs: set of index pairs (i, j), i != j, i < j in the order.
    """

    def __init__(self, elements, order, pairs, name=None):
        self.elements = list(elements)
        self.order = [list(r) for r in order]
        self.pairs = frozenset(pairs)
        self.name = name
        self.index = {e: i for i, e in enumerate(self.elements)}
        N = len(self.elements)
        for i, j in self.pairs:
            if i == j or not self.order[i][j]:
                raise DomainError("doset pair is not a strict order relation")
        self._up = [[j for j in range(N) if j != i and self.order[i][j]] for i in range(N)]

    def __len__(self):
        return len(self.elements)

    def lt(self, i, j):
        return i != j and self.order[i][j]

    def poset_covers(self):
        N = len(self)
        out = []
        for i in range(N):
            ups = self._up[i]
            for j in ups:
                if not any(self.order[k][j] for k in ups if k != j):
                    out.append((i, j))
        return out

    def doset_elements(self):
        """Diagonal elements as (i, i) then the off-diagonal pairs, in a fixed order."""
        return [(i, i) for i in range(len(self))] + sorted(self.pairs)

    def doset_lt(self, e, f):
        return e != f and self.order[e[1]][f[0]]

    def poset_rank(self):
        return _chain_profile(len(self), self.poset_covers(), set())[0]

    def doset_rank(self):
        """P + K, where every maximal chain of the poset has exactly K doset covers.

        This is the length of the longest chain in the doset, and the quantity the
        degree formula needs.  Maximal chains of the doset order itself need not all
        have this length (see doset_chain_lengths).
        """
        P, K = _chain_profile(len(self), self.poset_covers(), self.pairs)
        return P + K

    def doset_chain_lengths(self):
        """Set of lengths of all maximal chains for the doset order."""
        els = self.doset_elements()
        N = len(els)
        up = [[j for j in range(N) if self.doset_lt(els[i], els[j])] for i in range(N)]
        cov = [[j for j in up[i] if not any(self.doset_lt(els[k], els[j]) for k in up[i])]
               for i in range(N)]
        cover_list = [(i, j) for i in range(N) for j in cov[i]]
        return _all_lengths(N, cover_list)

    def restrict(self, keep, name=None):
        keep = sorted(keep)
        pos = {i: k for k, i in enumerate(keep)}
        order = [[self.order[i][j] for j in keep] for i in keep]
        pairs = {(pos[i], pos[j]) for i, j in self.pairs if i in pos and j in pos}
        return Doset([self.elements[i] for i in keep], order, pairs, name=name)

    def minimum(self):
        m = [i for i in range(len(self)) if all(self.order[i][j] for j in range(len(self)))]
        return m[0] if m else None

    def maximum(self):
        m = [j for j in range(len(self)) if all(self.order[i][j] for i in range(len(self)))]
        return m[0] if m else None


def _all_lengths(N, cover_list):
    """Lengths of saturated chains from minimal to maximal elements of a finite poset."""
    up = [[] for _ in range(N)]
    indeg = [0] * N
    for i, j in cover_list:
        up[i].append(j)
        indeg[j] += 1
    lengths = [set() for _ in range(N)]
    q = deque(i for i in range(N) if indeg[i] == 0)
    for i in q:
        lengths[i].add(0)
    while q:
        i = q.popleft()
        for j in up[i]:
            lengths[j] |= {x + 1 for x in lengths[i]}
            indeg[j] -= 1
            if indeg[j] == 0:
                q.append(j)
    out = set()
    for i in range(N):
        if not up[i]:
            out |= lengths[i]
    return out


def _chain_profile(N, cover_list, marked):
    """(length, number of marked covers) shared by all maximal chains.

    Raises DomainError if two maximal chains disagree in either number.
    """
    up = [[] for _ in range(N)]
    indeg = [0] * N
    for i, j in cover_list:
        up[i].append(j)
        indeg[j] += 1
    prof = [set() for _ in range(N)]
    q = deque(i for i in range(N) if indeg[i] == 0)
    for i in q:
        prof[i].add((0, 0))
    while q:
        i = q.popleft()
        for j in up[i]:
            m = int((i, j) in marked)
            prof[j] |= {(a + 1, b + m) for a, b in prof[i]}
            indeg[j] -= 1
            if indeg[j] == 0:
                q.append(j)
    tops = set()
    for i in range(N):
        if not up[i]:
            tops |= prof[i]
    if len(tops) != 1:
        raise DomainError(f"not ranked: maximal chains have (length, doset covers) {sorted(tops)}")
    return tops.pop()


class DosetStructure(Doset):
    """D_{d,n} together with its classified covers."""

    def __init__(self, d, n, elements, cover_list):
        self.d, self.n = d, n
        N = len(elements)
        index = {e: i for i, e in enumerate(elements)}
        self.covers = sorted(cover_list)
        self.cover_type = {(i, j): t for i, j, t in self.covers}
        order = [[leq(x, y) for y in elements] for x in elements]
        # pairs: reachable by type-1 covers
        nxt = [[] for _ in range(N)]
        for i, j, t in self.covers:
            if t == SAME_LEVEL_DOSET:
                nxt[i].append(j)
        pairs = set()
        for i in range(N):
            seen = {i}
            stack = [i]
            while stack:
                k = stack.pop()
                for j in nxt[k]:
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
                        pairs.add((i, j))
        super().__init__(elements, order, pairs, name=f"D_{{{d},{n}}}")
        self.index = index

    def element(self, seq, level=0):
        if not isinstance(seq, SignedSequence):
            seq = SignedSequence.parse(seq) if isinstance(seq, str) else SignedSequence(seq)
        return self.index[PosetElement(level, seq)]

    def is_admissible_pair(self, i, j):
        return i == j or (i, j) in self.pairs

    def to_json(self):
        return {
            "d": self.d, "n": self.n,
            "elements": [[list(e.seq.entries), e.level] for e in self.elements],
            "covers": [list(c) for c in self.covers],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        els = [PosetElement(lv, SignedSequence(tuple(s))) for s, lv in data["elements"]]
        return cls(data["d"], data["n"], els, [tuple(c) for c in data["covers"]])


def is_admissible_pair(x, y):
    """Durfee criterion: same level, x <= y and the same number of negative entries."""
    return x.level == y.level and leq(x, y) and len(x.seq.negatives()) == len(y.seq.negatives())


def build_doset(d, n, max_elements=DEFAULT_MAX_ELEMENTS, check=True):
    if d < 0 or n < 1:
        raise DomainError("need d >= 0 and n >= 1")
    els = poset_elements(d, n, max_elements)
    index = {e: i for i, e in enumerate(els)}
    cl = []
    for i, x in enumerate(els):
        for y, t in covers(x, d):
            cl.append((i, index[y], t))
    ds = DosetStructure(d, n, els, cl)
    if check:
        ds.poset_rank()
        for i, j in ds.pairs:
            if not is_admissible_pair(els[i], els[j]):
                raise AssertionError(f"type-1 reachability and Durfee criterion disagree at {els[i]}, {els[j]}")
    return ds


def hasse_dot(ds):
    """Deterministic DOT; doset covers drawn as double lines."""
    els = ds.elements
    order = sorted(range(len(els)), key=lambda i: _label_key(els[i]))
    rank = {i: k for k, i in enumerate(order)}
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i in order:
        lines.append(f'  n{rank[i]} [label="{_label(els[i])}"];')
    if isinstance(ds, DosetStructure):
        edges = [(i, j, ds.cover_type[(i, j)]) for i, j, _ in ds.covers]
    else:
        edges = [(i, j, SAME_LEVEL_DOSET if (i, j) in ds.pairs else 0)
                 for i, j in ds.poset_covers()]
    for i, j, t in sorted(edges, key=lambda e: (rank[e[0]], rank[e[1]])):
        attr = ' [color="black:invis:black"]' if t == SAME_LEVEL_DOSET else ""
        lines.append(f"  n{rank[i]} -> n{rank[j]}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _label_key(e):
    if isinstance(e, PosetElement):
        return (0, e.level, e.seq.entries)
    return (1, str(e))


def _label(e):
    if isinstance(e, PosetElement):
        s = e.seq.to_text().replace("\\", "\\\\")
        return f"{s}^({e.level})"
    return str(e)
