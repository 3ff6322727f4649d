"""Chains in a ranked doset, the Hilbert polynomial, degree and dimension.

c[u][v] counts chains with u diagonal elements and v off-diagonal pairs, where
a chain is a set of doset elements totally ordered by (a, b) < (c, e) iff b <= c.
The Hilbert polynomial of the associated ASL is
    HP(w) = sum_{u >= 1} sum_v c[u][v] * binom(w - v - 1, u - 1).
"""
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial

from .combinatorics import DomainError
from .poset import Doset, DosetStructure

ENUMERATION_LIMIT = 20


class ChainCountMatrix:
    """c[u][v] for u = 0..P+1, v = 0..D-P."""

    def __init__(self, c, P, D):
        self.c = [list(r) for r in c]
        self.P, self.D = P, D

    def __getitem__(self, u):
        return self.c[u]

    def __eq__(self, other):
        return isinstance(other, ChainCountMatrix) and self.c == other.c

    def by_v(self):
        """Rows indexed by v, columns by u."""
        return [[self.c[u][v] for u in range(self.P + 2)] for v in range(self.D - self.P + 1)]

    def total(self):
        return sum(map(sum, self.c))

    def to_json(self):
        return {"P": self.P, "D": self.D, "c": self.c}

    def __str__(self):
        rows = self.by_v()
        w = max(len(str(x)) for r in rows for x in r)
        return "\n".join(" ".join(str(x).rjust(w) for x in r) for r in rows)


class HilbertPolynomial:
    def __init__(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    def __call__(self, w):
        return sum(a * w ** k for k, a in enumerate(self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, HilbertPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            a = abs(a)
            num = str(a) if a.denominator == 1 else f"({a})"
            if k == 0:
                body = num
            else:
                var = "w" if k == 1 else f"w^{k}"
                body = var if a == 1 else num + var
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _poly_mul(p, q):
    r = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            r[i + j] += a * b
    return r


def binomial_poly(shift, k):
    """Coefficients in w of binom(w - shift, k) as a polynomial."""
    p = [Fraction(1)]
    for i in range(k):
        p = _poly_mul(p, [Fraction(-shift - i), Fraction(1)])
    f = factorial(k)
    return [x / f for x in p]


def _ranks(ds):
    try:
        return ds.poset_rank(), ds.doset_rank()
    except DomainError as exc:
        raise DomainError(f"doset is not ranked: {exc}") from None


def enumerate_chains(ds):
    """All chains as tuples of doset elements (index pairs), in increasing order."""
    els = ds.doset_elements()
    order = _linear_extension(ds, els)
    out = [()]

    def extend(chain, start):
        for k in range(start, len(order)):
            e = order[k]
            if not chain or ds.doset_lt(chain[-1], e):
                c = chain + (e,)
                out.append(c)
                extend(c, k + 1)

    extend((), 0)
    return out


def _linear_extension(ds, els):
    # sort by (lower-rank, upper-rank, diagonal first); consistent with doset order
    depth = _heights(ds)
    return sorted(els, key=lambda e: (depth[e[0]] + depth[e[1]], e[0] != e[1], e))


def _heights(ds):
    N = len(ds)
    h = [0] * N
    changed = True
    while changed:
        changed = False
        for i in range(N):
            for j in ds._up[i]:
                if h[j] < h[i] + 1:
                    h[j] = h[i] + 1
                    changed = True
    return h


def _matrix_from_chains(chains, P, D):
    c = [[0] * (D - P + 1) for _ in range(P + 2)]
    for ch in chains:
        u = sum(1 for a, b in ch if a == b)
        c[u][len(ch) - u] += 1
    return c


def chain_count_dp(ds, P, D):
    els = ds.doset_elements()
    order = _linear_extension(ds, els)
    W = D - P + 1
    U = P + 2
    f = {}
    for e in order:
        diag = e[0] == e[1]
        acc = [[0] * W for _ in range(U)]
        acc[0][0] = 1  # chain consisting of e alone, before the shift
        for g in order:
            if g is e:
                break
            if ds.doset_lt(g, e):
                fg = f[g]
                for u in range(U):
                    for v in range(W):
                        acc[u][v] += fg[u][v]
        sh = [[0] * W for _ in range(U)]
        for u in range(U):
            for v in range(W):
                if acc[u][v]:
                    uu, vv = (u + 1, v) if diag else (u, v + 1)
                    if uu >= U or vv >= W:
                        raise DomainError("chain longer than the doset rank")
                    sh[uu][vv] += acc[u][v]
        f[e] = sh
    c = [[0] * W for _ in range(U)]
    c[0][0] = 1
    for e in order:
        for u in range(U):
            for v in range(W):
                c[u][v] += f[e][u][v]
    return c


def chain_count_matrix(ds, method="auto"):
    P, D = _ranks(ds)
    if method == "enumerate" or (method == "auto" and len(ds) <= ENUMERATION_LIMIT):
        c = _matrix_from_chains(enumerate_chains(ds), P, D)
        if method == "auto":
            c2 = chain_count_dp(ds, P, D)
            if c2 != c:
                raise AssertionError("chain enumeration and DP disagree")
    else:
        c = chain_count_dp(ds, P, D)
    m = ChainCountMatrix(c, P, D)
    top = m.c[P + 1]
    if any(top[v] != comb(D - P, v) * top[0] for v in range(D - P + 1)):
        raise AssertionError(f"top row {top} violates the binomial identity")
    return m


def hilbert_polynomial(c):
    P, D = c.P, c.D
    total = [Fraction(0)]
    for u in range(1, P + 2):
        for v in range(D - P + 1):
            if c[u][v]:
                b = binomial_poly(v + 1, u - 1)
                b = [c[u][v] * x for x in b]
                total = [x + y for x, y in _zip_pad(total, b)]
    return HilbertPolynomial(total)


def _zip_pad(p, q):
    m = max(len(p), len(q))
    return zip(list(p) + [0] * (m - len(p)), list(q) + [0] * (m - len(q)))


def proj_degree(c):
    return 2 ** (c.D - c.P) * c[c.P + 1][0]


def proj_dimension(c):
    return c.P


def schubert_subdoset(ds, x, dual=False):
    """Restriction to elements below x (or above x when dual)."""
    if dual:
        keep = [j for j in range(len(ds)) if ds.order[x][j]]
    else:
        keep = [j for j in range(len(ds)) if ds.order[j][x]]
    label = ds.elements[x]
    return ds.restrict(keep, name=f"{'dual ' if dual else ''}Schubert({label})")


def weighted_maximal_chain_count(ds, x):
    """Saturated chains from x to the top, each weighted by 2^(number of doset covers)."""
    top = ds.maximum()
    if top is None:
        raise DomainError("poset has no maximum")
    if isinstance(ds, DosetStructure):
        cov = [(i, j) for i, j, _ in ds.covers]
    else:
        cov = ds.poset_covers()
    up = {}
    for i, j in cov:
        up.setdefault(i, []).append(j)
    memo = {top: 1}

    def w(i):
        if i not in memo:
            memo[i] = sum(w(j) * (2 if (i, j) in ds.pairs else 1) for j in up.get(i, ()))
        return memo[i]

    return w(x)


def standard_monomials(ds, w):
    """Brute force: multisets of doset elements of size w whose support is a chain
    and in which no off-diagonal element repeats."""
    els = ds.doset_elements()
    out = []
    for m in combinations_with_replacement(els, w):
        ok = True
        for i in range(len(m)):
            for j in range(i + 1, len(m)):
                e, f = m[i], m[j]
                if e == f:
                    if e[0] != e[1]:
                        ok = False
                        break
                elif not (ds.doset_lt(e, f) or ds.doset_lt(f, e)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(m)
    return out


def _fixture(names, rel, pairs, name):
    N = len(names)
    order = [[i == j or (i, j) in rel for j in range(N)] for i in range(N)]
    return Doset(names, order, pairs, name=name)


def barbell():
    """alpha < beta with the single off-diagonal pair (alpha, beta)."""
    return _fixture(["alpha", "beta"], {(0, 1)}, {(0, 1)}, "barbell")


def diamond():
    """alpha < beta, gamma < delta with pairs (alpha, gamma) and (beta, delta)."""
    rel = {(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)}
    return _fixture(["alpha", "beta", "gamma", "delta"], rel, {(0, 2), (1, 3)}, "diamond")


FIXTURES = {"barbell": barbell, "diamond": diamond}
