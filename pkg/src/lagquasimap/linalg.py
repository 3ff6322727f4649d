"""Exact linear algebra over the rationals.

Matrices are lists of rows.  Entries may be ints or Fractions.  The large
evaluation matrices used for relation finding go through a modular fast path
(elimination mod a 61-bit prime, rational reconstruction) whose output is then
checked exactly, so nothing returned here is ever a floating point guess.
"""
from fractions import Fraction
from math import isqrt

PRIME = 2305843009213693951  # 2**61 - 1


def rref(rows, ncols=None, col_order=None):
    """Reduced row echelon form over Q.

    col_order, if given, is the order in which columns are tried as pivots.
    Returns (reduced_rows, pivots) where pivots[i] is the pivot column of row i.
    """
    M = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    order = list(range(ncols)) if col_order is None else list(col_order)
    pivots = []
    r = 0
    for c in order:
        if r == len(M):
            break
        piv = None
        for i in range(r, len(M)):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        row = [x * inv for x in M[r]]
        M[r] = row
        nz = [j for j, x in enumerate(row) if x != 0]
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f != 0:
                    Mi = M[i]
                    for j in nz:
                        Mi[j] -= f * row[j]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows):
    """Exact rank over Q."""
    if not rows:
        return 0
    ncols = len(rows[0])
    return ncols - len(nullspace(rows, ncols))


def _all_int(rows):
    return all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)
               for r in rows for x in r)


def _rref_mod(rows, ncols, p=PRIME, col_order=None):
    M = [[int(x) % p for x in r] for r in rows]
    order = list(range(ncols)) if col_order is None else list(col_order)
    pivots = []
    r = 0
    for c in order:
        if r == len(M):
            break
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        row = [(x * inv) % p for x in M[r]]
        M[r] = row
        nz = [j for j, x in enumerate(row) if x]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                Mi = M[i]
                for j in nz:
                    Mi[j] = (Mi[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_mod(rows, p=PRIME):
    """Rank mod p.  A lower bound for the rank over Q."""
    if not rows:
        return 0
    rows = [[_to_mod(x, p) for x in r] for r in rows]
    return len(_rref_mod(rows, len(rows[0]), p)[1])


def _to_mod(x, p):
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, p - 2, p) % p
    return int(x) % p


def rational_reconstruct(a, p=PRIME):
    """Smallest fraction r/s with r = a*s mod p, or None."""
    bound = isqrt(p // 2)
    r0, r1 = p, a % p
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def _nullspace_from_rref(R, pivots, ncols, zero, one):
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def nullspace(rows, ncols=None):
    """Exact basis of {v : M v = 0} over Q.

    Integer input first goes through elimination mod a large prime.  The lifted
    vectors are accepted only if they are exactly in the kernel; since the rank
    over Q is at least the rank mod p this pins down the rational kernel.
    Otherwise falls back to plain Fraction elimination.
    """
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    if _all_int(rows):
        R, piv = _rref_mod(rows, ncols)
        basis = _nullspace_from_rref(R, piv, ncols, 0, 1)
        lifted = []
        ok = True
        for v in basis:
            w = [rational_reconstruct(x) for x in v]
            if any(x is None for x in w):
                ok = False
                break
            lifted.append(w)
        if ok and all(_in_kernel(rows, w) for w in lifted):
            return lifted
    R, piv = rref(rows, ncols)
    return _nullspace_from_rref(R, piv, ncols, Fraction(0), Fraction(1))


def _in_kernel(rows, v):
    nz = [(j, x) for j, x in enumerate(v) if x != 0]
    return all(sum(r[j] * x for j, x in nz) == 0 for r in rows)


def integer_primitive(v):
    """Scale a rational vector to a primitive integer vector, first nonzero positive."""
    from math import gcd, lcm
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return w
    w = [x // g for x in w]
    lead = next(x for x in w if x)
    return [-x for x in w] if lead < 0 else w


def det(M):
    """Determinant by fraction-free Bareiss elimination (exact)."""
    n = len(M)
    if n == 0:
        return 1
    frac = any(isinstance(x, Fraction) and x.denominator != 1 for r in M for x in r)
    A = [[Fraction(x) if frac else int(x) for x in r] for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num / prev if frac else num // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def solve_vandermonde(xs, ys):
    """Coefficients c (ascending) of the polynomial of degree < len(xs) through (xs, ys)."""
    m = len(xs)
    coeffs = [Fraction(0)] * m
    for i in range(m):
        # basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(m):
            if j == i:
                continue
            nb = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                nb[k + 1] += b
                nb[k] -= b * xs[j]
            basis = nb
            denom *= xs[i] - xs[j]
        f = Fraction(ys[i]) / denom
        for k, b in enumerate(basis):
            coeffs[k] += f * b
    return coeffs
