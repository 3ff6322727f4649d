"""Quadratic relations of the Drinfeld Lagrangian Grassmannian and its straightening law.

Pipeline:
  1. ideal_quadrics: degree-2 relations among the coordinates p_alpha^{(a)} of the
     quasimap space of Gr(n, 2n), found as the kernel of evaluation at random
     polynomial matrices.  The kernel is graded by (column multiset, total level),
     so each graded block is solved separately.
  2. substitute the Northeast normal form, which kills the linear forms L_{d,n}
     and leaves one variable per admissible pair.
  3. row reduce with non-standard monomials as pivots to get one rewriting rule
     for each non-standard monomial, then check the ASL axioms.
"""
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import lcm
import json
import random

from .combinatorics import SignedSequence, DomainError, alphabet, northeast_representative
from .poset import build_doset, ResourceLimitError, DEFAULT_MAX_ELEMENTS
from .exterior import northeast_normal_form, weight_of
from . import linalg

MAX_VARIABLES = 160


def row_degrees(d, n):
    """k_i = l+1 for the first q rows and l for the rest, where d = l*n + q."""
    l, q = divmod(d, n)
    return [l + 1 if i < q else l for i in range(n)]


def plucker_variables(d, n):
    return [(c, a) for a in range(d + 1) for c in combinations(alphabet(n), n)]


def _interpolate_int(ts, ys, deg):
    c = linalg.solve_vandermonde(ts, ys)
    if any(x != 0 for x in c[deg + 1:]):
        raise AssertionError("minor has degree above d")
    return c[:deg + 1]


class PolyMatrix:
    """n x 2n matrix of polynomials in t; row i has degree row_degrees(d, n)[i].

    coeffs[i][j] lists the coefficients of entry (i, j) from t^0 upward.  Columns
    follow the alphabet order -n, ..., -1, 1, ..., n.
    """

    def __init__(self, n, d, coeffs):
        self.n, self.d = n, d
        self.coeffs = coeffs

    @classmethod
    def random(cls, n, d, rng, bound=9):
        ks = row_degrees(d, n)
        return cls(n, d, [[[rng.randint(-bound, bound) for _ in range(k + 1)]
                           for _ in range(2 * n)] for k in ks])

    def at(self, t):
        return [[sum(c * t ** e for e, c in enumerate(entry)) for entry in row]
                for row in self.coeffs]

    def plucker(self):
        """{(alpha, a): coefficient of t^a in the alpha-th maximal minor}."""
        n, d = self.n, self.d
        ts = list(range(d + 1))
        mats = [self.at(t) for t in ts]
        cols = {x: j for j, x in enumerate(alphabet(n))}
        out = {}
        for S in combinations(alphabet(n), n):
            idx = [cols[x] for x in S]
            ys = [linalg.det([[M[r][j] for j in idx] for r in range(n)]) for M in mats]
            for a, c in enumerate(_interpolate_int(ts, ys, d)):
                out[(S, a)] = c
        return out


def phi_image(d, n, monomial):
    """Symbolic image of a product of coordinates: coefficient of t^a in the minors
    of the generic polynomial matrix, multiplied out with sympy."""
    import sympy
    t = sympy.Symbol("t")
    ks = row_degrees(d, n)
    X = sympy.Matrix(n, 2 * n, lambda i, j: sum(
        sympy.Symbol(f"x_{i}_{j}_{k}") * t ** k for k in range(ks[i] + 1)))
    cols = {x: j for j, x in enumerate(alphabet(n))}
    out = sympy.Integer(1)
    for S, a in monomial:
        minor = X.extract(list(range(n)), [cols[x] for x in S]).det(method="berkowitz")
        out *= sympy.expand(minor).coeff(t, a)
    return sympy.expand(out)


def _blocks(monomials, key):
    blocks = {}
    for m in monomials:
        blocks.setdefault(key(m), []).append(m)
    return blocks


def _pvar_grade(m):
    (c1, a1), (c2, a2) = m
    return (tuple(sorted(c1 + c2)), a1 + a2)


class QuadraticRelation:
    """sum of coeff * x * y over pairs of variables; terms {(x, y): Fraction}."""

    def __init__(self, terms, lead=None):
        self.terms = {k: Fraction(v) for k, v in terms.items() if v}
        self.lead = lead

    def evaluate(self, value):
        return sum((c * value(x) * value(y) for (x, y), c in self.terms.items()), Fraction(0))

    def __repr__(self):
        return f"QuadraticRelation({len(self.terms)} terms, lead={self.lead})"


def ideal_quadrics(d, n, seed=0, max_variables=MAX_VARIABLES):
    """Basis of the degree-2 part of the kernel of phi (exact rational vectors)."""
    V = plucker_variables(d, n)
    if len(V) > max_variables:
        raise ResourceLimitError(f"{len(V)} Plucker variables exceed the cap {max_variables}")
    mons = list(combinations_with_replacement(V, 2))
    blocks = _blocks(mons, _pvar_grade)
    N = max(len(b) for b in blocks.values()) + 8

    def batch(s):
        rng = random.Random(s)
        return [PolyMatrix.random(n, d, rng).plucker() for _ in range(N)]

    pts, wit = batch(seed), batch(seed + 7919)
    rels = []
    for key in sorted(blocks):
        B = blocks[key]
        rows = [[p[x] * p[y] for x, y in B] for p in pts]
        ker = linalg.nullspace(rows, len(B))
        wrows = [[p[x] * p[y] for x, y in B] for p in wit]
        if len(B) - linalg.rank(wrows) != len(ker):
            raise RuntimeError(f"rank instability between random batches in block {key}")
        for v in ker:
            v = linalg.integer_primitive(v)
            rels.append(QuadraticRelation({m: c for m, c in zip(B, v) if c}))
    return rels


# Lagrangian points

def _sym_random(n, rng, bound):
    Z = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            Z[i][j] = Z[j][i] = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
    return Z


class LagrangianPoint:
    """Degree-d quasimap to LG(n): row space of (I | Z(t) J), Z symmetric,
    Z(t) = Z0 + sum_j w_j w_j^T / (t - c_j), coordinates scaled by prod (t - c_j).

    Columns follow the alphabet order; J reverses the second block, which makes
    the rows isotropic exactly when Z is symmetric.
    """

    def __init__(self, n, d, Z0, poles):
        self.n, self.d = n, d
        self.Z0 = [[Fraction(x) for x in r] for r in Z0]
        self.poles = [(Fraction(c), [Fraction(x) for x in w]) for c, w in poles]
        if len(self.poles) > d:
            raise DomainError("more poles than the degree allows")
        self._values = None

    def matrix(self, t):
        n = self.n
        Z = [[self.Z0[i][j] for j in range(n)] for i in range(n)]
        for c, w in self.poles:
            for i in range(n):
                for j in range(n):
                    Z[i][j] += w[i] * w[j] / (t - c)
        Y = [[Fraction(int(i == j)) for j in range(n)] + [Z[i][n - 1 - k] for k in range(n)]
             for i in range(n)]
        return Y

    def values(self):
        """{(alpha, a): exact coefficient of t^a}."""
        if self._values is not None:
            return self._values
        n, d = self.n, self.d
        bad = {c for c, _ in self.poles}
        ts = []
        t = Fraction(0)
        while len(ts) < d + 2:
            if t not in bad:
                ts.append(t)
            t += 1
        cols = {x: j for j, x in enumerate(alphabet(n))}
        mats = [self.matrix(t) for t in ts]
        scale = []
        for t in ts:
            s = Fraction(1)
            for c, _ in self.poles:
                s *= t - c
            scale.append(s)
        out = {}
        for S in combinations(alphabet(n), n):
            idx = [cols[x] for x in S]
            ys = [scale[k] * linalg.det([[M[r][j] for j in idx] for r in range(n)])
                  for k, M in enumerate(mats)]
            co = linalg.solve_vandermonde(ts, ys)
            if co[d + 1] != 0:
                raise AssertionError("Lagrangian point has degree above d")
            for a in range(d + 1):
                out[(S, a)] = co[a]
        self._values = out
        return out

    def isotropy_defect(self, t):
        """Y Omega Y^T at t; zero for an isotropic plane."""
        Y = self.matrix(t)
        n = self.n
        al = alphabet(n)
        cols = {x: j for j, x in enumerate(al)}

        def om(u, v):
            return sum(u[cols[-i]] * v[cols[i]] - u[cols[i]] * v[cols[-i]] for i in range(1, n + 1))

        return [[om(Y[r], Y[s]) for s in range(n)] for r in range(n)]


def lagrangian_point(n, d, seed=0, Z0=None, poles=None, bound=5):
    rng = random.Random(seed)
    if Z0 is None:
        Z0 = _sym_random(n, rng, bound)
    if poles is None:
        cs = rng.sample(range(-40, 41), d)
        poles = [(c, [rng.randint(-bound, bound) for _ in range(n)]) for c in cs]
    return LagrangianPoint(n, d, Z0, poles)


# doset variables and term order

class TermOrder:
    """Variables (admissible pairs) ordered lexicographically by (lower, upper)
    in a linear extension of P_{d,n}; monomials compared by degree reverse lex."""

    def __init__(self, ds):
        self.ds = ds
        h = _heights(ds)
        order = sorted(range(len(ds)), key=lambda i: (
            h[i], tuple(x for x in ds.elements[i].seq if x > 0), ds.elements[i].level,
            ds.elements[i].seq.entries))
        self.ext = {i: k for k, i in enumerate(order)}

    def var_key(self, e):
        return (self.ext[e[0]], self.ext[e[1]])

    def sort_monomial(self, m):
        return tuple(sorted(m, key=self.var_key))

    def greater(self, m1, m2):
        """Degree reverse lexicographic comparison m1 > m2."""
        if len(m1) != len(m2):
            return len(m1) > len(m2)
        e1, e2 = {}, {}
        for v in m1:
            e1[v] = e1.get(v, 0) + 1
        for v in m2:
            e2[v] = e2.get(v, 0) + 1
        for v in sorted(set(e1) | set(e2), key=self.var_key):
            if e1.get(v, 0) != e2.get(v, 0):
                return e1.get(v, 0) < e2.get(v, 0)
        return False

    def word(self, m):
        """Endpoint word of a monomial: factors sorted, (lower, upper) concatenated."""
        out = []
        for e in self.sort_monomial(m):
            out += [e[0], e[1]]
        return out


def _heights(ds):
    N = len(ds)
    h = [0] * N
    for i in sorted(range(N), key=lambda i: sum(ds.order[j][i] for j in range(N))):
        for j in ds._up[i]:
            h[j] = max(h[j], h[i] + 1)
    return h


def is_standard(ds, m):
    for i in range(len(m)):
        for j in range(i + 1, len(m)):
            e, f = m[i], m[j]
            if e == f:
                if e[0] != e[1]:
                    return False
            elif not (ds.doset_lt(e, f) or ds.doset_lt(f, e)):
                return False
    return True


class StraighteningLaw:
    """Degree-2 straightening law of D_{d,n} computed from the quasimap ideal."""

    def __init__(self, d, n, seed=0, max_elements=DEFAULT_MAX_ELEMENTS,
                 max_variables=MAX_VARIABLES):
        self.d, self.n, self.seed = d, n, seed
        self.ds = ds = build_doset(d, n, max_elements)
        self.order = TermOrder(ds)
        self.doset_vars = ds.doset_elements()
        self.rep = {}
        self.var_of = {}
        for e in self.doset_vars:
            lo, hi = ds.elements[e[0]], ds.elements[e[1]]
            r = (tuple(northeast_representative(lo.seq, hi.seq).entries), lo.level)
            self.rep[e] = r
            self.var_of[r] = e
        self.nf = northeast_normal_form(d, n)
        self.quadrics = ideal_quadrics(d, n, seed, max_variables)
        mons = [self.order.sort_monomial(m)
                for m in combinations_with_replacement(self.doset_vars, 2)]
        self.monomials = sorted(set(mons), key=self._mon_key)
        self.standard = [m for m in self.monomials if is_standard(ds, m)]
        self.nonstandard = [m for m in self.monomials if not is_standard(ds, m)]
        self._reduce()

    def _mon_key(self, m):
        return tuple(self.order.var_key(v) for v in m)

    def _substitute(self, q):
        out = {}
        for (x, y), c in q.terms.items():
            for bx, cx in self.nf[x].items():
                for by, cy in self.nf[y].items():
                    m = self.order.sort_monomial((self.var_of[bx], self.var_of[by]))
                    out[m] = out.get(m, 0) + c * cx * cy
        return {m: v for m, v in out.items() if v}

    def _reduce(self):
        # pivot columns: non-standard monomials, largest in the term order first
        desc = _sort_desc(self.nonstandard, self.order) + _sort_desc(self.standard, self.order)
        idx = {m: j for j, m in enumerate(desc)}
        rows = []
        for q in self.quadrics:
            s = self._substitute(q)
            if s:
                r = [0] * len(desc)
                for m, v in s.items():
                    r[idx[m]] = v
                rows.append(r)
        R, piv = linalg.rref(rows, len(desc)) if rows else ([], [])
        self.relation_rank = len(piv)
        self.pivot_monomials = [desc[p] for p in piv]
        self.rules = {}
        self.stray = []
        ns = set(self.nonstandard)
        for row, p in zip(R, piv):
            m = desc[p]
            rest = {desc[j]: -row[j] for j in range(len(desc)) if j != p and row[j] != 0}
            if m in ns and all(k not in ns for k in rest):
                self.rules[m] = rest
            else:
                self.stray.append((m, rest))

    def relations(self):
        out = []
        for m in self.nonstandard:
            if m in self.rules:
                terms = {m: Fraction(1)}
                for s, c in self.rules[m].items():
                    terms[s] = terms.get(s, 0) - c
                out.append(QuadraticRelation(terms, lead=m))
        return out

    def label(self, e):
        lo, hi = self.ds.elements[e[0]], self.ds.elements[e[1]]
        if e[0] == e[1]:
            return f"p[{lo.seq}]^({lo.level})"
        return f"p[{lo.seq},{hi.seq}]^({lo.level})"

    def var_json(self, e):
        lo, hi = self.ds.elements[e[0]], self.ds.elements[e[1]]
        return [list(lo.seq.entries), list(hi.seq.entries), lo.level]

    def value_at(self, point):
        vals = point.values()
        return lambda e: vals[self.rep[e]]

    def to_json(self):
        out = []
        for r in self.relations():
            out.append({"lead": [self.var_json(v) for v in r.lead],
                        "terms": [[str(c), self.var_json(x), self.var_json(y)]
                                  for (x, y), c in sorted(r.terms.items(), key=lambda kv: self._mon_key(kv[0]))]})
        return json.dumps(out, sort_keys=True)

    def table(self):
        lines = []
        for m in _sort_desc(self.nonstandard, self.order):
            if m not in self.rules:
                lines.append(f"{self._mlabel(m)} = ?")
                continue
            rhs = " ".join(f"{'-' if c < 0 else '+'} {'' if abs(c) == 1 else str(abs(c)) + '*'}{self._mlabel(s)}"
                           for s, c in sorted(self.rules[m].items(), key=lambda kv: self._mon_key(kv[0]), reverse=True))
            lines.append(f"{self._mlabel(m)} = {rhs.lstrip('+ ') if rhs else '0'}")
        return "\n".join(lines)

    def _mlabel(self, m):
        return "*".join(self.label(v) for v in m)

    # rewriting

    def straighten(self, monomial, max_steps=10000):
        """Rewrite a product of doset variables as a combination of standard monomials."""
        poly = {self._sort_any(monomial): Fraction(1)}
        steps = 0
        while True:
            bad = next((m for m in poly if not is_standard(self.ds, m)), None)
            if bad is None:
                return poly
            steps += 1
            if steps > max_steps:
                raise RuntimeError("straightening did not terminate")
            c = poly.pop(bad)
            pair, rest = self._nonstandard_pair(bad)
            for s, cs in self.rules[pair].items():
                m = self._sort_any(rest + s)
                poly[m] = poly.get(m, 0) + c * cs
                if poly[m] == 0:
                    del poly[m]

    def _sort_any(self, m):
        return tuple(sorted(m, key=self.order.var_key))

    def _nonstandard_pair(self, m):
        for i in range(len(m)):
            for j in range(i + 1, len(m)):
                pair = self.order.sort_monomial((m[i], m[j]))
                if not is_standard(self.ds, pair):
                    rest = m[:i] + m[i + 1:j] + m[j + 1:]
                    return pair, rest
        raise AssertionError("monomial is standard")


def _sort_desc(mons, order):
    import functools

    def cmp(a, b):
        if order.greater(a, b):
            return -1
        if order.greater(b, a):
            return 1
        return 0

    return sorted(mons, key=functools.cmp_to_key(cmp))


def straightening_relations(d, n, seed=0):
    return StraighteningLaw(d, n, seed).relations()


def _lex_less(w1, w2, lt):
    for a, b in zip(w1, w2):
        if a != b:
            return lt(a, b)
    return False


def verify_asl(d, n, seed=0, npoints=20, law=None):
    """Check the ASL axioms in degree 2.  Returns a dict with a 'passed' flag."""
    from .hilbert import chain_count_matrix, hilbert_polynomial
    L = law or StraighteningLaw(d, n, seed)
    ds = L.ds
    rep = {"d": d, "n": n, "standard": len(L.standard), "nonstandard": len(L.nonstandard),
           "relation_rank": L.relation_rank, "failures": []}
    missing = [m for m in L.nonstandard if m not in L.rules]
    rep["basis"] = not missing and not L.stray and L.relation_rank == len(L.nonstandard)
    for m in missing:
        rep["failures"].append(f"no rewriting rule for {L._mlabel(m)}")
    for m, _ in L.stray:
        rep["failures"].append(f"relation led by standard monomial {L._mlabel(m)}")

    ext = L.order.ext
    poset_lt = lambda a, b: ds.lt(a, b)
    ext_lt = lambda a, b: ext[a] < ext[b]
    lex_poset, lex_ext, lead_ok, cond4, cond4_cases = True, True, True, True, 0
    for m, rhs in L.rules.items():
        w = L.order.word(m)
        for s in rhs:
            ws = L.order.word(s)
            if not _lex_less(ws, w, poset_lt):
                lex_poset = False
            if not _lex_less(ws, w, ext_lt):
                lex_ext = False
                rep["failures"].append(f"lex condition fails: {L._mlabel(s)} in {L._mlabel(m)}")
            if not L.order.greater(m, s):
                lead_ok = False
        ends = sorted([m[0][0], m[0][1], m[1][0], m[1][1]], key=lambda i: ext[i])
        if all(ds.order[ends[k]][ends[k + 1]] for k in range(3)):
            cond4_cases += 1
            e, f = (ends[0], ends[1]), (ends[2], ends[3])
            if not all(x[0] == x[1] or x in ds.pairs for x in (e, f)):
                cond4 = False
                rep["failures"].append(f"sorted endpoints of {L._mlabel(m)} are not doset elements")
                continue
            target = L.order.sort_monomial((e, f))
            if abs(rhs.get(target, 0)) != 1:
                cond4 = False
                rep["failures"].append(
                    f"{L._mlabel(m)}: coefficient of {L._mlabel(target)} is {rhs.get(target, 0)}")
    rep["lex_condition"] = lex_ext
    rep["lex_condition_poset_order"] = lex_poset
    rep["leading_nonstandard"] = lead_ok
    rep["two_term_condition"] = cond4
    rep["two_term_cases"] = cond4_cases

    vanish = True
    rels = L.relations()
    for k in range(npoints):
        val = L.value_at(lagrangian_point(n, d, seed=seed * 1000 + k))
        for r in rels:
            if r.evaluate(val) != 0:
                vanish = False
                rep["failures"].append(f"relation led by {L._mlabel(r.lead)} is nonzero at point {k}")
                break
    rep["vanishing"] = vanish

    c = chain_count_matrix(ds)
    hp2 = hilbert_polynomial(c)(2)
    rep["hilbert_2"] = str(hp2)
    rep["hilbert_match"] = hp2 == len(L.standard)
    if not rep["hilbert_match"]:
        rep["failures"].append(f"HP(2) = {hp2} but there are {len(L.standard)} standard monomials")
    rep["passed"] = all(rep[k] for k in ("basis", "lex_condition", "two_term_condition",
                                         "vanishing", "hilbert_match"))
    return rep


def standard_rank_at_points(law, npoints=None, seed=0):
    """Rank of the evaluation of standard degree-2 monomials at Lagrangian points.

    Equal to the number of standard monomials iff they are independent on LQ_d(n).
    """
    mons = law.standard
    N = npoints or len(mons) + 8
    rows = []
    for k in range(N):
        val = law.value_at(lagrangian_point(law.n, law.d, seed=seed + 5000 + k))
        r = [val(x) * val(y) for x, y in mons]
        den = 1
        for x in r:
            den = lcm(den, Fraction(x).denominator)
        rows.append([int(x * den) for x in r])
    return linalg.rank(rows)
