"""Command-line interface: `lagquasimap <subcommand> ...`.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
"""
import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .combinatorics import DomainError, ParseError, SignedSequence, parse_entries, partition_to_sequence
from .poset import (DEFAULT_MAX_ELEMENTS, PosetElement, ResourceLimitError, DosetStructure,
                    build_doset, hasse_dot)
from . import hilbert as hb
from . import quantum as qh
from .exterior import northeast_normal_form, normal_form_json
from .straightening import StraighteningLaw, lagrangian_point, verify_asl

CACHE_ENV = "LAGQUASIMAP_CACHE"
EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# cache

def builder_hash():
    h = hashlib.sha256(__version__.encode())
    here = Path(__file__).parent
    for name in ("combinatorics.py", "poset.py", "hilbert.py"):
        h.update((here / name).read_bytes())
    return h.hexdigest()[:16]


class Cache:
    def __init__(self, root):
        self.root = Path(root) if root else None

    def path(self, kind, d, n):
        return self.root / f"{kind}-d{d}-n{n}-{builder_hash()}.json"

    def load(self, kind, d, n):
        if self.root is None:
            return None
        p = self.path(kind, d, n)
        if not p.exists():
            return None
        try:
            return json.loads(p.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None

    def store(self, kind, d, n, data):
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        p = self.path(kind, d, n)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, sort_keys=True), encoding="utf-8")
        tmp.replace(p)


def get_doset(args, d, n):
    data = args.cache.load("doset", d, n)
    if data is not None:
        return DosetStructure.from_json(data)
    ds = build_doset(d, n, args.max_elements)
    args.cache.store("doset", d, n, ds.to_json())
    return ds


# helpers

def _dump(obj):
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _seq(text, n=None):
    s = SignedSequence(parse_entries(text))
    if n is not None and s.n != n:
        raise ParseError(f"{text!r} has length {s.n}, expected {n}")
    return s


def _partition_arg(text, n):
    """A symmetric partition given as a sequence (e.g. \\bar21) or as parts '2,1' / '[]'."""
    t = text.strip()
    if t in ("", "[]", "()", "0"):
        return ()
    if "\\" not in t and "-" not in t and ("," in t or t.startswith("[")):
        parts = json.loads(t) if t.startswith("[") else [int(x) for x in t.split(",")]
        return qh.as_partition(tuple(parts), n)
    return qh.as_partition(_seq(t, n), n)


def _element_label(e):
    return f"{e.seq.to_text()}^({e.level})"


def _write(out, text):
    out.write(text if text.endswith("\n") else text + "\n")


# subcommands

def cmd_poset(args, out):
    ds = get_doset(args, args.d, args.n)
    if args.format == "json":
        data = {"d": args.d, "n": args.n, "rank": ds.poset_rank(),
                "elements": [[list(e.seq.entries), e.level] for e in ds.elements],
                "covers": [list(c) for c in ds.covers]}
        _write(out, _dump(data))
    elif args.format == "dot":
        _write(out, hasse_dot(ds))
    else:
        lines = [f"P_{{{args.d},{args.n}}}: {len(ds)} elements, rank {ds.poset_rank()}"]
        for i, e in enumerate(ds.elements):
            ups = [ds.elements[j] for a, j, _ in ds.covers if a == i]
            lines.append(f"{_element_label(e)} < " + ", ".join(_element_label(u) for u in ups))
        _write(out, "\n".join(lines))
    return EXIT_OK


def cmd_doset(args, out):
    ds = get_doset(args, args.d, args.n)
    pairs = sorted(ds.pairs, key=lambda p: (ds.elements[p[0]].sort_key(), ds.elements[p[1]].sort_key()))
    if args.format == "json":
        data = {"d": args.d, "n": args.n, "poset_rank": ds.poset_rank(), "doset_rank": ds.doset_rank(),
                "diagonal": [[list(e.seq.entries), e.level] for e in ds.elements],
                "pairs": [[list(ds.elements[i].seq.entries), list(ds.elements[j].seq.entries),
                           ds.elements[i].level] for i, j in pairs]}
        _write(out, _dump(data))
    elif args.format == "dot":
        _write(out, hasse_dot(ds))
    else:
        lines = [f"D_{{{args.d},{args.n}}}: {len(ds)} diagonal, {len(pairs)} off-diagonal, "
                 f"poset rank {ds.poset_rank()}, doset rank {ds.doset_rank()}"]
        for i, j in pairs:
            a, b = ds.elements[i], ds.elements[j]
            lines.append(f"({a.seq.to_text()}, {b.seq.to_text()})^({a.level})")
        _write(out, "\n".join(lines))
    return EXIT_OK


def cmd_hasse(args, out):
    ds = get_doset(args, args.d, args.n)
    _write(out, hasse_dot(ds))
    return EXIT_OK


def _target_doset(args):
    name = args.d
    if name in hb.FIXTURES:
        if args.n is not None or args.schubert:
            raise UsageError("fixtures take no n or --schubert")
        return hb.FIXTURES[name](), None
    try:
        d = int(name)
    except ValueError:
        raise UsageError(f"expected d or one of {sorted(hb.FIXTURES)}, got {name!r}")
    if args.n is None:
        raise UsageError("missing n")
    ds = get_doset(args, d, args.n)
    if args.schubert:
        seq_text, level = args.schubert
        x = PosetElement(int(level), _seq(seq_text, args.n))
        if x not in ds.index:
            raise DomainError(f"{_element_label(x)} is not in P_{{{d},{args.n}}}")
        return hb.schubert_subdoset(ds, ds.index[x], dual=args.dual), ds
    if args.dual:
        raise UsageError("--dual needs --schubert")
    return ds, ds


def _chain_data(args):
    sub, _ = _target_doset(args)
    key = None
    if isinstance(sub, DosetStructure):
        key = ("chains", sub.d, sub.n)
        data = args.cache.load(*key)
        if data is not None:
            return sub, hb.ChainCountMatrix(data["c"], data["P"], data["D"])
    c = hb.chain_count_matrix(sub)
    if key:
        args.cache.store(*key, c.to_json())
    return sub, c


def cmd_hilbert(args, out):
    sub, c = _chain_data(args)
    hp = hb.hilbert_polynomial(c)
    if args.format == "json":
        data = {"name": sub.name, "P": c.P, "D": c.D, "c": c.c,
                "hilbert_polynomial": [str(a) for a in hp.coeffs],
                "dimension": hb.proj_dimension(c), "degree": hb.proj_degree(c)}
        _write(out, _dump(data))
    else:
        if args.quiet:
            _write(out, str(hp))
        else:
            _write(out, f"{sub.name}\nchain counts (rows v, columns u):\n{c}\n"
                        f"HP(w) = {hp}\ndimension {hb.proj_dimension(c)}\ndegree {hb.proj_degree(c)}")
    return EXIT_OK


def cmd_degree(args, out):
    sub, c = _chain_data(args)
    deg = hb.proj_degree(c)
    if args.format == "json":
        _write(out, _dump({"name": sub.name, "degree": deg, "dimension": hb.proj_dimension(c)}))
    else:
        _write(out, str(deg))
    return EXIT_OK


def _emit_qh(args, out, x):
    _write(out, x.dumps() if args.format == "json" else str(x))
    return EXIT_OK


def cmd_pieri(args, out):
    return _emit_qh(args, out, qh.classical_pieri(_partition_arg(args.alpha, args.n), args.n))


def cmd_qpieri(args, out):
    if args.a > args.d:
        raise DomainError("level a exceeds d")
    lam = _partition_arg(args.alpha, args.n)
    x = qh.QHElement.schubert(lam, args.n, args.a)
    return _emit_qh(args, out, qh.quantum_pieri(x, args.n, args.d))


def cmd_schubert_degree(args, out):
    lam = _partition_arg(args.alpha, args.n)
    deg = qh.schubert_variety_degree(lam, args.d, args.n)
    if args.format == "json":
        _write(out, _dump({"partition": list(lam), "d": args.d, "n": args.n, "degree": deg}))
    else:
        _write(out, str(deg))
    return EXIT_OK


def cmd_normal_form(args, out):
    nf = northeast_normal_form(args.d, args.n)
    if args.format == "json":
        _write(out, normal_form_json(nf))
        return EXIT_OK
    lines = []
    for (c, a) in sorted(nf):
        comb = nf[(c, a)]
        if comb == {(c, a): 1}:
            continue
        rhs = " ".join(f"{'-' if v < 0 else '+'} {'' if abs(v) == 1 else str(abs(v)) + '*'}"
                       f"p[{SignedSequence(b).to_text()}]" for (b, _), v in sorted(comb.items()))
        lines.append(f"p[{SignedSequence(c).to_text()}]^({a}) = {rhs.lstrip('+ ') if rhs else '0'}")
    _write(out, "\n".join(lines) if lines else "all coordinates are Northeast")
    return EXIT_OK


def cmd_straighten(args, out):
    law = StraighteningLaw(args.d, args.n, args.seed, args.max_elements)
    if args.format == "json":
        _write(out, law.to_json())
    else:
        _write(out, law.table() or "no non-standard monomials")
    return EXIT_OK


def cmd_verify(args, out):
    law = StraighteningLaw(args.d, args.n, args.seed, args.max_elements)
    rep = verify_asl(args.d, args.n, args.seed, args.points, law)
    if args.format == "json":
        _write(out, _dump(rep))
    elif not args.quiet:
        lines = [f"verify d={args.d} n={args.n}: {'PASS' if rep['passed'] else 'FAIL'}"]
        for k in ("standard", "nonstandard", "relation_rank", "basis", "lex_condition",
                  "lex_condition_poset_order", "leading_nonstandard", "two_term_condition",
                  "two_term_cases", "vanishing", "hilbert_2", "hilbert_match"):
            lines.append(f"  {k}: {rep[k]}")
        lines += [f"  failure: {f}" for f in rep["failures"]]
        _write(out, "\n".join(lines))
    return EXIT_OK if rep["passed"] else EXIT_VERIFY


def cmd_eval_point(args, out):
    pt = lagrangian_point(args.n, args.d, seed=args.seed)
    vals = pt.values()
    keys = sorted(vals, key=lambda k: (k[1], k[0]))
    if args.format == "json":
        data = {"n": args.n, "d": args.d, "seed": args.seed,
                "coordinates": [[list(s), a, str(Fraction(vals[(s, a)]))] for s, a in keys]}
        _write(out, _dump(data))
    else:
        _write(out, "\n".join(f"p[{SignedSequence(s).to_text()}]^({a}) = {vals[(s, a)]}" for s, a in keys))
    return EXIT_OK


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _pos(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--seed", type=_nonneg, default=0)
    common.add_argument("--max-elements", type=_pos, default=DEFAULT_MAX_ELEMENTS)
    common.add_argument("--quiet", action="store_true")

    p = _Parser(prog="lagquasimap", parents=[common],
                description="Combinatorics and straightening laws of Lagrangian quasimap spaces.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(func=fn)
        return s

    for name, fn, h in (("poset", cmd_poset, "elements and covers of P_{d,n}"),
                        ("doset", cmd_doset, "admissible pairs of D_{d,n}"),
                        ("hasse", cmd_hasse, "Hasse diagram in DOT"),
                        ("normal-form", cmd_normal_form, "Northeast normal form of coordinates"),
                        ("straighten", cmd_straighten, "degree-2 straightening relations"),
                        ("verify", cmd_verify, "check the ASL axioms in degree 2")):
        s = add(name, fn, h)
        s.add_argument("d", type=_nonneg)
        s.add_argument("n", type=_pos)
        if name == "hasse":
            s.add_argument("--dot", action="store_true")
        if name == "verify":
            s.add_argument("--points", type=_pos, default=20)

    for name, fn, h in (("hilbert", cmd_hilbert, "chain counts, Hilbert polynomial, degree"),
                        ("degree", cmd_degree, "projective degree")):
        s = add(name, fn, h)
        s.add_argument("d", help="d, or a fixture name: " + ", ".join(sorted(hb.FIXTURES)))
        s.add_argument("n", type=_pos, nargs="?")
        s.add_argument("--schubert", nargs=2, metavar=("ALPHA", "A"))
        s.add_argument("--dual", action="store_true")

    s = add("pieri", cmd_pieri, "classical product with the simple class")
    s.add_argument("alpha")
    s.add_argument("n", type=_pos)
    s = add("qpieri", cmd_qpieri, "quantum product with the simple class")
    s.add_argument("alpha")
    s.add_argument("a", type=_nonneg)
    s.add_argument("n", type=_pos)
    s.add_argument("d", type=_nonneg)
    s = add("schubert-degree", cmd_schubert_degree, "degree of a quasimap Schubert variety")
    s.add_argument("alpha")
    s.add_argument("d", type=_nonneg)
    s.add_argument("n", type=_pos)
    s = add("eval-point", cmd_eval_point, "Plucker coordinates of a random Lagrangian quasimap")
    s.add_argument("n", type=_pos)
    s.add_argument("d", type=_nonneg)
    return p


def run(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing subcommand")
        args.cache = Cache(args.cache_dir or os.environ.get(CACHE_ENV))
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (ParseError, DomainError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        err.write(f"resource cap: {exc}\n")
        return EXIT_RESOURCE


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))
