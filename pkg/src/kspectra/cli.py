"""Command line entry point: ``kspectra <command> ...`` (or ``python -m kspectra``).

Exit codes: 0 success, 1 a property check was refuted, 2 bad input,
3 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .algebra import SignatureMismatch
from .closure import irreducible_components
from .congruence import congruence_closure, serialize
from .free import check_nullstellensatz2, counterexample, entails, free_algebra
from .guards import ResourceError
from .io import SchemaError, content_hash, dumps, load_file, spectrum_dot, spectrum_from_points, spectrum_report
from .separation import prime_decomposition, separation_report
from .spectrum import SpectrumContext, nilradical, radical, reduction, rspec, spec
from .suites import run_all
from .terms import DisjunctiveSystem, TermSyntaxError, format_term


class InputError(Exception):
    pass


class Refuted(Exception):
    pass


class Workspace:
    """Named algebras and classes plus a spectrum cache keyed by content hash."""

    def __init__(self, cache_dir=None, builtins=True):
        self.algebras = dict(fixtures.library()) if builtins else {}
        self.classes = dict(fixtures.class_library()) if builtins else {}
        self.cache = {}
        self.cache_dir = Path(cache_dir) if cache_dir else None

    def load(self, path):
        try:
            kind, value = load_file(path)
        except FileNotFoundError:
            raise InputError(f"{path}: no such file") from None
        except (SchemaError, ValueError) as exc:
            raise InputError(f"{path}: {exc}") from None
        if kind == "algebra":
            self.algebras[value.name] = value
        else:
            name, members = value
            self.classes[name] = members
        return kind, value

    def algebra(self, name):
        try:
            return self.algebras[name]
        except KeyError:
            raise InputError(f"unknown algebra {name!r}") from None

    def klass(self, name):
        members = self.classes.get(name)
        if members is None:
            members = [m for m in name.split(",") if m]
        K = tuple(self.algebra(m) for m in members)
        if not K:
            raise InputError("empty class")
        return K

    def spectrum(self, A, K):
        key = content_hash(A, *K)
        if key in self.cache:
            return self.cache[key]
        ctx = SpectrumContext(A, K)
        path = self.cache_dir / f"{key}.json" if self.cache_dir else None
        if path is not None and path.exists():
            s = spectrum_from_points(ctx, json.loads(path.read_text())["points"])
        else:
            s = spec(ctx)
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(dumps({"points": [serialize(p) for p in s.points]}))
        self.cache[key] = s
        return s


def _pairs(text):
    out = []
    for chunk in text.replace(";", " ").split():
        try:
            a, b = chunk.split(",")
            out.append((int(a), int(b)))
        except ValueError:
            raise InputError(f"bad pair {chunk!r}; expected a,b") from None
    return out


def _write(path, text):
    if path:
        Path(path).write_text(text)


def _variables(arg, *systems):
    if arg:
        return tuple(v for v in arg.split(",") if v)
    names = []
    for s in systems:
        for v in s.variables():
            if v not in names:
                names.append(v)
    return tuple(sorted(names))


def _system(text, sig):
    if text is None:
        return DisjunctiveSystem(())
    try:
        return DisjunctiveSystem.parse(text, sig)
    except TermSyntaxError as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from None


def cmd_spec(ws, args, out):
    A, K = ws.algebra(args.algebra), ws.klass(args.klass)
    s = ws.spectrum(A, K)
    rep = spectrum_report(s)
    print(f"{len(s.points)} points, reduced={str(rep['reduced']).lower()}, topological={str(rep['topological']).lower()}", file=out)
    for i, p in enumerate(s.points):
        print(f"  p{i}: {serialize(p)}", file=out)
    print(f"nilradical: {rep['nilradical']}", file=out)
    _write(args.json, dumps(rep))
    _write(args.dot, spectrum_dot(s))
    return 0


def cmd_radical(ws, args, out):
    A, K = ws.algebra(args.algebra), ws.klass(args.klass)
    s = ws.spectrum(A, K)
    theta = congruence_closure(A, _pairs(args.pairs or ""))
    r = radical(s, theta)
    print(f"theta: {serialize(theta)}\nradical: {serialize(r)}", file=out)
    _write(args.json, dumps({"theta": serialize(theta), "radical": serialize(r)}))
    return 0


def cmd_reduce(ws, args, out):
    A, K = ws.algebra(args.algebra), ws.klass(args.klass)
    s = ws.spectrum(A, K)
    red, proj = reduction(s)
    print(f"nilradical: {serialize(nilradical(s))}\nreduction size: {red.size}\nprojection: {list(proj.map)}", file=out)
    from .io import algebra_to_json

    _write(args.json, dumps({"nilradical": serialize(nilradical(s)), "reduction": algebra_to_json(red), "projection": list(proj.map)}))
    return 0


def cmd_free(ws, args, out):
    K = ws.klass(args.klass)
    fa = free_algebra(K, _variables(args.vars))
    print(f"{fa.base.size} elements", file=out)
    for i, t in enumerate(fa.representatives):
        print(f"  {i}: {format_term(t)}", file=out)
    from .io import algebra_to_json

    _write(args.json, dumps({"variables": list(fa.variables), "algebra": algebra_to_json(fa.base), "representatives": [format_term(t) for t in fa.representatives]}))
    return 0


def cmd_entails(ws, args, out):
    K = ws.klass(args.klass)
    sig = K[0].signature
    premise, conclusion = _system(args.premise, sig), _system(args.conclusion, sig)
    vs = _variables(args.vars, premise, conclusion)
    ok = entails(K, premise, conclusion, vs)
    if ok:
        print("entailed", file=out)
    else:
        k, env = counterexample(K, premise, conclusion, vs)
        print(f"not entailed: counterexample in {K[k].name} at {env}", file=out)
    _write(args.json, dumps({"entailed": ok}))
    return 0


def cmd_nsatz2(ws, args, out):
    K = ws.klass(args.klass)
    sig = K[0].signature
    s1, s2 = _system(args.s1, sig), _system(args.s2, sig)
    vs = _variables(args.vars, s1, s2)
    res = check_nullstellensatz2(K, vs, s1, s2)
    print(f"inclusion={str(res.inclusion).lower()} entailment={str(res.entailment).lower()} agree={str(res.agree).lower()}", file=out)
    _write(args.json, dumps({"inclusion": res.inclusion, "entailment": res.entailment, "agree": res.agree}))
    if not res.agree:
        raise Refuted("Nullstellensatz part II sides disagree")
    return 0


def cmd_components(ws, args, out):
    A, K = ws.algebra(args.algebra), ws.klass(args.klass)
    s = ws.spectrum(A, K)
    comps = irreducible_components(s.zariski)
    idx = {p: i for i, p in enumerate(s.points)}
    listing = [sorted(idx[p] for p in c) for c in comps]
    for c in listing:
        print("{" + ", ".join(f"p{i}" for i in c) + "}", file=out)
    _write(args.json, dumps({"points": [serialize(p) for p in s.points], "components": listing}))
    return 0


def cmd_prime_decomp(ws, args, out):
    A, K = ws.algebra(args.algebra), ws.klass(args.klass)
    s = ws.spectrum(A, K)
    thetas = [congruence_closure(A, _pairs(args.pairs))] if args.pairs is not None else rspec(s)
    report = []
    for t in thetas:
        try:
            dec = prime_decomposition(s, t)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        print(f"{serialize(t)} = " + " ^ ".join(str(serialize(p)) for p in dec), file=out)
        report.append({"theta": serialize(t), "primes": [serialize(p) for p in dec]})
    _write(args.json, dumps(report))
    return 0


def cmd_separation(ws, args, out):
    A, K = ws.algebra(args.algebra), ws.klass(args.klass)
    rep = separation_report(A, K)
    d = rep.to_dict()
    print(f"separated={str(d['separated']).lower()} sep_omega={str(d['sep_omega']).lower()} discriminated={str(d['discriminated']).lower()}", file=out)
    _write(args.json, dumps(d))
    return 0


def cmd_check_all(ws, args, out):
    A, K = ws.algebra(args.algebra), ws.klass(args.klass)
    s = ws.spectrum(A, K)
    results = run_all(A, K, s)
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.checks} checks)"
        if not r.passed:
            line += f": {r.counterexample}"
        print(line, file=out)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} suites passed", file=out)
    report = {"algebra": A.name, "class": [b.name for b in K], "spectrum": spectrum_report(s), "suites": [r.to_dict() for r in results]}
    _write(args.json, dumps(report))
    _write(args.dot, spectrum_dot(s))
    if passed != len(results):
        raise Refuted(f"{len(results) - passed} suites refuted")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="kspectra", description=__doc__.splitlines()[0])
    p.add_argument("--load", action="append", default=[], metavar="FILE", help="algebra or class JSON file (repeatable)")
    p.add_argument("--cache", metavar="DIR", help="directory for cached spectra")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, algebra=True, klass=True):
        sp = sub.add_parser(name)
        if algebra:
            sp.add_argument("algebra")
        if klass:
            sp.add_argument("--class", dest="klass", required=True, help="class name or comma-separated algebra names")
        sp.add_argument("--json", metavar="OUT")
        sp.add_argument("--dot", metavar="OUT")
        sp.set_defaults(func=fn)
        return sp

    add("spec", cmd_spec)
    add("radical", cmd_radical).add_argument("--pairs", default="", help='generating pairs, e.g. "0,1;1,2"')
    add("reduce", cmd_reduce)
    add("free", cmd_free, algebra=False).add_argument("--vars", default="")
    e = add("entails", cmd_entails, algebra=False)
    e.add_argument("--premise", default=None)
    e.add_argument("--conclusion", default=None)
    e.add_argument("--vars", default="")
    n = add("nsatz2", cmd_nsatz2, algebra=False)
    n.add_argument("--s1", default=None)
    n.add_argument("--s2", default=None)
    n.add_argument("--vars", default="")
    add("components", cmd_components)
    add("prime-decomp", cmd_prime_decomp).add_argument("--pairs", default=None)
    add("separation", cmd_separation)
    add("check-all", cmd_check_all)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        ws = Workspace(args.cache)
        for path in args.load:
            ws.load(path)
        return args.func(ws, args, out)
    except Refuted as exc:
        print(f"refuted: {exc}", file=sys.stderr)
        return 1
    except (InputError, SchemaError, SignatureMismatch, TermSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
