"""horndiv command line.

Exit codes: 0 success, 1 a check failed, 2 bad input or failed precondition,
3 a search (witness solver, realization) ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import io as jio
from .errors import HornError, Infeasible, NotFound, PreconditionError, WitnessNotFound
from .horn import analyze, saturation_split
from .inverse import JordanData, realize
from .lr import SetTriple, horn_triples, intersection_number, lr_coefficient
from .matrix import snf
from .rings import ring_from_name
from .schubert import Flag, intersect_witness, schubert_member

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3


def _load(path, what):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise jio.InputError(f"file not found: {path}", f"--{what}") from None
    except json.JSONDecodeError as e:
        raise jio.InputError(f"invalid JSON ({e.msg} at line {e.lineno})", f"--{what}") from None


def _emit(args, doc, text):
    dumped = json.dumps(doc, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumped + "\n")
    print(dumped if args.json else text)


# -- commands ------------------------------------------------------------------------

def cmd_snf(args):
    A = jio.matrix_from_json(_load(args.matrix, "matrix"))
    if args.pid and args.pid != A.ring.name:
        ring = ring_from_name(args.pid)
        A = jio.matrix_from_json({**_load(args.matrix, "matrix"), "pid": ring.name})
    res = snf(A)
    R = A.ring
    doc = {"pid": R.name, "factors": [R.encode(f) for f in res.factors],
           "U": jio.matrix_to_json(res.U), "V": jio.matrix_to_json(res.V), "D": jio.matrix_to_json(res.D)}
    doc = jio.roundtrip(jio.SnfOut, doc)
    fmt = lambda M: "\n".join("  [" + " ".join(R.fmt(x) for x in r) + "]" for r in M.rows)
    text = (f"factors: {', '.join(R.fmt(f) for f in res.factors)}\n"
            f"U:\n{fmt(res.U)}\nV:\n{fmt(res.V)}\nD:\n{fmt(res.D)}")
    _emit(args, doc, text)
    return EXIT_OK


def cmd_lr(args):
    lam = jio.parse_parts(args.lam, "--lam")
    mu = jio.parse_parts(args.mu, "--mu")
    nu = jio.parse_parts(args.nu, "--nu")
    c = lr_coefficient(lam, mu, nu)
    doc = jio.roundtrip(jio.LrOut, {"lam": list(lam), "mu": list(mu), "nu": list(nu), "c": c})
    _emit(args, doc, str(c))
    return EXIT_OK


def cmd_triples(args):
    if not 1 <= args.r <= args.n:
        raise jio.InputError("need 1 <= r <= n", "--r")
    ts = horn_triples(args.n, args.r, include_positive=args.positive)
    doc = jio.roundtrip(jio.TriplesOut, {"N": args.n, "r": args.r, "triples": [jio.triple_to_json(t) for t in ts]})
    text = "\n".join(f"I={set(t.I)} J={set(t.J)} K={set(t.K)}" for t in ts)
    _emit(args, doc, text)
    return EXIT_OK


def _module_pair(args):
    if not args.module or not args.sub:
        raise jio.InputError("both --module and --sub are required", "--module")
    M = jio.module_from_json(_load(args.module, "module"))
    S = jio.submodule_from_json(M, _load(args.sub, "sub"))
    return M, S


def _triples_for(args, N):
    if args.all_triples:
        return [t for r in range(1, N + 1) for t in horn_triples(N, r)]
    if not args.triple:
        raise jio.InputError("give --triple I;J;K or --all-triples", "--triple")
    T = jio.parse_triple(args.triple, N)
    if T not in horn_triples(N, T.r):
        raise PreconditionError(f"{T} is not a Horn triple for N={N}")
    return [T]


def cmd_analyze(args):
    M, S = _module_pair(args)
    reports = []
    for T in _triples_for(args, M.N):
        rep = analyze(M, S, T, seed=args.seed, validate_triple=False)
        if args.split and rep.witness is not None and rep.saturation:
            saturation_split(rep)
        reports.append(rep)
    doc = {"module": jio.module_to_json(M), "sub": jio.submodule_to_json(S),
           "reports": [jio.report_to_json(r) for r in reports]}
    doc = jio.roundtrip(jio.AnalyzeOut, doc)
    lines = []
    for r in reports:
        verdict = "PASS" if r.ok else "FAIL"
        lines.append(f"{r.triple}: {verdict} ({r.status}, saturated={r.saturation})")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if all(r.ok for r in reports) else 1


def _random_flag(rng, n):
    while True:
        vs = [tuple(Fraction(rng.randint(-9, 9)) for _ in range(n)) for _ in range(n)]
        try:
            return Flag(vs)
        except PreconditionError:
            continue


def cmd_witness(args):
    if args.module or args.sub:
        M, S = _module_pair(args)
        T = _triples_for(args, M.N)[0]
        rep = analyze(M, S, T, seed=args.seed, validate_triple=False)
        if rep.witness is None:
            raise WitnessNotFound("solver exhausted after reseeding")
        doc = jio.report_to_json(rep)["witness"]
        doc["checks"] = jio.checks_json(rep.checks)
        doc = jio.roundtrip(jio.WitnessOut, doc)
        _emit(args, doc, f"strategy {rep.witness.strategy}; Q rows: {doc['Q']['entries'] if doc['Q'] else []}")
        return EXIT_OK
    if args.n is None or not args.triple:
        raise jio.InputError("give --n and --triple, or --module and --sub", "--n")
    T = jio.parse_triple(args.triple, args.n)
    if intersection_number(T) != 1:
        raise PreconditionError(f"intersection number of {T} is {intersection_number(T)}, not 1")
    rng = random.Random(args.seed)
    E, F, G = (_random_flag(rng, args.n) for _ in range(3))
    w = intersect_witness(E, F, G, T.I, T.J, T.K)
    checks = [{"name": f"Q in Schubert cell of flag {nm}", "pass": schubert_member(w.Q, fl, s), "detail": ""}
              for nm, fl, s in (("E", E, T.I), ("F", F, T.J), ("G", G, T.K))]
    R = ring_from_name("int")
    doc = {"Q": jio.subspace_to_json(R, w.Q), "checks": checks, "strategy": w.strategy, "seed": args.seed,
           "triple": jio.triple_to_json(T), "perturbations": []}
    doc = jio.roundtrip(jio.WitnessOut, doc)
    _emit(args, doc, f"strategy {w.strategy}; Q rows: {doc['Q']['entries'] if doc['Q'] else []}")
    return EXIT_OK


def cmd_realize(args):
    ring = ring_from_name(args.pid)
    try:
        atom = int(args.atom)
        ring.atom_element(atom)
    except (ValueError, HornError):
        raise jio.InputError(f"{args.atom} is not an atom label of {ring.name}", "--atom") from None
    d = JordanData.at(atom, jio.parse_parts(args.lam, "--lambda"), jio.parse_parts(args.mu, "--mu"),
                      jio.parse_parts(args.nu, "--nu"))
    M, S = realize(d, ring=ring, seed=args.seed)
    doc = {"module": jio.module_to_json(M), "sub": jio.submodule_to_json(S),
           "mu": [jio.ev_to_json(e) for e in S.invariants()],
           "nu": [jio.ev_to_json(e) for e in S.quotient_invariants()]}
    doc = jio.roundtrip(jio.RealizeOut, doc)
    text = f"module theta: {[t.as_dict() for t in M.theta]}\nsubmodule generators: {doc['sub']['generators']}"
    _emit(args, doc, text)
    return EXIT_OK


def cmd_selftest(args):
    from .selftest import run_all
    results = run_all(seed=args.seed)
    doc = {"results": [{"name": n, "pass": ok} for n, ok in results]}
    _emit(args, doc, "\n".join(f"{'PASS' if ok else 'FAIL'}  {n}" for n, ok in results))
    return EXIT_OK if all(ok for _, ok in results) else 1


# -- parser ----------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    common.add_argument("--out", help="also write the JSON document to FILE")

    p = argparse.ArgumentParser(prog="horndiv", description="Horn divisibility toolkit for torsion modules over a PID")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("snf", parents=[common], help="Smith normal form of a matrix")
    s.add_argument("--matrix", required=True, help="matrix JSON file ('-' for stdin)")
    s.add_argument("--pid", help="override the matrix's pid (int, poly<p>)")
    s.set_defaults(func=cmd_snf)

    s = sub.add_parser("lr", parents=[common], help="Littlewood-Richardson coefficient")
    s.add_argument("--lam", "--lambda", dest="lam", required=True)
    s.add_argument("--mu", default="")
    s.add_argument("--nu", default="")
    s.set_defaults(func=cmd_lr)

    s = sub.add_parser("horn-triples", parents=[common], help="index triples with c = 1")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--positive", action="store_true", help="emit every triple with c > 0")
    s.set_defaults(func=cmd_triples)

    for name, fn, hlp in (("analyze", cmd_analyze, "certify Horn divisibilities for a module pair"),
                          ("witness", cmd_witness, "find a point of a triple Schubert intersection")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--module")
        s.add_argument("--sub")
        s.add_argument("--triple", help="I;J;K, members comma separated")
        s.add_argument("--all-triples", action="store_true")
        if name == "analyze":
            s.add_argument("--split", action="store_true", help="also build complements when saturated")
        else:
            s.add_argument("--n", type=int)
        s.set_defaults(func=fn)

    s = sub.add_parser("realize", parents=[common], help="realize Jordan data by a module pair")
    s.add_argument("--lambda", "--lam", dest="lam", required=True)
    s.add_argument("--mu", default="")
    s.add_argument("--nu", default="")
    s.add_argument("--atom", required=True)
    s.add_argument("--pid", default="int")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("selftest", parents=[common], help="run the built-in invariant checks")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except jio.InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except WitnessNotFound as e:
        print(f"witness solver budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except NotFound as e:
        print(f"search budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, Infeasible) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (HornError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
