"""Command line: ``prohecke list | describe | verify | compute``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .comparison import ParabolicTriple
from .instances import InstanceError, instance_names, load_instance
from .parabolic import InducedModule
from .report import CACHE_ENV, build_report, dumps, to_markdown
from .suites import SUITES, Budget, build_module, parse_levi


def _matrix_text(ring, m):
    return [[ring.render(x) if hasattr(ring, "render") else str(x) for x in row] for row in m]


def _module_json(V):
    ring = V.ring
    return {
        "name": V.name,
        "rank": V.rank,
        "ring": getattr(ring, "name", str(ring)),
        "generators": {lab: _matrix_text(ring, m) for lab, m in V.generator_matrices()},
        "certificate_failures": V.certificate(),
    }


def _algebra(args):
    inst = load_instance(args.spec)
    if getattr(args, "char_p", None):
        from .supersingular import char_p_algebra
        return inst, char_p_algebra(inst, args.char_p)
    return inst, inst.algebra


def cmd_list(args):
    if args.instances:
        for name in instance_names():
            print(name)
        return 0
    for sid, suite in SUITES.items():
        print(f"{sid:24s} {suite.title}")
    return 0


def cmd_describe(args):
    suite = SUITES.get(args.suite)
    if suite is None:
        print(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}", file=sys.stderr)
        return 2
    print(f"{suite.id}: {suite.title}")
    print()
    for s in suite.statements:
        print(f"  - {s}")
    print()
    print("default instances: " + ", ".join(suite.instances))
    return 0


def cmd_verify(args):
    budget = Budget(max_length=args.max_length, seed=args.seed, samples=args.samples,
                    spin_cap=args.spin_cap)
    if args.primes:
        budget.primes = tuple(int(p) for p in args.primes.split(","))
    report = build_report(args.suite, args.spec, budget, args.module)
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.markdown:
        Path(args.markdown).write_text(to_markdown(report))
    s = report["summary"]
    print(f"{args.suite}: " + ", ".join(f"{k} {v}" for k, v in s.items()), file=sys.stderr)
    return 1 if report["refuted"] else 0


def cmd_product(args):
    _, H = _algebra(args)
    a, b = H.parse(args.a), H.parse(args.b)
    p = a * b
    print(dumps({"T": H.render(p), "T*": H.render(p, "T*")}), end="")
    return 0


def cmd_induce(args):
    _, H = _algebra(args)
    V = build_module(H, args.module)
    target = H.levi(parse_levi(args.to)) if args.to is not None else H
    ind = InducedModule(V, target)
    out = _module_json(ind)
    out["cosets"] = [target.label(x) or "1" for x in ind.rep_lifts]
    print(dumps(out), end="")
    return 0


def cmd_IH(args):
    _, H = _algebra(args)
    V = build_module(H, args.module)
    T = ParabolicTriple(V)
    Q = parse_levi(args.Q)
    if not (set(T.M) <= set(Q) <= set(T.PV)):
        print(f"Q must lie between M={list(T.M)} and P(V)={list(T.PV)}", file=sys.stderr)
        return 2
    I = T.I_H(Q)
    out = _module_json(I)
    out["P(V)"] = list(T.PV)
    out["Q"] = list(Q)
    print(dumps(out), end="")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="prohecke", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    lp = sub.add_parser("list", help="list suites (or shipped instances)")
    lp.add_argument("--instances", action="store_true")
    lp.set_defaults(func=cmd_list)

    dp = sub.add_parser("describe", help="statements checked by a suite")
    dp.add_argument("suite")
    dp.set_defaults(func=cmd_describe)

    vp = sub.add_parser("verify", help="run a suite and write a report")
    vp.add_argument("--suite", required=True, choices=list(SUITES))
    vp.add_argument("--spec", action="append", help="instance name or TOML file (repeatable)")
    vp.add_argument("--module", action="append",
                    help="module kind@levi, e.g. trivial@0, sign@0, omega=-1,-1,-1@ (repeatable)")
    vp.add_argument("--max-length", type=int, default=None)
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--samples", type=int, default=10000)
    vp.add_argument("--spin-cap", type=int, default=200000)
    vp.add_argument("--primes", default=None, help="comma separated, default 2,3")
    vp.add_argument("--out")
    vp.add_argument("--markdown")
    vp.set_defaults(func=cmd_verify)

    cp = sub.add_parser("compute", help="ad-hoc computations")
    csub = cp.add_subparsers(dest="what", required=True)
    pr = csub.add_parser("product", help="product of two elements, e.g. 'T[s1]' '(q-1)*T*[s0.s1]'")
    pr.add_argument("--spec", required=True)
    pr.add_argument("--char-p", type=int)
    pr.add_argument("a")
    pr.add_argument("b")
    pr.set_defaults(func=cmd_product)
    ip = csub.add_parser("induce", help="induce a module of a Levi")
    ip.add_argument("--spec", required=True)
    ip.add_argument("--char-p", type=int)
    ip.add_argument("--module", required=True)
    ip.add_argument("--to", default=None, help="target Levi (default the whole group)")
    ip.set_defaults(func=cmd_induce)
    hp = csub.add_parser("IH", help="I_H(P(V), V, Q)")
    hp.add_argument("--spec", required=True)
    hp.add_argument("--char-p", type=int)
    hp.add_argument("--module", required=True)
    hp.add_argument("--Q", required=True, help="simple roots of Q, comma separated")
    hp.set_defaults(func=cmd_IH)
    p.epilog = f"Set {CACHE_ENV} to cache per-instance suite results."
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceError as exc:
        print(json.dumps({"error": "instance", "message": str(exc)}), file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
