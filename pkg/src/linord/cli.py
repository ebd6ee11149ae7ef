"""Command-line front end.

Exit status: 0 Holds/true, 2 Fails/false, 3 Unknown, 1 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import constructions as cons
from .classes import ClassSyntaxError, ccs_check, ccs_witness_search, member, parse_class, verify_witness
from .engine import biembeds, convex_embeds, embeds, l_convex_embeds, transitivity_probe
from .ordinals import OrdinalSyntaxError, parse_ordinal
from .terms import (
    ColouredFinite,
    LabelSet,
    TermSyntaxError,
    iso_check,
    normalize,
    parse_term,
    show,
)
from .verdict import Verdict
from .zcalc import NotScattered, Undecided, hausdorff_rank

BUDGET_ENV = "LINORD_BUDGET"
EXIT = {"holds": 0, "fails": 2, "unknown": 3}


class UsageError(Exception):
    pass


def _budget(args):
    if args.budget is not None:
        return args.budget
    try:
        return int(os.environ.get(BUDGET_ENV, "10000"))
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be an integer")


def _emit(args, verdict, extra=None):
    if args.json:
        out = verdict.to_json()
        if extra:
            out.update(extra)
        print(json.dumps(out, sort_keys=True))
    else:
        print(verdict)
        if verdict.witness is not None and getattr(args, "witness", True):
            print(json.dumps(verdict.witness.to_json(), sort_keys=True))
    return EXIT[verdict.kind]


def _value(args, ok, text, payload):
    if args.json:
        print(json.dumps({"verdict": "holds" if ok else "fails", "value": payload}, sort_keys=True))
    else:
        print(text)
    return 0 if ok else 2


def cmd_rel(args):
    t, t2 = parse_term(args.left), parse_term(args.right)
    if args.embed:
        return _emit(args, embeds(t, t2))
    if args.convex:
        return _emit(args, convex_embeds(t, t2))
    c = parse_class(args.cls)
    if args.bi:
        return _emit(args, biembeds(c, t, t2))
    return _emit(args, l_convex_embeds(c, t, t2))


def cmd_iso(args):
    return _emit(args, iso_check(parse_term(args.left), parse_term(args.right)))


def cmd_rank(args):
    try:
        r = hausdorff_rank(parse_term(args.term))
    except (Undecided, NotScattered) as exc:
        if args.json:
            print(json.dumps({"verdict": "unknown", "reason": str(exc)}))
        else:
            print(f"Unknown: {exc}")
        return 3
    return _value(args, True, str(r), str(r))


def cmd_member(args):
    return _emit(args, member(parse_class(args.cls), parse_term(args.term)))


def cmd_ccs(args):
    c = parse_class(args.cls)
    v = ccs_check(c)
    extra = None
    if v.witness is not None:
        extra = {"verified": verify_witness(c, v.witness)}
    if not args.witness:
        v = Verdict(v.kind, v.rule, v.reason)
    return _emit(args, v, extra)


def cmd_ccs_search(args):
    c = parse_class(args.cls)
    w = ccs_witness_search(c, _budget(args))
    if w is None:
        v = Verdict("unknown", "ccs-search", "no violation within the budget")
    else:
        v = Verdict("fails", "ccs-search", "convex sum outside the class", w)
    return _emit(args, v)


def _coloured(text):
    return ColouredFinite(tuple(text.split(",")) if "," in text else tuple(text))


def cmd_construct(args):
    name, rest = args.map, args.args
    need = {"cong": 2, "succ": 1, "fractal": 3, "threshold": 2, "fin-zeta": 1, "coloured": 1, "e1": 2}
    if name not in need:
        raise UsageError(f"unknown map {name!r}; choose from {', '.join(need)}")
    if len(rest) != need[name]:
        raise UsageError(f"{name} takes {need[name]} arguments")
    if name == "cong":
        t = cons.phi_cong(parse_term(rest[0]), parse_term(rest[1]))
    elif name == "succ":
        t = cons.phi_succ(parse_term(rest[0]))
    elif name == "fractal":
        t = cons.phi_fractal(parse_term(rest[0]), parse_term(rest[1]), parse_ordinal(rest[2]))
    elif name == "threshold":
        t = cons.phi_threshold(parse_term(rest[0]), parse_ordinal(rest[1]))
    elif name == "fin-zeta":
        t = cons.phi_fin_zeta(parse_term(rest[0]))
    elif name == "coloured":
        t = cons.phi_coloured(_coloured(rest[0]))
    else:
        prefix = [v for v in rest[0].split(",") if v]
        t = cons.phi_e1((prefix, rest[1]))
    text = show(t)
    return _value(args, True, text, {"term": text, "normal": show(normalize(t))})


def cmd_probe(args):
    try:
        with open(args.corpus) as fh:
            corpus = [parse_term(line) for line in fh if line.strip() and not line.startswith("#")]
    except OSError as exc:
        raise UsageError(str(exc))
    bad = transitivity_probe(parse_class(args.cls), corpus)
    triples = [[show(x) for x in tr] for tr in bad]
    if args.json:
        print(json.dumps({"verdict": "holds" if not bad else "fails", "violations": triples}))
    else:
        for tr in triples:
            print(" ; ".join(tr))
        print(f"{len(bad)} violating triples")
    return 0 if not bad else 2


def _random_word(rng):
    letters = ["1", "2", "3", "w", "w*", "z", "q"]
    return "+".join(rng.choice(letters) for _ in range(rng.randint(1, 5)))


def cmd_gen(args):
    fam, rest = args.family, args.args
    if fam == "shuffle":
        if len(rest) != 1:
            raise UsageError("shuffle takes a periodic label string like 0|10")
        t = cons.gen_shuffle_family(LabelSet.from_bits(rest[0]))
    elif fam == "ishuffle":
        if len(rest) != 2:
            raise UsageError("ishuffle takes lo and hi")
        t = cons.gen_interval_shuffle(rest[0], rest[1])
    elif fam == "random":
        rng = random.Random(args.seed)
        n = int(rest[0]) if rest else 5
        words = [_random_word(rng) for _ in range(n)]
        if args.json:
            print(json.dumps({"verdict": "holds", "value": words}))
        else:
            print("\n".join(words))
        return 0
    else:
        raise UsageError(f"unknown family {fam!r}; choose from shuffle, ishuffle, random")
    return _value(args, True, show(t), show(t))


def build_parser():
    p = argparse.ArgumentParser(prog="linord", description="Embeddability of countable linear orders.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        return sp

    sp = add("rel", cmd_rel, help="L-convex embeddability (default), <=, convex, or both ways")
    sp.add_argument("--class", dest="cls", default="one")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--embed", action="store_true")
    mode.add_argument("--convex", action="store_true")
    mode.add_argument("--bi", action="store_true")
    sp.add_argument("left")
    sp.add_argument("right")

    sp = add("iso", cmd_iso, help="isomorphism of normal forms")
    sp.add_argument("left")
    sp.add_argument("right")

    sp = add("rank", cmd_rank, help="Hausdorff rank of a scattered term")
    sp.add_argument("term")

    sp = add("member", cmd_member, help="class membership")
    sp.add_argument("cls")
    sp.add_argument("term")

    sp = add("ccs", cmd_ccs, help="is the class closed under convex sums")
    sp.add_argument("cls")
    sp.add_argument("--witness", action="store_true")

    sp = add("ccs-search", cmd_ccs_search, help="search for a convex sum outside the class")
    sp.add_argument("cls")
    sp.add_argument("--budget", type=int, default=None)

    sp = add("construct", cmd_construct, help="apply a reduction map")
    sp.add_argument("map")
    sp.add_argument("args", nargs="*")

    sp = add("probe-transitivity", cmd_probe, help="look for transitivity failures in a corpus")
    sp.add_argument("cls")
    sp.add_argument("--corpus", required=True)

    sp = add("gen", cmd_gen, help="generate family members")
    sp.add_argument("family")
    sp.add_argument("args", nargs="*")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.fn(args)
    except (UsageError, ClassSyntaxError, TermSyntaxError, OrdinalSyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
