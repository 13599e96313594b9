"""Command-line interface.

Exit status: 0 when nothing failed, 1 when some check failed, 2 on usage
errors (bad arguments, unparsable words or groups).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from .catalog import CATALOG, get_group
from .corpus import run_corpus, summarize
from .errors import BudgetExceeded, CapExceeded
from .lattice import LATTICE_CAP, lattice
from .perms import Permutation
from .structure import (
    classify, derived_series, fitting_height, fitting_subgroup, lower_central_series,
    nonsoluble_length, prime_divisors,
)
from .subgroups import center, derived_subgroup, full, generated, normal_subgroups, trivial
from .verbal import p_partition, verbal_subgroup, w_values
from .words import (
    is_section, level_of, metrics, render_word, sections, section_below_level, to_dot, word_from_spec,
)

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


# -- argument helpers --------------------------------------------------------------

def _group_arg(args):
    try:
        return full(get_group(args.group))
    except (ValueError, OSError) as e:
        raise UsageError(str(e)) from None


def _word_arg(text: str):
    try:
        return word_from_spec(text)
    except ValueError as e:
        raise UsageError(f"bad word {text!r}: {e}") from None


def _elements(G, text: str):
    """Semicolon-separated permutations in cycle notation, as host indices."""
    try:
        perms = [Permutation.parse(s.strip(), G.host.degree) for s in text.split(";") if s.strip()]
    except ValueError as e:
        raise UsageError(str(e)) from None
    for g in perms:
        if not G.contains(g):
            raise UsageError(f"{g} is not in the group")
    return [G.host.index(g) for g in perms]


def _normal_arg(G, text: str):
    named = {
        "trivial": lambda: trivial(G),
        "whole": lambda: G,
        "fitting": lambda: fitting_subgroup(G),
        "derived": lambda: derived_subgroup(G),
        "center": lambda: center(G),
    }
    if text in named:
        return named[text]()
    return generated(G, _elements(G, text))


def _section_arg(w, text: str | None):
    if text is None:
        return sections(w)
    if text.startswith("level:"):
        return [section_below_level(w, int(text[6:]))]
    refs = ["" if r.strip() == "root" else r.strip() for r in text.split(",")]
    if not is_section(w, refs):
        raise UsageError(f"{text!r} is not a section of {w}")
    return [frozenset(refs)]


# -- commands ----------------------------------------------------------------------

def cmd_word_info(args):
    w = _word_arg(args.word)
    m = metrics(w)
    leaves = {f"x{k}": level_of(w, w.leaf_ref(k)) for k in range(1, w.n + 1)}
    result = {
        "word": render_word(w), "indeterminates": w.n, "height": m.height,
        "vertices": m.vertex_count, "defect": m.defect, "sections": len(sections(w)),
        "leaf_levels": leaves,
    }
    text = [f"word: {result['word']}", f"indeterminates: {w.n}", f"height: {m.height}",
            f"vertices: {m.vertex_count}", f"defect: {m.defect}", f"sections: {result['sections']}",
            "leaf levels: " + " ".join(f"{k}={v}" for k, v in leaves.items())]
    if args.dot:
        Path(args.dot).write_text(to_dot(w))
    return text, result, []


def cmd_word_dot(args):
    w = _word_arg(args.word)
    dot = to_dot(w)
    if args.dot:
        Path(args.dot).write_text(dot)
        return [f"wrote {args.dot}"], {"word": render_word(w)}, []
    return [dot.rstrip("\n")], {"word": render_word(w), "dot": dot}, []


def cmd_group_info(args):
    G = _group_arg(args)
    cls = classify(G)
    result = {
        "group": args.group, "degree": G.host.degree, "order": G.order(),
        "base": [b + 1 for b in G.host.base], "primes": prime_divisors(G.order()),
        "properties": cls,
        "derived_series": derived_series(G).orders(),
        "lower_central_series": lower_central_series(G).orders(),
        "fitting_height": fitting_height(G),
        "nonsoluble_length": nonsoluble_length(G),
        "normal_subgroups": len(normal_subgroups(G)),
    }
    try:
        lat = lattice(G, LATTICE_CAP)
        result["subgroups"] = len(lat.subgroups)
        result["rank"] = lat.rank()
    except CapExceeded:
        result["subgroups"] = result["rank"] = None
    text = [f"{k}: {v}" for k, v in result.items() if k != "properties"]
    text.insert(5, "properties: " + ", ".join(k for k, v in cls.items() if v))
    return text, result, []


def cmd_verbal_compute(args):
    G = _group_arg(args)
    w = _word_arg(args.word)
    try:
        vs = w_values(G, w, args.mode, seed=args.seed, draws=args.draws)
        W, verified = verbal_subgroup(G, w, args.mode, seed=args.seed, draws=args.draws)
    except BudgetExceeded as e:
        raise UsageError(str(e)) from None
    result = {
        "group": args.group, "word": render_word(w), "mode": vs.mode,
        "values": len(vs), "order_verbal": W.order(), "verified": verified,
        "generators": [str(g) for g in W.gens],
    }
    if args.dump:
        result["value_list"] = vs.dump()
    if args.prime and vs.exhaustive:
        X, Y = p_partition(vs, args.prime)
        result["p_elements"] = int(X.size)
        result["p_closure"] = int(Y.size)
    text = [f"{k}: {v}" for k, v in result.items() if k != "value_list"]
    if args.dump:
        text += ["values:"] + [f"  {s}" for s in result["value_list"]]
    return text, result, []


def cmd_check(args):
    G = _group_arg(args)
    name = args.group
    w = _word_arg(args.word)
    kind = args.check
    reps = []
    if kind == "focal":
        primes = [args.prime] if args.prime else prime_divisors(G.order())
        reps = [checks.check_focal(G, w, p, name, exploratory=args.nonsoluble_exploratory) for p in primes]
    elif kind == "goodgen":
        X = _elements(G, args.X) if args.X else checks.standard_closure(G)
        reps = [checks.check_goodgen(G, X, w, name)]
    elif kind == "rank":
        reps = [checks.check_rank_bound(G, w, args.mode, name)]
    elif kind == "fitting":
        reps = [checks.check_fitting_bound(G, name)]
    elif kind == "section":
        eta = _word_arg(args.eta)
        reps = [checks.check_section_lemma(G, w, eta, S, name) for S in _section_arg(w, args.section)]
    elif kind == "abelian-wi":
        reps = [checks.check_abelian_wi(G, w, name)]
    elif kind == "pset":
        N = _normal_arg(G, args.normal)
        vs = w_values(G, w)
        primes = [args.prime] if args.prime else prime_divisors(G.order())
        for p in primes:
            _, Y = p_partition(vs, p)
            reps.append(checks.check_pset(G, N, p, Y, name))
    elif kind == "lemma-t":
        A = _elements(G, args.A) if args.A else G.gen_indices
        B = _elements(G, args.B) if args.B else G.gen_indices
        reps = [checks.check_lemma_T(G, A, B, name)]
    elif kind == "supplement":
        reps = [checks.find_frattini_supplement(G, _normal_arg(G, args.normal), name)[1]]
    elif kind == "centralizer":
        reps = [checks.check_centralizer_fact(G, w, _normal_arg(G, args.normal), name)]
    return None, None, reps


def cmd_counterexample(args):
    try:
        _, rep = checks.frobenius_counterexample(args.p, args.m, args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return None, None, [rep]


def cmd_corpus_run(args):
    dumped = run_corpus(args.profile, args.workers)
    reps = []
    for d in dumped:
        r = checks.CheckReport(d["check"], d["inputs"], d["quantities"], d["verdict"],
                               d["witness"], d["millis"], d["notes"])
        reps.append(r)
    return None, None, reps


# -- parser -------------------------------------------------------------------------

CHECKS = ["focal", "goodgen", "rank", "fitting", "section", "abelian-wi", "pset", "lemma-t",
          "supplement", "centralizer"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write a JSON document")
    common.add_argument("--timings", action="store_true", help="include runtimes (breaks byte-identical output)")

    p = argparse.ArgumentParser(prog="verbalrank", description="Verbal subgroups and rank checks on permutation groups.")
    sub = p.add_subparsers(dest="area", required=True)

    word = sub.add_parser("word", help="inspect a commutator word").add_subparsers(dest="action", required=True)
    for action, fn in (("info", cmd_word_info), ("dot", cmd_word_dot)):
        a = word.add_parser(action, parents=[common])
        a.add_argument("word")
        a.add_argument("--dot", metavar="PATH")
        a.set_defaults(fn=fn)

    group = sub.add_parser("group").add_subparsers(dest="action", required=True)
    a = group.add_parser("info", parents=[common])
    a.add_argument("--group", required=True, help="catalog name, recipe, or file:PATH")
    a.set_defaults(fn=cmd_group_info)

    verbal = sub.add_parser("verbal").add_subparsers(dest="action", required=True)
    a = verbal.add_parser("compute", parents=[common])
    a.add_argument("--group", required=True)
    a.add_argument("--word", required=True)
    a.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    a.add_argument("--seed", type=int, default=1)
    a.add_argument("--draws", type=int, default=1000)
    a.add_argument("--prime", type=int)
    a.add_argument("--dump", action="store_true", help="list the values")
    a.set_defaults(fn=cmd_verbal_compute)

    check = sub.add_parser("check").add_subparsers(dest="check", required=True)
    for kind in CHECKS:
        a = check.add_parser(kind, parents=[common])
        a.add_argument("--group", required=True)
        a.add_argument("--word", default="gamma2")
        a.add_argument("--prime", type=int)
        a.add_argument("--eta", default="gamma2")
        a.add_argument("--section", help="comma-separated vertex paths, 'root', or level:I")
        a.add_argument("--normal", default="fitting",
                       help="trivial|whole|fitting|derived|center or generators '(1 2);(3 4)'")
        a.add_argument("--mode", choices=["nilpotent", "metanilpotent"], default="nilpotent")
        a.add_argument("--X", help="generating set for goodgen, semicolon-separated")
        a.add_argument("--A")
        a.add_argument("--B")
        a.add_argument("--nonsoluble-exploratory", action="store_true")
        a.set_defaults(fn=cmd_check)

    ce = sub.add_parser("counterexample").add_subparsers(dest="action", required=True)
    a = ce.add_parser("frobenius", parents=[common])
    a.add_argument("--p", type=int, default=3)
    a.add_argument("--m", type=int, default=2)
    a.add_argument("--n", type=int)
    a.set_defaults(fn=cmd_counterexample)

    corpus = sub.add_parser("corpus").add_subparsers(dest="action", required=True)
    a = corpus.add_parser("run", parents=[common])
    a.add_argument("--profile", choices=["smoke", "full"], default="smoke")
    a.add_argument("--workers", type=int, default=1)
    a.add_argument("--verbose", action="store_true", help="print every report, not only failures")
    a.set_defaults(fn=cmd_corpus_run)

    sub.add_parser("catalog", help="list catalog groups").set_defaults(fn=None)
    return p


def _command_name(args) -> str:
    parts = [args.area, getattr(args, "action", None) or getattr(args, "check", None)]
    return " ".join(p for p in parts if p)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.fn is None:
        for name, entry in CATALOG.items():
            print(f"{name:10s} order {entry.expected_order:5d}  {entry.recipe}")
        return 0
    try:
        text, result, reps = args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    timings = args.timings
    if text is not None:
        print("\n".join(text))
    if reps:
        verbose = getattr(args, "verbose", True) or args.area != "corpus"
        for r in reps:
            if verbose or r.verdict == "fail":
                print(r.to_text(timings))
        summary = summarize([r.to_json() for r in reps])
        print("summary: " + " ".join(f"{k}={v}" for k, v in summary.items()))
    status = 1 if any(r.failed for r in reps) else 0

    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": _command_name(args)}
        if result is not None:
            doc["result"] = result
        doc["reports"] = [r.to_json(timings) for r in reps]
        doc["summary"] = summarize(doc["reports"])
        doc["exit_status"] = status
        Path(args.json).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
