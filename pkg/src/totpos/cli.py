"""Command-line front end.

Machine output is JSON on stdout; a one-line human summary goes to stderr
(suppressed by ``--json``). Exit codes: 0 success, 1 a verification
failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import chevalley, gmonoid, matrix_oracle, uplus
from .coxeter import CartanGraph, InfiniteGroupError, cartan_type, type_A
from .semifield import RATFUNC
from .syntax import SEMIFIELDS, ParseError, parse_chart, parse_expression

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _graph(args) -> CartanGraph:
    if args.graph and args.type:
        raise UsageError("give either --graph or --type, not both")
    if args.graph:
        return CartanGraph.load(args.graph)
    return cartan_type(args.type or "A2")


def _word(graph: CartanGraph, parts) -> tuple:
    text = " ".join(parts).replace(",", " ")
    letters = parse_chart(text, graph.nodes)
    if any(sign != 1 for sign, _ in letters):
        raise UsageError("a Weyl group word uses plain node names")
    return tuple(node for _, node in letters)


def _element(graph, semifield, text) -> gmonoid.GElement:
    atoms = parse_expression(text, semifield, graph.nodes)
    return gmonoid.evaluate_word(graph, [(s, n) for s, n, _ in atoms], [v for _, _, v in atoms])


def _element_json(g: gmonoid.GElement) -> dict:
    out = g.to_json()
    out["expression"] = gmonoid.format_element(g)
    out["semifield"] = g.semifield.name
    return out


def cmd_reduce(args):
    g = _graph(args)
    word = _word(g, args.word)
    w = g.weyl.canonical(word)
    out = {"reduced": len(w) == len(word), "length": len(w), "canonical": [str(i) for i in w.word]}
    return out, f"length {len(w)}, canonical {' '.join(map(str, w.word)) or '(empty)'}", True


def cmd_reduced_words(args):
    g = _graph(args)
    w = g.weyl.canonical(_word(g, args.word))
    words = g.weyl.reduced_expressions(w)
    out = {"element": [str(i) for i in w.word], "count": len(words), "words": [[str(i) for i in x] for x in words]}
    return out, f"{len(words)} reduced expressions", True


def cmd_mul(args):
    g = _graph(args)
    x = _element(g, SEMIFIELDS[args.semifield], args.expr)
    return _element_json(x), gmonoid.format_element(x), True


def cmd_transition(args):
    g = _graph(args)
    K = SEMIFIELDS[args.semifield]
    x = _element(g, K, args.expr)
    target = tuple(gmonoid.Letter(*t) for t in parse_chart(args.to, g.nodes))
    positive_only = not x.w_prime and all(t.sign == 1 for t in target)
    if positive_only and all(t.sign != 0 for t in target):
        # a plain word: use the U+ chart of the positive block
        y = uplus.chart_transition(
            uplus.UPlusElement(g, K, x.w, x.w.word, x.pos), tuple(t.node for t in target)
        )
        coords = list(y.coords)
    else:
        coords = gmonoid.chart_transition(x, target)
    out = {"chart": [str(t) for t in target], "coords": [str(a) for a in coords]}
    return out, " ".join(f"{t}({a})" for t, a in zip(target, coords)), True


def cmd_tropicalize(args):
    g = _graph(args)
    x = _element(g, RATFUNC, args.expr)
    y = gmonoid.tropicalize(x)
    return _element_json(y), gmonoid.format_element(y), True


def cmd_verify_relations(args):
    n = args.n
    if n is None:
        n = _graph(args).rank + 1 if (args.graph or args.type) else 3
    t0 = time.perf_counter()
    report = matrix_oracle.verify_relations(n, args.trials, args.seed)
    ok = all(p == t for p, t in report.values())
    out = {
        "n": n,
        "trials": args.trials,
        "seed": args.seed,
        "relations": {k: {"passed": p, "total": t} for k, (p, t) in sorted(report.items())},
        "passed": ok,
        "seconds": round(time.perf_counter() - t0, 3),
    }
    return out, f"SL_{n}: {sum(p for p, _ in report.values())}/{sum(t for _, t in report.values())} relation instances hold", ok


def cmd_gk_check(args):
    n = args.n if args.n is not None else 3
    if n < 2:
        raise UsageError("--n must be at least 2")
    res = matrix_oracle.gk_check(type_A(n - 1), args.trials, args.seed)
    res["vandermonde_1_to_n"] = matrix_oracle.all_minors_positive(matrix_oracle.vandermonde(range(1, n + 1)))
    res["passed"] = res["passed"] and res["vandermonde_1_to_n"]
    res.update({"n": n, "seed": args.seed})
    return res, f"SL_{n}: {res['all_minors_positive']}/{args.trials} totally positive", res["passed"]


def cmd_chevalley_check(args):
    g = cartan_type(args.type or "A1")
    try:
        report = chevalley.verify_chevalley_relations(g, seed=args.seed)
    except (chevalley.RankError, InfiniteGroupError) as exc:
        raise UsageError(str(exc)) from None
    w0 = g.weyl.longest_element()
    charts = gmonoid.charts(g, w0, w0)
    if len(charts) <= 6:
        triples = [(a, b, c) for a in charts for b in charts for c in charts]
    else:
        triples = [(charts[0], charts[len(charts) // 2], charts[-1])]
    cocycle = []
    for h0, h1, h2 in triples:
        r = chevalley.verify_cocycle(g, h0, h1, h2, seed=args.seed)
        cocycle.append({"charts": [" ".join(map(str, h)) for h in (h0, h1, h2)], **r})
    report["cocycle"] = {
        "triples": len(cocycle),
        "passed": all(c["passed"] for c in cocycle),
        "numeric_fallbacks": sum(c["method"] == "numeric" for c in cocycle),
        "samples": cocycle[:3],
    }
    report["passed"] = report["passed"] and report["cocycle"]["passed"]
    summary = f"{args.type or 'A1'}: {sum(c['passed'] for c in report['checks'])}/{len(report['checks'])} identities, cocycle on {len(cocycle)} triples"
    return report, summary, report["passed"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="FILE", help="Cartan graph JSON {nodes, edges}")
    common.add_argument("--type", help="named graph: A<n>, A1xA1 or double (default A2)")
    common.add_argument("--semifield", choices=sorted(SEMIFIELDS), default="rational")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--n", type=int, help="matrix size for the SL_n oracle")
    common.add_argument("--json", action="store_true", help="JSON only, no summary on stderr")

    p = argparse.ArgumentParser(prog="totpos", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, extra in [
        ("reduce", cmd_reduce, "word"),
        ("reduced-words", cmd_reduced_words, "word"),
        ("mul", cmd_mul, "expr"),
        ("transition", cmd_transition, "expr"),
        ("tropicalize", cmd_tropicalize, "expr"),
        ("verify-relations", cmd_verify_relations, None),
        ("gk-check", cmd_gk_check, None),
        ("chevalley-check", cmd_chevalley_check, None),
    ]:
        sp = sub.add_parser(name, parents=[common])
        if extra == "word":
            sp.add_argument("word", nargs="+", help="letters such as '1 2 1'")
        elif extra == "expr":
            sp.add_argument("expr", help="product such as 'E1(1) F1(2/3) T2(5)'")
        if name == "transition":
            sp.add_argument("--to", required=True, help="target chart such as 'F1 T1 E1' or '2 1 2'")
        sp.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, summary, ok = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, KeyError, OSError, InfiniteGroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(out, indent=None if args.json else 2, default=str))
    if not args.json:
        print(("ok: " if ok else "FAILED: ") + summary, file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
