"""Command-line surface: element calculus, braids, BV symbols, tessellations,
numerical check suites and presentation checking.

Exit codes: 0 success or all checks pass, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys

from .errors import ElementSyntaxError, TreegroupsError
from .kernel import Frac, Permutation
from .trees import Tree


# ---------------------------------------------------------------------------
# Element grammar
# ---------------------------------------------------------------------------


def parse_element(text: str):
    """Parse a V symbol: compact "[bits|bits|perm]" or JSON {"target","source","perm"}.

    The compact coefficient is a comma-separated one-line permutation, or the
    aliases alpha/beta for the derived T generators.
    """
    from .cosimplicial import PERMUTATIONS, TreePairSymbol

    text = text.strip()
    if text == "alpha":
        from .thompson import generators_T

        return generators_T()[0]
    if text == "beta":
        from .thompson import generators_T

        return generators_T()[1]
    if text.startswith("{"):
        data = json.loads(text)
        target, source = Tree(data["target"]), Tree(data["source"])
        perm = Permutation(tuple(data["perm"]))
        return TreePairSymbol(target, source, perm).validate(PERMUTATIONS)
    m = re.fullmatch(r"\[([01]+)\|([01]+)\|([0-9, ]+)\]", text)
    if m is None:
        raise ElementSyntaxError(f"not a symbol: {text!r}", 0)
    target, source = Tree(m.group(1)), Tree(m.group(2))
    perm = Permutation.parse(m.group(3))
    symbol = TreePairSymbol(target, source, perm)
    return symbol.validate(PERMUTATIONS)


def format_element(symbol) -> str:
    perm = ",".join(str(i) for i in symbol.coeff.images)
    return f"[{symbol.target.bits}|{symbol.source.bits}|{perm}]"


def parse_bv_element(text: str):
    """Parse a BV symbol: "[bits|bits|s1 s2^-1]" or JSON {"target","source","braid"}."""
    from .braids import BRAIDS, BraidWord
    from .cosimplicial import TreePairSymbol

    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        target, source = Tree(data["target"]), Tree(data["source"])
        braid = BraidWord.parse(data["braid"], target.leaves)
        return TreePairSymbol(target, source, braid).validate(BRAIDS)
    m = re.fullmatch(r"\[([01]+)\|([01]+)\|([^\]]*)\]", text)
    if m is None:
        raise ElementSyntaxError(f"not a BV symbol: {text!r}", 0)
    target, source = Tree(m.group(1)), Tree(m.group(2))
    braid = BraidWord.parse(m.group(3), target.leaves)
    return TreePairSymbol(target, source, braid).validate(BRAIDS)


def format_bv_element(symbol) -> str:
    return f"[{symbol.target.bits}|{symbol.source.bits}|{symbol.coeff}]"


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_el(args) -> int:
    from .cosimplicial import (
        PERMUTATIONS,
        symbol_equal,
        symbol_multiply,
        symbol_reduce,
    )
    from .thompson import element_order, eval_map, rotation_number, to_plmap

    if args.el_cmd == "compose":
        symbols = [parse_element(t) for t in args.symbols]
        acc = symbols[0]
        for s in symbols[1:]:
            acc = symbol_multiply(acc, s, PERMUTATIONS)
        print(format_element(acc))
        return 0
    if args.el_cmd == "reduce":
        print(format_element(symbol_reduce(parse_element(args.symbol), PERMUTATIONS)))
        return 0
    if args.el_cmd == "eval":
        symbol = parse_element(args.symbol)
        x = Frac.parse(args.point)
        print(eval_map(to_plmap(symbol), x))
        return 0
    if args.el_cmd == "rot":
        print(rotation_number(parse_element(args.symbol), args.cap))
        return 0
    if args.el_cmd == "order":
        order = element_order(parse_element(args.symbol), args.cap)
        print(order if order is not None else "exceeds cap")
        return 0
    if args.el_cmd == "equal":
        a, b = parse_element(args.first), parse_element(args.second)
        same = symbol_equal(a, b, PERMUTATIONS)
        print("true" if same else "false")
        return 0 if same else 1
    raise AssertionError(args.el_cmd)


def _cmd_braid(args) -> int:
    from .braids import BraidWord, braid_equal, burau, double_braid, matrix_str, perm_of

    if args.braid_cmd == "perm":
        print(perm_of(BraidWord.parse(args.word, args.strands)))
        return 0
    if args.braid_cmd == "equal":
        n = args.strands
        if n is None:
            n = max(
                BraidWord.parse(args.first).strands, BraidWord.parse(args.second).strands
            )
        same = braid_equal(BraidWord.parse(args.first, n), BraidWord.parse(args.second, n))
        print("true" if same else "false")
        return 0 if same else 1
    if args.braid_cmd == "double":
        b = double_braid(BraidWord.parse(args.word, args.strands), args.index)
        print(b)
        return 0
    if args.braid_cmd == "burau":
        m = burau(BraidWord.parse(args.word, args.strands))
        if args.json:
            print(json.dumps([[str(p) for p in row] for row in m]))
        else:
            print(matrix_str(m))
        return 0
    raise AssertionError(args.braid_cmd)


def _cmd_bv(args) -> int:
    from .braids import BRAIDS
    from .cosimplicial import project_to_V, symbol_equal, symbol_multiply

    if args.bv_cmd == "compose":
        acc = parse_bv_element(args.symbols[0])
        for t in args.symbols[1:]:
            acc = symbol_multiply(acc, parse_bv_element(t), BRAIDS)
        print(format_bv_element(acc))
        return 0
    if args.bv_cmd == "equal":
        same = symbol_equal(parse_bv_element(args.first), parse_bv_element(args.second), BRAIDS)
        print("true" if same else "false")
        return 0 if same else 1
    if args.bv_cmd == "project":
        print(format_element(project_to_V(parse_bv_element(args.symbol), BRAIDS)))
        return 0
    raise AssertionError(args.bv_cmd)


def _load_tessellation(args):
    from .ptolemy import base_tessellation, from_json

    if getattr(args, "infile", None):
        with open(args.infile, encoding="utf-8") as fh:
            return from_json(fh.read())
    return base_tessellation()


def _cmd_tess(args) -> int:
    from .ptolemy import (
        act_flip_label,
        act_word,
        cayley_ball,
        render_svg,
        stabilizer_permutation,
        to_json,
    )

    if args.tess_cmd == "act":
        t = act_word(_load_tessellation(args), args.word)
        print(to_json(t))
        return 0
    if args.tess_cmd == "flip":
        t = act_flip_label(_load_tessellation(args), Frac.parse(args.label))
        print(to_json(t))
        return 0
    if args.tess_cmd == "ball":
        spheres, adjacency = cayley_ball(args.radius)
        if args.json:
            print(json.dumps({"spheres": spheres, "vertices": len(adjacency)}))
        else:
            for r, count in enumerate(spheres):
                print(f"radius {r}: {count}")
        if args.plot:
            from .plotting import ball_growth_figure

            ball_growth_figure(spheres, args.plot)
        return 0
    if args.tess_cmd == "render":
        svg = render_svg(act_word(_load_tessellation(args), args.word))
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print(f"wrote {args.out}")
        return 0
    if args.tess_cmd == "label":
        try:
            print(stabilizer_permutation(args.word))
            return 0
        except TreegroupsError as exc:
            print(f"not stabilizing: {exc}", file=sys.stderr)
            return 1
    raise AssertionError(args.tess_cmd)


def _cmd_quant(args) -> int:
    from .checks import SUITES, run_suite

    suites = SUITES if args.suite == "all" else (args.suite,)
    rows: list[dict] = []
    for name in suites:
        rows.extend(run_suite(name, args.seed))
    failed = [r for r in rows if r["status"] != "pass"]
    if args.json:
        print(json.dumps(rows))
    else:
        by: dict[tuple[str, str], list[dict]] = {}
        for r in rows:
            by.setdefault((r["suite"], r["check"]), []).append(r)
        for (suite, check), group in by.items():
            worst = max(float(g["residual"]) for g in group)
            tol = max(float(g["tolerance"]) for g in group)
            ok = all(g["status"] == "pass" for g in group)
            print(
                f"{'PASS' if ok else 'FAIL'}  {suite:<9} {check:<28} "
                f"cases={len(group):<4} worst={worst:.3e} tol={tol:.1e}"
            )
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(
                fh, fieldnames=["suite", "check", "case", "residual", "tolerance", "status"]
            )
            writer.writeheader()
            writer.writerows(rows)
    if args.plot:
        from .plotting import residual_figure

        residual_figure(rows, args.plot)
    return 1 if failed else 0


def _cmd_presentation(args) -> int:
    from .presentations import (
        braided_houghton,
        builtin_presentations,
        check_relators,
        houghton_images,
        houghton_oracle,
        symbol_images,
        symbol_oracle,
        t_npqrs,
        tessellation_images,
        tessellation_oracle,
    )

    name = args.name
    if name in ("BraidedHoughton", "braided_houghton"):
        pres = braided_houghton(args.n)
        oracle, images = houghton_oracle(args.n), houghton_images(args.n)
    else:
        if name == "T_npqrs" and args.params:
            n, p, q, r, s = (int(x) for x in args.params.split(","))
            pres = t_npqrs(n, p, q, r, s)
        else:
            catalogue = builtin_presentations()
            if name not in catalogue:
                print(f"unknown presentation {name!r}; have {sorted(catalogue)}", file=sys.stderr)
                return 2
            pres = catalogue[name]
        if name.startswith("BraidedHoughton"):
            n = int(name.rsplit("_", 1)[1])
            oracle, images = houghton_oracle(n), houghton_images(n)
        elif args.target == "tessellation":
            oracle, images = tessellation_oracle(), tessellation_images()
        else:
            oracle, images = symbol_oracle(), symbol_images()
    report = check_relators(pres, images, oracle)
    if args.json:
        print(
            json.dumps(
                {
                    "presentation": report.presentation,
                    "oracle": report.oracle,
                    "passed": report.passed,
                    "relators": [{"word": w, "ok": ok} for w, ok in report.results],
                }
            )
        )
    else:
        for word, ok in report.results:
            print(f"{'PASS' if ok else 'FAIL'}  {word}")
        print(f"{report.presentation} in {report.oracle}: {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treegroups",
        description="Exact calculus for Thompson groups, braided tree-pair groups, "
        "Farey tessellation flips and the quantum dilogarithm.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    el = sub.add_parser("el", help="tree-pair symbol calculus for F, T, V")
    el_sub = el.add_subparsers(dest="el_cmd", required=True)
    compose = el_sub.add_parser("compose", help="multiply symbols left to right")
    compose.add_argument("symbols", nargs="+")
    reduce_p = el_sub.add_parser("reduce", help="canonical reduced symbol")
    reduce_p.add_argument("symbol")
    eval_p = el_sub.add_parser("eval", help="evaluate the PL map at a rational")
    eval_p.add_argument("symbol")
    eval_p.add_argument("point")
    rot = el_sub.add_parser("rot", help="exact rotation number of a T symbol")
    rot.add_argument("symbol")
    rot.add_argument("--cap", type=int, default=64)
    order = el_sub.add_parser("order", help="torsion order up to a cap")
    order.add_argument("symbol")
    order.add_argument("--cap", type=int, default=64)
    equal = el_sub.add_parser("equal", help="exact equality of symbols")
    equal.add_argument("first")
    equal.add_argument("second")

    braid = sub.add_parser("braid", help="braid words: equality, Burau, doubling")
    braid_sub = braid.add_subparsers(dest="braid_cmd", required=True)
    bperm = braid_sub.add_parser("perm", help="underlying permutation")
    bperm.add_argument("word")
    bperm.add_argument("--strands", type=int, default=None)
    bequal = braid_sub.add_parser("equal", help="exact equality via the Artin action")
    bequal.add_argument("first")
    bequal.add_argument("second")
    bequal.add_argument("--strands", type=int, default=None)
    bdouble = braid_sub.add_parser("double", help="cable one strand into two")
    bdouble.add_argument("word")
    bdouble.add_argument("index", type=int)
    bdouble.add_argument("--strands", type=int, default=None)
    bburau = braid_sub.add_parser("burau", help="unreduced Burau matrix")
    bburau.add_argument("word")
    bburau.add_argument("--strands", type=int, default=None)
    bburau.add_argument("--json", action="store_true")

    bv = sub.add_parser("bv", help="braided tree-pair symbols (BV)")
    bv_sub = bv.add_subparsers(dest="bv_cmd", required=True)
    bvc = bv_sub.add_parser("compose", help="multiply BV symbols")
    bvc.add_argument("symbols", nargs="+")
    bve = bv_sub.add_parser("equal", help="exact BV equality")
    bve.add_argument("first")
    bve.add_argument("second")
    bvp = bv_sub.add_parser("project", help="project to V (forget the braiding)")
    bvp.add_argument("symbol")

    tess = sub.add_parser("tess", help="marked Farey tessellations and moves")
    tess_sub = tess.add_subparsers(dest="tess_cmd", required=True)
    tact = tess_sub.add_parser("act", help="apply a move word (rightmost first)")
    tact.add_argument("--word", required=True)
    tact.add_argument("--in", dest="infile", default=None)
    tflip = tess_sub.add_parser("flip", help="flip at the edge with a given label")
    tflip.add_argument("--label", required=True)
    tflip.add_argument("--in", dest="infile", default=None)
    tball = tess_sub.add_parser("ball", help="Cayley ball sphere sizes")
    tball.add_argument("--radius", type=int, required=True)
    tball.add_argument("--json", action="store_true")
    tball.add_argument("--plot", default=None)
    trender = tess_sub.add_parser("render", help="render the disk picture as SVG")
    trender.add_argument("--out", required=True)
    trender.add_argument("--word", default="")
    trender.add_argument("--in", dest="infile", default=None)
    tlabel = tess_sub.add_parser("label", help="label permutation of a stabilizing word")
    tlabel.add_argument("--word", required=True)

    quant = sub.add_parser("quant", help="numerical check suites with residual reports")
    quant_sub = quant.add_subparsers(dest="quant_cmd", required=True)
    qcheck = quant_sub.add_parser("check", help="run a residual suite")
    qcheck.add_argument(
        "--suite",
        default="all",
        choices=["all", "mutation", "pentagon", "poisson", "qlog", "qdilog"],
    )
    qcheck.add_argument("--seed", type=int, default=0)
    qcheck.add_argument("--json", action="store_true")
    qcheck.add_argument("--csv", default=None, help="write residual rows as CSV")
    qcheck.add_argument("--plot", default=None, help="write a residual chart (PNG)")

    pres = sub.add_parser("presentation", help="check presentations in executable models")
    pres_sub = pres.add_subparsers(dest="pres_cmd", required=True)
    pcheck = pres_sub.add_parser("check", help="evaluate every relator")
    pcheck.add_argument("name")
    pcheck.add_argument("--target", default="symbols", choices=["symbols", "tessellation"])
    pcheck.add_argument("--n", type=int, default=3, help="ray count for BraidedHoughton")
    pcheck.add_argument("--params", default=None, help="n,p,q,r,s for T_npqrs")
    pcheck.add_argument("--json", action="store_true")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "el": _cmd_el,
        "braid": _cmd_braid,
        "bv": _cmd_bv,
        "tess": _cmd_tess,
        "quant": _cmd_quant,
        "presentation": _cmd_presentation,
    }
    try:
        return handlers[args.command](args)
    except (TreegroupsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
