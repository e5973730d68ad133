"""Command line front end.

    pdaconv gen-family --n 2 --k 1 -o p21.pda
    pdaconv report bounds --n 2 --k 1 [--format json]
    pdaconv convert pda-to-cfg p21.pda --trim -o p21.cfg
    pdaconv check parikh-equiv a.cfg b.fsa --max-len 12

Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.
Results go to stdout (or -o), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys
from pathlib import Path

from . import actree as at
from . import conversions as cv
from . import family as fam
from . import oracles
from .core import Cfg, Fsa, Pda, check_deterministic, check_reduced_form, to_reduced_form, word_str
from .textformat import FormatError, emit_automaton, parse_automaton


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {s}")
    return v


def _load(path) -> Pda | Cfg | Fsa:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    return parse_automaton(text)


def _load_as(path, kind):
    obj = _load(path)
    if not isinstance(obj, kind):
        raise UsageError(f"{path}: expected a {kind.__name__.upper()}, got {type(obj).__name__.upper()}")
    return obj


def _write(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _params(args) -> fam.FamilyParams:
    if args.n is None or args.k is None:
        raise UsageError("--n and --k are required")
    return fam.FamilyParams(args.n, args.k)


# --- commands ---------------------------------------------------------------


def cmd_gen_family(args):
    _write(emit_automaton(fam.build_family_pda(_params(args))), args.output)


def _n_text(N: int) -> str:
    return f"{N} (log2 {math.log2(N):.6f})"


def cmd_family_word(args):
    params = _params(args)
    stats = fam.build_unique_actree(params)
    lines = [
        f"n: {params.n}",
        f"k: {params.k}",
        f"N: {_n_text(stats.size)}",
        f"dimension: {stats.dimension}",
        f"word: b^{stats.size}",
    ]
    _write("\n".join(lines) + "\n", args.output)


def cmd_convert(args):
    budget = args.budget
    if args.kind == "pda-to-cfg":
        p = _load_as(args.file, Pda)
        out = cv.pda_to_cfg_triples(p, trim=args.trim, budget=budget)
    elif args.kind == "udpda-to-cfg":
        out = cv.udpda_to_cfg(_load_as(args.file, Pda))
    elif args.kind == "udpda-final-to-cfg":
        out = cv.udpda_final_to_cfg(_load_as(args.file, Pda))
    elif args.kind == "cfg-to-parikh-nfa":
        g = _load_as(args.file, Cfg)
        out = cv.cfg_to_parikh_fsa(cv.trim_cfg(g) if args.trim else g, args.cap)
    elif args.kind == "pda-to-parikh-nfa":
        out = cv.pda_to_parikh_fsa(_load_as(args.file, Pda), cap=args.cap, budget=budget)
    elif args.kind == "reduce":
        out = to_reduced_form(_load_as(args.file, Pda))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown conversion {args.kind}")
    if args.trim and isinstance(out, Cfg):
        out = cv.trim_cfg(out)
    _write(emit_automaton(out), args.output)


def _enum_kwargs(args):
    return {"max_steps": args.max_steps, "max_stack": args.max_stack}


def cmd_simulate(args):
    obj = _load(args.file)
    kw = _enum_kwargs(args) if isinstance(obj, Pda) else {}
    res = oracles.enumerate_language(obj, args.max_len, **kw)
    lines = [word_str(w) for w in res.sorted_words()]
    lines.append(f"# complete: {'yes' if res.complete else 'no'}")
    _write("\n".join(lines) + "\n", args.output)
    if not res.complete:
        print("warning: enumeration budget exhausted; the word list may be partial", file=sys.stderr)


def cmd_actree(args):
    if args.file is not None:
        p = _load_as(args.file, Pda)
        trees = oracles.enumerate_actrees(p, args.max_size)
        chunks = [at.emit_actree(t) for t in trees]
        _write("".join(chunks) if chunks else "# no accepting actree within the size bound\n", args.output)
        return
    stats = fam.build_unique_actree(_params(args))
    try:
        t = stats.expand(args.node_budget)
    except fam.NodeBudgetExceeded as e:
        raise UsageError(str(e)) from e
    _write(at.emit_actree(t), args.output)


def cmd_check(args):
    kind = args.kind
    files = args.files
    want = 2 if kind in ("lang-equiv", "parikh-equiv") else 1
    if len(files) != want:
        raise UsageError(f"check {kind} takes {want} file argument(s)")
    if kind in ("lang-equiv", "parikh-equiv"):
        a, b = _load(files[0]), _load(files[1])
        kw = _enum_kwargs(args)
        kwa = kw if isinstance(a, Pda) else {}
        kwb = kw if isinstance(b, Pda) else {}
        ra = oracles.enumerate_language(a, args.max_len, **kwa)
        rb = oracles.enumerate_language(b, args.max_len, **kwb)
        if kind == "lang-equiv":
            diff = oracles.language_difference(ra, rb, args.max_len)
            if diff:
                raise CheckFailed(f"languages differ up to length {args.max_len}; first word: {word_str(diff[0])}")
        else:
            diff = oracles.parikh_difference(ra, rb, args.max_len)
            if diff:
                raise CheckFailed(
                    f"Parikh images differ up to length {args.max_len}; first vector: {diff[0]}"
                )
        print(f"{kind}: equivalent up to length {args.max_len}")
        return
    obj = _load(files[0])
    if kind == "deterministic":
        ok, witness = check_deterministic(_as(obj, Pda, files[0]))
        if not ok:
            raise CheckFailed(f"not deterministic: {witness[0]} conflicts with {witness[1]}")
    elif kind == "reduced":
        if not check_reduced_form(_as(obj, Pda, files[0])):
            raise CheckFailed("not in reduced form: some action pushes more than two symbols")
    elif kind == "21nf":
        if not cv.check_21nf(_as(obj, Cfg, files[0])):
            raise CheckFailed("not in 2-1 normal form")
    print(f"{kind}: ok")


def _as(obj, kind, path):
    if not isinstance(obj, kind):
        raise UsageError(f"{path}: expected a {kind.__name__.upper()}")
    return obj


def _report_text(rep: dict) -> str:
    lines = []
    for key, val in rep.items():
        if key == "N":
            lines.append(f"N: {_n_text(val)}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def cmd_report(args):
    if args.grid:
        N_max, K_max = args.grid
        cells = [fam.FamilyParams(n, k) for n in range(1, N_max + 1) for k in range(1, K_max + 1)]
    else:
        cells = [_params(args)]
    reports = [fam.bounds_report(c).as_dict() for c in cells]
    if args.format == "json":
        text = json.dumps(reports if args.grid else reports[0], indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(_report_text(r) for r in reports)
    _write(text, args.output)


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=_positive, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="pdaconv", description=__doc__.split("\n")[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for randomised work")
    parser.add_argument("--budget", type=_positive, default=cv.DEFAULT_BUDGET,
                        help="rule-instantiation budget for the triple construction")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(sp, name, func, **kw):
        p = sp.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        p.add_argument("-o", "--output", default=None)
        return p

    def family_flags(p):
        p.add_argument("--n", type=_positive)
        p.add_argument("--k", type=_positive)

    def enum_flags(p):
        p.add_argument("--max-len", type=_positive, default=12)
        p.add_argument("--max-steps", type=_positive, default=2_000_000)
        p.add_argument("--max-stack", type=_positive, default=10_000)

    family_flags(leaf(sub, "gen-family", cmd_gen_family, help="write P(n,k)"))
    family_flags(leaf(sub, "family-word", cmd_family_word, help="length N of the word of P(n,k)"))

    p = leaf(sub, "convert", cmd_convert, help="run a conversion")
    p.add_argument("kind", choices=["pda-to-cfg", "udpda-to-cfg", "udpda-final-to-cfg",
                                    "cfg-to-parikh-nfa", "pda-to-parikh-nfa", "reduce"])
    p.add_argument("file")
    p.add_argument("--trim", action="store_true")
    p.add_argument("--cap", type=_positive, default=None)

    p = leaf(sub, "simulate", cmd_simulate, help="enumerate a bounded language")
    p.add_argument("file")
    enum_flags(p)

    p = leaf(sub, "actree", cmd_actree, help="print actrees")
    p.add_argument("file", nargs="?")
    family_flags(p)
    p.add_argument("--max-size", type=_positive, default=20)
    p.add_argument("--node-budget", type=_positive, default=10**6)

    p = leaf(sub, "check", cmd_check, help="run a check (exit 1 if it fails)")
    p.add_argument("kind", choices=["lang-equiv", "parikh-equiv", "deterministic", "reduced", "21nf"])
    p.add_argument("files", nargs="+")
    enum_flags(p)

    rp = sub.add_parser("report", help="reports")
    rsub = rp.add_subparsers(dest="report", required=True)
    p = leaf(rsub, "bounds", cmd_report, help="bound arithmetic for P(n,k)")
    family_flags(p)
    p.add_argument("--grid", type=_positive, nargs=2, metavar=("N", "K"))
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    random.seed(args.seed)
    try:
        args.func(args)
    except CheckFailed as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    except (UsageError, FormatError, fam.InvalidParams, cv.NotDeterministic, cv.NotUnary,
            cv.WrongAcceptance, cv.Not21NF, cv.BudgetExceeded, oracles.IncompleteEnumeration) as e:
        msg = str(e)
        name = type(e).__name__
        print(msg if msg.startswith(name) else f"{name}: {msg}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
