"""Command-line front end.

Exit codes: 0 a qZ-pair exists (or a pair verified / was found), 3 no pair
(or verification failed / nothing found), 2 input rejected, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .algebra import frac, free_of
from .biproper import bi_normal
from .decide import HAS, HAS_NOT, REJECTED, decide_qzpair
from .dsl import parse
from .errors import BudgetExceeded, QTeleError, TermSyntaxError
from .telescope import QZPair, search_qzpair, verify_qzpair
from .textio import parse_ratfun, to_text

EXIT_OK, EXIT_ERROR, EXIT_REJECTED, EXIT_NO = 0, 1, 2, 3
VERDICT_EXIT = {HAS: EXIT_OK, HAS_NOT: EXIT_NO, REJECTED: EXIT_REJECTED}


def read_term_text(arg):
    """A ``.qt`` file (comments start with ``#``) or an inline expression."""
    p = Path(arg)
    if p.suffix == ".qt" or (len(arg) < 4096 and p.is_file()):
        lines = [ln.split("#", 1)[0] for ln in p.read_text().splitlines()]
        return " ".join(ln.strip() for ln in lines if ln.strip())
    return arg


def read_pair(arg):
    p = Path(arg)
    text = p.read_text() if p.is_file() else arg
    return QZPair.from_json(text)


def _report_text(rep):
    out = [f"verdict: {rep.verdict}"]
    if rep.verdict == REJECTED:
        out += [f"warning: {w}" for w in rep.warnings]
        return "\n".join(out)
    d = rep.to_dict()
    q = d["qnr"]
    out.append(f"q-NR: r={q['r']}  s={q['s']}  u={q['u']}  v={q['v']}  unit={q['unit']}")
    out.append(f"U1: {d['decomp']['U1']}")
    out.append(f"F: {d['decomp']['F']}")
    out.append(f"V: {d['decomp']['V']}")
    out.append(f"v2: {d['v2']}")
    prop = d["properness"]
    out.append(f"q-proper: {'yes' if prop['is_proper'] else 'no'}")
    if prop["witness"]:
        out.append(f"witness: {prop['witness']}")
    for e in prop["directions"]:
        out.append(f"  direction ({e['a']},{e['b']}): {e['invariant_part']}")
    out.append(f"C1: {d['certificate']['C1']}")
    out.append(f"C2: {d['certificate']['C2']}")
    for k, v in d["checks"].items():
        out.append(f"check {k}: {v}")
    out.append(f"time: {rep.timing_ms} ms")
    return "\n".join(out)


def _decide_kwargs(args):
    return dict(
        check_points=args.check_points,
        q_check=Fraction(args.q_check),
        cross_check=getattr(args, "cross_check", False),
        max_order=args.max_order,
        degree_cap=args.degree_cap,
    )


def cmd_decide(args):
    t = parse(read_term_text(args.input))
    rep = decide_qzpair(t, **_decide_kwargs(args))
    print(rep.to_json() if args.format == "json" else _report_text(rep))
    return VERDICT_EXIT[rep.verdict]


def cmd_verify(args):
    t = parse(read_term_text(args.term))
    pair = read_pair(args.pair)
    ok = verify_qzpair(t, pair)
    if args.format == "json":
        print(json.dumps({"verified": ok}))
    else:
        print("verified" if ok else "identity fails")
    return EXIT_OK if ok else EXIT_NO


def cmd_search(args):
    t = parse(read_term_text(args.input))
    pair = search_qzpair(t, args.max_order, args.degree_cap, max_steps=args.max_steps)
    if args.format == "json":
        print(json.dumps(None if pair is None else pair.to_dict(), indent=2))
    elif pair is None:
        print("no qZ-pair found within the caps")
    else:
        print(f"order: {pair.order}")
        for i, a in enumerate(pair.coeffs):
            print(f"a_{i}: {to_text(a)}")
        print(f"C: {to_text(pair.cert)}")
    return EXIT_OK if pair is not None else EXIT_NO


# --------------------------------------------------------------------------
# corpus


def same_up_to_qunit(a, b):
    """Equal up to a nonzero factor from Q(q)."""
    a, b = frac(a), frac(b)
    if not a or not b:
        return not a and not b
    return free_of(a / b, ("x", "y"))


def check_entry(entry, opts):
    """Run one corpus entry; returns a row dict (never raises)."""
    row = {"name": entry.get("name", "?"), "expected": entry.get("expected_verdict"),
           "got": None, "ok": False, "notes": []}
    try:
        t = parse(entry["term"])
        rep = decide_qzpair(t, check_points=opts["check_points"], q_check=opts["q_check"])
        row["got"] = rep.verdict
        ok = rep.verdict == row["expected"]
        if ok and "expected_qnr" in entry and rep.qnr is not None:
            for key in ("r", "s", "u", "v"):
                exp = parse_ratfun(entry["expected_qnr"][key])
                if bi_normal(exp.numer) != bi_normal(frac(rep.qnr[key]).numer):
                    ok = False
                    row["notes"].append(f"q-NR entry {key} differs")
        if ok and "expected_V" in entry and rep.decomp is not None:
            if not same_up_to_qunit(parse_ratfun(entry["expected_V"]), rep.decomp["V"]):
                ok = False
                row["notes"].append("V differs")
        if ok and "known_pair" in entry:
            if not verify_qzpair(t, QZPair.from_dict(entry["known_pair"])):
                ok = False
                row["notes"].append("known pair does not verify")
        if ok and opts["search"]:
            try:
                pair = search_qzpair(t, opts["max_order"], opts["degree_cap"])
            except BudgetExceeded:
                pair = None
            if pair is not None and rep.verdict != HAS:
                ok = False
                row["notes"].append("search found a pair for a NoQZPair term")
            row["notes"].append("search: pair found" if pair else "search: none")
        row["ok"] = ok
    except Exception as exc:  # reported per entry, never aborts the run
        row["notes"].append(f"error: {type(exc).__name__}: {exc}")
    return row


def _load_corpus(path):
    p = Path(path)
    files = sorted(p.glob("*.corpus")) if p.is_dir() else [p]
    entries = []
    for f in files:
        data = json.loads(f.read_text())
        for e in data if isinstance(data, list) else [data]:
            e.setdefault("name", f.stem)
            entries.append(e)
    return entries


def run_corpus(entries, opts, jobs=1):
    if jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(check_entry, entries, [opts] * len(entries)))
    return [check_entry(e, opts) for e in entries]


def cmd_corpus(args):
    entries = _load_corpus(args.dir)
    opts = dict(check_points=args.check_points, q_check=Fraction(args.q_check),
                search=args.search, max_order=args.max_order, degree_cap=args.degree_cap)
    rows = run_corpus(entries, opts, args.jobs)
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        width = max([len(r["name"]) for r in rows] + [4])
        print(f"{'name':<{width}}  {'expected':<10} {'got':<10} result")
        for r in rows:
            status = "PASS" if r["ok"] else "FAIL"
            notes = ("  " + "; ".join(r["notes"])) if r["notes"] else ""
            print(f"{r['name']:<{width}}  {str(r['expected']):<10} {str(r['got']):<10} {status}{notes}")
        print(f"{sum(r['ok'] for r in rows)}/{len(rows)} passed")
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_NO


# --------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-order", type=int, default=2)
    common.add_argument("--degree-cap", type=int, default=8)
    common.add_argument("--check-points", type=int, default=6,
                        help="grid size for pointwise sanity checks (0 disables)")
    common.add_argument("--q-check", default="2", help="rational value of q for evaluation checks")

    p = argparse.ArgumentParser(prog="qtele", description="Decide existence of qZ-pairs for "
                                "bivariate q-hypergeometric terms.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", parents=[common], help="run the decision procedure")
    d.add_argument("input", help=".qt file or inline term")
    d.add_argument("--cross-check", action="store_true", help="also run the bounded search")
    d.set_defaults(func=cmd_decide)

    v = sub.add_parser("verify", parents=[common], help="verify a qZ-pair")
    v.add_argument("term", help=".qt file or inline term")
    v.add_argument("pair", help=".qz file or inline JSON")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="bounded qZ-pair search")
    s.add_argument("input", help=".qt file or inline term")
    s.add_argument("--max-steps", type=int, default=None)
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("corpus", parents=[common], help="run a directory of .corpus entries")
    c.add_argument("dir")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--search", action="store_true", help="cross-check every entry with search")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TermSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (QTeleError, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
