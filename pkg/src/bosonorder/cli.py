"""Command-line front end.

Subcommands cover every computation path (ordering, coefficient tables,
numeric series, enumeration) plus a selfcheck that cross-verifies them on
one input type.  Exit codes: 0 success, 1 computational error or failed
selfcheck, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (ANNIHILATION, CREATION, BosonWord, NormalForm,
                      StringType, _runs, extract_stirling, normal_order,
                      type_from_word, word_from_type)
from .combinat import (DEFAULT_ENUM_CAP, colony_to_dot, colony_to_text,
                       count_colonies_by_free_legs, count_increasing_forests,
                       empty_cells, enumerate_colonies, enumerate_settlements,
                       free_legs)
from .errors import BosonOrderError, LengthMismatch, ParseError
from .series import (forest_egf, tree_series, tree_series_closed_form)
from .stirling import (DEFAULT_MAX_TERMS, check_polynomial_identity,
                       dobinski_eval, falling_factorial, settlement_product,
                       stirling_closed_form, stirling_recurrence)

_TOKEN = re.compile(r"(ad|a)(?:\^([0-9]+))?")


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def parse_word(text: str) -> BosonWord:
    """Whitespace-separated tokens, each 'ad' or 'a' with an optional
    '^<positive integer>' suffix, read left to right as the algebraic word."""
    letters = []
    for match in re.finditer(r"\S+", text):
        token = match.group(0)
        m = _TOKEN.fullmatch(token)
        if m is None:
            raise ParseError(
                f"unrecognized token {token!r}: expected 'ad' or 'a', "
                "optionally with ^<positive integer>",
                _byte_offset(text, match.start()))
        count = int(m.group(2)) if m.group(2) else 1
        if count < 1:
            raise ParseError(f"exponent must be positive in {token!r}",
                             _byte_offset(text, match.start()))
        letter = CREATION if m.group(1) == "ad" else ANNIHILATION
        letters.extend([letter] * count)
    return BosonWord(tuple(letters))


def word_to_text(word: BosonWord) -> str:
    """Run-length pretty-printer; parse_word inverts it exactly."""
    parts = []
    for letter, count in _runs(word.letters):
        token = "ad" if letter is CREATION else "a"
        parts.append(token if count == 1 else f"{token}^{count}")
    return " ".join(parts)


def _parse_int_list(text: str) -> tuple[int, ...]:
    values = []
    offset = 0
    for part in text.split(","):
        if not re.fullmatch(r"[0-9]+", part) or int(part) < 1:
            raise ParseError(f"expected a positive integer, got {part!r}", offset)
        values.append(int(part))
        offset += len(part.encode("utf-8")) + 1
    return tuple(values)


def parse_type(r_text: str, s_text: str) -> StringType:
    """Comma-separated exponent vectors, factor 1 first."""
    r = _parse_int_list(r_text)
    s = _parse_int_list(s_text)
    if len(r) != len(s):
        raise LengthMismatch(f"r has {len(r)} entries but s has {len(s)}")
    return StringType(r, s)


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""


def run_selfcheck(t: StringType, m_max: int = 4, x_samples: int = 8,
                  enum_cap: int = DEFAULT_ENUM_CAP) -> list[CheckResult]:
    """Cross-verify every computation path on one type.

    Checks: all coefficient-table methods agree; every colony's empty cells
    equal excess plus free legs; settlement counts from enumeration, the
    product formula, and the table all coincide; the falling-factorial
    identity holds on sample points.  Checks whose derivation needs
    nonnegative prefix excesses are skipped (not failed) when the type has a
    negative one.  TooLarge propagates if the type exceeds the cap.
    """
    results = []
    table = dict(stirling_recurrence(t).values)

    legs = {"recurrence": table,
            "enumeration": count_colonies_by_free_legs(t, enum_cap=enum_cap)}
    if t.excess >= 0:
        _, legs["rewriting"] = extract_stirling(normal_order(word_from_type(t)))
    if t.has_nonnegative_prefixes():
        legs["closed-form"] = {
            k: v for k in range(t.s[0], t.total_s + 1)
            if (v := stirling_closed_form(t, k))}
    mismatched = {name: vals for name, vals in legs.items() if vals != table}
    if mismatched:
        results.append(CheckResult("stirling tables agree", "fail",
                                   f"recurrence gives {table}, others {mismatched}"))
    else:
        results.append(CheckResult("stirling tables agree", "pass",
                                   f"{len(legs)} methods on table {table}"))

    bad = None
    for colony in enumerate_colonies(t, enum_cap):
        if empty_cells(colony) != t.excess + free_legs(colony):
            bad = colony
            break
    if bad is None:
        results.append(CheckResult("empty cells equal excess plus free legs",
                                   "pass"))
    else:
        results.append(CheckResult(
            "empty cells equal excess plus free legs", "fail",
            f"{empty_cells(bad)} cells vs {t.excess} + {free_legs(bad)}"))

    with_product = t.has_nonnegative_prefixes()
    bad_counts = []
    for m in range(m_max + 1):
        enumerated = enumerate_settlements(t, m, enum_cap)
        by_table = sum(v * falling_factorial(m, k) for k, v in table.items())
        pair_ok = enumerated == by_table
        if with_product:
            pair_ok = pair_ok and enumerated == settlement_product(t, m)
        if not pair_ok:
            bad_counts.append((m, enumerated, by_table,
                               settlement_product(t, m)))
    if bad_counts:
        results.append(CheckResult(
            "settlement counts agree", "fail",
            f"(m, enumerated, from table, product) = {bad_counts}"))
    else:
        results.append(CheckResult("settlement counts agree", "pass",
                                   f"m = 0..{m_max}"))

    if t.has_nonnegative_prefixes():
        bad_x = [x for x in range(x_samples)
                 if not check_polynomial_identity(t, x)]
        if bad_x:
            results.append(CheckResult("falling-factorial identity", "fail",
                                       f"fails at x = {bad_x}"))
        else:
            results.append(CheckResult("falling-factorial identity", "pass",
                                       f"x = 0..{x_samples - 1}"))
    else:
        results.append(CheckResult("falling-factorial identity", "skip",
                                   "needs nonnegative prefix excesses"))
    return results


def _default_enum_cap() -> int:
    raw = os.environ.get("BOSON_ORDER_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError:
        raise ParseError(
            f"BOSON_ORDER_ENUM_CAP must be an integer, got {raw!r}", 0)


def _make_common(allow_csv: bool) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    formats = ("plain", "json", "csv") if allow_csv else ("plain", "json")
    common.add_argument("--format", choices=formats, default="plain",
                        help="output format")
    common.add_argument("--out", metavar="PATH",
                        help="write output to a file instead of stdout")
    common.add_argument("--digits", type=int, default=50,
                        help="significant digits for numeric results")
    common.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS,
                        dest="max_terms",
                        help="series term cap before giving up")
    common.add_argument("--enum-cap", type=int, dest="enum_cap",
                        help="enumeration size cap")
    return common


def _make_word_input() -> argparse.ArgumentParser:
    inp = argparse.ArgumentParser(add_help=False)
    inp.add_argument("--word", help="operator word, e.g. 'ad^2 a^2'")
    inp.add_argument("--r", help="comma-separated creation exponents, factor 1 first")
    inp.add_argument("--s", help="comma-separated annihilation exponents")
    return inp


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bosonorder",
        description="Exact normal ordering and the combinatorics it counts.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    common = _make_common(allow_csv=False)
    common_csv = _make_common(allow_csv=True)
    word_input = _make_word_input()

    sub.add_parser("order", parents=[common, word_input],
                   help="normal order a word")
    p = sub.add_parser("stirling", parents=[common_csv, word_input],
                       help="coefficient table of a word or type")
    p.add_argument("--method", default="auto",
                   choices=("auto", "rewrite", "recurrence", "closed-form",
                            "enumerate"))
    p = sub.add_parser("bell", parents=[common, word_input],
                       help="sum of the coefficient table")
    p.add_argument("--method", default="auto",
                   choices=("auto", "rewrite", "recurrence", "closed-form",
                            "enumerate"))
    p = sub.add_parser("dobinski", parents=[common, word_input],
                       help="numeric series value of the Bell polynomial")
    p.add_argument("--x", default="1", help="nonnegative rational argument")
    p = sub.add_parser("colonies", parents=[common, word_input],
                       help="enumerate colonies of a type")
    p.add_argument("--dot", action="store_true",
                   help="emit DOT graphs instead of text placements")
    p = sub.add_parser("settlements", parents=[common, word_input],
                       help="count settlements of a type")
    p.add_argument("--m", type=int, required=True,
                   help="number of distinguishable ground cells")
    p.add_argument("--method", default="enumerate",
                   choices=("enumerate", "product"))
    p = sub.add_parser("forests", parents=[common],
                       help="count increasing planar forests")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--n", type=int, required=True,
                   help="number of internal vertices")
    p = sub.add_parser("series", parents=[common],
                       help="tree/forest generating function coefficients")
    p.add_argument("--kind", default="tree",
                   choices=("tree", "tree-closed", "forest"))
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--order", type=int, default=10)
    p = sub.add_parser("selfcheck", parents=[common, word_input],
                       help="cross-verify all computation paths on one type")
    p.add_argument("--m-max", type=int, default=4, dest="m_max")
    p.add_argument("--x-samples", type=int, default=8, dest="x_samples")
    return parser


def _resolve_input(args, parser,
                   need_type: bool) -> tuple[BosonWord, Optional[StringType]]:
    has_word = args.word is not None
    has_type = args.r is not None or args.s is not None
    if has_word == has_type:
        parser.error("provide exactly one input: --word or --r together with --s")
    if has_word:
        word = parse_word(args.word)
        t = type_from_word(word)
        if need_type and t is None:
            parser.error("this word does not factor into ad^r a^s blocks; "
                         "pass --r and --s instead")
        return word, t
    if args.r is None or args.s is None:
        parser.error("--r and --s must be given together")
    t = parse_type(args.r, args.s)
    return word_from_type(t), t


def _type_payload(t: Optional[StringType]):
    if t is None:
        return None
    return {"r": list(t.r), "s": list(t.s)}


def _format_normal_form(form: NormalForm) -> str:
    parts = []
    for i, j, c in form.monomials():
        factors = []
        if i:
            factors.append("ad" if i == 1 else f"ad^{i}")
        if j:
            factors.append("a" if j == 1 else f"a^{j}")
        if factors:
            term = " ".join(factors)
            parts.append(term if c == 1 else f"{c} {term}")
        else:
            parts.append(str(c))
    return " + ".join(parts) if parts else "0"


def _cmd_order(args, parser):
    word, _ = _resolve_input(args, parser, need_type=False)
    form = normal_order(word)
    if args.format == "json":
        payload = {
            "word": word_to_text(word),
            "excess": form.excess,
            "terms": {str(k): str(v) for k, v in form.coeffs.items()},
        }
        return json.dumps(payload, indent=2), 0
    return _format_normal_form(form), 0


def _stirling_values(args, parser) -> tuple[Optional[StringType], int,
                                            dict[int, int], str]:
    word, t = _resolve_input(args, parser, need_type=False)
    method = args.method
    if method == "auto":
        method = "recurrence" if t is not None else "rewrite"
    if method != "rewrite" and t is None:
        parser.error(f"method {method!r} needs a type; this word does not "
                     "factor into ad^r a^s blocks")
    if method == "rewrite":
        d, values = extract_stirling(normal_order(word))
    elif method == "recurrence":
        d, values = t.excess, dict(stirling_recurrence(t).values)
    elif method == "closed-form":
        d = t.excess
        values = {k: v for k in range(t.s[0], t.total_s + 1)
                  if (v := stirling_closed_form(t, k))}
    else:
        d = t.excess
        values = count_colonies_by_free_legs(t, enum_cap=_cap(args))
    return t, d, values, method


def _cmd_stirling(args, parser):
    t, d, values, method = _stirling_values(args, parser)
    bell = sum(values.values())
    if args.format == "json":
        payload = {
            "type": _type_payload(t),
            "d": d,
            "stirling": {str(k): str(v) for k, v in sorted(values.items())},
            "bell": str(bell),
            "method": method,
        }
        return json.dumps(payload, indent=2), 0
    if args.format == "csv":
        lines = ["k,S_k"] + [f"{k},{v}" for k, v in sorted(values.items())]
        return "\n".join(lines), 0
    lines = [f"d = {d}"]
    lines += [f"S({k}) = {v}" for k, v in sorted(values.items())]
    lines.append(f"bell = {bell}")
    return "\n".join(lines), 0


def _cmd_bell(args, parser):
    t, d, values, method = _stirling_values(args, parser)
    bell = sum(values.values())
    if args.format == "json":
        payload = {
            "type": _type_payload(t),
            "d": d,
            "bell": str(bell),
            "method": method,
        }
        return json.dumps(payload, indent=2), 0
    return str(bell), 0


def _cmd_dobinski(args, parser):
    _, t = _resolve_input(args, parser, need_type=True)
    try:
        x = Fraction(args.x)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot read {args.x!r} as a rational number", 0)
    if x < 0:
        raise ParseError("x must be nonnegative", 0)
    if args.digits < 1:
        parser.error("--digits must be positive")
    approx = dobinski_eval(t, x, args.digits, args.max_terms)
    if args.format == "json":
        payload = {
            "type": _type_payload(t),
            "x": str(x),
            "value": str(approx.value),
            "precision_digits": approx.precision_digits,
            "terms_used": approx.terms_used,
        }
        return json.dumps(payload, indent=2), 0
    return str(approx.value), 0


def _cmd_colonies(args, parser):
    _, t = _resolve_input(args, parser, need_type=True)
    colonies = list(enumerate_colonies(t, _cap(args)))
    if args.dot:
        return "\n\n".join(colony_to_dot(c) for c in colonies), 0
    counts: dict[int, int] = {}
    for c in colonies:
        counts[free_legs(c)] = counts.get(free_legs(c), 0) + 1
    if args.format == "json":
        payload = {
            "type": _type_payload(t),
            "count": len(colonies),
            "by_free_legs": {str(k): str(v) for k, v in sorted(counts.items())},
            "colonies": [colony_to_text(c).split("\n") for c in colonies],
        }
        return json.dumps(payload, indent=2), 0
    blocks = [f"colony {i} (free legs {free_legs(c)})\n{colony_to_text(c)}"
              for i, c in enumerate(colonies, start=1)]
    blocks.append(f"total {len(colonies)}")
    return "\n\n".join(blocks), 0


def _cmd_settlements(args, parser):
    _, t = _resolve_input(args, parser, need_type=True)
    if args.m < 0:
        parser.error("--m must be nonnegative")
    if args.method == "product":
        count = settlement_product(t, args.m)
    else:
        count = enumerate_settlements(t, args.m, _cap(args))
    if args.format == "json":
        payload = {
            "type": _type_payload(t),
            "m": args.m,
            "count": str(count),
            "method": args.method,
        }
        return json.dumps(payload, indent=2), 0
    return str(count), 0


def _cmd_forests(args, parser):
    if args.arity < 1:
        parser.error("--arity must be at least 1")
    if args.n < 0:
        parser.error("--n must be nonnegative")
    count = count_increasing_forests(args.arity, args.n, _cap(args))
    if args.format == "json":
        payload = {"arity": args.arity, "n": args.n, "count": str(count)}
        return json.dumps(payload, indent=2), 0
    return str(count), 0


def _cmd_series(args, parser):
    if args.arity < 2:
        parser.error("--arity must be at least 2 (arity 1 is the ordinary "
                     "Bell case; use bell/forests)")
    if args.order < 0:
        parser.error("--order must be nonnegative")
    builder = {"tree": tree_series, "tree-closed": tree_series_closed_form,
               "forest": forest_egf}[args.kind]
    series = builder(args.arity, args.order)
    counts = [series.egf_count(n) for n in range(series.order + 1)]
    if args.format == "json":
        payload = {
            "kind": args.kind,
            "arity": args.arity,
            "order": series.order,
            "convention": series.convention,
            "coefficients": [str(c) for c in series.coeffs],
            "counts": [str(c) for c in counts],
        }
        return json.dumps(payload, indent=2), 0
    lines = [f"a_{n} = {c} (count {counts[n]})"
             for n, c in enumerate(series.coeffs)]
    return "\n".join(lines), 0


def _cmd_selfcheck(args, parser):
    _, t = _resolve_input(args, parser, need_type=True)
    if args.m_max < 0:
        parser.error("--m-max must be nonnegative")
    if args.x_samples < 1:
        parser.error("--x-samples must be positive")
    results = run_selfcheck(t, args.m_max, args.x_samples, _cap(args))
    failed = any(r.status == "fail" for r in results)
    if args.format == "json":
        payload = {
            "type": _type_payload(t),
            "checks": [{"name": r.name, "status": r.status, "detail": r.detail}
                       for r in results],
        }
        text = json.dumps(payload, indent=2)
    else:
        text = "\n".join(
            f"{r.status.upper()} {r.name}" + (f": {r.detail}" if r.detail else "")
            for r in results)
    return text, 1 if failed else 0


def _cap(args) -> int:
    return args.enum_cap if args.enum_cap is not None else _default_enum_cap()


_HANDLERS = {
    "order": _cmd_order,
    "stirling": _cmd_stirling,
    "bell": _cmd_bell,
    "dobinski": _cmd_dobinski,
    "colonies": _cmd_colonies,
    "settlements": _cmd_settlements,
    "forests": _cmd_forests,
    "series": _cmd_series,
    "selfcheck": _cmd_selfcheck,
}


def _emit(text: str, out: Optional[str]) -> None:
    payload = text if text.endswith("\n") else text + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = _HANDLERS[args.subcommand](args, parser)
    except (ParseError, LengthMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BosonOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(text, args.out)
    return code


def console_main() -> None:
    sys.exit(main())
