"""Command-line front end.

    twistext ext-weyl-schur --mu 2 --lambda 2 --p 2 --i 1 --format json
    twistext ext-divided --lambda 1 --functor I --p 3 --i 1
    twistext kan-normalize --expr "Ext(Twist(Weyl[2,1],1), Twist(Schur[2,1],1))" --p 2

Exit codes: 0 success, 1 failed oracle check, 2 usage error, 3 unsupported
functor family or resource guard.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import extcalc, kan, oracle
from .errors import (DegreeError, ExprSyntaxError, HypothesisError, PartitionError,
                     ResourceGuardError, UnsupportedFunctorError, WeightMismatchError)
from .functor import ExtQuery, Shift, parse_expr, render, to_latex
from .partition import (f_k_iterated, format_partition, p_core_quotient, parse_partition,
                        partitions_of)
from .symchar import character_table

OFFSET_ENV = "TWISTEXT_RUNNER_OFFSET"

COMMANDS = ("ext-weyl-schur", "ext-divided", "ext-fk", "ext-weyl-fk", "kan-normalize",
            "partition-core-quotient", "partition-fk", "char-table", "oracle-check")

REQUIRED = {
    "ext-weyl-schur": ("mu", "lam", "p", "i"),
    "ext-divided": ("lam", "functor", "p", "i"),
    "ext-fk": ("lam", "p", "i", "k"),
    "ext-weyl-fk": ("mu", "lam", "p", "i", "j", "k"),
    "kan-normalize": ("expr", "p"),
    "partition-core-quotient": ("lam", "p"),
    "partition-fk": ("lam", "p", "k"),
    "char-table": ("d",),
    "oracle-check": (),
}

FLAG = {"lam": "--lambda", "mu": "--mu", "p": "--p", "i": "--i", "j": "--j", "k": "--k",
        "functor": "--functor", "expr": "--expr", "d": "--d"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _partition_arg(text):
    try:
        return parse_partition(text)
    except PartitionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistext", description="Ext between Frobenius-twisted functors")
    parser.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    parser.add_argument("d_pos", nargs="?", type=int, help=argparse.SUPPRESS)
    parser.add_argument("--mu", type=_partition_arg)
    parser.add_argument("--lambda", dest="lam", type=_partition_arg)
    parser.add_argument("--p", type=int)
    parser.add_argument("--i", type=int)
    parser.add_argument("--j", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--d", type=int)
    parser.add_argument("--functor")
    parser.add_argument("--expr")
    parser.add_argument("--shift", type=int, help="integer value for every symbolic shift")
    parser.add_argument("--format", choices=("text", "json", "latex"), default="text")
    return parser


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def _runner_offset(p):
    raw = os.environ.get(OFFSET_ENV, "0")
    try:
        offset = int(raw)
    except ValueError:
        raise UsageError(f"{OFFSET_ENV} must be an integer, got {raw!r}") from None
    if p is not None and not 0 <= offset < p:
        raise UsageError(f"{OFFSET_ENV}={offset} must lie in 0..{p - 1}")
    return offset


def _normalize_argv(argv):
    argv = list(argv)
    # "char table 4" and "oracle check" are accepted as two-word commands
    if len(argv) >= 2 and (argv[0], argv[1]) in (("char", "table"), ("oracle", "check")):
        argv = [f"{argv[0]}-{argv[1]}"] + argv[2:]
    return argv


def _validate(args):
    if args.command not in COMMANDS:
        raise UsageError(f"unknown command {args.command!r}; expected one of {', '.join(COMMANDS)}")
    if args.command == "char-table" and args.d is None:
        args.d = args.d_pos
    elif args.d_pos is not None:
        raise UsageError(f"unexpected positional argument {args.d_pos}")
    for name in REQUIRED[args.command]:
        if getattr(args, name) is None:
            raise UsageError(f"{args.command} requires {FLAG[name]}")
    if args.p is not None and not _is_prime(args.p):
        raise UsageError(f"--p must be a prime, got {args.p}")
    for name in ("i", "j", "d"):
        val = getattr(args, name)
        if val is not None and val < 0:
            raise UsageError(f"{FLAG[name]} must be nonnegative")
    if args.k is not None and args.p is not None and not 0 <= args.k < args.p:
        raise UsageError(f"--k must lie in 0..{args.p - 1}")


# ---------------------------------------------------------------------------
# rendering

def _dumps(payload) -> str:
    return json.dumps(payload, ensure_ascii=True)


def _fold(answer, value):
    if value is None or not answer.shift.terms:
        return answer
    overrides = {(i, k): value for i, k, _ in answer.shift.terms}
    try:
        return answer.with_shift_values(overrides)
    except ValueError:
        # a negative total shift cannot be folded into a polynomial; keep it numeric
        spec = answer.shift.substitute(overrides)
        return extcalc.ExtAnswer(answer.poincare, spec, answer.label, answer.provenance)


def _answer_payload(command, args, answer):
    return {
        "query": command,
        "p": args.p,
        "i": args.i,
        "j": args.j,
        "k": args.k,
        "mu": list(args.mu) if args.mu is not None else None,
        "lambda": list(args.lam) if args.lam is not None else None,
        "poincare": answer.poincare.to_pairs(),
        "shift": answer.shift.to_json(),
        "label": str(answer.label) if answer.label else None,
        "provenance": answer.provenance,
    }


def answer_text(answer) -> str:
    body = answer.poincare.to_text()
    if answer.shift.is_zero():
        return body
    return f"t^{{{answer.shift.to_text()}}} * ({body})"


def answer_latex(answer) -> str:
    body = answer.poincare.to_latex()
    if answer.shift.is_zero():
        return body
    return rf"t^{{{answer.shift.to_latex()}}} \cdot \left({body}\right)"


def _render_answer(command, args, answer):
    if args.format == "json":
        return _dumps(_answer_payload(command, args, answer))
    if args.format == "latex":
        out = answer_latex(answer)
        if answer.label:
            out += rf" \quad ({answer.label.to_latex()})"
        return out
    lines = [answer_text(answer)]
    if answer.label:
        lines.append(f"label: {answer.label}")
    lines.append(f"provenance: {answer.provenance}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands

def _cmd_ext(args):
    c = args.command
    if c == "ext-weyl-schur":
        ans = extcalc.ext_weyl_schur_twisted(args.mu, args.lam, args.p, args.i)
    elif c == "ext-divided":
        functor = parse_expr(args.functor, args.p)
        ans = extcalc.ext_divided_vs_twisted(args.lam, functor, args.p, args.i)
    elif c == "ext-fk":
        if args.i < 1:
            raise UsageError("--i must be positive for ext-fk")
        ans = extcalc.ext_untwisted_from_fk(args.lam, args.p, args.i, args.k)
    else:
        if args.i < 1:
            raise UsageError("--i must be positive for ext-weyl-fk")
        ans = extcalc.ext_weyl_vs_fk_schur(args.mu, args.lam, args.p, args.i, args.j, args.k)
    return 0, _render_answer(c, args, _fold(ans, args.shift))


def _cmd_kan(args):
    offset = _runner_offset(args.p)
    expr = parse_expr(args.expr, args.p)
    nf, trace = kan.normalize(expr, args.p, offset)
    core = nf.child if isinstance(nf, Shift) else nf
    answer, reason = None, None
    if isinstance(core, ExtQuery):
        try:
            answer = _fold(kan.evaluate_normal_form(nf, args.p), args.shift)
        except UnsupportedFunctorError as exc:
            reason = str(exc)
    if args.format == "json":
        payload = {
            "query": "kan-normalize", "p": args.p, "expr": render(expr),
            "normal_form": render(nf),
            "trace": [{"rule": s.rule, "path": list(s.path), "before": render(s.before),
                       "after": render(s.after), "note": s.note} for s in trace],
            "answer": _answer_payload("kan-normalize", args, answer) if answer else None,
            "unsupported": reason,
            "provenance": answer.provenance if answer else "kan:rewrite",
        }
        return 0, _dumps(payload)
    if args.format == "latex":
        out = to_latex(expr) + r" \;\rightsquigarrow\; " + to_latex(nf)
        if answer:
            out += " = " + answer_latex(answer)
        return 0, out
    lines = [f"normal form: {render(nf)}"]
    lines += ["  " + s.to_text(n) for n, s in enumerate(trace, 1)]
    if answer:
        lines.append(f"value: {answer_text(answer)}")
        if answer.label:
            lines.append(f"label: {answer.label}")
        lines.append(f"provenance: {answer.provenance}")
    else:
        if reason:
            lines.append(f"value: not evaluated ({reason})")
        lines.append("provenance: kan:rewrite")
    return 0, "\n".join(lines)


def _quotient_payload(q):
    data = q.to_json()
    return {"core": data["core"], "quotient": data["quotient"], "offset": data["offset"]}


def _quotient_text(q):
    quot = ", ".join(f"({format_partition(x) if x else ''})" for x in q.quotient)
    return f"core ({format_partition(q.core) if q.core else ''}), quotient [{quot}]"


def _cmd_core_quotient(args):
    offset = _runner_offset(args.p)
    q = p_core_quotient(args.lam, args.p, offset)
    if args.format == "json":
        payload = {"query": "partition-core-quotient", "p": args.p, "lambda": list(args.lam),
                   **_quotient_payload(q), "provenance": "abacus:core-quotient"}
        return 0, _dumps(payload)
    if args.format == "latex":
        quot = ", ".join(_latex_partition(x) for x in q.quotient)
        return 0, rf"\mathrm{{core}} = {_latex_partition(q.core)},\ \mathrm{{quotient}} = ({quot})"
    return 0, f"{_quotient_text(q)}\nprovenance: abacus:core-quotient"


def _latex_partition(lam):
    return "(" + ",".join(map(str, lam)) + ")" if lam else r"\emptyset"


def _cmd_fk(args):
    offset = _runner_offset(args.p)
    i = 1 if args.i is None else args.i
    steps = []
    cur = args.lam
    for _ in range(i):
        cur = f_k_iterated(cur, args.p, args.k, 1, offset)
        steps.append((cur, p_core_quotient(cur, args.p, offset)))
    result = cur
    if args.format == "json":
        payload = {"query": "partition-fk", "p": args.p, "i": i, "k": args.k,
                   "lambda": list(args.lam), "result": list(result), "weight": result.weight,
                   "certificate": [{"partition": list(nu), **_quotient_payload(q)} for nu, q in steps],
                   "provenance": "abacus:fk"}
        return 0, _dumps(payload)
    if args.format == "latex":
        return 0, rf"F_{{{args.k}}}^{{{i}}}{_latex_partition(args.lam)} = {_latex_partition(result)}"
    lines = [format_partition(result), f"weight: {result.weight}"]
    for nu, q in steps:
        lines.append(f"certificate: ({format_partition(nu)}) has {_quotient_text(q)}")
    lines.append("provenance: abacus:fk")
    return 0, "\n".join(lines)


def _cmd_char_table(args):
    d = args.d
    if d > 12:
        raise ResourceGuardError("character tables are printed only for d <= 12")
    parts = partitions_of(d)
    table = character_table(d)
    rows = [[table[(lam, rho)] for rho in parts] for lam in parts]
    if args.format == "json":
        payload = {"query": "char-table", "d": d, "classes": [list(r) for r in parts],
                   "irreducibles": [list(l) for l in parts], "table": rows,
                   "provenance": "characters:murnaghan-nakayama"}
        return 0, _dumps(payload)
    names = [format_partition(x) if x else "[]" for x in parts]
    if args.format == "latex":
        head = " & ".join([""] + names) + r" \\ \hline"
        body = [" & ".join([n] + [str(v) for v in row]) + r" \\" for n, row in zip(names, rows)]
        cols = "c|" + "r" * len(parts)
        return 0, "\n".join([rf"\begin{{tabular}}{{{cols}}}", head, *body, r"\end{tabular}"])
    width = max(len(n) for n in names + [str(v) for row in rows for v in row]) + 1
    lines = [" " * width + "".join(n.rjust(width) for n in names)]
    for n, row in zip(names, rows):
        lines.append(n.rjust(width) + "".join(str(v).rjust(width) for v in row))
    lines.append("provenance: characters:murnaghan-nakayama")
    return 0, "\n".join(lines)


def _cmd_oracle(args):
    report = oracle.certification_report(3 if args.d is None else args.d)
    ok = all(passed for _, passed in report)
    if args.format == "json":
        payload = {"query": "oracle-check", "results": [{"check": n, "pass": v} for n, v in report],
                   "provenance": "oracle:polytabloid"}
        return (0 if ok else 1), _dumps(payload)
    lines = [f"{'PASS' if v else 'FAIL'} {n}" for n, v in report]
    lines.append("provenance: oracle:polytabloid")
    return (0 if ok else 1), "\n".join(lines)


_HANDLERS = {
    "ext-weyl-schur": _cmd_ext, "ext-divided": _cmd_ext, "ext-fk": _cmd_ext,
    "ext-weyl-fk": _cmd_ext, "kan-normalize": _cmd_kan,
    "partition-core-quotient": _cmd_core_quotient, "partition-fk": _cmd_fk,
    "char-table": _cmd_char_table, "oracle-check": _cmd_oracle,
}


def run(argv) -> tuple[int, str]:
    """Run one command; returns (exit code, output text)."""
    try:
        args = build_parser().parse_args(_normalize_argv(argv))
        _validate(args)
        return _HANDLERS[args.command](args)
    except (UsageError, PartitionError, WeightMismatchError, DegreeError, ExprSyntaxError) as exc:
        return 2, f"usage error: {exc}"
    except (UnsupportedFunctorError, HypothesisError, ResourceGuardError) as exc:
        return 3, f"unsupported: {exc}"
    except ValueError as exc:
        return 2, f"usage error: {exc}"


def main(argv=None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (0, 1) else sys.stderr
    print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
