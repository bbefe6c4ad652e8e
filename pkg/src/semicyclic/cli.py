"""Command line: compute invariants, run verification suites, print tables."""
from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import braiding, words
from .cyclo import CycScalar, FieldSpec, ParameterError, field_spec
from .evaluator import InvariantViolation, evaluate, kashaev
from .report import Report
from .reps import check_relations, conjugation_iso, generalized, semicyclic, shift_relations, standard
from .tangle import BUILTIN_NAMES, DiagramError, ParseError, all_turaev_pairs, builtin, parse

SUITES = ("relations", "rmatrix", "ybe", "fusion", "turaev", "kashaev", "words", "all")
KNOTS = ("unknot", "unknot_twisted", "trefoil", "figure_eight")

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_SCHUR = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    n: int
    a_spec: str = "sym"
    rep_index: int | str = "default"
    diagram: str | None = None
    format: str = "exact"

    @property
    def spec(self) -> FieldSpec:
        return field_spec(self.n)

    @property
    def index(self) -> int:
        if self.rep_index == "default":
            return (self.n + 1) // 2
        return int(self.rep_index) % self.n

    def a_value(self) -> CycScalar:
        return parse_a(self.a_spec, self.spec)

    def rep(self):
        return semicyclic(self.spec, self.a_value(), self.index)


_Q_POWER = re.compile(r"^(-)?q(?:\^(-?\d+))?$")


def parse_a(text: str, spec: FieldSpec) -> CycScalar:
    """'sym' (formal a), a rational such as 2 or -3/4, or q^k."""
    text = text.strip()
    if text == "sym":
        return spec.a()
    m = _Q_POWER.match(text)
    if m:
        val = spec.q(int(m.group(2) or 1))
        return -val if m.group(1) else val
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"cannot parse --a {text!r}; use sym, a rational, or q^k", EXIT_USAGE) from None
    if frac == 0:
        raise CliError("--a must be nonzero", EXIT_USAGE)
    return spec.rational(frac.numerator, frac.denominator)


def load_diagram(ref: str):
    if ref in BUILTIN_NAMES:
        return builtin(ref)
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read diagram file {ref!r}: {exc.strerror or exc}", EXIT_IO) from None
    try:
        return parse(text, name=path.stem)
    except ParseError as exc:
        raise CliError(f"parse error in {ref}: {exc}", EXIT_PARSE) from None


def _complex_str(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


# -- compute ----------------------------------------------------------------

def cmd_compute(cfg: RunConfig, out) -> int:
    d = load_diagram(cfg.diagram)
    rep = cfg.rep()
    try:
        ev = evaluate(d, rep)
    except InvariantViolation as exc:
        raise CliError(str(exc), EXIT_SCHUR) from None
    if cfg.format == "json":
        print(json.dumps(ev.to_json(d), sort_keys=True), file=out)
    elif ev.scalar is not None:
        print(str(ev.scalar) if cfg.format == "exact" else _complex_str(ev.scalar.to_complex()), file=out)
    else:
        # not (1,1): print the nonzero entries of the operator
        for r, c, v in sorted(ev.operator.items(), key=lambda t: (t[1], t[0])):
            val = str(v) if cfg.format == "exact" else _complex_str(v.to_complex())
            print(f"{r} {c} {val}", file=out)
    return 0


def cmd_word(cfg: RunConfig, text: str, out) -> int:
    try:
        w = words.Word.parse(text)
    except ParameterError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    op = words.eval_word(w, cfg.rep(), check=False)
    print(f"word: {w}  balanced: {words.is_balanced(w)}  diagonal: {op.is_diagonal()}  a-free: {op.is_a_free()}",
          file=out)
    for r, c, v in sorted(op.items(), key=lambda t: (t[1], t[0])):
        print(f"{r} {c} {v if cfg.format == 'exact' else _complex_str(v.to_complex())}", file=out)
    return 0


# -- verify -------------------------------------------------------------------

def _prefixed(report: Report, prefix: str) -> Report:
    for c in report:
        c.identity = f"{prefix}: {c.identity}"
    return report


def suite_relations(cfg: RunConfig) -> Report:
    spec, rep = cfg.spec, cfg.rep()
    report = _prefixed(check_relations(rep), "rho_{a,i}")
    report.extend(_prefixed(check_relations(standard(spec)), "rho_0"))
    nxt = semicyclic(spec, rep.a, rep.i + 1)
    report.add("shift relations rho_{a,i} vs rho_{a,i+1}", shift_relations(rep, nxt, 1))
    report.add("E^j rho_{a,i} E^-j = rho_{a,i+j} for all j",
               all(conjugation_iso(rep, j) for j in range(cfg.n)))
    return report


def suite_rmatrix(cfg: RunConfig) -> Report:
    report = Report()
    for label, rep in (("rho_{a,i}", cfg.rep()), ("rho_0", standard(cfg.spec))):
        report.extend(_prefixed(braiding.check_intertwiner(rep), label))
        report.extend(_prefixed(braiding.check_inverse(rep), label))
        report.extend(_prefixed(braiding.check_coproduct_cartan(rep), label))
    return report


def suite_ybe(cfg: RunConfig) -> Report:
    report = Report()
    for label, rep in (("rho_{a,i}", cfg.rep()), ("rho_0", standard(cfg.spec))):
        report.add(f"{label}: R12 R13 R23 = R23 R13 R12", braiding.check_ybe(rep))
        report.add(f"{label}: braid relation for R-check", braiding.check_braid_relation(rep))
    return report


def suite_fusion(cfg: RunConfig) -> Report:
    report = _prefixed(braiding.check_fusion(cfg.rep()), "rho_{a,i}")
    report.extend(_prefixed(braiding.check_fusion(standard(cfg.spec)), "rho_0"))
    return report


def suite_turaev(cfg: RunConfig) -> Report:
    rep = cfg.rep()
    report = Report()
    for move, variant, (left, right) in all_turaev_pairs():
        same = evaluate(left, rep).operator == evaluate(right, rep).operator
        report.add(f"move {move} variant {variant}: both sides equal", same)
    return report


def suite_kashaev(cfg: RunConfig) -> Report:
    spec = cfg.spec
    a = cfg.a_value()
    report = Report()
    for name in KNOTS:
        d = builtin(name)
        std = kashaev(d, spec)
        for i in sorted({0, cfg.index}):
            s = evaluate(d, semicyclic(spec, a, i)).scalar
            report.add(f"{name}: rho_{{a,{i}}} scalar = rho_0 scalar", s == std, detail=str(std))
            report.add(f"{name}: rho_{{a,{i}}} scalar is a-free", s.a_degrees() <= {0})
    return report


def suite_words(cfg: RunConfig, count: int = 200) -> Report:
    spec, n = cfg.spec, cfg.n
    seed = int(os.environ.get("SEMICYCLIC_SEED", "0"))
    rng = random.Random(seed)
    rep, std = cfg.rep(), standard(spec)
    fs = [spec.q(2 * j) * (j + 2) for j in range(n)]
    gen = generalized(spec, cfg.a_value(), fs)
    report = Report()
    diag_ok = nf_ok = True
    for _ in range(count):
        w = words.random_balanced_word(rng, 2 * (n - 1))
        for r in (rep, gen):
            op = words.eval_word(w, r, check=False)
            diag_ok &= op.is_diagonal() and op.is_a_free()
        nf = words.reduce_word(w, spec)
        nf_ok &= all(x == y for x, y in nf) and words.eval_normal_form(nf, rep) == words.eval_word(w, rep, False)
    report.add(f"{count} balanced words diagonal and a-free (seed {seed})", diag_ok)
    report.add("balanced words agree with their reduced normal form", nf_ok)
    commute_ok = all(
        words.eval_commuted(words.commute_EF(spec, c, d), r)
        == words.eval_word(words.Word(tuple(f for f in (("E", c), ("F", d)) if f[1])), r, False)
        for c in range(n) for d in range(c + 1, n) for r in (rep, std))
    report.add("E^c F^d commutation rule, all 0 <= c < d <= N-1", commute_ok)
    for label, r in (("rho_{a,i}", rep), ("rho_0", std)):
        report.extend(_prefixed(words.check_casimir(r), label))
        for m in range(1, n):
            report.extend(_prefixed(words.casimir_factorization(m, r), label))
    return report


_SUITE_FUNCS = {
    "relations": suite_relations,
    "rmatrix": suite_rmatrix,
    "ybe": suite_ybe,
    "fusion": suite_fusion,
    "turaev": suite_turaev,
    "kashaev": suite_kashaev,
    "words": suite_words,
}


def run_suite(cfg: RunConfig, suite: str) -> dict[str, Report]:
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    return {name: _SUITE_FUNCS[name](cfg) for name in names}


def cmd_verify(cfg: RunConfig, suite: str, out) -> int:
    results = run_suite(cfg, suite)
    ok = all(r.ok for r in results.values())
    if cfg.format == "json":
        payload = {"N": cfg.n, "a": cfg.a_spec, "i": cfg.index, "ok": ok,
                   "suites": {name: r.to_json() for name, r in results.items()}}
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print(f"N={cfg.n} a={cfg.a_spec} i={cfg.index}", file=out)
        for name, report in results.items():
            for check in report:
                print(f"{name:<10} {check.status:<24} {check.identity}", file=out)
        print("all asserted identities pass" if ok else "FAILED", file=out)
    return 0 if ok else EXIT_FAIL


# -- table ------------------------------------------------------------------------

def cmd_table(ns: list[int], knots: list[str], cfg: RunConfig, out) -> int:
    rows = []
    for name in knots:
        d = load_diagram(name)
        if d.boundary_class != "(1,1)":
            raise CliError(f"{name}: table needs (1,1) diagrams", EXIT_USAGE)
        for n in ns:
            sub = RunConfig(n, cfg.a_spec, cfg.rep_index)
            semi = evaluate(d, sub.rep()).scalar
            std = kashaev(d, sub.spec)
            z = std.to_complex()
            rows.append({"knot": d.label(), "N": n, "semicyclic": str(semi), "standard": str(std),
                         "equal": semi == std, "complex": [z.real, z.imag], "abs": abs(z)})
    if cfg.format == "json":
        print(json.dumps(rows), file=out)
        return 0
    if rows:
        print(f"{'knot':<16}{'N':>3}  {'equal':<6}{'|value|':>14}  exact", file=out)
    for row in rows:
        print(f"{row['knot']:<16}{row['N']:>3}  {str(row['equal']):<6}{row['abs']:>14.6f}  {row['semicyclic']}",
              file=out)
    return 0


# -- entry point ----------------------------------------------------------------------

def _odd_n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("N must be odd and >= 3") from None
    if n < 3 or n % 2 == 0:
        raise argparse.ArgumentTypeError("N must be odd and >= 3")
    return n


def _rep_index(text: str):
    if text == "default":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--rep-index takes an integer or 'default'") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semicyclic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_many=False):
        if n_many:
            p.add_argument("--n", type=_odd_n, nargs="+", default=[3, 5, 7])
        else:
            p.add_argument("--n", type=_odd_n, default=3)
        p.add_argument("--a", default="sym", help="sym (formal a), a rational, or q^k")
        p.add_argument("--rep-index", type=_rep_index, default="default",
                       help="index i of rho_{a,i}; default (N+1)/2")
        p.add_argument("--format", choices=("exact", "complex", "json"), default="exact")

    p = sub.add_parser("compute", help="evaluate a diagram")
    common(p)
    p.add_argument("--diagram", required=True, help=f"file path or builtin ({', '.join(BUILTIN_NAMES)})")

    p = sub.add_parser("verify", help="run identity suites")
    common(p)
    p.add_argument("suite_pos", nargs="?", choices=SUITES, metavar="SUITE")
    p.add_argument("--suite", choices=SUITES)

    p = sub.add_parser("table", help="invariant values per knot and N")
    common(p, n_many=True)
    p.add_argument("--diagram", nargs="*", default=None, help="builtin names or paths (default: all builtins)")

    p = sub.add_parser("word", help="evaluate a word such as 'E^2 F^1 E^1 F^2'")
    common(p)
    p.add_argument("word")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "table":
            knots = list(KNOTS) if args.diagram is None else args.diagram
            cfg = RunConfig(args.n[0], args.a, args.rep_index, None, args.format)
            return cmd_table(args.n, knots, cfg, out)
        cfg = RunConfig(args.n, args.a, args.rep_index, getattr(args, "diagram", None), args.format)
        cfg.a_value()
        if args.command == "compute":
            return cmd_compute(cfg, out)
        if args.command == "word":
            return cmd_word(cfg, args.word, out)
        if args.suite and args.suite_pos and args.suite != args.suite_pos:
            parser.error("give the suite once, positionally or with --suite")
        return cmd_verify(cfg, args.suite or args.suite_pos or "all", out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DiagramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
