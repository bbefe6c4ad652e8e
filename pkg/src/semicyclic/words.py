"""
Words in E and F, their evaluation in representations, the E^c F^d
commutation rule, and the quadratic Casimir.

Bracket convention
------------------
The Casimir factorizations are exact with

    [X K]_p = (p X K + (p X)^-1 K^-1) / (q - 1/q)^2

where X is a power of q and the base p (q or 1/q) multiplies the prefix X.
With this convention, and only then within the searched family,

    E^m F^m = prod_{i=1}^m (C - [q^{-2(m-i)} K]_{1/q})
    F^m E^m = prod_{i=1}^m (C - [q^{2(m-i)} K]_q)

hold as matrix identities in every semicyclic and the standard rep.  The
plain reading (X K - X^-1 K^-1)/(q - 1/q)^2 already fails at m = 1, since
C - EF = (q^-1 K + q K^-1)/(q - 1/q)^2.  ``search_bracket_conventions``
reruns the search.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .cyclo import CycScalar, FieldSpec, ParameterError
from .operator import Operator
from .qcalc import QSign, qdiff, qfact, qint
from .report import Report
from .reps import Rep, semicyclic, standard

GENS = ("E", "F")


@dataclass(frozen=True)
class Word:
    """Alternating product of powers of E and F, read left to right."""

    factors: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        prev = None
        for gen, exp in self.factors:
            if gen not in GENS:
                raise ParameterError(f"unknown generator {gen!r}")
            if exp < 1:
                raise ParameterError(f"exponent must be >= 1, got {exp}")
            if gen == prev:
                raise ParameterError("adjacent factors must alternate between E and F")
            prev = gen

    @classmethod
    def parse(cls, text: str) -> "Word":
        factors = []
        for tok in text.split():
            m = re.fullmatch(r"([EF])(?:\^(\d+))?", tok)
            if not m:
                raise ParameterError(f"malformed word factor {tok!r}; expected E^k or F^k")
            factors.append((m.group(1), int(m.group(2) or 1)))
        return cls(tuple(factors))

    def degree(self, gen: str) -> int:
        return sum(e for g, e in self.factors if g == gen)

    def __str__(self) -> str:
        return " ".join(f"{g}^{e}" for g, e in self.factors)


def is_balanced(w: Word) -> bool:
    return w.degree("E") == w.degree("F")


def eval_word(w: Word, rep: Rep, check: bool = True) -> Operator:
    """Matrix of ``w`` in ``rep``.

    For a balanced word in a semicyclic (or generalized) rep the result is
    asserted to be diagonal with a-free entries.
    """
    spec, n = rep.field, rep.n
    out = Operator.identity(spec, n, 1)
    for gen, exp in w.factors:
        out = out @ ((rep.E if gen == "E" else rep.F) ** exp)
    if check and rep.is_semicyclic and is_balanced(w):
        if not out.is_diagonal() or not out.is_a_free():
            raise AssertionError(f"balanced word {w} is not diagonal and a-free in {rep.descr()}")
    return out


def random_balanced_word(rng: random.Random, max_degree: int, max_parts: int = 4) -> Word:
    """A random balanced word of E-degree 1..max_degree, starting with E or F."""
    total = rng.randint(1, max_degree)

    def split(k):
        cuts = sorted(rng.sample(range(1, total), k - 1)) if k > 1 else []
        bounds = [0, *cuts, total]
        return [bounds[j + 1] - bounds[j] for j in range(k)]

    parts = rng.randint(1, min(total, max_parts))
    first = rng.choice(GENS)
    second = "F" if first == "E" else "E"
    # the trailing generator may or may not get a part of its own
    a_parts = split(parts)
    b_parts = split(rng.choice([p for p in (parts - 1, parts) if p >= 1]) if parts > 1 else 1)
    factors = []
    for j in range(max(len(a_parts), len(b_parts))):
        if j < len(a_parts):
            factors.append((first, a_parts[j]))
        if j < len(b_parts):
            factors.append((second, b_parts[j]))
    return Word(tuple(factors))


# -- diagonal factors ----------------------------------------------------------

@dataclass(frozen=True)
class DiagonalFactor:
    """Casimir, [q^r K]_{q^sign}, or D(c, d, r) = prod_{k<r} [K; c-d-k]."""

    kind: str
    r: int = 0
    sign: QSign = QSign.PLUS
    c: int = 0
    d: int = 0

    @classmethod
    def casimir(cls):
        return cls("casimir")

    @classmethod
    def bracket(cls, r: int, sign: QSign = QSign.PLUS):
        return cls("bracketK", r=r, sign=sign)

    @classmethod
    def dk(cls, c: int, d: int, r: int):
        return cls("DK", r=r, c=c, d=d)

    def evaluate(self, rep: Rep) -> Operator:
        if self.kind == "casimir":
            return casimir(rep)
        if self.kind == "bracketK":
            return bracket_K(rep, self.r, self.sign)
        if self.kind == "DK":
            return d_factor(rep, self.c, self.d, self.r)
        raise ParameterError(f"unknown diagonal factor {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "casimir":
            return "C"
        if self.kind == "bracketK":
            return f"[q^{self.r} K]_{'q' if self.sign is QSign.PLUS else 'q^-1'}"
        return f"D({self.c},{self.d},{self.r})"


def _k_diag(rep: Rep, fn) -> Operator:
    return Operator.diagonal(rep.field, rep.n, 1, lambda idx: fn(rep.weights[idx[0]]))


def k_bracket(rep: Rep, t: int) -> Operator:
    """[K; t] = (K q^t - K^-1 q^-t) / (q - 1/q)."""
    spec = rep.field
    inv = qdiff(spec).invert()
    return _k_diag(rep, lambda h: (spec.q(h + t) - spec.q(-h - t)) * inv)


def d_factor(rep: Rep, c: int, d: int, r: int) -> Operator:
    out = Operator.identity(rep.field, rep.n, 1)
    for k in range(r):
        out = out @ k_bracket(rep, c - d - k)
    return out


def bracket_K(rep: Rep, r: int, sign: QSign = QSign.PLUS, convention=None) -> Operator:
    """[q^r K]_p with p = q^sign, under ``convention`` (default: the working one)."""
    conv = convention or WORKING_CONVENTION
    spec = rep.field
    inv = (qdiff(spec) * qdiff(spec)).invert()
    e = sign.exponent
    shift = r + e * conv.shift if not conv.invert_prefix else e * (r + conv.shift)
    return _k_diag(rep, lambda h: (spec.q(h + shift) + conv.sign * spec.q(-h - shift)) * inv)


def casimir(rep: Rep, form: int = 1) -> Operator:
    """C = EF + (q^-1 K + q K^-1)/(q-1/q)^2  (form 1) or FE + (q K + q^-1 K^-1)/(q-1/q)^2 (form 2)."""
    spec = rep.field
    inv = (qdiff(spec) * qdiff(spec)).invert()
    if form == 1:
        return rep.E @ rep.F + _k_diag(rep, lambda h: (spec.q(h - 1) + spec.q(1 - h)) * inv)
    if form == 2:
        return rep.F @ rep.E + _k_diag(rep, lambda h: (spec.q(h + 1) + spec.q(-h - 1)) * inv)
    raise ParameterError("Casimir form must be 1 or 2")


def check_casimir(rep: Rep) -> Report:
    c = casimir(rep)
    report = Report()
    report.add("C: EF form = FE form", c == casimir(rep, 2))
    for name, x in (("E", rep.E), ("F", rep.F), ("K", rep.K)):
        report.add(f"[C, {name}] = 0", (c @ x - x @ c).is_zero())
    report.add("C diagonal and a-free", c.is_diagonal() and c.is_a_free())
    return report


# -- commutation rule ----------------------------------------------------------

def commute_coefficient(spec: FieldSpec, c: int, d: int, r: int) -> CycScalar:
    """[c]![d]! / ([r]! [c-r]! [d-r]!)."""
    return qfact(spec, c) * qfact(spec, d) / (qfact(spec, r) * qfact(spec, c - r) * qfact(spec, d - r))


@dataclass(frozen=True)
class CommuteTerm:
    f_power: int
    e_power: int
    factor: DiagonalFactor
    coefficient: CycScalar


def commute_EF(spec: FieldSpec, c: int, d: int) -> list[CommuteTerm]:
    """E^c F^d = sum_{r=0}^c coeff_r F^{d-r} E^{c-r} D(c, d, r), for 0 <= c < d <= N-1."""
    if not 0 <= c < d <= spec.n - 1:
        raise ParameterError(f"commute_EF needs 0 <= c < d <= N-1, got c={c}, d={d}")
    return [CommuteTerm(d - r, c - r, DiagonalFactor.dk(c, d, r), commute_coefficient(spec, c, d, r))
            for r in range(c + 1)]


def eval_commuted(terms: list[CommuteTerm], rep: Rep) -> Operator:
    spec = rep.field
    total = Operator.zero(spec, rep.n, 1)
    for t in terms:
        total = total + ((rep.F ** t.f_power) @ (rep.E ** t.e_power) @ t.factor.evaluate(rep)).scale(t.coefficient)
    return total


# -- symbolic reduction of words ------------------------------------------------
#
# Elements are combinations of F^x E^y g(K), stored as
# {(x, y): {k: coefficient of K^k}}.

def _kbracket_poly(spec: FieldSpec, t: int) -> dict[int, CycScalar]:
    inv = qdiff(spec).invert()
    return {1: spec.q(t) * inv, -1: -spec.q(-t) * inv}


def _poly_mul(p, q_):
    out = {}
    for i, a in p.items():
        for j, b in q_.items():
            out[i + j] = out[i + j] + a * b if i + j in out else a * b
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _qbinom_poly(spec: FieldSpec, n: int, k: int) -> CycScalar:
    """Gaussian binomial by the q-Pascal rule, defined for every n >= 0."""
    if k < 0 or k > n:
        return spec.zero()
    if k == 0 or k == n:
        return spec.one()
    return spec.q(-k) * _qbinom_poly(spec, n - 1, k) + spec.q(n - k) * _qbinom_poly(spec, n - 1, k - 1)


def _ef_terms(spec: FieldSpec, c: int, d: int):
    """E^c F^d as [(F-power, E-power, K-polynomial)], any c, d >= 0."""
    terms = []
    for r in range(min(c, d) + 1):
        coeff = _qbinom_poly(spec, c, r) * _qbinom_poly(spec, d, r)
        for k in range(1, r + 1):
            coeff = coeff * qint(spec, k)
        if not coeff:
            continue
        poly = {0: coeff}
        for k in range(r):
            poly = _poly_mul(poly, _kbracket_poly(spec, c - d - k))
        terms.append((d - r, c - r, poly))
    return terms


def reduce_word(w: Word, spec: FieldSpec) -> dict[tuple[int, int], dict[int, CycScalar]]:
    """Normal form sum F^x E^y g(K) of ``w`` using K E = q^2 E K, K F = q^-2 F K and the E^c F^d rule."""
    state = {(0, 0): {0: spec.one()}}
    for gen, exp in w.factors:
        new: dict = {}

        def add(key, poly):
            cur = new.setdefault(key, {})
            for k, v in poly.items():
                cur[k] = cur[k] + v if k in cur else v

        for (x, y), poly in state.items():
            if gen == "E":
                # g(K) E^c = E^c g(q^{2c} K)
                add((x, y + exp), {k: v * spec.q(2 * k * exp) for k, v in poly.items()})
            else:
                moved = {k: v * spec.q(-2 * k * exp) for k, v in poly.items()}
                for fp, ep, kpoly in _ef_terms(spec, y, exp):
                    add((x + fp, ep), _poly_mul(kpoly, moved))
        state = {key: {k: v for k, v in p.items() if v} for key, p in new.items()}
        state = {key: p for key, p in state.items() if p}
    return state


def eval_normal_form(nf, rep: Rep) -> Operator:
    spec, n = rep.field, rep.n
    total = Operator.zero(spec, n, 1)
    for (x, y), poly in nf.items():
        g = _k_diag(rep, lambda h, poly=poly: sum((v * spec.q(h * k) for k, v in poly.items()), spec.zero()))
        total = total + (rep.F ** x) @ (rep.E ** y) @ g
    return total


# -- base case of the balanced-word induction ------------------------------------

def base_case_product(fs, i: int, m: int):
    """prod_{k=i}^{i+m-1} f_{(N-k) mod N}, indices read mod N."""
    n = len(fs)
    out = 1
    for k in range(i, i + m):
        out = fs[(n - k) % n] * out
    return out


# -- Casimir factorization ---------------------------------------------------------

@dataclass(frozen=True)
class BracketConvention:
    """[q^r K]_{q^e} = (q^{s} K + sign q^{-s} K^-1)/(q - 1/q)^2.

    s = r + e*shift, or e*(r + shift) when ``invert_prefix`` (q -> 1/q applied
    to the prefix as well).
    """

    sign: int
    shift: int
    invert_prefix: bool

    def __str__(self) -> str:
        return f"sign={self.sign:+d} shift={self.shift} invert_prefix={self.invert_prefix}"


LITERAL_CONVENTION = BracketConvention(-1, 0, True)
WORKING_CONVENTION = BracketConvention(+1, 1, False)


def _factorization_sides(rep: Rep, m: int, convention: BracketConvention):
    spec, n = rep.field, rep.n
    c = casimir(rep)
    ident = Operator.identity(spec, n, 1)
    ef, fe = ident, ident
    for i in range(1, m + 1):
        ef = ef @ (c - bracket_K(rep, -2 * (m - i), QSign.MINUS, convention))
        fe = fe @ (c - bracket_K(rep, 2 * (m - i), QSign.PLUS, convention))
    return (rep.E ** m, rep.F ** m), ef, fe


def casimir_factorization(m: int, rep: Rep, convention: BracketConvention | None = None) -> Report:
    conv = convention or WORKING_CONVENTION
    if not 0 <= m <= rep.n - 1:
        raise ParameterError(f"m must lie in 0..N-1, got {m}")
    (em, fm), ef, fe = _factorization_sides(rep, m, conv)
    report = Report()
    report.add(f"E^{m} F^{m} = prod (C - [q^-2(m-i) K]_q^-1)", em @ fm == ef, detail=str(conv))
    report.add(f"F^{m} E^{m} = prod (C - [q^2(m-i) K]_q)", fm @ em == fe, detail=str(conv))
    return report


def search_bracket_conventions(ns=(3, 5)) -> list[BracketConvention]:
    """Every convention in the family for which both factorizations hold for all m, N in ``ns``."""
    from .cyclo import field_spec

    reps = []
    for n in ns:
        spec = field_spec(n)
        reps += [semicyclic(spec, spec.a(), 0), semicyclic(spec, spec.a(), (n + 1) // 2), standard(spec)]
    found = []
    for sign, shift, inv in product((1, -1), range(-2, 3), (False, True)):
        conv = BracketConvention(sign, shift, inv)
        if all(casimir_factorization(m, rep, conv).ok for rep in reps for m in range(1, rep.n)):
            found.append(conv)
    return found


# -- Hopf structure on generators --------------------------------------------------

@dataclass(frozen=True)
class SymbolicImage:
    """sign * product of generator symbols, or the scalar ``scalar`` when ``word`` is empty."""

    sign: int
    word: tuple[str, ...]
    scalar: int = 1

    def __str__(self) -> str:
        if not self.word:
            return str(self.sign * self.scalar)
        body = " ".join(self.word)
        return f"-{body}" if self.sign < 0 else body


_ANTIPODE = {
    "K": SymbolicImage(1, ("K^-1",)),
    "K^-1": SymbolicImage(1, ("K",)),
    "E": SymbolicImage(-1, ("E", "K^-1")),
    "F": SymbolicImage(-1, ("K", "F")),
}
_COUNIT = {"K": 1, "K^-1": 1, "E": 0, "F": 0}


def antipode(gen: str) -> SymbolicImage:
    try:
        return _ANTIPODE[gen]
    except KeyError:
        raise ParameterError(f"unknown generator {gen!r}") from None


def counit(gen: str) -> SymbolicImage:
    try:
        return SymbolicImage(1, (), _COUNIT[gen])
    except KeyError:
        raise ParameterError(f"unknown generator {gen!r}") from None


def antipode_counit(gen: str) -> tuple[SymbolicImage, SymbolicImage]:
    return antipode(gen), counit(gen)
