"""
The tangle functor: slice operators, bottom-to-top contraction, knot scalars.

States are sparse maps from a tuple of basis indices (one per strand) to a
CycScalar.  An index x on an upward strand stands for the dual vector e^x.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .braiding import braid, braid_inverse
from .cyclo import CycScalar, FieldSpec
from .operator import Operator, flatten, unflatten
from .qcalc import QSign, f_coeff
from .reps import Rep, semicyclic, standard
from .tangle import (CAP_PLAIN, CAP_TWISTED, CROSS_NEG, CROSS_POS, CUP_PLAIN, CUP_TWISTED,
                     IDENTITY, Diagram, DiagramError, Slice, apply_slice, validate)


class InvariantViolation(RuntimeError):
    """A (1,1) diagram did not evaluate to a multiple of the identity."""


State = dict[tuple[int, ...], CycScalar]


class _Kernel:
    """Per-representation lookup tables for the elementary pieces."""

    def __init__(self, rep: Rep):
        self.rep = rep
        spec, n = rep.field, rep.n
        self.k = [spec.q(h) for h in rep.weights]
        self.kinv = [spec.q(-h) for h in rep.weights]
        self.cross = {CROSS_POS: self._table(braid(rep)), CROSS_NEG: self._table(braid_inverse(rep))}

    def _table(self, op: Operator) -> dict:
        n = self.rep.n
        return {unflatten(c, n, 2): [(unflatten(r, n, 2), v) for r, v in col.items()]
                for c, col in op.cols.items()}


def _step(kernel: _Kernel, state: State, s: Slice) -> State:
    n = kernel.rep.n
    p = s.position
    out: State = {}

    def put(key, val):
        cur = out.get(key)
        out[key] = val if cur is None else cur + val

    if s.kind == IDENTITY:
        return state
    if s.kind == CUP_PLAIN:
        for idx, c in state.items():
            for x in range(n):
                put(idx[:p] + (x, x) + idx[p:], c)
    elif s.kind == CUP_TWISTED:
        for idx, c in state.items():
            for x in range(n):
                put(idx[:p] + (x, x) + idx[p:], c * kernel.kinv[x])
    elif s.kind == CAP_PLAIN:
        for idx, c in state.items():
            if idx[p] == idx[p + 1]:
                put(idx[:p] + idx[p + 2:], c)
    elif s.kind == CAP_TWISTED:
        for idx, c in state.items():
            if idx[p] == idx[p + 1]:
                put(idx[:p] + idx[p + 2:], c * kernel.k[idx[p]])
    else:
        table = kernel.cross[s.kind]
        for idx, c in state.items():
            for (x, y), v in table.get(idx[p:p + 2], ()):
                put(idx[:p] + (x, y) + idx[p + 2:], c * v)
    return {k: v for k, v in out.items() if v}


def slice_operator(s: Slice, rep: Rep, sig: tuple[str, ...]) -> Operator:
    """The operator of one slice acting on strands with signature ``sig``."""
    try:
        out_sig = apply_slice(tuple(sig), s)
    except DiagramError as exc:
        raise DiagramError(f"signature mismatch: {exc}") from None
    kernel = _Kernel(rep)
    return Operator.from_map(rep.field, rep.n, sig, out_sig, lambda idx: _step(kernel, {idx: rep.field.one()}, s))


@dataclass
class Evaluation:
    operator: Operator
    scalar: CycScalar | None
    rep_descr: dict
    schur_ok: bool | None = None

    def to_json(self, diagram: Diagram) -> dict:
        scalar = self.scalar
        cval = scalar.to_complex(1.0) if scalar is not None else None
        return {
            "diagram": diagram.label(),
            "N": self.operator.n,
            "rep": self.rep_descr,
            "scalar": None if scalar is None else scalar.to_json(),
            "complex": None if cval is None else [cval.real, cval.imag],
            "schur_ok": self.schur_ok,
        }


def _run(kernel: _Kernel, d: Diagram, start: State) -> State:
    state = start
    for s in d.slices:
        state = _step(kernel, state, s)
    return state


def evaluate(d: Diagram, rep: Rep) -> Evaluation:
    """Compose the slice operators bottom to top.

    For a (1,1) diagram the result must be s * Id; the full Schur condition
    is checked and s is returned as ``scalar``.
    """
    report = validate(d)
    if not report.valid:
        raise DiagramError("; ".join(report.problems))
    spec, n = rep.field, rep.n
    kernel = _Kernel(rep)
    one = spec.one()
    cols = {}
    for c in range(n ** len(d.bottom)):
        final = _run(kernel, d, {unflatten(c, n, len(d.bottom)): one})
        col = {flatten(k, n): v for k, v in final.items()}
        if col:
            cols[c] = col
    op = Operator(spec, n, cols, d.bottom, d.top)
    scalar = None
    schur_ok = None
    if d.boundary_class == "(1,1)":
        scalar = op.scalar_multiple()
        schur_ok = scalar is not None
        if not schur_ok:
            raise InvariantViolation(f"{d.label()}: (1,1) evaluation is not a multiple of the identity")
    return Evaluation(op, scalar, rep.descr(), schur_ok)


def kashaev(d: Diagram, spec: FieldSpec) -> CycScalar:
    """Kashaev's invariant, taken as the (1,1) scalar in the standard representation."""
    if d.boundary_class != "(1,1)":
        raise DiagramError("Kashaev's invariant needs a (1,1) diagram")
    return evaluate(d, standard(spec)).scalar


@dataclass
class Comparison:
    difference: Operator
    nonzero: bool
    semicyclic: Evaluation
    standard: Evaluation


def compare_22(d: Diagram, spec: FieldSpec, a, i: int) -> Comparison:
    """Evaluate a (2,2) diagram in rho_{a,i} and rho_0 and take the difference."""
    if d.boundary_class != "(2,2)":
        raise DiagramError(f"compare_22 needs a (2,2) diagram, got {d.boundary_class}")
    semi = evaluate(d, semicyclic(spec, a, i))
    std = evaluate(d, standard(spec))
    diff = semi.operator - std.operator
    return Comparison(diff, not diff.is_zero(), semi, std)


# -- instrumented evaluation ---------------------------------------------------------

@dataclass
class TraceStage:
    slice: Slice | None
    terms: dict[tuple[tuple[int, ...], tuple[int, ...]], CycScalar]
    """(strand indices, crossing summation labels) -> coefficient."""


def _series_tables(rep: Rep) -> dict:
    """Crossing images as explicit series: (x, y) -> [(l, (x', y'), coeff)]."""
    spec, n = rep.field, rep.n
    w = rep.weights
    E, F = rep.E, rep.F

    def powers(op):
        out = [Operator.identity(spec, n, 1)]
        for _ in range(n - 1):
            out.append(op @ out[-1])
        return out

    Ep, Fp = powers(E), powers(F)
    pos: dict = {}
    neg: dict = {}
    for x in range(n):
        for y in range(n):
            for l in range(n):
                ex = Ep[l].column(x)
                fy = Fp[l].column(y)
                # R-check(e_x e_y) = sum_l c_l q^{h(x+l) h(y-l)/2} F^l e_y (x) E^l e_x
                for xr, ev in ex.items():
                    for yr, fv in fy.items():
                        c = f_coeff(spec, l, QSign.PLUS) * spec.q(w[xr] * w[yr] // 2) * ev * fv
                        pos.setdefault((x, y), []).append((l, (yr, xr), c))
                # R-check^-1(e_x e_y) = R^-1(e_y e_x) = sum_l f_{1/q}(l) q^{-h_y h_x/2} E^l e_y (x) F^l e_x
                ey = Ep[l].column(y)
                fx = Fp[l].column(x)
                for yr, ev in ey.items():
                    for xr, fv in fx.items():
                        c = f_coeff(spec, l, QSign.MINUS) * spec.q(-(w[y] * w[x] // 2)) * ev * fv
                        neg.setdefault((x, y), []).append((l, (yr, xr), c))
    return {CROSS_POS: pos, CROSS_NEG: neg}


def trace(d: Diagram, rep: Rep, input_index: int) -> Iterator[TraceStage]:
    """Evaluate a (1, *) diagram on e_{input_index}, yielding every intermediate stage.

    Terms are kept apart by the summation label of each crossing, so the
    k-th crossing adds one more label (the r, s, t, u of a hand computation).
    """
    kernel = _Kernel(rep)
    tables = _series_tables(rep)
    terms = {((input_index,), ()): rep.field.one()}
    yield TraceStage(None, dict(terms))
    for s in d.slices:
        out: dict = {}
        if s.kind in (CROSS_POS, CROSS_NEG):
            p = s.position
            for (idx, labels), c in terms.items():
                for l, (x, y), v in tables[s.kind].get(idx[p:p + 2], ()):
                    key = (idx[:p] + (x, y) + idx[p + 2:], labels + (l,))
                    out[key] = out[key] + c * v if key in out else c * v
        else:
            for (idx, labels), c in terms.items():
                for k, v in _step(kernel, {idx: c}, s).items():
                    key = (k, labels)
                    out[key] = out[key] + v if key in out else v
        terms = {k: v for k, v in out.items() if v}
        yield TraceStage(s, dict(terms))
