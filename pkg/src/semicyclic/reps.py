"""
Semicyclic and standard N-dimensional representations of U_q(sl_2).

Basis vectors v_0, ..., v_{N-1}; indices are residues mod N.  K acts
diagonally by q^{h_k} where h_k is an even integer weight.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cyclo import CycScalar, FieldSpec, ParameterError, as_scalar
from .operator import Operator
from .qcalc import qdiff, qint
from .report import Report


@dataclass(frozen=True, eq=False)
class Rep:
    field: FieldSpec
    kind: str  # "semicyclic", "standard" or "generalized"
    i: int
    a: CycScalar | None
    E: Operator
    F: Operator
    K: Operator
    Kinv: Operator
    weights: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def is_semicyclic(self) -> bool:
        return self.kind in ("semicyclic", "generalized")

    def E_inverse(self) -> Operator:
        """E^-1 = a^-1 E^(N-1); only semicyclic E is invertible."""
        if not self.is_semicyclic:
            raise ParameterError("E is nilpotent in the standard representation")
        return (self.E ** (self.n - 1)).scale(self.a.invert())

    def descr(self) -> dict:
        out = {"kind": self.kind, "i": self.i}
        if self.a is not None:
            out["a"] = str(self.a)
        return out

    def dump(self) -> dict:
        """Row-major matrix dump with a (n, kind, i, a) header, for golden files."""
        def rows(op: Operator) -> list:
            return [v.to_json() for row in op.to_dense() for v in row]

        return {
            "n": self.n,
            "kind": self.kind,
            "i": self.i,
            "a": None if self.a is None else self.a.to_json(),
            "E": rows(self.E),
            "F": rows(self.F),
            "K": rows(self.K),
            "Kinv": rows(self.Kinv),
        }


def _require_unit(spec: FieldSpec, a) -> CycScalar:
    a = as_scalar(spec, a)
    if not a.is_monomial():
        raise ParameterError("a must be a nonzero monomial c*a^k (a unit)")
    return a


def _weights(n: int, i: int) -> tuple[int, ...]:
    h = tuple(1 - n + 2 * (k - i) for k in range(n))
    assert all(x % 2 == 0 for x in h)
    return h


def _cartan_pair(spec: FieldSpec, weights: Sequence[int]) -> tuple[Operator, Operator]:
    n = spec.n
    K = Operator.diagonal(spec, n, 1, lambda idx: spec.q(weights[idx[0]]))
    Kinv = Operator.diagonal(spec, n, 1, lambda idx: spec.q(-weights[idx[0]]))
    return K, Kinv


def _shift_E(spec: FieldSpec, wrap: CycScalar | None) -> Operator:
    n = spec.n
    one = spec.one()
    cols = {k: {k + 1: one} for k in range(n - 1)}
    if wrap is not None:
        cols[n - 1] = {0: wrap}
    return Operator(spec, n, cols, ("d",))


def semicyclic_F_product(spec: FieldSpec, a: CycScalar, i: int) -> Operator:
    """F v_{i+k} = [k][N-k] v_{i+k-1}, divided by a when i+k = 0 mod N."""
    n = spec.n
    cols = {}
    for m in range(n):
        k = (m - i) % n
        coeff = qint(spec, k) * qint(spec, n - k)
        if m == 0:
            coeff = coeff / a
        if coeff:
            cols[m] = {(m - 1) % n: coeff}
    return Operator(spec, n, cols, ("d",))


def semicyclic_F_sum(spec: FieldSpec, a: CycScalar, i: int) -> Operator:
    """The same matrix from the summation form sum_{j=0}^{(k-1) mod N} -[2(k-j)+N-1]."""
    n = spec.n
    cols = {}
    for m in range(n):
        k = (m - i) % n
        coeff = spec.zero()
        for j in range(((k - 1) % n) + 1):
            coeff = coeff - qint(spec, 2 * (k - j) + n - 1)
        if m == 0:
            coeff = coeff / a
        if coeff:
            cols[m] = {(m - 1) % n: coeff}
    return Operator(spec, n, cols, ("d",))


def semicyclic(spec: FieldSpec, a, i: int) -> Rep:
    """rho_{a,i}: E^N = a, F^N = 0, K^N = 1."""
    a = _require_unit(spec, a)
    i %= spec.n
    weights = _weights(spec.n, i)
    K, Kinv = _cartan_pair(spec, weights)
    E = _shift_E(spec, a)
    F = semicyclic_F_product(spec, a, i)
    return Rep(spec, "semicyclic", i, a, E, F, K, Kinv, weights)


def standard(spec: FieldSpec) -> Rep:
    """rho_0: as rho_{a,0} but with E v_{N-1} = 0."""
    weights = _weights(spec.n, 0)
    K, Kinv = _cartan_pair(spec, weights)
    E = _shift_E(spec, None)
    F = semicyclic_F_product(spec, spec.one(), 0)
    return Rep(spec, "standard", 0, None, E, F, K, Kinv, weights)


def generalized(spec: FieldSpec, a, fs: Sequence) -> Rep:
    """Semicyclic E with an arbitrary weighted-shift F.

    F v_j = f_j v_{j-1} for j != 0 and F v_0 = (f_0 / a) v_{N-1}.  This pair
    (E, F) need not satisfy the algebra relations; it exists to test the
    balanced-word propositions in their general form.  K is taken from
    rho_{a,0}.
    """
    a = _require_unit(spec, a)
    n = spec.n
    if len(fs) != n:
        raise ParameterError(f"need {n} f-values, got {len(fs)}")
    fs = [as_scalar(spec, f) for f in fs]
    cols = {}
    for j in range(n):
        coeff = fs[j] if j else fs[0] / a
        if coeff:
            cols[j] = {(j - 1) % n: coeff}
    F = Operator(spec, n, cols, ("d",))
    weights = _weights(n, 0)
    K, Kinv = _cartan_pair(spec, weights)
    return Rep(spec, "generalized", 0, a, _shift_E(spec, a), F, K, Kinv, weights)


def check_relations(rep: Rep) -> Report:
    spec = rep.field
    n = rep.n
    E, F, K, Kinv = rep.E, rep.F, rep.K, rep.Kinv
    ident = Operator.identity(spec, n, 1)
    report = Report()

    def add(name: str, residual: Operator) -> None:
        report.add(name, residual.is_zero(), detail=f"residual nonzero entries: {residual.nnz()}")

    add("K diagonal q^h", K - Operator.diagonal(spec, n, 1, lambda idx: spec.q(rep.weights[idx[0]])))
    add("K Kinv = 1", K @ Kinv - ident)
    add("KE = q^2 EK", K @ E - (E @ K).scale(spec.q(2)))
    add("KF = q^-2 FK", K @ F - (F @ K).scale(spec.q(-2)))
    add("EF - FE = (K - Kinv)/(q - 1/q)", (E @ F - F @ E) - (K - Kinv).scale(qdiff(spec).invert()))
    if rep.is_semicyclic:
        add("E^N = a", E ** n - ident.scale(rep.a))
    else:
        add("E^N = 0", E ** n)
    add("F^N = 0", F ** n)
    add("K^N = 1", K ** n - ident)
    return report


def shift_relations(rep_a: Rep, rep_b: Rep, k: int) -> bool:
    """Check rho_{a,i}(X) v_j against rho_{a,i+k}(X) v_{j+k} for X = F, K, and E unshifted.

    The F coefficients are compared with the wrap-around factor 1/a removed:
    the 1/a sits at v_0 in both representations, so the literal entries
    coincide only when a = 1.
    """
    spec = rep_a.field
    if rep_a.kind != "semicyclic" or rep_b.kind != "semicyclic":
        raise ParameterError("shift relations compare two semicyclic representations")
    if rep_b.field is not spec or rep_a.a != rep_b.a:
        raise ParameterError("representations must share N and a")
    n = spec.n
    if (rep_a.i + k) % n != rep_b.i:
        raise ParameterError(f"index mismatch: {rep_a.i} + {k} != {rep_b.i} mod {n}")
    for j in range(n):
        jk = (j + k) % n
        ca = rep_a.F.entry((j - 1) % n, j)
        cb = rep_b.F.entry((jk - 1) % n, jk)
        # undo the 1/a carried by the column of v_0
        if j == 0:
            ca = ca * rep_a.a
        if jk == 0:
            cb = cb * rep_b.a
        if ca != cb:
            return False
        if rep_a.K.entry(j, j) != rep_b.K.entry(jk, jk):
            return False
    return rep_a.E == rep_b.E


def conjugation_iso(rep: Rep, j: int) -> bool:
    """E^j F E^-j = rho_{a,i+j}(F) and E^j K E^-j = rho_{a,i+j}(K)."""
    if rep.kind != "semicyclic":
        raise ParameterError("conjugation isomorphism needs a semicyclic representation")
    n = rep.n
    j %= n
    target = semicyclic(rep.field, rep.a, rep.i + j)
    if j == 0:
        Ej = Einv = Operator.identity(rep.field, n, 1)
    else:
        Ej = rep.E ** j
        Einv = (rep.E ** (n - j)).scale(rep.a.invert())
    return Ej @ rep.F @ Einv == target.F and Ej @ rep.K @ Einv == target.K
