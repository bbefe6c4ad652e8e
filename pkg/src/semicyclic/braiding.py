"""
The R-matrix q^{H(x)H/2} sum_l c_l E^l (x) F^l in a representation, the
braiding R-check = flip . R, and checks of the quasitriangularity identities.

q^{H(x)H/2} is never built from H: it is the diagonal operator
v_j (x) v_k -> q^{h_j h_k / 2} read off the integer weights of the rep.
"""
from __future__ import annotations

from .cyclo import CycScalar, ParameterError
from .operator import Operator, embed, flatten, flip, permutation, unflatten
from .qcalc import QSign, f_coeff, f_coeff_recursive
from .report import Report
from .reps import Rep


def _half_product(hj: int, hk: int) -> int:
    prod = hj * hk
    if prod % 2:
        raise ArithmeticError(f"odd weight product {hj}*{hk}")
    return prod // 2


def cartan(rep: Rep, sign: int = 1) -> Operator:
    """q^{sign * H(x)H/2} on V (x) V."""
    spec, w = rep.field, rep.weights
    return Operator.diagonal(spec, rep.n, 2, lambda idx: spec.q(sign * _half_product(w[idx[0]], w[idx[1]])))


def _ef_series(rep: Rep, coeffs) -> Operator:
    """sum_l coeffs[l] E^l (x) F^l."""
    spec, n = rep.field, rep.n
    total = Operator.zero(spec, n, 2)
    Ep = Operator.identity(spec, n, 1)
    Fp = Operator.identity(spec, n, 1)
    for l, c in enumerate(coeffs):
        if c:
            total = total + Ep.tensor(Fp).scale(c)
        Ep = rep.E @ Ep
        Fp = rep.F @ Fp
    return total


def r_matrix(rep: Rep, coeffs: list[CycScalar] | None = None) -> Operator:
    """R = q^{H(x)H/2} sum_{l<N} c_l E^l (x) F^l with c_l = f_q(l).

    ``coeffs`` overrides the c_l (negative controls, recursion cross-checks).
    """
    if coeffs is None:
        coeffs = [f_coeff(rep.field, l, QSign.PLUS) for l in range(rep.n)]
    return cartan(rep) @ _ef_series(rep, coeffs)


def r_matrix_recursive(rep: Rep) -> Operator:
    return r_matrix(rep, [f_coeff_recursive(rep.field, m) for m in range(rep.n)])


def r_inverse(rep: Rep) -> Operator:
    """Exact inverse of R by elimination."""
    return r_matrix(rep).inverse()


def r_inverse_series(rep: Rep) -> Operator:
    """(sum_l f_{1/q}(l) E^l (x) F^l) . q^{-H(x)H/2}."""
    coeffs = [f_coeff(rep.field, l, QSign.MINUS) for l in range(rep.n)]
    return _ef_series(rep, coeffs) @ cartan(rep, -1)


def braid(rep: Rep) -> Operator:
    """R-check = sigma . R."""
    return flip(rep.field, rep.n) @ r_matrix(rep)


def braid_inverse(rep: Rep) -> Operator:
    return r_inverse_series(rep) @ flip(rep.field, rep.n)


GENERATORS = ("E", "F", "K", "Kinv")


def _gen(rep: Rep, gen: str) -> Operator:
    try:
        return {"E": rep.E, "F": rep.F, "K": rep.K, "Kinv": rep.Kinv}[gen]
    except KeyError:
        raise ParameterError(f"unknown generator {gen!r}; expected one of {GENERATORS}") from None


def coproduct(rep: Rep, gen: str) -> Operator:
    """Delta(Z) in rep (x) rep."""
    one = Operator.identity(rep.field, rep.n, 1)
    E, F, K, Kinv = rep.E, rep.F, rep.K, rep.Kinv
    z = _gen(rep, gen)
    if gen == "E":
        return E.tensor(K) + one.tensor(E)
    if gen == "F":
        return F.tensor(one) + Kinv.tensor(F)
    return z.tensor(z)


def flipped_coproduct(rep: Rep, gen: str) -> Operator:
    s = flip(rep.field, rep.n)
    return s @ coproduct(rep, gen) @ s


def check_intertwiner(rep: Rep, r: Operator | None = None) -> Report:
    """R Delta(Z) - Delta'(Z) R = 0 for each generator."""
    if r is None:
        r = r_matrix(rep)
    report = Report()
    for gen in GENERATORS:
        residual = r @ coproduct(rep, gen) - flipped_coproduct(rep, gen) @ r
        report.add(f"R Delta({gen}) = Delta'({gen}) R", residual.is_zero(),
                   detail=f"residual nonzero entries: {residual.nnz()}")
    return report


def check_inverse(rep: Rep) -> Report:
    report = Report()
    spec, n = rep.field, rep.n
    r = r_matrix(rep)
    exact = r.inverse()
    series = r_inverse_series(rep)
    ident = Operator.identity(spec, n, 2)
    report.add("R R^-1 = 1", r @ exact == ident)
    report.add("R^-1 R = 1", exact @ r == ident)
    report.add("R^-1 = f_{1/q} series", exact == series)
    b, bi = braid(rep), braid_inverse(rep)
    report.add("Rcheck Rcheck^-1 = 1", b @ bi == ident and bi @ b == ident)
    report.add("R via c_m recursion = R closed form", r_matrix_recursive(rep) == r)
    return report


def legs(op: Operator, which: str) -> Operator:
    """R_12, R_13 or R_23 on V^{(x)3} by index bookkeeping."""
    strands = {"12": (0, 1), "13": (0, 2), "23": (1, 2)}[which]
    return embed(op, strands, 3)


def legs_by_permutation(op: Operator, which: str) -> Operator:
    """The same legs via conjugation by strand permutations (cross-check)."""
    spec, n = op.field, op.n
    r12 = op.tensor(Operator.identity(spec, n, 1))
    if which == "12":
        return r12
    perm = (0, 2, 1) if which == "13" else (1, 2, 0)
    p = permutation(spec, n, perm)
    pinv = permutation(spec, n, _inverse_perm(perm))
    return p @ r12 @ pinv


def _inverse_perm(perm):
    inv = [0] * len(perm)
    for k, p in enumerate(perm):
        inv[p] = k
    return tuple(inv)


def check_braid_relation(rep: Rep) -> bool:
    b = braid(rep)
    b12, b23 = legs(b, "12"), legs(b, "23")
    return b12 @ b23 @ b12 == b23 @ b12 @ b23


def check_ybe(rep: Rep) -> bool:
    """R12 R13 R23 = R23 R13 R12 exactly."""
    r = r_matrix(rep)
    r12, r13, r23 = legs(r, "12"), legs(r, "13"), legs(r, "23")
    return r12 @ r13 @ r23 == r23 @ r13 @ r12


# -- fusion identities ---------------------------------------------------

def _weight_diag3(rep: Rep, exponent) -> Operator:
    spec, w = rep.field, rep.weights
    return Operator.diagonal(spec, rep.n, 3, lambda idx: spec.q(exponent(w[idx[0]], w[idx[1]], w[idx[2]])))


def delta_id_cartan(rep: Rep) -> Operator:
    """q^{Delta(H)(x)H/2}: weight (h_j + h_k) h_l / 2 on v_j v_k v_l."""
    return _weight_diag3(rep, lambda a, b, c: _half_product(a + b, c))


def id_delta_cartan(rep: Rep) -> Operator:
    return _weight_diag3(rep, lambda a, b, c: _half_product(a, b + c))


def check_coproduct_cartan(rep: Rep) -> Report:
    """(Delta(x)Id)(q^{HH/2}) = q^{Delta(H)H/2}, and the Id(x)Delta version.

    The left sides are products of the leg-embedded cartan operators
    q^{H_1H_3/2} q^{H_2H_3/2}, since Delta(H) = H(x)1 + 1(x)H.
    """
    c = cartan(rep)
    report = Report()
    report.add("(Delta x Id) q^{HH/2} = q^{Delta(H) H/2}", legs(c, "13") @ legs(c, "23") == delta_id_cartan(rep))
    report.add("(Id x Delta) q^{HH/2} = q^{H Delta(H)/2}", legs(c, "13") @ legs(c, "12") == id_delta_cartan(rep))
    return report


def delta_id_r(rep: Rep) -> Operator:
    """(Delta (x) Id)(R) = q^{Delta(H)H/2} sum_l c_l Delta(E)^l (x) F^l."""
    spec, n = rep.field, rep.n
    dE = coproduct(rep, "E")
    total = Operator.zero(spec, n, 3)
    dEp = Operator.identity(spec, n, 2)
    Fp = Operator.identity(spec, n, 1)
    for l in range(n):
        c = f_coeff(spec, l)
        total = total + dEp.tensor(Fp).scale(c)
        dEp = dE @ dEp
        Fp = rep.F @ Fp
    return delta_id_cartan(rep) @ total


def id_delta_r(rep: Rep) -> Operator:
    """(Id (x) Delta)(R) = q^{H Delta(H)/2} sum_l c_l E^l (x) Delta(F)^l."""
    spec, n = rep.field, rep.n
    dF = coproduct(rep, "F")
    total = Operator.zero(spec, n, 3)
    Ep = Operator.identity(spec, n, 1)
    dFp = Operator.identity(spec, n, 2)
    for l in range(n):
        c = f_coeff(spec, l)
        total = total + Ep.tensor(dFp).scale(c)
        Ep = rep.E @ Ep
        dFp = dF @ dFp
    return id_delta_cartan(rep) @ total


def fusion_remainder(rep: Rep, k: int | None = None) -> Operator:
    """sum_{m+n>=N} c_m c_n E^{m+n} (x) K^-m F^n (x) F^m, or only the m+n = k slice.

    (Id x Delta)(R) - R13 R12 equals -q^{H Delta(H)/2} times the full sum.
    """
    spec, n = rep.field, rep.n
    total = Operator.zero(spec, n, 3)
    for m in range(n):
        for l in range(n):
            if m + l < n or (k is not None and m + l != k):
                continue
            term = (rep.E ** (m + l)).tensor((rep.Kinv ** m) @ (rep.F ** l)).tensor(rep.F ** m)
            total = total + term.scale(f_coeff(spec, m) * f_coeff(spec, l))
    return total


def _vector_json(vec: dict[int, CycScalar], n: int) -> dict:
    return {",".join(map(str, unflatten(k, n, 3))): v.to_json() for k, v in sorted(vec.items())}


def fusion_witness(rep: Rep, residual: Operator, offset: int) -> dict[int, CycScalar]:
    """Image of v_0 (x) v_{i+offset} (x) v_{i+offset} under the residual."""
    n = rep.n
    k = (rep.i + offset) % n
    return residual.apply({flatten((0, k, k), n): rep.field.one()})


def check_fusion(rep: Rep) -> Report:
    """(Delta x Id)(R) = R13 R23 (holds) and (Id x Delta)(R) = R13 R12.

    The second identity is expected to fail in semicyclic representations
    and to hold in the standard one.  The two witness lines are
    informational: the image of v_0 v_{i+1} v_{i+1} is in fact zero, while
    v_0 v_{i-1} v_{i-1} is sent to a nonzero vector.
    """
    n = rep.n
    r = r_matrix(rep)
    r12, r13, r23 = legs(r, "12"), legs(r, "13"), legs(r, "23")
    report = Report()
    left = delta_id_r(rep) - r13 @ r23
    report.add("(Delta x Id)(R) = R13 R23", left.is_zero(), detail=f"residual nonzero entries: {left.nnz()}")
    right = id_delta_r(rep) - r13 @ r12
    semi = rep.is_semicyclic
    report.add("(Id x Delta)(R) = R13 R12", right.is_zero(), expected=not semi,
               detail=f"residual nonzero entries: {right.nnz()}")
    report.add("residual = -q^{H Delta(H)/2} sum_{m+n>=N} c_m c_n E^{m+n} K^-m F^n F^m",
               right == -(id_delta_cartan(rep) @ fusion_remainder(rep)))
    if semi:
        for offset, label in ((1, "v_0 v_{i+1} v_{i+1}"), (-1, "v_0 v_{i-1} v_{i-1}")):
            image = fusion_witness(rep, right, offset)
            report.add(f"residual on {label} is nonzero", bool(image), gating=False,
                       witness=_vector_json(image, n) if image else None)
    return report
