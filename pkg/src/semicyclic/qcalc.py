"""Quantum integers, factorials, binomials and the braiding coefficients f_q, f_{1/q}."""
from __future__ import annotations

import enum
import functools

from .cyclo import CycScalar, FieldSpec, ParameterError


class QSign(enum.Enum):
    PLUS = "plus"    # base q
    MINUS = "minus"  # base 1/q

    @property
    def exponent(self) -> int:
        return 1 if self is QSign.PLUS else -1


def qint(spec: FieldSpec, l: int) -> CycScalar:
    """[l] = (q^l - q^-l) / (q - q^-1)."""
    return _qint(spec, l)


@functools.lru_cache(maxsize=None)
def _qint(spec: FieldSpec, l: int) -> CycScalar:
    return (spec.q(l) - spec.q(-l)) / (spec.q(1) - spec.q(-1))


@functools.lru_cache(maxsize=None)
def qfact(spec: FieldSpec, n: int) -> CycScalar:
    """[n]! with [0]! = 1.  Zero for n >= N because [N] = 0."""
    if n < 0:
        raise ParameterError("quantum factorial of a negative integer")
    result = spec.one()
    for k in range(1, n + 1):
        result = result * qint(spec, k)
    return result


def qbinom(spec: FieldSpec, n: int, k: int) -> CycScalar:
    if not 0 <= k <= n <= spec.n - 1:
        raise ParameterError(f"quantum binomial needs 0 <= k <= n <= N-1, got n={n}, k={k}")
    return qfact(spec, n) / (qfact(spec, k) * qfact(spec, n - k))


def qdiff(spec: FieldSpec) -> CycScalar:
    """q - q^-1."""
    return spec.q(1) - spec.q(-1)


@functools.lru_cache(maxsize=None)
def f_coeff(spec: FieldSpec, l: int, sign: QSign = QSign.PLUS) -> CycScalar:
    """f_p(l) = (p - 1/p)^l / [l]_p! * p^(l(l-1)/2) with p = q or 1/q.

    For sign=PLUS this is the R-matrix coefficient c_l.
    """
    if not 0 <= l <= spec.n - 1:
        raise ParameterError(f"f_coeff needs 0 <= l <= N-1, got {l}")
    e = sign.exponent
    # under q -> 1/q: q - 1/q flips sign, [l] is invariant
    diff = qdiff(spec) * e
    tri = l * (l - 1)
    assert tri % 2 == 0
    return diff ** l / qfact(spec, l) * spec.q(e * tri // 2)


def f_coeff_recursive(spec: FieldSpec, m: int) -> CycScalar:
    """c_m from c_0 = 1 and c_m = (q - 1/q) / [m] * q^(m-1) * c_{m-1}."""
    c = spec.one()
    for k in range(1, m + 1):
        c = qdiff(spec) / qint(spec, k) * spec.q(k - 1) * c
    return c
