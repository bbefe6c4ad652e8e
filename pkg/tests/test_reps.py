import pytest

from conftest import a_values
from semicyclic.cyclo import ParameterError, field_spec
from semicyclic.operator import Operator, flatten
from semicyclic.qcalc import qint
from semicyclic.reps import (check_relations, conjugation_iso, generalized, semicyclic, semicyclic_F_product,
                             semicyclic_F_sum, shift_relations, standard)


def basis(spec, k):
    return {k % spec.n: spec.one()}


def test_relations_all_parameters(spec):
    for name, a in a_values(spec):
        for i in range(spec.n):
            report = check_relations(semicyclic(spec, a, i))
            assert report.ok, (name, i, [c.identity for c in report if not c.ok])
    assert check_relations(standard(spec)).ok


def test_E_wraps_to_a():
    spec = field_spec(5)
    rep = semicyclic(spec, spec.a(), 0)
    assert rep.E.apply(basis(spec, 4)) == {0: spec.a()}
    assert rep.E.apply(basis(spec, 1)) == {2: spec.one()}


def test_F_kills_index_i(spec):
    for i in range(spec.n):
        assert semicyclic(spec, spec.a(), i).F.apply(basis(spec, i)) == {}


def test_K_weights(spec):
    rep = semicyclic(spec, 2, 0)
    for k in range(spec.n):
        assert rep.K.entry(k, k) == spec.q(1 - spec.n + 2 * k)
    assert all(h % 2 == 0 for h in rep.weights)


def test_standard(spec):
    rep = standard(spec)
    n = spec.n
    for k in range(1, n):
        assert rep.F.apply(basis(spec, k)) == {k - 1: qint(spec, k) * qint(spec, n - k)}
    assert (rep.E ** n).is_zero()
    with pytest.raises(ParameterError):
        rep.E_inverse()


def test_E_inverse(spec):
    rep = semicyclic(spec, spec.a(), 1)
    assert rep.E @ rep.E_inverse() == Operator.identity(spec, spec.n, 1)


def test_F_sum_form_equals_product_form(spec):
    for name, a in a_values(spec):
        for i in range(spec.n):
            assert semicyclic_F_sum(spec, a, i) == semicyclic_F_product(spec, a, i), (name, i)


def test_corrupted_rep_is_flagged():
    spec = field_spec(3)
    rep = semicyclic(spec, 1, 0)
    bad = Operator(spec, 3, {**rep.F.cols, 1: {0: spec.rational(7)}}, ("d",))
    from dataclasses import replace
    report = check_relations(replace(rep, F=bad))
    assert not report["EF - FE = (K - Kinv)/(q - 1/q)"].holds


def test_shift_relations(spec):
    a = spec.a()
    assert shift_relations(semicyclic(spec, a, 0), semicyclic(spec, a, 1), 1)
    assert shift_relations(semicyclic(spec, a, 2), semicyclic(spec, a, 2), 0)
    for name, val in a_values(spec):
        for i in range(spec.n):
            for k in range(spec.n):
                assert shift_relations(semicyclic(spec, val, i), semicyclic(spec, val, i + k), k)
    with pytest.raises(ParameterError):
        shift_relations(semicyclic(spec, 1, 0), semicyclic(spec, 2, 1), 1)


def test_conjugation_iso(spec):
    assert conjugation_iso(semicyclic(field_spec(3), 1, 0), 1)
    s5 = field_spec(5)
    assert conjugation_iso(semicyclic(s5, s5.q(), 2), 3)
    for name, a in a_values(spec):
        assert all(conjugation_iso(semicyclic(spec, a, i), j) for i in range(spec.n) for j in range(spec.n))


def test_non_unit_a_rejected():
    spec = field_spec(3)
    with pytest.raises(ParameterError):
        semicyclic(spec, spec.one() + spec.a(), 0)
    with pytest.raises(ParameterError):
        semicyclic(spec, 0, 0)


def test_generalized_layout():
    spec = field_spec(5)
    fs = [spec.rational(p) for p in (2, 3, 5, 7, 11)]
    rep = generalized(spec, spec.a(), fs)
    assert rep.F.apply(basis(spec, 1)) == {0: fs[1]}
    assert rep.F.apply(basis(spec, 0)) == {4: fs[0] / spec.a()}


def test_dump_shape():
    spec = field_spec(3)
    dump = semicyclic(spec, spec.a(), 2).dump()
    assert dump["n"] == 3 and dump["i"] == 2 and len(dump["E"]) == 9
    assert dump["E"][flatten((0, 2), 3)] == spec.a().to_json()
