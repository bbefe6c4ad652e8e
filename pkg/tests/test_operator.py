import pytest

from semicyclic.cyclo import UnsupportedDivisionError, field_spec
from semicyclic.operator import Operator, ShapeError, embed, flatten, flip, permutation, unflatten


@pytest.fixture
def spec3():
    return field_spec(3)


def test_flatten_round_trip():
    for flat in range(27):
        assert flatten(unflatten(flat, 3, 3), 3) == flat
    assert flatten((1, 0, 2), 3) == 11


def test_flip_is_involution(spec3):
    s = flip(spec3, 3)
    assert s @ s == Operator.identity(spec3, 3, 2)
    assert s.apply({flatten((0, 2), 3): spec3.one()}) == {flatten((2, 0), 3): spec3.one()}


def test_composition_checks_shape(spec3):
    with pytest.raises(ShapeError):
        Operator.identity(spec3, 3, 1) @ Operator.identity(spec3, 3, 2)


def test_inverse_and_power(spec3):
    q = spec3.q()
    m = Operator.from_dense(spec3, [[q, spec3.one(), spec3.zero()],
                                    [spec3.zero(), q * q, spec3.one()],
                                    [spec3.rational(2), spec3.zero(), spec3.one()]]).scale(spec3.a())
    assert m @ m.inverse() == Operator.identity(spec3, 3, 1)
    assert m ** -1 == m.inverse()
    x = spec3.one() + spec3.a()
    singular = Operator.from_dense(spec3, [[x, spec3.one()], [x, spec3.rational(2)]])
    with pytest.raises(UnsupportedDivisionError):
        singular.inverse()


def test_embed_matches_permutation(spec3):
    one = Operator.identity(spec3, 3, 1)
    x = Operator.from_dense(spec3, [[spec3.q(k * 3 + j) for j in range(3)] for k in range(3)])
    op = x.tensor(one) + one.tensor(x)
    direct = embed(op, (0, 2), 3)
    p = permutation(spec3, 3, (0, 2, 1))
    assert direct == p @ op.tensor(one) @ p


def test_scalar_multiple(spec3):
    ident = Operator.identity(spec3, 3, 1)
    assert ident.scale(spec3.q()).scalar_multiple() == spec3.q()
    d = Operator.diagonal(spec3, 3, 1, lambda idx: spec3.q(idx[0]))
    assert d.scalar_multiple() is None
    assert d.is_diagonal()
