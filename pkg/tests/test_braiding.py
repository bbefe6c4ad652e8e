import pytest

from conftest import a_values
from semicyclic import braiding
from semicyclic.cyclo import ParameterError, field_spec
from semicyclic.operator import Operator, flatten, flip
from semicyclic.qcalc import f_coeff, qint
from semicyclic.reps import semicyclic, standard


def reps_for(spec):
    out = [(f"a={name},i={i}", semicyclic(spec, a, i))
           for name, a in a_values(spec) for i in sorted({0, (spec.n + 1) // 2})]
    return out + [("standard", standard(spec))]


def r_by_summation(rep):
    """R(e_x e_y) = sum_l c_l q^{h_{x+l} h_{y-l}/2} (E^l)_{x+l,x} (F^l)_{y-l,y} e_{x+l} e_{y-l}.

    Entries of E^l and F^l are multiplied out from the single-step
    coefficients, so no operator products are used.
    """
    spec, n, h = rep.field, rep.n, rep.weights
    a = rep.a
    cols = {}
    for x in range(n):
        for y in range(n):
            col = {}
            for l in range(n):
                e = spec.one()
                for t in range(l):
                    src = x + t
                    if src % n == n - 1:
                        e = e * (a if a is not None else 0)
                f = spec.one()
                for t in range(l):
                    m = (y - t) % n
                    k = (m - rep.i) % n
                    f = f * qint(spec, k) * qint(spec, n - k)
                    if m == 0 and a is not None:
                        f = f / a
                coeff = f_coeff(spec, l) * e * f
                if coeff:
                    xr, yr = (x + l) % n, (y - l) % n
                    coeff = coeff * spec.q(h[xr] * h[yr] // 2)
                    key = flatten((xr, yr), n)
                    col[key] = col.get(key, spec.zero()) + coeff
            cols[flatten((x, y), n)] = {k: v for k, v in col.items() if v}
    return Operator(spec, n, cols, ("d", "d"))


@pytest.mark.parametrize("n", [3, 5])
def test_r_matches_summation_oracle(n):
    spec = field_spec(n)
    for label, rep in reps_for(spec):
        assert braiding.r_matrix(rep) == r_by_summation(rep), label


def test_cartan_default_index(spec):
    n = spec.n
    rep = semicyclic(spec, 1, (n + 1) // 2)
    c = braiding.cartan(rep)
    for j in range(n):
        for k in range(n):
            # with i = (N+1)/2 the weight of v_j is 2j - 2N = 2j mod 2N
            assert c.entry(flatten((j, k), n), flatten((j, k), n)) == spec.q(2 * j * k)
    assert c @ braiding.cartan(rep, -1) == Operator.identity(spec, n, 2)


def test_r_on_kernel_vector():
    spec = field_spec(5)
    rep = semicyclic(spec, spec.a(), 2)
    col = braiding.r_matrix(rep).column(flatten((3, 2), 5))
    assert col == {flatten((3, 2), 5): spec.q(rep.weights[3] * rep.weights[2] // 2)}


def test_intertwiner(spec):
    for label, rep in reps_for(spec):
        assert braiding.check_intertwiner(rep).ok, label


def test_intertwiner_negative_control():
    spec = field_spec(3)
    rep = semicyclic(spec, 1, 2)
    coeffs = [f_coeff(spec, l) for l in range(3)]
    coeffs[1] = coeffs[1] * 2
    report = braiding.check_intertwiner(rep, braiding.r_matrix(rep, coeffs))
    assert not report["R Delta(E) = Delta'(E) R"].holds


def test_inverse_checks(spec):
    for label, rep in reps_for(spec):
        report = braiding.check_inverse(rep)
        assert report.ok, (label, [c.identity for c in report if not c.ok])


def test_coproduct_cartan(spec):
    for label, rep in reps_for(spec):
        assert braiding.check_coproduct_cartan(rep).ok, label


def test_coproduct_formulas():
    spec = field_spec(3)
    rep = semicyclic(spec, spec.a(), 1)
    one = Operator.identity(spec, 3, 1)
    assert braiding.coproduct(rep, "K") == rep.K.tensor(rep.K)
    assert braiding.coproduct(rep, "F") == rep.F.tensor(one) + rep.Kinv.tensor(rep.F)
    assert braiding.flipped_coproduct(rep, "E") == rep.K.tensor(rep.E) + rep.E.tensor(one)
    with pytest.raises(ParameterError):
        braiding.coproduct(rep, "H")
    assert flip(spec, 3) @ flip(spec, 3) == Operator.identity(spec, 3, 2)


def test_legs_agree_with_permutation_conjugation():
    spec = field_spec(3)
    r = braiding.r_matrix(semicyclic(spec, spec.a(), 0))
    for which in ("12", "13", "23"):
        assert braiding.legs(r, which) == braiding.legs_by_permutation(r, which)


@pytest.mark.parametrize("n", [3, 5])
def test_ybe_and_braid_relation(n):
    spec = field_spec(n)
    for label, rep in reps_for(spec):
        assert braiding.check_ybe(rep), label
        assert braiding.check_braid_relation(rep), label


def test_semicyclic_r_differs_from_standard():
    spec = field_spec(3)
    assert braiding.r_matrix(semicyclic(spec, 1, 0)) != braiding.r_matrix(standard(spec))


def test_a_dependence_localized(small_spec):
    """Entries carrying a are exactly those where E^l pushes v_x past v_{N-1}."""
    spec, n = small_spec, small_spec.n
    for i in range(n):
        rep = semicyclic(spec, spec.a(), i)
        r = braiding.r_matrix(rep)
        predicted = set()
        for x in range(n):
            for y in range(n):
                for l in range(1, n):
                    if any((y - t - i) % n == 0 for t in range(l)):
                        continue  # F^l kills v_y
                    degree = (x + l >= n) - any((y - t) % n == 0 for t in range(l))
                    if degree:
                        predicted.add((flatten(((x + l) % n, (y - l) % n), n), flatten((x, y), n)))
        assert r.a_dependent_entries() == predicted, i


def test_fusion_dichotomy(small_spec):
    for label, rep in reps_for(small_spec):
        report = braiding.check_fusion(rep)
        assert report["(Delta x Id)(R) = R13 R23"].holds, label
        right = report["(Id x Delta)(R) = R13 R12"]
        assert right.holds == (label == "standard"), label
        assert report.ok


def test_fusion_witness_offsets(small_spec):
    # the image of v_0 v_{i-1} v_{i-1} is nonzero; v_0 v_{i+1} v_{i+1} goes to zero
    spec = small_spec
    for i in range(spec.n):
        rep = semicyclic(spec, spec.a(), i)
        r = braiding.r_matrix(rep)
        residual = braiding.id_delta_r(rep) - braiding.legs(r, "13") @ braiding.legs(r, "12")
        assert braiding.fusion_witness(rep, residual, -1)
        assert not braiding.fusion_witness(rep, residual, +1)


@pytest.mark.slow
def test_ybe_n7_numeric_a():
    spec = field_spec(7)
    assert braiding.check_ybe(semicyclic(spec, 2, 4))


def test_residual_matches_remainder_formula(small_spec):
    spec = small_spec
    for i in range(spec.n):
        rep = semicyclic(spec, spec.a(), i)
        r = braiding.r_matrix(rep)
        residual = braiding.id_delta_r(rep) - braiding.legs(r, "13") @ braiding.legs(r, "12")
        assert residual == -(braiding.id_delta_cartan(rep) @ braiding.fusion_remainder(rep))
    assert braiding.fusion_remainder(standard(spec)).is_zero()


def test_top_slice_witness(small_spec):
    """On the m+n = N slice, v_0 v_{i-1} v_{i-1} has N-1 independent images and v_0 v_{i+1} v_{i+1} none."""
    spec, n = small_spec, small_spec.n
    for i in range(n):
        rep = semicyclic(spec, spec.a(), i)
        top = braiding.fusion_remainder(rep, n)
        below = top.apply({flatten((0, (i - 1) % n, (i - 1) % n), n): spec.one()})
        above = top.apply({flatten((0, (i + 1) % n, (i + 1) % n), n): spec.one()})
        assert len(below) == n - 1
        assert above == {}
