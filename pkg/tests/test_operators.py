import pytest
import sympy as sp

from aperylike.operators import (
    THETA,
    ThetaOperator,
    ThetaPoly,
    build_L1,
    build_L2,
    build_transformed_L1,
    build_transformed_L2,
    check_annihilates,
    iter_recurrence_terms,
    operator_for,
    operator_to_recurrence,
    recurrence_degrees,
)
from aperylike.sequences import SPECS, Normalization, SequenceKind, sequence_terms
from aperylike.transforms import transform_values


def _norm(seq_id):
    return Normalization.RECURRENCE if SPECS[seq_id].affected else Normalization.FORMULA


def test_theta_poly_arithmetic():
    p = ThetaPoly.shifted_power(1, 2)
    assert p.coeffs == (1, 2, 1)
    assert p(3) == 16
    assert (p - p).is_zero()
    assert (THETA * THETA).shift(-1).coeffs == (1, -2, 1)
    assert ThetaPoly.of(0, 0, 3, 0).degree == 2
    assert ThetaPoly.of(-1, 0, -2).format("θ") == "-2*θ^2 - 1"


def test_operator_requires_constant_block():
    with pytest.raises(ValueError):
        ThetaOperator(((1, THETA),))


def test_L1_blocks():
    op = build_L1(11, -1, 3)
    assert op.to_dict() == {"0": [0, 0, 1], "1": [-3, -11, -11], "2": [-1, -2, -1]}


def test_L2_blocks():
    op = build_L2(17, 5, 1, 0)
    assert op.to_dict() == {"0": [0, 0, 0, 1], "1": [-5, -27, -51, -34], "2": [1, 3, 3, 1]}


@pytest.mark.parametrize("seq_id", list(SPECS))
def test_reduction_at_zero(seq_id):
    assert operator_for(seq_id, 0) == operator_for(seq_id)


@pytest.mark.parametrize("seq_id", list(SPECS))
def test_untransformed_operator_annihilates(seq_id):
    u = sequence_terms(seq_id, 120, _norm(seq_id))
    assert check_annihilates(operator_for(seq_id), u, start=0).ok


@pytest.mark.parametrize("seq_id", list(SPECS))
def test_transformed_operator_annihilates(seq_id):
    norm = _norm(seq_id)
    u1 = sequence_terms(seq_id, 1, norm)[1]
    for alpha in sorted({-3, 0, 1, u1, u1 + 6}):
        v = transform_values(seq_id, alpha, 150, norm)
        assert check_annihilates(operator_for(seq_id, alpha), v, start=0).ok, alpha


@pytest.mark.parametrize("seq_id", ["eta", "s18"])
def test_doubled_sequence_not_annihilated(seq_id):
    u = sequence_terms(seq_id, 40, Normalization.FORMULA)
    res = check_annihilates(operator_for(seq_id), u)
    assert not res.ok and res.first_bad_index == 2


def test_wrong_operator_fails():
    v = transform_values("D", 3, 30)
    assert not check_annihilates(operator_for("C", 3), v).ok
    assert not check_annihilates(build_transformed_L1(11, -1, 3, 4), v).ok


@pytest.mark.parametrize("seq_id", list(SPECS))
def test_recurrence_degrees(seq_id):
    kind = SPECS[seq_id].kind
    for alpha in range(-5, 11):
        rec = operator_to_recurrence(operator_for(seq_id, alpha))
        degs = [d for d in recurrence_degrees(rec) if d >= 0]
        assert rec.order <= (3 if kind is SequenceKind.SECOND else 4)
        assert max(degs) == (2 if kind is SequenceKind.SECOND else 3)


def test_worked_example_recurrence():
    rec = operator_to_recurrence(operator_for("D", 3))
    assert rec.format() == (
        "n^2*v[n] + (-2*n^2 + 2*n)*v[n-1] + (-40*n^2 + 80*n - 40)*v[n-2]"
        " + (-75*n^2 + 225*n - 150)*v[n-3] = 0"
    )
    v = transform_values("D", 3, 4)
    assert 16 * v[4] == 24 * v[3] + 360 * v[2]
    assert v[4] == 270
    assert iter_recurrence_terms(rec, [1], 30) == list(transform_values("D", 3, 30))


def test_forward_solution_first_kind():
    rec = operator_to_recurrence(operator_for("gamma", 5))
    assert iter_recurrence_terms(rec, [1], 25) == list(transform_values("gamma", 5, 25))


def _sympy_apply(op, coeffs):
    # apply the operator literally: theta = z d/dz on a polynomial
    z = sp.symbols("z")
    G = sum(sp.Integer(c) * z**k for k, c in enumerate(coeffs))
    total = 0
    for j, p in op.terms:
        acc, power = 0, G
        for c in p.coeffs:
            acc += c * power
            power = sp.expand(z * sp.diff(power, z))
        total += z**j * acc
    poly = sp.Poly(sp.expand(total), z)
    return [int(poly.coeff_monomial(z**n)) for n in range(len(coeffs))]


@pytest.mark.parametrize("seq_id, alpha", [("A", 2), ("D", 3), ("gamma", 5), ("s10", -1), ("s18", 6)])
def test_sympy_theta_application(seq_id, alpha):
    v = transform_values(seq_id, alpha, 20, _norm(seq_id))
    assert _sympy_apply(operator_for(seq_id, alpha), v) == [0] * 21


def test_builders_match_operator_for():
    assert operator_for("A", 2) == build_transformed_L1(7, -8, 2, 2)
    assert operator_for("s7", -2) == build_transformed_L2(13, 4, -27, 3, -2)
    assert operator_for("s7") == build_L2(13, 4, -27, 3)
    assert operator_for("A") == build_L1(7, -8, 2)


def test_series_too_short():
    with pytest.raises(ValueError):
        check_annihilates(operator_for("gamma", 1), [1, 2, 3])
