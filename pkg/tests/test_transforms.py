import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from aperylike.sequences import SPECS, Normalization, sequence_terms
from aperylike.transforms import (
    binomial_transform,
    binomial_transform_mod,
    gf_substitution_series,
    inverse_transform,
    series_of,
    transform_polynomial,
    transform_values,
    verify_gf_identity,
)
from aperylike.congruence_lab import equivalence_lemma
from oracles import difference_transform

int_lists = st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=25)


@pytest.mark.parametrize("seq_id, alpha, expected", [
    ("D", 3, [1, 0, 10, 30, 270]),
    ("gamma", 5, [1, 0, 48, 600, 13176]),
    ("A", 2, [1, 0, 6, 12]),
])
def test_transform_examples(seq_id, alpha, expected):
    assert list(transform_values(seq_id, alpha, len(expected) - 1)) == expected


def test_transform_at_zero_is_identity():
    u = sequence_terms("F", 20)
    assert list(binomial_transform(u, 0, 20).values) == list(u)


@given(int_lists, st.integers(-30, 30))
def test_direct_sum_matches_difference_oracle(u, x):
    n = len(u) - 1
    assert list(binomial_transform(u, x, n).values) == difference_transform(u, x, n)


@given(int_lists, st.integers(-30, 30))
def test_inversion_round_trip(u, x):
    n = len(u) - 1
    assert inverse_transform(binomial_transform(u, x, n)) == list(u)


@given(int_lists, st.integers(-100, 100), st.integers(1, 10**6))
def test_mod_transform_matches_exact(u, x, m):
    n = len(u) - 1
    exact = binomial_transform(u, x, n).values
    assert [int(t) for t in binomial_transform_mod(u, x, m, n)] == [t % m for t in exact]


def test_mod_transform_rejects_large_modulus():
    with pytest.raises(ValueError):
        binomial_transform_mod([1, 2], 1, 2**31, 1)


def test_short_input_rejected():
    with pytest.raises(ValueError):
        binomial_transform([1, 2], 1, 5)


@pytest.mark.parametrize("seq_id", ["gamma", "D", "epsilon"])
def test_equivalence_lemma_both_sides(seq_id):
    u = sequence_terms(seq_id, 200)
    for alpha, m in [(5, 24), (3, 10), (4, 24), (2, 7)]:
        lhs, rhs = equivalence_lemma(u, alpha, m, 200)
        assert lhs == rhs


@pytest.mark.parametrize("seq_id", list(SPECS))
def test_transform_polynomial_shape(seq_id):
    u = sequence_terms(seq_id, 8)
    for n in range(9):
        coeffs = transform_polynomial(u, n)
        assert len(coeffs) == n + 1 and coeffs[n] == (-1) ** n
        for x in (-3, 0, 2, 7):
            assert sum(c * x**i for i, c in enumerate(coeffs)) == binomial_transform(u, x, n).values[n]


@pytest.mark.parametrize("seq_id", list(SPECS))
def test_gf_identity(seq_id):
    u1 = sequence_terms(seq_id, 1)[1]
    for alpha in (0, 1, u1, -4):
        assert verify_gf_identity(seq_id, alpha, 64)


@pytest.mark.parametrize("seq_id, x", [("A", 2), ("gamma", -3), ("s18", 12)])
def test_gf_substitution_against_sympy(seq_id, x):
    order = 10
    u = sequence_terms(seq_id, order)
    z = sp.symbols("z")
    F = sum(sp.Integer(c) * z**k for k, c in enumerate(u))
    G = sp.series(F.subs(z, z / (1 + x * z)) / (1 + x * z), z, 0, order + 1).removeO()
    want = [int(sp.Poly(G, z).coeff_monomial(z**k)) for k in range(order + 1)]
    assert list(gf_substitution_series(u, x, order).coefficients) == want


def test_series_of_truncates():
    s = series_of([1, 2, 3, 4], 2)
    assert s.coefficients == (1, 2, 3) and s.truncation_order == 2


def test_recurrence_normalization_transform():
    assert list(transform_values("eta", 5, 3, Normalization.RECURRENCE)) == [1, 0, 10, 0]
