"""Binomial transforms ``v_n(x) = sum_k C(n,k) (-x)^(n-k) u_k`` and their series."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .sequences import Normalization, SequenceSpec, TermTable, get_spec, sequence_terms

Terms = Union[TermTable, Sequence[int]]


def _as_list(terms: Terms) -> Sequence[int]:
    return terms.terms if isinstance(terms, TermTable) else terms


@dataclass(frozen=True)
class TransformTable:
    spec: SequenceSpec | None
    alpha: int
    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]


@dataclass(frozen=True)
class SeriesPoly:
    """Truncated power series; ``coefficients[i]`` multiplies ``z^i``."""

    coefficients: tuple[int, ...]

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1


def binomial_transform(terms: Terms, alpha: int, n_max: int) -> TransformTable:
    """Exact ``v_0(alpha) .. v_{n_max}(alpha)``."""
    u = _as_list(terms)
    if len(u) <= n_max:
        raise ValueError(f"need terms up to index {n_max}, have {len(u) - 1}")
    x = -alpha
    pw = [1]
    for _ in range(n_max):
        pw.append(pw[-1] * x)
    out = []
    for n in range(n_max + 1):
        c, s = 1, 0
        for k in range(n + 1):
            s += c * pw[n - k] * u[k]
            c = c * (n - k) // (k + 1)
        out.append(s)
    spec = terms.spec if isinstance(terms, TermTable) else None
    return TransformTable(spec, alpha, tuple(out))


def inverse_transform(vtable: TransformTable, n_max: int | None = None) -> list[int]:
    """Binomial inversion ``u_n = sum_k C(n,k) alpha^(n-k) v_k``."""
    if n_max is None:
        n_max = len(vtable.values) - 1
    inverse = binomial_transform(vtable.values, -vtable.alpha, n_max)
    return list(inverse.values)


def binomial_transform_mod(terms: Terms, alpha: int, modulus: int, n_max: int) -> np.ndarray:
    """``v_n(alpha) mod modulus`` for ``n <= n_max`` as an int64 array.

    Uses the forward-difference table ``w <- w[1:] - alpha * w[:-1]``, whose
    leading entry after ``n`` steps is ``v_n``.
    """
    if not 1 <= modulus < 2**31:
        raise ValueError(f"modulus out of range: {modulus}")
    u = _as_list(terms)
    if len(u) <= n_max:
        raise ValueError(f"need terms up to index {n_max}, have {len(u) - 1}")
    w = np.array([t % modulus for t in u[: n_max + 1]], dtype=np.int64)
    a = alpha % modulus
    out = np.empty(n_max + 1, dtype=np.int64)
    for n in range(n_max + 1):
        out[n] = w[0]
        w = (w[1:] - a * w[:-1]) % modulus
    return out


def transform_values(
    spec: SequenceSpec | str,
    alpha: int,
    n_max: int,
    normalization: Normalization | str = Normalization.FORMULA,
) -> tuple[int, ...]:
    spec = get_spec(spec)
    return binomial_transform(sequence_terms(spec, n_max, normalization), alpha, n_max).values


def series_of(terms: Terms, order: int) -> SeriesPoly:
    u = _as_list(terms)
    if len(u) <= order:
        raise ValueError(f"need terms up to index {order}, have {len(u) - 1}")
    return SeriesPoly(tuple(u[: order + 1]))


def _divide_by_one_plus(coeffs: list[int], x: int) -> list[int]:
    # c / (1 + x z), truncated to len(coeffs)
    out = []
    prev = 0
    for a in coeffs:
        prev = a - x * prev
        out.append(prev)
    return out


def gf_substitution_series(terms: Terms, x: int, order: int) -> SeriesPoly:
    """Coefficients of ``F(z / (1 + xz)) / (1 + xz)`` through ``z^order``.

    Accumulates ``u_k z^k (1 + xz)^(-k-1)`` term by term; each power is the
    previous one shifted by ``z`` and divided once more by ``1 + xz``.
    """
    u = _as_list(terms)
    if len(u) <= order:
        raise ValueError(f"need terms up to index {order}, have {len(u) - 1}")
    total = [0] * (order + 1)
    # block = z^k (1 + xz)^(-k-1), stored from index k
    block = _divide_by_one_plus([1] + [0] * order, x)
    for k in range(order + 1):
        uk = u[k]
        for i, c in enumerate(block):
            total[k + i] += uk * c
        block = _divide_by_one_plus(block[: order - k], x)
    return SeriesPoly(tuple(total))


def verify_gf_identity(
    spec: SequenceSpec | str,
    alpha: int,
    order: int,
    normalization: Normalization | str = Normalization.FORMULA,
) -> bool:
    """Check ``G(z) = F(z/(1+alpha z)) / (1+alpha z)`` coefficientwise."""
    if order < 1:
        raise ValueError("order must be at least 1")
    u = sequence_terms(spec, order, normalization)
    lhs = binomial_transform(u, alpha, order).values
    rhs = gf_substitution_series(u, alpha, order).coefficients
    return lhs == rhs


def transform_polynomial(terms: Terms, n: int) -> list[int]:
    """Coefficients (constant first) of ``v_n`` as a polynomial in ``x``."""
    u = _as_list(terms)
    coeffs = [0] * (n + 1)
    c = 1
    for k in range(n + 1):
        j = n - k
        coeffs[j] = c * (-1) ** j * u[k]
        c = c * (n - k) // (k + 1)
    return coeffs
