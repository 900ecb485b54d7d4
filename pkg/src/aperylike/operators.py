"""Theta-operators ``sum_j z^j P_j(theta)`` and the recurrences they encode.

Applied to ``sum_n v_n z^n``, the block ``z^j P_j(theta)`` contributes
``P_j(n - j) v_{n-j}`` to the coefficient of ``z^n``.  An operator therefore
annihilates the series iff ``sum_j P_j(n - j) v_{n-j} = 0`` for every ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .sequences import SequenceKind, SequenceSpec, get_spec
from .transforms import SeriesPoly, TransformTable


@dataclass(frozen=True)
class ThetaPoly:
    """Integer polynomial in one variable, constant term first, no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def of(cls, *coeffs: int) -> "ThetaPoly":
        return cls(tuple(coeffs))

    @classmethod
    def shifted_power(cls, shift: int, power: int) -> "ThetaPoly":
        """``(theta + shift)^power``."""
        return cls(tuple(comb(power, i) * shift ** (power - i) for i in range(power + 1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "ThetaPoly") -> "ThetaPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return ThetaPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "ThetaPoly":
        return ThetaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ThetaPoly") -> "ThetaPoly":
        return self + (-other)

    def __mul__(self, other) -> "ThetaPoly":
        if isinstance(other, int):
            return ThetaPoly(tuple(other * c for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return ThetaPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ThetaPoly(tuple(out))

    __rmul__ = __mul__

    def shift(self, s: int) -> "ThetaPoly":
        """The polynomial ``t -> p(t + s)``."""
        out = ThetaPoly()
        for i, c in enumerate(self.coeffs):
            out = out + ThetaPoly.shifted_power(s, i) * c
        return out

    def format(self, var: str = "n") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


THETA = ThetaPoly.of(0, 1)


def _lin(a: int, b: int) -> ThetaPoly:
    """``a*theta + b``."""
    return ThetaPoly.of(b, a)


def _quad(a2: int, a1: int, a0: int) -> ThetaPoly:
    return ThetaPoly.of(a0, a1, a2)


@dataclass(frozen=True)
class ThetaOperator:
    """``sum_j z^j P_j(theta)`` with zero blocks dropped."""

    terms: tuple[tuple[int, ThetaPoly], ...]

    def __post_init__(self):
        merged: dict[int, ThetaPoly] = {}
        for j, p in self.terms:
            if j < 0:
                raise ValueError("z powers must be nonnegative")
            merged[j] = merged.get(j, ThetaPoly()) + p
        kept = tuple((j, merged[j]) for j in sorted(merged) if not merged[j].is_zero())
        if not kept or kept[0][0] != 0:
            raise ValueError("operator needs a nonzero z^0 block")
        object.__setattr__(self, "terms", kept)

    @classmethod
    def from_blocks(cls, blocks: dict[int, ThetaPoly]) -> "ThetaOperator":
        return cls(tuple(blocks.items()))

    @property
    def max_z_power(self) -> int:
        return self.terms[-1][0]

    def block(self, j: int) -> ThetaPoly:
        return dict(self.terms).get(j, ThetaPoly())

    def to_dict(self) -> dict[str, list[int]]:
        return {str(j): list(p.coeffs) for j, p in self.terms}

    def format(self) -> str:
        out = []
        for j, p in self.terms:
            zpart = "" if j == 0 else ("z*" if j == 1 else f"z^{j}*")
            out.append(f"{zpart}({p.format('θ')})")
        return " + ".join(out)


def build_L1(A: int, B: int, lam: int) -> ThetaOperator:
    """``θ² - y(Aθ² + Aθ + λ) + B y² (θ+1)²``."""
    return ThetaOperator.from_blocks({
        0: THETA * THETA,
        1: -_quad(A, A, lam),
        2: ThetaPoly.shifted_power(1, 2) * B,
    })


def build_L2(a: int, b: int, c: int, d: int) -> ThetaOperator:
    """``θ³ - y(2θ+1)(aθ² + aθ + b) + y²(c(θ+1)³ + d(θ+1))``."""
    return ThetaOperator.from_blocks({
        0: ThetaPoly.shifted_power(0, 3),
        1: -(_lin(2, 1) * _quad(a, a, b)),
        2: ThetaPoly.shifted_power(1, 3) * c + ThetaPoly.shifted_power(1, 1) * d,
    })


def build_transformed_L1(A: int, B: int, lam: int, x: int) -> ThetaOperator:
    """Operator annihilating ``sum v_n(x) z^n`` when ``L1`` annihilates ``sum u_n y^n``."""
    th1 = _lin(1, 1)
    return ThetaOperator.from_blocks({
        0: THETA * THETA,
        1: _quad(3 * x - A, 3 * x - A, x - lam),
        2: -(th1 * th1) * (2 * A * x - 3 * x * x - B),
        3: -(th1 * _lin(1, 2)) * (x * (A * x - x * x - B)),
    })


def build_transformed_L2(a: int, b: int, c: int, d: int, x: int) -> ThetaOperator:
    """Operator annihilating ``sum v_n(x) z^n`` when ``L2`` annihilates ``sum u_n y^n``."""
    th1, th2, th3 = _lin(1, 1), _lin(1, 2), _lin(1, 3)
    return ThetaOperator.from_blocks({
        0: ThetaPoly.shifted_power(0, 3),
        1: -(_lin(2, 1) * _quad(a - 2 * x, a - 2 * x, b - x)),
        2: -(th1 * _quad(
            6 * a * x - 6 * x * x - c,
            12 * a * x - 12 * x * x - 2 * c,
            6 * a * x + 2 * b * x - 7 * x * x - c - d,
        )),
        3: -(th1 * th2 * _lin(2, 3)) * (x * (3 * a * x - 2 * x * x - c)),
        4: -(th1 * th2 * th3) * (x * x * (2 * a * x - x * x - c)),
    })


def operator_for(spec: SequenceSpec | str, alpha: int | None = None) -> ThetaOperator:
    """The untransformed operator (``alpha is None``) or the transformed one at ``alpha``."""
    spec = get_spec(spec)
    if spec.kind is SequenceKind.SECOND:
        return build_L1(*spec.params) if alpha is None else build_transformed_L1(*spec.params, alpha)
    return build_L2(*spec.params) if alpha is None else build_transformed_L2(*spec.params, alpha)


@dataclass(frozen=True)
class Recurrence:
    """``sum_j coeff_polys[j](n) * v[n-j] = 0``."""

    coeff_polys: tuple[ThetaPoly, ...]

    @property
    def order(self) -> int:
        return len(self.coeff_polys) - 1

    def residual(self, values: Sequence[int], n: int) -> int:
        return sum(p(n) * values[n - j] for j, p in enumerate(self.coeff_polys) if n - j >= 0)

    def format(self) -> str:
        parts = []
        for j, p in enumerate(self.coeff_polys):
            if p.is_zero():
                continue
            v = "v[n]" if j == 0 else f"v[n-{j}]"
            body = p.format()
            parts.append(f"{body}*{v}" if j == 0 and p.coeffs.count(0) == p.degree else f"({body})*{v}")
        return " + ".join(parts) + " = 0"

    def to_dict(self) -> dict[str, list[int]]:
        return {str(j): list(p.coeffs) for j, p in enumerate(self.coeff_polys)}


def operator_to_recurrence(op: ThetaOperator) -> Recurrence:
    polys = [ThetaPoly()] * (op.max_z_power + 1)
    for j, p in op.terms:
        polys[j] = p.shift(-j)
    return Recurrence(tuple(polys))


@dataclass(frozen=True)
class AnnihilationResult:
    ok: bool
    first_bad_index: int | None = None
    checked_to: int = 0


def check_annihilates(
    op: ThetaOperator,
    series: SeriesPoly | TransformTable | Sequence[int],
    start: int | None = None,
) -> AnnihilationResult:
    """Exact residual check of ``op`` on a truncated series.

    Residuals are checked for ``start <= n <= order``; ``start`` defaults to
    the operator's top z-power.  Pass ``start=0`` to include the low indices,
    where ``v_m = 0`` is assumed for ``m < 0``.
    """
    if isinstance(series, SeriesPoly):
        coeffs = series.coefficients
    elif isinstance(series, TransformTable):
        coeffs = series.values
    else:
        coeffs = tuple(series)
    order = len(coeffs) - 1
    if order < op.max_z_power:
        raise ValueError(f"series order {order} below operator z-degree {op.max_z_power}")
    rec = operator_to_recurrence(op)
    for n in range(op.max_z_power if start is None else start, order + 1):
        if rec.residual(coeffs, n):
            return AnnihilationResult(False, n, order)
    return AnnihilationResult(True, None, order)


def recurrence_degrees(rec: Recurrence) -> list[int]:
    return [p.degree for p in rec.coeff_polys]


def iter_recurrence_terms(rec: Recurrence, initial: Iterable[int], n_max: int) -> list[int]:
    """Solve ``rec`` forward for ``v_0..v_{n_max}``; exact division by the leading coefficient."""
    v = list(initial)
    lead = rec.coeff_polys[0]
    while len(v) <= n_max:
        n = len(v)
        rest = sum(p(n) * v[n - j] for j, p in enumerate(rec.coeff_polys) if j and n - j >= 0)
        q, r = divmod(-rest, lead(n))
        if r:
            raise ArithmeticError(f"non-integral recurrence step at n={n}")
        v.append(q)
    return v
