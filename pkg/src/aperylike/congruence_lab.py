"""Congruences ``u_n ≡ alpha^n (mod N)`` for the Apéry-like sequences.

``M_alpha`` is the gcd of the first 3 (second kind) or 4 (first kind) values
of the binomial transform at ``alpha``.  The checks here certify, on finite
ranges, that its radical is a valid modulus for every ``alpha``, that
``M_{u_1}`` is the largest modulus over all ``alpha`` and stays stable as more
transform values enter the gcd, and the individual congruences modulo 4 and 8
used to lift from the radical to the full ``M_{u_1}``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb, gcd
from typing import Iterable, Sequence

from .exact_math import gcd_all, radical, squarefree_part
from .sequences import SPECS, Normalization, SequenceSpec, get_spec, sequence_terms
from .transforms import binomial_transform, binomial_transform_mod

#: (u_1, N_{u_1}) for each sequence, canonical (formula) normalization.
EXPECTED_TABLE: dict[str, tuple[int, int]] = {
    "A": (2, 6),
    "B": (3, 6),
    "C": (3, 6),
    "D": (3, 10),
    "E": (4, 4),
    "F": (6, 6),
    "delta": (3, 24),
    "eta": (10, 10),
    "alpha_seq": (4, 12),
    "epsilon": (4, 24),
    "zeta": (3, 6),
    "gamma": (5, 24),
    "s7": (4, 8),
    "s10": (2, 2),
    "s18": (12, 12),
}

#: Same table for the recurrence reading of eta and s18 (u_1 = b).
EXPECTED_TABLE_RECURRENCE: dict[str, tuple[int, int]] = {
    **EXPECTED_TABLE,
    "eta": (5, 10),
    "s18": (6, 6),
}

#: (sequence, base, modulus): u_n ≡ base^n (mod modulus), the non-square-free
#: remainder M_{u_1} / M*_{u_1} for the seven sequences that need it.
SPECIAL_CONGRUENCES: tuple[tuple[str, int, int], ...] = (
    ("gamma", 5, 8),
    ("E", 4, 4),
    ("alpha_seq", 4, 4),
    ("s18", 12, 4),
    ("epsilon", 4, 8),
    ("s7", 4, 8),
    ("delta", 3, 8),
)


def expected_table(normalization: Normalization | str = Normalization.FORMULA) -> dict[str, tuple[int, int]]:
    if Normalization(normalization) is Normalization.FORMULA:
        return EXPECTED_TABLE
    return EXPECTED_TABLE_RECURRENCE


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.passed


def _first_failure(name: str, items: Iterable[tuple[bool, dict]]) -> CheckResult:
    for ok, info in items:
        if not ok:
            return CheckResult(name, False, info)
    return CheckResult(name, True)


def _power_check(
    name: str, terms: Sequence[int], base: int, modulus: int, indices: Iterable[int]
) -> CheckResult:
    """``terms[n] ≡ base^n (mod modulus)`` for every ``n`` in ``indices``."""
    if modulus <= 0:
        raise ValueError(f"{name}: modulus must be positive, got {modulus}")
    return _first_failure(
        name,
        (
            ((terms[n] - pow(base, n, modulus)) % modulus == 0, {"n": n, "residue": terms[n] % modulus,
                                                                 "expected": pow(base, n, modulus)})
            for n in indices
        ),
    )


# ---------------------------------------------------------------------------
# M_alpha and certificates


def transform_prefix(
    spec: SequenceSpec | str, alpha: int, k_max: int, normalization: Normalization | str = Normalization.FORMULA
) -> tuple[int, ...]:
    u = sequence_terms(spec, k_max, normalization)
    return binomial_transform(u, alpha, k_max).values


def compute_M(spec: SequenceSpec | str, alpha: int, normalization: Normalization | str = Normalization.FORMULA) -> int:
    """gcd of ``v_1(alpha) .. v_depth(alpha)``."""
    spec = get_spec(spec)
    v = transform_prefix(spec, alpha, spec.depth, normalization)
    return gcd_all(v[1:])


def u1_of(spec: SequenceSpec | str, normalization: Normalization | str = Normalization.FORMULA) -> int:
    return sequence_terms(spec, 1, normalization)[1]


def gcd_profile(values: Sequence[int], k_max: int | None = None) -> list[tuple[int, int]]:
    """``[(K, gcd(v_1..v_K)) for K = 1..k_max]``."""
    if k_max is None:
        k_max = len(values) - 1
    out = []
    g = 0
    for k in range(1, k_max + 1):
        g = gcd(g, values[k])
        out.append((k, g))
    return out


@dataclass(frozen=True)
class Theorem1Result:
    sequence: str
    alpha: int
    M_alpha: int
    modulus: int
    n_verified: int
    passed: bool
    witness: dict | None = None


def theorem1_check(
    spec: SequenceSpec | str,
    alpha: int,
    n_max: int,
    normalization: Normalization | str = Normalization.FORMULA,
) -> Theorem1Result:
    """``u_n ≡ alpha^n`` modulo the radical of ``M_alpha`` for ``0 <= n <= n_max``."""
    spec = get_spec(spec)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    m = compute_M(spec, alpha, normalization)
    if m == 0:
        raise ValueError(f"{spec.id}: M_alpha vanishes at alpha={alpha}")
    modulus = radical(m)
    u = sequence_terms(spec, n_max, normalization)
    res = _power_check("theorem1", u, alpha, modulus, range(n_max + 1))
    return Theorem1Result(spec.id, alpha, m, modulus, n_max, res.passed, res.witness)


@dataclass(frozen=True)
class CongruenceCertificate:
    sequence: str
    alpha: int
    M_alpha: int
    M_radical: int
    M_squarefree_part: int
    gcd_profile: tuple[tuple[int, int], ...]
    verified_to: int
    status: str
    counterexample: dict | None = None
    normalization: str = Normalization.FORMULA.value
    alpha_range: tuple[int, int] | None = None

    @property
    def passed(self) -> bool:
        return self.status == "Pass"

    @property
    def stable_from(self) -> int:
        """Smallest K from which the gcd profile is constant."""
        k0 = self.gcd_profile[-1][0]
        for k, g in reversed(self.gcd_profile):
            if g != self.gcd_profile[-1][1]:
                break
            k0 = k
        return k0

    def to_dict(self) -> dict:
        return {
            "sequence": self.sequence,
            "alpha": self.alpha,
            "M": self.M_alpha,
            "radical": self.M_radical,
            "squarefree_part": self.M_squarefree_part,
            "gcd_profile": [list(p) for p in self.gcd_profile],
            "gcd_stable_from": self.stable_from,
            "n_verified": self.verified_to,
            "status": self.status,
            "counterexample": self.counterexample,
            "normalization": self.normalization,
            "alpha_range": list(self.alpha_range) if self.alpha_range else None,
        }


def theorem2_check(
    spec: SequenceSpec | str,
    n_max: int = 500,
    alpha_range: Iterable[int] = range(-10, 21),
    normalization: Normalization | str = Normalization.FORMULA,
) -> CongruenceCertificate:
    """Certify ``N_{u_1} = M_{u_1}`` and ``M_alpha | M_{u_1}`` on finite ranges.

    Checks, in order: ``u_n ≡ u_1^n (mod M_{u_1})`` for ``n <= n_max``; the gcd of
    ``v_1..v_K(u_1)`` equals ``M_{u_1}`` for every ``K`` from the defining depth
    to ``n_max``; and ``M_alpha = gcd(u_1 - alpha, M_{u_1})`` divides ``M_{u_1}``
    for every ``alpha`` in ``alpha_range``.  The first failure is recorded.
    """
    spec = get_spec(spec)
    norm = Normalization(normalization)
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    u = sequence_terms(spec, n_max, norm)
    u1 = u[1]
    v = binomial_transform(u, u1, n_max).values
    profile = gcd_profile(v, n_max)
    m = profile[spec.depth - 1][1]
    alphas = list(alpha_range)

    def failures():
        if m == 0:
            yield {"step": "nonzero", "M": 0}
            return
        res = _power_check("power", u, u1, m, range(n_max + 1))
        if not res.passed:
            yield {"step": "u_n ≡ u1^n", **res.witness}
        for k, g in profile[spec.depth - 1:]:
            if g != m:
                yield {"step": "gcd stable", "K": k, "gcd": g}
                break
        for a in alphas:
            ma = compute_M(spec, a, norm)
            if ma != gcd(u1 - a, m) or m % ma:
                yield {"step": "M_alpha | M_u1", "alpha": a, "M_alpha": ma}
                break

    bad = next(failures(), None)
    return CongruenceCertificate(
        sequence=spec.id,
        alpha=u1,
        M_alpha=m,
        M_radical=radical(m) if m else 0,
        M_squarefree_part=squarefree_part(m) if m else 0,
        gcd_profile=tuple(profile),
        verified_to=n_max,
        status="Pass" if bad is None else "Fail",
        counterexample=bad,
        normalization=norm.value,
        alpha_range=(min(alphas), max(alphas)) if alphas else None,
    )


# ---------------------------------------------------------------------------
# Gauss congruences


def gauss_check(
    spec: SequenceSpec | str,
    alpha: int,
    primes: Sequence[int],
    n_max: int,
    normalization: Normalization | str = Normalization.FORMULA,
) -> CheckResult:
    """``v_{n p^k}(alpha) ≡ v_{n p^(k-1)}(alpha) (mod p^k)`` whenever ``n p^k <= n_max``."""
    spec = get_spec(spec)
    if not primes or n_max < 2:
        raise ValueError("need at least one prime and n_max >= 2")
    name = f"gauss {spec.id} alpha={alpha}"
    u = sequence_terms(spec, n_max, normalization)
    for p in primes:
        top = p
        while top * p <= n_max:
            top *= p
        v = binomial_transform_mod(u, alpha, top, n_max)
        pk, k = p, 1
        while pk <= n_max:
            for n in range(1, n_max // pk + 1):
                hi, lo = int(v[n * pk]), int(v[n * pk // p])
                if (hi - lo) % pk:
                    return CheckResult(name, False, {"p": p, "k": k, "n": n})
            pk *= p
            k += 1
    return CheckResult(name, True)


# ---------------------------------------------------------------------------
# gcd lemma


def poly_eval(coeffs: Sequence[int], t: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def auxiliary_lemma_check(c: int, f_coeffs: Sequence[int], alpha_range: Iterable[int]) -> CheckResult:
    """``gcd(c - alpha, f(alpha)) == gcd(c - alpha, f(c))``; ``f_coeffs`` constant term first."""
    fc = poly_eval(f_coeffs, c)
    return _first_failure(
        f"gcd lemma c={c}",
        (
            (gcd(c - a, poly_eval(f_coeffs, a)) == gcd(c - a, fc), {"alpha": a})
            for a in alpha_range
        ),
    )


def equivalence_lemma(
    terms: Sequence[int], alpha: int, modulus: int, n_max: int
) -> tuple[bool, bool]:
    """Both sides of: ``u_n ≡ alpha^n`` for all n  <=>  ``v_n(alpha) ≡ 0`` for all n >= 1."""
    lhs = all((terms[n] - pow(alpha, n, modulus)) % modulus == 0 for n in range(n_max + 1))
    v = binomial_transform_mod(terms, alpha, modulus, n_max)
    rhs = bool((v[1:] == 0).all())
    return lhs, rhs


# ---------------------------------------------------------------------------
# the mod 4 / mod 8 congruences


def special_congruence_moduli(
    normalization: Normalization | str = Normalization.FORMULA,
) -> list[tuple[str, int, int]]:
    """Derive ``(id, u_1, M/M*)`` for every sequence whose ``M_{u_1}`` is not square-free."""
    out = []
    for spec in SPECS.values():
        u1 = u1_of(spec, normalization)
        m = compute_M(spec, u1, normalization)
        rest = m // squarefree_part(m)
        if rest != 1:
            out.append((spec.id, u1, rest))
    return out


def special_congruences_check(
    n_max: int, normalization: Normalization | str = Normalization.FORMULA
) -> dict[str, CheckResult]:
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    norm = Normalization(normalization)
    table = SPECIAL_CONGRUENCES if norm is Normalization.FORMULA else special_congruence_moduli(norm)
    results = {}
    for seq_id, base, modulus in table:
        name = f"{seq_id}: u_n ≡ {base}^n (mod {modulus})"
        u = sequence_terms(seq_id, n_max, norm)
        results[name] = _power_check(name, u, base, modulus, range(n_max + 1))
    return results


def _mod_check(name: str, pairs: Iterable[tuple[int, int, int]], modulus: int) -> CheckResult:
    """Check ``lhs ≡ rhs (mod modulus)`` for each ``(n, lhs, rhs)``."""
    return _first_failure(
        name,
        (((lhs - rhs) % modulus == 0, {"n": n, "lhs": lhs % modulus, "rhs": rhs % modulus})
         for n, lhs, rhs in pairs),
    )


def kazandzidis_check(s_max: int) -> CheckResult:
    """``C(2s, 2t) ≡ C(s, t) (mod 4)`` for ``0 <= t <= s <= s_max``."""
    return _first_failure(
        "C(2s,2t) ≡ C(s,t) (mod 4)",
        (
            ((comb(2 * s, 2 * t) - comb(s, t)) % 4 == 0, {"s": s, "t": t})
            for s in range(s_max + 1)
            for t in range(s + 1)
        ),
    )


def proof_step_congruences_check(n_max: int) -> dict[str, CheckResult]:
    """Odd-index and doubling congruences mod 8 for epsilon, s7 and delta.

    ``n_max`` bounds the half index ``n``; terms are generated up to ``2 n_max + 1``.
    """
    if n_max < 8:
        raise ValueError("n_max must be at least 8")
    top = 2 * n_max + 1
    a = sequence_terms("epsilon", top)
    b = sequence_terms("s7", top)
    c = sequence_terms("delta", top)
    half = range(n_max + 1)
    checks = [
        _mod_check(
            "epsilon: (4n^2+6n+1) u_{2n+1} + 4 u_{2n} ≡ 0 (mod 8)",
            ((n, (4 * n * n + 6 * n + 1) * a[2 * n + 1] + 4 * a[2 * n], 0) for n in half), 8,
        ),
        _mod_check("epsilon: u_{2n+1} ≡ 4 u_{2n} (mod 8)", ((n, a[2 * n + 1], 4 * a[2 * n]) for n in half), 8),
        _mod_check("epsilon: u_{2n} ≡ u_n (mod 8), n >= 2", ((n, a[2 * n], a[n]) for n in half[2:]), 8),
        _mod_check("epsilon: u_n ≡ 0 (mod 8), n >= 3", ((n, a[n], 0) for n in range(3, top + 1)), 8),
        kazandzidis_check(n_max),
        _mod_check(
            "s7: recurrence at 2n, exact",
            (
                (n,
                 (2 * n + 1) ** 3 * b[2 * n + 1]
                 - 2 * (4 * n + 1) * (26 * n * n + 13 * n + 2) * b[2 * n]
                 - 6 * n * (6 * n - 1) * (6 * n + 1) * b[2 * n - 1],
                 0)
                for n in half[1:]
            ),
            8,
        ),
        _mod_check(
            "s7: (4n^2+6n+1) u_{2n+1} + 2(2n^2+3n+2) u_{2n} + 6n u_{2n-1} ≡ 0 (mod 8)",
            (
                (n,
                 (4 * n * n + 6 * n + 1) * b[2 * n + 1]
                 + 2 * (2 * n * n + 3 * n + 2) * b[2 * n]
                 + 6 * n * b[2 * n - 1],
                 0)
                for n in half[1:]
            ),
            8,
        ),
        _mod_check("s7: u_{2n} ≡ u_n (mod 8), n >= 2", ((n, b[2 * n], b[n]) for n in half[2:]), 8),
        _mod_check("s7: u_n ≡ 0 (mod 8), n >= 4", ((n, b[n], 0) for n in range(4, top + 1)), 8),
        _mod_check(
            "delta: (4n^2+6n+1) u_{2n+1} + (4n^2+6n+5) u_{2n} ≡ 0 (mod 8)",
            ((n, (4 * n * n + 6 * n + 1) * c[2 * n + 1] + (4 * n * n + 6 * n + 5) * c[2 * n], 0) for n in half),
            8,
        ),
        _mod_check("delta: u_{2n+1} ≡ 3 u_{2n} (mod 8)", ((n, c[2 * n + 1], 3 * c[2 * n]) for n in half), 8),
        _mod_check("delta: u_{2n} ≡ 3^n u_n (mod 8)", ((n, c[2 * n], pow(3, n, 8) * c[n]) for n in half), 8),
    ]
    return {r.name: r for r in checks}


def motivating_congruences_check(n_max: int) -> dict[str, CheckResult]:
    """The Apéry-number congruences mod 24, 8, 3 and 10, plus the last-digit cycle of D."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    a = sequence_terms("gamma", n_max)
    b = sequence_terms("D", n_max)
    idx = range(n_max + 1)
    checks = [
        _power_check("gamma: u_n ≡ 5^n (mod 24)", a, 5, 24, idx),
        _power_check("gamma: u_n ≡ 5^n (mod 8)", a, 5, 8, idx),
        _power_check("gamma: u_n ≡ (-1)^n (mod 3)", a, -1, 3, idx),
        _power_check("D: u_n ≡ 3^n (mod 10)", b, 3, 10, idx),
        _first_failure(
            "D: last digits cycle 1, 3, 9, 7",
            ((b[n] % 10 == (1, 3, 9, 7)[n % 4], {"n": n, "digit": b[n] % 10}) for n in idx),
        ),
    ]
    return {r.name: r for r in checks}


# ---------------------------------------------------------------------------
# table reproduction


@dataclass(frozen=True)
class TableRow:
    sequence: str
    symbol: str
    aliases: tuple[str, ...]
    u1: int
    N: int
    expected_u1: int
    expected_N: int

    @property
    def match(self) -> bool:
        return (self.u1, self.N) == (self.expected_u1, self.expected_N)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["aliases"] = list(self.aliases)
        d["match"] = self.match
        return d


def reproduce_tables(normalization: Normalization | str = Normalization.FORMULA) -> list[TableRow]:
    """Compute ``(u_1, M_{u_1})`` for all fifteen sequences in table order."""
    expected = expected_table(normalization)
    rows = []
    for spec in SPECS.values():
        u1 = u1_of(spec, normalization)
        v = transform_prefix(spec, u1, spec.depth, normalization)
        n_val = gcd_all(v[2:])
        rows.append(TableRow(spec.id, spec.symbol, spec.aliases, u1, n_val, *expected[spec.id]))
    return rows
