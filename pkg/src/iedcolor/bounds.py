"""List-size bounds that guarantee a distinguishing coloring exists.

Integer quantities (Stirling numbers, Fubini numbers, factorials) are exact.
Real-valued sums of radicals are evaluated with mpmath; before a ceiling or
floor is taken the value must sit at least ``1e-9`` away from an integer.
Single-radical sums that land near an integer, and sums whose radicals are all
rational, are decided exactly in rational arithmetic instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

import mpmath

from .errors import OutOfRange

_BASE_DPS = 50
_MAX_DPS = 800
_EPS = mpmath.mpf("1e-9")

# Eq. (1) via a Stirling row is quadratic in n; above this we switch to the
# alternating-sum form, which needs one power per term.
_FUBINI_ROW_LIMIT = 64


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple:
    row = [1]  # S(0, 0)
    for m in range(1, n + 1):
        new = [0] * (m + 1)
        for i in range(1, m + 1):
            left = row[i - 1]
            right = row[i] if i < m else 0
            new[i] = left + i * right
        row = new
    return tuple(row)


def stirling2(n: int, i: int) -> int:
    """Number of partitions of ``[n]`` into ``i`` nonempty blocks."""
    if not 0 <= i <= n:
        raise OutOfRange(f"stirling2 needs 0 <= i <= n, got n={n}, i={i}")
    return _stirling_row(n)[i]


def fubini_from_stirling(n: int) -> int:
    if n < 0:
        raise OutOfRange("fubini needs n >= 0")
    row = _stirling_row(n)
    return sum(factorial(i) * row[i] for i in range(n + 1))


def _fubini_alternating(n: int) -> int:
    # f_n = sum_j b_j j^n where sum_j b_j y^j = ((y-1)^(n+1) - 1) / (y - 2),
    # which follows from i! S(n,i) = sum_j (-1)^(i-j) C(i,j) j^n.
    top = n + 1
    coeffs = [comb(top, j) * (-1 if (top - j) % 2 else 1) for j in range(top + 1)]
    coeffs[0] -= 1
    quotient = [0] * top
    carry = 0
    for d in range(top, 0, -1):
        carry = coeffs[d] + 2 * carry
        quotient[d - 1] = carry
    return sum(quotient[j] * pow(j, n) for j in range(top))


@lru_cache(maxsize=256)
def fubini(n: int) -> int:
    """Ordered Bell number ``f_n = sum_i i! S(n, i)``."""
    if n < 0:
        raise OutOfRange("fubini needs n >= 0")
    if n <= _FUBINI_ROW_LIMIT:
        return fubini_from_stirling(n)
    return _fubini_alternating(n)


def fubini_recurrence(n: int) -> list:
    """``f_0..f_n`` from ``f_m = sum_{j>=1} C(m, j) f_{m-j}`` (independent check)."""
    f = [1]
    for m in range(1, n + 1):
        f.append(sum(comb(m, j) * f[m - j] for j in range(1, m + 1)))
    return f


def q(i: int) -> float:
    """``q_1 = 1`` and ``q_i = i/(i-1) * (i-1)^(1/i)``."""
    if i < 1:
        raise OutOfRange("q needs i >= 1")
    if i == 1:
        return 1.0
    return i / (i - 1) * (i - 1) ** (1.0 / i)


def _q_mp(i: int):
    if i == 1:
        return mpmath.mpf(1)
    return mpmath.mpf(i) / (i - 1) * mpmath.root(mpmath.mpf(i - 1), i)


# A radical term is (coef, radicand, root) meaning coef * radicand^(1/root),
# with coef and radicand positive rationals.


def _term_value(coef: Fraction, rad: Fraction, root: int):
    r = mpmath.mpf(rad.numerator) / rad.denominator
    return mpmath.mpf(coef.numerator) / coef.denominator * mpmath.root(r, root)


def _exact_le(coef: Fraction, rad: Fraction, root: int, bound: Fraction) -> bool:
    """Decide ``coef * rad^(1/root) <= bound`` exactly."""
    if bound < 0:
        return False
    return rad * coef**root <= bound**root


def _int_root(x: int, root: int):
    """Exact integer ``root``-th root of ``x >= 0`` or ``None``."""
    if x < 2:
        return x
    with mpmath.workdps(x.bit_length() // (3 * root) + 30):
        guess = int(mpmath.nint(mpmath.root(x, root)))
    for c in (guess - 1, guess, guess + 1):
        if c >= 0 and c**root == x:
            return c
    return None


def _rational_root(rad: Fraction, root: int):
    if root == 1:
        return rad
    a, b = _int_root(rad.numerator, root), _int_root(rad.denominator, root)
    return None if a is None or b is None else Fraction(a, b)


def _round_sum(const: Fraction, terms: Sequence, evaluate, *, ceil: bool) -> int:
    """Ceil (or floor) of ``const + sum of terms`` with a stability check.

    ``evaluate`` returns the mpmath value of the radical sum at the current
    precision.  Values near an integer are re-evaluated at higher precision;
    a single radical that stays near an integer is settled exactly.
    """
    # A positive combination of real radicals is rational only if every
    # radical is, so the loop below can only stall on an all-rational sum.
    roots = [_rational_root(rad, root) for _, rad, root in terms]
    if all(r is not None for r in roots):
        exact = const + sum((c * r for (c, _, _), r in zip(terms, roots)), Fraction(0))
        return math.ceil(exact) if ceil else math.floor(exact)
    dps = _BASE_DPS
    while True:
        with mpmath.workdps(dps):
            value = mpmath.mpf(const.numerator) / const.denominator + evaluate()
            nearest = mpmath.nint(value)
            if abs(value - nearest) > _EPS:
                return int(mpmath.ceil(value) if ceil else mpmath.floor(value))
        if len(terms) == 1:
            break
        if dps >= _MAX_DPS:
            raise ArithmeticError("radical sum is too close to an integer to round safely")
        dps *= 2
    # one term, value within 1e-9 of an integer t: decide exactly
    coef, rad, root = terms[0]
    t = int(nearest)
    at_most_t = _exact_le(coef, rad, root, Fraction(t) - const)
    if ceil:
        return t if at_most_t else t + 1
    return t if _exact_ge(coef, rad, root, Fraction(t) - const) else t - 1


def _exact_ge(coef: Fraction, rad: Fraction, root: int, bound: Fraction) -> bool:
    if bound <= 0:
        return True
    return rad * coef**root >= bound**root


def _theorem_terms(k: int, delta: int, I: Iterable[int], weight) -> list:
    """Terms ``q_i * a_i^(1/i)`` with ``a_i = D(D-1)(k-1)/(k-i) * weight(i)``.

    ``q_i`` is folded into the radical as ``i/(i-1) * ((i-1) a_i)^(1/i)`` so
    the exact fallback can compare rationals.
    """
    terms = []
    for i in sorted(set(I)):
        a = Fraction(delta * (delta - 1) * (k - 1), k - i) * weight(i)
        if i == 1:
            terms.append((Fraction(1), a, 1))
        else:
            terms.append((Fraction(i, i - 1), (i - 1) * a, i))
    return terms


def _check_input(k: int, delta: int, I: Iterable[int]) -> frozenset:
    I = frozenset(I)
    if k < 2:
        raise OutOfRange("k must be at least 2")
    if delta < 2:
        raise OutOfRange("delta must be at least 2")
    for i in I:
        if not 1 <= i <= k - 1:
            raise OutOfRange(f"difference size {i} is outside 1..{k - 1}")
    return I


def _direct_evaluator(k: int, delta: int, I, weight):
    # Evaluates q_i and the i-th root separately, without folding.
    def evaluate():
        total = mpmath.mpf(0)
        for i in sorted(I):
            a = mpmath.mpf(delta * (delta - 1) * (k - 1)) / (k - i) * _as_mpf(weight(i))
            total += _q_mp(i) * mpmath.root(a, i)
        return total

    return evaluate


def _as_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _sets_weight(k: int):
    return lambda i: Fraction(2 ** (k - i + 1) * fubini(i))


def _multisets_weight(i: int) -> Fraction:
    return Fraction(factorial(i))


def bound_ieds(k: int, delta: int, I: Iterable[int]) -> int:
    """List size guaranteeing a coloring distinguishing intersecting edges by sets."""
    I = _check_input(k, delta, I)
    if not I:
        return 2
    w = _sets_weight(k)
    terms = _theorem_terms(k, delta, I, w)
    return _round_sum(Fraction(2), terms, _direct_evaluator(k, delta, I, w), ceil=True)


def bound_iedm(k: int, delta: int, I: Iterable[int]) -> int:
    """List size guaranteeing a coloring distinguishing intersecting edges by multisets."""
    I = _check_input(k, delta, I)
    if not I:
        return 2
    terms = _theorem_terms(k, delta, I, _multisets_weight)
    return _round_sum(Fraction(2), terms, _direct_evaluator(k, delta, I, _multisets_weight), ceil=True)


def sequence_radicand(k: int, delta: int, I: Iterable[int], pi_size: int, i: int) -> Fraction:
    """Per-difference count ``D(D-1)π(1 + (k-1) min{1, |I|/(k-i)})``."""
    I = frozenset(I)
    share = min(Fraction(1), Fraction(len(I), k - i))
    return delta * (delta - 1) * pi_size * (1 + (k - 1) * share)


def bound_sequences(k: int, delta: int, I: Iterable[int], pi_size: int) -> int:
    """List size guaranteeing a Π-distinguishing coloring (``1 + floor(sum)``)."""
    I = _check_input(k, delta, I)
    if pi_size < 1:
        raise OutOfRange("permutation family must be nonempty")
    if not I:
        return 1
    terms = []
    for i in sorted(I):
        a = sequence_radicand(k, delta, I, pi_size, i)
        terms.append((Fraction(1), a, 1) if i == 1 else (Fraction(i, i - 1), (i - 1) * a, i))

    def evaluate():
        total = mpmath.mpf(0)
        for i in sorted(I):
            total += _q_mp(i) * mpmath.root(_as_mpf(sequence_radicand(k, delta, I, pi_size, i)), i)
        return total

    return 1 + _round_sum(Fraction(0), terms, evaluate, ceil=False)


# Closed forms printed for regular graphs, lines and configurations.  Each is
# an independent formula ``c + coef * rad^(1/root)``; tests compare them with
# the generic bounds above.


def _closed(const: int, coef: Fraction, rad: int, root: int, *, ceil: bool = True) -> int:
    term = (coef, Fraction(rad), root)
    return _round_sum(
        Fraction(const), [term], lambda: _term_value(*term), ceil=ceil
    )


def cor_edge_sets(k: int) -> int:
    """Edge labeling of a k-regular graph distinguishing neighbors by sets."""
    return _closed(2, Fraction(k - 1, k - 2), 8 * (k - 1) * (k - 2) * fubini(k - 1), k - 1)


def cor_total_sets(k: int) -> int:
    return _closed(2, Fraction(k, k - 1), 8 * k * (k - 1) * fubini(k), k)


def cor_edge_multisets(k: int) -> int:
    return _closed(2, Fraction(k - 1, k - 2), 2 * (k - 1) * (k - 2) * factorial(k - 1), k - 1)


def cor_total_multisets(k: int) -> int:
    return _closed(2, Fraction(k, k - 1), 2 * k * (k - 1) * factorial(k), k)


def cor_configuration_sets(k: int, r: int) -> int:
    return _closed(2, Fraction(k - 1, k - 2), 4 * r * (r - 1) * (k - 1) * (k - 2) * fubini(k - 1), k - 1)


def cor_configuration_multisets(k: int, r: int) -> int:
    return _closed(2, Fraction(k - 1, k - 2), r * (r - 1) * (k - 1) * (k - 2) * factorial(k - 1), k - 1)


def cor_graph_sequences(k: int) -> int:
    """Fixed edge order, labels distinguishing adjacent vertices by sequences."""
    return 1 + _closed(0, Fraction(k - 1, k - 2), 2 * k * k - 4 * k, k - 1, ceil=False)


def cor_lines_sequences(k: int) -> int:
    """Lines in general position read in either direction."""
    return 1 + _closed(0, Fraction(k - 1, k - 2), 4 * k * k - 8 * k, k - 1, ceil=False)


@dataclass(frozen=True)
class ThresholdCheck:
    name: str
    k: int
    bound: int
    limit: Fraction
    ok: bool

    def __str__(self):
        status = "ok" if self.ok else "FAIL"
        return f"{self.name} k={self.k} bound={self.bound} limit={float(self.limit):g} {status}"


THRESHOLDS = (
    ("edge-sets", 1540, Fraction(54, 100), cor_edge_sets),
    ("total-sets", 1600, Fraction(54, 100), cor_total_sets),
    ("edge-multisets", 5435, Fraction(37, 100), cor_edge_multisets),
    ("total-multisets", 5650, Fraction(37, 100), cor_total_multisets),
)


def corollary_threshold_checks() -> list:
    """Evaluate each regular-graph bound at its stated threshold k.

    Only the one-sided claim ``bound <= c*k`` at the threshold is checked.
    """
    out = []
    for name, k, factor, fn in THRESHOLDS:
        b = fn(k)
        limit = factor * k
        out.append(ThresholdCheck(name, k, b, limit, b <= limit))
    return out


def iteration_reference(n: int, R: int) -> float:
    """``n R ln R``, the growth rate of the expected iteration count."""
    return n * R * float(mpmath.log(R)) if R > 1 else float(n)


def expected_iterations_bound(n: int, R: int) -> float:
    """``n ln(R+1) / ln((R-0.5)/(R-1)) + 2R + 2``, the explicit expectation bound."""
    if R < 2:
        raise OutOfRange("R must be at least 2")
    return float(n * mpmath.log(R + 1) / mpmath.log((R - 0.5) / (R - 1)) + 2 * R + 2)
