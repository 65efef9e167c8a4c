"""Partition combinatorics and Schur polynomials of Chern classes.

A partition a = (a_1 >= ... >= a_n >= 0) of n indexes the weight-n Schur
polynomial

    P_a(c) = det(c_{a_i - i + j})_{1 <= i,j <= n},   c_0 = 1, c_k = 0 for k
    outside [0, n],

the basic positivity generator for nef bundles.  The determinant is
expanded by fraction-free (Bareiss) elimination.  Bareiss intermediates
are minors of weight up to 2n, so they are computed over an untruncated
exponent map and only the final, homogeneous weight-n result is converted
back into the truncated ring.

The module also provides the top Segre class (inverse of the total Chern
class), power sums of the Chern roots via Newton's identities, and the
substitution c_i -> (-1)^i c_i that swaps the tangent and cotangent
descriptions of the same geometry.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .poly import GradedPoly, Monomial, mono_weight

__all__ = [
    "BasisConvention",
    "ConventionMismatch",
    "InvalidPartition",
    "Partition",
    "partitions_of",
    "pad_partition",
    "strip_partition",
    "partition_text",
    "parse_partition",
    "partition_label",
    "schur",
    "segre_top",
    "power_sum",
    "flip_basis",
]

Partition = tuple[int, ...]


class BasisConvention(str, Enum):
    """Which bundle the variables c_i refer to.

    Cotangent means c_i = c_i(Omega^1); tangent means c_i = c_i(TX).  The
    two differ by the sign flip c_i -> (-1)^i c_i.
    """

    TANGENT = "tangent"
    COTANGENT = "cotangent"

    def other(self) -> "BasisConvention":
        if self is BasisConvention.TANGENT:
            return BasisConvention.COTANGENT
        return BasisConvention.TANGENT

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


class ConventionMismatch(ValueError):
    """Operands carry different tangent/cotangent convention tags."""


class InvalidPartition(ValueError):
    """Sequence is not a partition of the requested weight."""


def pad_partition(parts: Sequence[int], n: int) -> Partition:
    """Zero-pad to length n (so Jacobi-Trudi matrices are always n x n)."""
    parts = tuple(parts)
    if len(parts) > n:
        if any(p != 0 for p in parts[n:]):
            raise InvalidPartition(f"partition {parts} longer than {n}")
        parts = parts[:n]
    return parts + (0,) * (n - len(parts))


def strip_partition(parts: Sequence[int]) -> Partition:
    """Drop trailing zeros."""
    parts = tuple(parts)
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def _validate_partition(parts: Sequence[int], n: int) -> Partition:
    padded = pad_partition(parts, n)
    if any(isinstance(p, bool) or not isinstance(p, int) or p < 0 for p in padded):
        raise InvalidPartition(f"parts must be non-negative integers: {parts}")
    if any(padded[i] < padded[i + 1] for i in range(len(padded) - 1)):
        raise InvalidPartition(f"parts must be non-increasing: {parts}")
    if padded and padded[0] > n:
        raise InvalidPartition(f"largest part {padded[0]} exceeds {n}")
    if sum(padded) != n:
        raise InvalidPartition(f"{parts} is not a partition of {n}")
    return padded


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, zero-padded to length n, in reverse-lexicographic
    order: (n, 0, ...) first, (1, 1, ..., 1) last."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InvalidPartition(f"partition weight must be a non-negative integer: {n!r}")

    def descend(left: int, cap: int) -> Iterable[tuple[int, ...]]:
        if left == 0:
            yield ()
            return
        for first in range(min(left, cap), 0, -1):
            for rest in descend(left - first, first):
                yield (first,) + rest

    return tuple(pad_partition(p, n) for p in descend(n, n))


def partition_text(parts: Sequence[int]) -> str:
    """External form: comma-separated parts without padding, e.g. '2,1'."""
    stripped = strip_partition(parts)
    return ",".join(str(p) for p in stripped) if stripped else "0"


def parse_partition(text: str, n: int) -> Partition:
    """Parse '2,1' (or '2, 1') into a validated padded partition of n."""
    body = text.strip()
    if body in ("", "0"):
        return _validate_partition((), n)
    try:
        parts = tuple(int(tok) for tok in body.split(","))
    except ValueError as exc:
        raise InvalidPartition(f"bad partition text {text!r}") from exc
    return _validate_partition(parts, n)


def partition_label(parts: Sequence[int], n: int | None = None) -> str:
    """Stable generator name, padded: 'P_(2,1,0)'."""
    if n is not None:
        parts = pad_partition(parts, n)
    return "P_(" + ",".join(str(p) for p in parts) + ")"


# -- untruncated exponent-map arithmetic for Bareiss ----------------------
#
# Values are dicts {exponent tuple: Fraction}; no weight cap, since minor
# products can reach weight 2n before the exact division brings them back
# under n.

_DictPoly = dict[Monomial, Fraction]


def _d_zero() -> _DictPoly:
    return {}


def _d_const(dim: int, value: Fraction) -> _DictPoly:
    return {(0,) * dim: value} if value else {}


def _d_add(a: _DictPoly, b: _DictPoly) -> _DictPoly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, Fraction(0)) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _d_sub(a: _DictPoly, b: _DictPoly) -> _DictPoly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, Fraction(0)) - c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _d_mul(a: _DictPoly, b: _DictPoly) -> _DictPoly:
    out: _DictPoly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, Fraction(0)) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _d_lead(a: _DictPoly) -> Monomial:
    # graded-lex order; any multiplicative well-order works for the exact
    # division below
    return max(a, key=lambda m: (sum(m), m))


def _d_div_exact(num: _DictPoly, den: _DictPoly) -> _DictPoly:
    """Exact polynomial division; Bareiss guarantees divisibility."""
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    den_lead = _d_lead(den)
    den_coef = den[den_lead]
    if len(den) == 1 and all(e == 0 for e in den_lead):
        return {m: c / den_coef for m, c in num.items()}
    quot: _DictPoly = {}
    rem = dict(num)
    while rem:
        lead = _d_lead(rem)
        shift = tuple(x - y for x, y in zip(lead, den_lead))
        if any(e < 0 for e in shift):
            raise ArithmeticError("inexact polynomial division in Bareiss step")
        factor = rem[lead] / den_coef
        quot[shift] = quot.get(shift, Fraction(0)) + factor
        for m, c in den.items():
            mm = tuple(x + y for x, y in zip(shift, m))
            v = rem.get(mm, Fraction(0)) - factor * c
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return quot


def _bareiss_det(matrix: list[list[_DictPoly]], dim: int) -> _DictPoly:
    """Fraction-free determinant of a matrix of exponent-map polynomials."""
    size = len(matrix)
    if size == 0:
        return _d_const(dim, Fraction(1))
    work = [row[:] for row in matrix]
    sign = 1
    prev: _DictPoly = _d_const(dim, Fraction(1))
    for k in range(size - 1):
        if not work[k][k]:
            pivot_row = next((r for r in range(k + 1, size) if work[r][k]), None)
            if pivot_row is None:
                return _d_zero()  # zero column: remaining minor vanishes
            work[k], work[pivot_row] = work[pivot_row], work[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = _d_sub(
                    _d_mul(work[k][k], work[i][j]),
                    _d_mul(work[i][k], work[k][j]),
                )
                work[i][j] = _d_div_exact(num, prev)
            work[i][k] = _d_zero()
        prev = work[k][k]
    det = work[size - 1][size - 1]
    if sign < 0:
        det = {m: -c for m, c in det.items()}
    return det


def _chern_entry(k: int, n: int) -> _DictPoly:
    """c_k as an exponent map: 1 for k = 0, zero outside [0, n]."""
    if k == 0:
        return _d_const(n, Fraction(1))
    if k < 0 or k > n:
        return _d_zero()
    exps = [0] * n
    exps[k - 1] = 1
    return {tuple(exps): Fraction(1)}


def schur(a: Sequence[int], n: int) -> GradedPoly:
    """Schur polynomial P_a(c) = det(c_{a_i - i + j}) for a partition a of n.

    The result is homogeneous of weight n in c_1..c_n.
    """
    return _schur_cached(_validate_partition(tuple(a), n), n)


@lru_cache(maxsize=None)
def _schur_cached(parts: Partition, n: int) -> GradedPoly:
    matrix = [
        [_chern_entry(parts[i] - (i + 1) + (j + 1), n) for j in range(n)]
        for i in range(n)
    ]
    det = _bareiss_det(matrix, n)
    if any(mono_weight(m) != n for m in det):
        raise RuntimeError(f"Schur determinant for {parts} is not homogeneous")
    return GradedPoly(n, det)


def segre_top(n: int) -> GradedPoly:
    """Weight-n component of the formal inverse of 1 + c_1 + ... + c_n."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"dimension must be a non-negative integer: {n!r}")
    total = GradedPoly.zero(n)
    for i in range(1, n + 1):
        total = total + GradedPoly.variable(n, i)
    inverse = GradedPoly.one(n)
    power = GradedPoly.one(n)
    for _ in range(n):
        power = power * (-total)
        inverse = inverse + power
    return inverse.graded_part(n)


@lru_cache(maxsize=None)
def power_sum(k: int, n: int) -> GradedPoly:
    """k-th power sum of the Chern roots in terms of c_1..c_n, via
    Newton's identity p_k = c_1 p_{k-1} - c_2 p_{k-2} + ... + (-1)^{k-1} k c_k."""
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= n:
        raise ValueError(f"power sum index {k!r} outside 1..{n}")
    result = GradedPoly.variable(n, k) * Fraction((-1) ** (k - 1) * k)
    for i in range(1, k):
        term = GradedPoly.variable(n, i) * power_sum(k - i, n)
        result = result + term * Fraction((-1) ** (i - 1))
    return result


def flip_basis(a: GradedPoly) -> GradedPoly:
    """Substitute c_i -> (-1)^i c_i (the tangent/cotangent swap).

    Each monomial picks up (-1)^weight; the map is an involution.
    """
    if not isinstance(a, GradedPoly):
        raise TypeError("flip_basis expects a GradedPoly")
    return GradedPoly(
        a.dim,
        {m: c * ((-1) ** mono_weight(m)) for m, c in a.terms().items()},
    )
