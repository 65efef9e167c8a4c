"""Riemann-Roch engine: Todd class, Chern characters of exterior powers of
the cotangent bundle, and the chi^p functionals.

chi^p(X) = chi(X, Omega_X^p) is a universal polynomial of weight n in the
Chern classes, obtained as the top-weight part of

    ch(Lambda^p Omega^1) * td(TX).

All series work happens in tangent-convention variables with the Chern
roots x_1..x_n eliminated through power sums:

* td(TX) = prod x_i / (1 - exp(-x_i)) is computed as exp(sum_k a_k p_k)
  where sum a_k x^k is the logarithm of x/(1 - exp(-x)) and p_k is the
  k-th power sum in c_1..c_n;
* ch(Lambda^p Omega^1) is the p-th elementary symmetric polynomial of
  exp(-x_1), ..., exp(-x_n), recovered from the exponential power sums
  q_k = sum_i exp(-k x_i) by the Newton recurrence.

The public chi^p functionals are flipped into cotangent variables (c_i
meaning c_i of the cotangent bundle) exactly once, at the boundary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .poly import (
    DimensionMismatch,
    GradedPoly,
    Monomial,
    RationalLike,
    as_rational,
    mono_weight,
    weight_basis,
)
from .symchern import BasisConvention, ConventionMismatch, power_sum

__all__ = [
    "ConsistencyError",
    "ChernFunctional",
    "ChiTable",
    "top_part",
    "todd_class",
    "ch_exterior_cotangent",
    "chi_p",
    "chi_table",
    "euler_functional",
]


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates an implementation bug."""


@dataclass(frozen=True)
class ChernFunctional:
    """Top-weight linear functional on Chern-number monomials.

    `coeffs` is indexed by the canonical weight-n monomial basis; pairing
    with a complete set of Chern numbers is an exact dot product.
    """

    dimension: int
    convention: BasisConvention
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        basis = weight_basis(self.dimension)
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        if len(coeffs) != len(basis):
            raise ValueError(
                f"expected {len(basis)} coefficients for dimension "
                f"{self.dimension}, got {len(coeffs)}"
            )
        object.__setattr__(self, "convention", BasisConvention(self.convention))
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dimension: int, convention: BasisConvention) -> "ChernFunctional":
        return cls(dimension, convention, (Fraction(0),) * len(weight_basis(dimension)))

    @classmethod
    def from_poly(cls, poly: GradedPoly, convention: BasisConvention) -> "ChernFunctional":
        return cls(poly.dim, convention, poly.top_coefficients())

    # -- structure ----------------------------------------------------------

    def basis(self) -> tuple[Monomial, ...]:
        return weight_basis(self.dimension)

    def coefficient(self, mono: Monomial) -> Fraction:
        basis = weight_basis(self.dimension)
        return self.coeffs[basis.index(tuple(mono))]

    def as_poly(self) -> GradedPoly:
        return GradedPoly(
            self.dimension,
            {m: c for m, c in zip(weight_basis(self.dimension), self.coeffs) if c},
        )

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "ChernFunctional") -> None:
        if self.dimension != other.dimension:
            raise DimensionMismatch(
                f"dimension mismatch: {self.dimension} vs {other.dimension}"
            )
        if self.convention != other.convention:
            raise ConventionMismatch(
                f"convention mismatch: {self.convention.value} vs {other.convention.value}"
            )

    def __add__(self, other: "ChernFunctional") -> "ChernFunctional":
        self._check_compatible(other)
        return ChernFunctional(
            self.dimension,
            self.convention,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "ChernFunctional") -> "ChernFunctional":
        self._check_compatible(other)
        return ChernFunctional(
            self.dimension,
            self.convention,
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self) -> "ChernFunctional":
        return self.scaled(-1)

    def scaled(self, factor: RationalLike) -> "ChernFunctional":
        factor = as_rational(factor)
        return ChernFunctional(
            self.dimension, self.convention, tuple(c * factor for c in self.coeffs)
        )

    def flipped(self) -> "ChernFunctional":
        """Same functional re-expressed in the other (co)tangent convention."""
        basis = weight_basis(self.dimension)
        return ChernFunctional(
            self.dimension,
            self.convention.other(),
            tuple(c * ((-1) ** mono_weight(m)) for c, m in zip(self.coeffs, basis)),
        )

    def dot(self, values: Sequence[RationalLike]) -> Fraction:
        values = tuple(as_rational(v) for v in values)
        if len(values) != len(self.coeffs):
            raise DimensionMismatch(
                f"expected {len(self.coeffs)} values, got {len(values)}"
            )
        return sum((c * v for c, v in zip(self.coeffs, values)), Fraction(0))

    def clear_denominators(self) -> tuple["ChernFunctional", int]:
        """Smallest positive integer multiple with integral coefficients.

        Returns (scaled functional, multiplier)."""
        scale = 1
        for c in self.coeffs:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
        return self.scaled(scale), scale

    # -- serialization --------------------------------------------------------

    def to_text(self) -> str:
        return self.as_poly().to_text()

    def to_json_dict(self) -> dict:
        return {
            "convention": self.convention.value,
            "dim": self.dimension,
            "poly": self.as_poly().to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "ChernFunctional":
        poly = GradedPoly.from_json_dict(obj["poly"])
        if poly.dim != obj["dim"]:
            raise ValueError("functional JSON dimension disagrees with its polynomial")
        return cls.from_poly(poly, BasisConvention(obj["convention"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    def __str__(self) -> str:
        return self.to_text()


def top_part(a: GradedPoly, convention: BasisConvention) -> ChernFunctional:
    """Extract the weight-n component of a polynomial as a functional.

    This is the formal analogue of integrating over the manifold: only the
    top-weight piece pairs with Chern numbers; lower-weight terms are
    discarded.  The caller states which convention `a` is written in.
    """
    return ChernFunctional.from_poly(a, convention)


# -- univariate series helpers (lists of Fractions, index = degree) --------


def _ser_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ca in enumerate(a):
        if i > order or not ca:
            continue
        for j, cb in enumerate(b):
            if i + j > order:
                break
            if cb:
                out[i + j] += ca * cb
    return out


def _ser_inv(a: Sequence[Fraction], order: int) -> list[Fraction]:
    """Inverse of a series with a(0) = 1."""
    if a[0] != 1:
        raise ValueError("series inversion requires unit constant term")
    inv = [Fraction(0)] * (order + 1)
    inv[0] = Fraction(1)
    for k in range(1, order + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            if i < len(a) and a[i]:
                acc += a[i] * inv[k - i]
        inv[k] = -acc
    return inv


def _ser_log1p(u: Sequence[Fraction], order: int) -> list[Fraction]:
    """log(1 + u) for a series u with u(0) = 0."""
    if u[0] != 0:
        raise ValueError("log expansion requires vanishing constant term")
    out = [Fraction(0)] * (order + 1)
    power = [Fraction(0)] * (order + 1)
    power[0] = Fraction(1)
    for m in range(1, order + 1):
        power = _ser_mul(power, u, order)
        sign = Fraction((-1) ** (m + 1), m)
        for k in range(order + 1):
            if power[k]:
                out[k] += sign * power[k]
    return out


@lru_cache(maxsize=None)
def _log_todd_coefficients(order: int) -> tuple[Fraction, ...]:
    """Coefficients a_1..a_order of log(x / (1 - exp(-x)))."""
    # (1 - exp(-x)) / x = sum_{m>=0} (-1)^m x^m / (m+1)!
    base = [Fraction((-1) ** m, math.factorial(m + 1)) for m in range(order + 1)]
    q = _ser_inv(base, order)
    u = list(q)
    u[0] = Fraction(0)
    log_q = _ser_log1p(u, order)
    return tuple(log_q[1:])


@lru_cache(maxsize=None)
def todd_class(n: int) -> GradedPoly:
    """Todd class of the tangent bundle, prod x_i / (1 - exp(-x_i)),
    expanded to weight n in c_1..c_n (tangent convention).

    The first graded pieces are c_1/2, (c_1^2 + c_2)/12, c_1 c_2/24.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"dimension must be a non-negative integer: {n!r}")
    if n == 0:
        return GradedPoly.one(0)
    coefficients = _log_todd_coefficients(n)
    log_td = GradedPoly.zero(n)
    for k in range(1, n + 1):
        if coefficients[k - 1]:
            log_td = log_td + power_sum(k, n) * coefficients[k - 1]
    result = GradedPoly.one(n)
    term = GradedPoly.one(n)
    for m in range(1, n + 1):
        term = term * log_td * Fraction(1, m)
        result = result + term
    return result


@lru_cache(maxsize=None)
def _exp_power_sum(k: int, n: int) -> GradedPoly:
    """q_k = sum_i exp(-k x_i), expanded through the power sums p_m."""
    result = GradedPoly.constant(n, n)  # p_0 = n
    for m in range(1, n + 1):
        result = result + power_sum(m, n) * Fraction((-k) ** m, math.factorial(m))
    return result


@lru_cache(maxsize=None)
def ch_exterior_cotangent(p: int, n: int) -> GradedPoly:
    """Chern character of Lambda^p Omega^1 in tangent-convention variables.

    This is the p-th elementary symmetric polynomial of exp(-x_1), ...,
    exp(-x_n), recovered from the q_k = sum_i exp(-k x_i) by the Newton
    recurrence j e_j = sum_{k=1..j} (-1)^{k-1} e_{j-k} q_k.
    """
    if isinstance(p, bool) or not isinstance(p, int) or not 0 <= p <= n:
        raise ValueError(f"exterior power {p!r} outside 0..{n}")
    elementary = [GradedPoly.one(n)]
    for j in range(1, p + 1):
        acc = GradedPoly.zero(n)
        for k in range(1, j + 1):
            term = elementary[j - k] * _exp_power_sum(k, n)
            acc = acc + term * Fraction((-1) ** (k - 1))
        elementary.append(acc * Fraction(1, j))
    return elementary[p]


@lru_cache(maxsize=None)
def chi_p(n: int, p: int) -> ChernFunctional:
    """The chi^p functional, in cotangent-convention variables.

    chi^p pairs a manifold's Chern numbers with the holomorphic Euler
    characteristic of its sheaf of p-forms, e.g. chi^1 = (c_1^2 - 5 c_2)/6
    in dimension 2.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"dimension must be a non-negative integer: {n!r}")
    if not 0 <= p <= n:
        raise ValueError(f"form degree {p!r} outside 0..{n}")
    integrand = ch_exterior_cotangent(p, n) * todd_class(n)
    return top_part(integrand, BasisConvention.TANGENT).flipped()


def euler_functional(n: int) -> ChernFunctional:
    """Topological Euler characteristic as a cotangent-convention
    functional: (-1)^n c_n, i.e. c_n of the tangent bundle."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"dimension must be a non-negative integer: {n!r}")
    if n == 0:
        return ChernFunctional(0, BasisConvention.COTANGENT, (Fraction(1),))
    top_mono = tuple([0] * (n - 1) + [1])
    basis = weight_basis(n)
    coeffs = tuple(
        Fraction((-1) ** n) if m == top_mono else Fraction(0) for m in basis
    )
    return ChernFunctional(n, BasisConvention.COTANGENT, coeffs)


@dataclass(frozen=True)
class ChiTable:
    """All chi^p functionals of one dimension, in a single convention."""

    dimension: int
    convention: BasisConvention
    rows: tuple[ChernFunctional, ...]

    def row(self, p: int) -> ChernFunctional:
        return self.rows[p]

    def flipped(self) -> "ChiTable":
        return ChiTable(
            self.dimension,
            self.convention.other(),
            tuple(r.flipped() for r in self.rows),
        )

    def to_json_dict(self) -> dict:
        return {
            "convention": self.convention.value,
            "dim": self.dimension,
            "rows": [
                {"p": p, "poly": row.as_poly().to_json_dict()}
                for p, row in enumerate(self.rows)
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "ChiTable":
        convention = BasisConvention(obj["convention"])
        rows = []
        for entry in sorted(obj["rows"], key=lambda e: e["p"]):
            poly = GradedPoly.from_json_dict(entry["poly"])
            rows.append(ChernFunctional.from_poly(poly, convention))
        return cls(obj["dim"], convention, tuple(rows))


def chi_table(n: int) -> ChiTable:
    """All n+1 chi^p functionals in cotangent convention.

    Validates the duality row symmetry chi^p = (-1)^n chi^{n-p} and the
    alternating-sum identity sum_p (-1)^p chi^p = Euler functional before
    returning; a failure means the series engine is broken and aborts.
    """
    rows = tuple(chi_p(n, p) for p in range(n + 1))
    for p in range(n + 1):
        if rows[p] != rows[n - p].scaled((-1) ** n):
            raise ConsistencyError(
                f"duality symmetry failed at dimension {n}, p={p}"
            )
    alternating = ChernFunctional.zero(n, BasisConvention.COTANGENT)
    for p in range(n + 1):
        alternating = alternating + rows[p].scaled((-1) ** p)
    if alternating != euler_functional(n):
        raise ConsistencyError(f"alternating sum is not the Euler class at dimension {n}")
    return ChiTable(n, BasisConvention.COTANGENT, rows)
