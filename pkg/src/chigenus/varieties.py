"""Symbolic variety descriptors with exactly computable Chern numbers.

Each descriptor is a recipe whose Chern numbers follow from a standard
total-Chern-class computation:

* projective space P^n:      c(T) = (1 + h)^{n+1},  int h^n = 1
* smooth curve of genus g:   c_1(Omega^1) = 2g - 2
* surface:                   c_1^2 and c_2 given directly
* degree-d hypersurface:     c(T) = (1 + h)^{n+2} / (1 + d h),  int h^n = d
* abelian variety:           trivial tangent bundle, all numbers zero
* product X x Y:             Whitney sum / Kuenneth pairing of factors
* explicit:                  raw numbers supplied by the caller

Chern numbers pair with the chi^p functionals by an exact dot product;
sign audits evaluate the signed values (-1)^{n-p} chi^p or (-1)^p chi^p
and report per-p pass/fail.  Nefness (or asphericity) of the relevant
bundle is an assertion made by the caller, never checked here.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .hrr import ChernFunctional, chi_table, euler_functional
from .poly import (
    DimensionMismatch,
    GradedPoly,
    Monomial,
    RationalLike,
    as_rational,
    mono_mul,
    mono_text,
    mono_weight,
    weight_basis,
)
from .symchern import BasisConvention

__all__ = [
    "DEFAULT_MAX_DIM",
    "VarietyDescriptor",
    "ProjectiveSpace",
    "Curve",
    "Surface",
    "Hypersurface",
    "AbelianVariety",
    "Product",
    "Explicit",
    "ChernNumberSet",
    "chern_numbers",
    "evaluate",
    "chi_values",
    "SignAuditRow",
    "SignAudit",
    "check_signs",
    "descriptor_from_json",
    "descriptor_from_token",
    "CorpusEntry",
    "load_corpus",
]

DEFAULT_MAX_DIM = 8

SIGN_MODES = ("nef_cotangent", "nef_tangent")


@dataclass(frozen=True)
class ChernNumberSet:
    """Complete assignment of a rational number to every weight-n monomial."""

    dimension: int
    convention: BasisConvention
    entries: tuple[Fraction, ...]  # aligned with the canonical top basis

    def __post_init__(self):
        basis = weight_basis(self.dimension)
        entries = tuple(as_rational(v) for v in self.entries)
        if len(entries) != len(basis):
            raise ValueError(
                f"expected {len(basis)} Chern numbers for dimension "
                f"{self.dimension}, got {len(entries)}"
            )
        object.__setattr__(self, "convention", BasisConvention(self.convention))
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_values(
        cls,
        dimension: int,
        convention: BasisConvention,
        values: Mapping[Monomial, RationalLike],
    ) -> "ChernNumberSet":
        basis = weight_basis(dimension)
        lookup = {tuple(m): as_rational(v) for m, v in values.items()}
        unknown = set(lookup).difference(basis)
        if unknown:
            raise ValueError(f"not weight-{dimension} monomials: {sorted(unknown)}")
        return cls(dimension, convention, tuple(lookup.get(m, Fraction(0)) for m in basis))

    def value(self, mono: Monomial) -> Fraction:
        basis = weight_basis(self.dimension)
        return self.entries[basis.index(tuple(mono))]

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(zip(weight_basis(self.dimension), self.entries))

    def flipped(self) -> "ChernNumberSet":
        # at top weight every monomial flips by the same (-1)^n
        sign = (-1) ** self.dimension
        return ChernNumberSet(
            self.dimension,
            self.convention.other(),
            tuple(v * sign for v in self.entries),
        )

    def in_convention(self, convention: BasisConvention) -> "ChernNumberSet":
        convention = BasisConvention(convention)
        return self if convention == self.convention else self.flipped()

    def to_json_dict(self) -> dict:
        return {
            "convention": self.convention.value,
            "dim": self.dimension,
            "values": {
                (mono_text(m) or "1"): str(v)
                for m, v in zip(weight_basis(self.dimension), self.entries)
            },
        }


class VarietyDescriptor(ABC):
    """Recipe for a manifold whose Chern numbers can be computed exactly."""

    @property
    @abstractmethod
    def dimension(self) -> int: ...

    @abstractmethod
    def _tangent_values(self) -> dict[Monomial, Fraction]:
        """Chern numbers of the tangent bundle over the top monomial basis."""

    @abstractmethod
    def name(self) -> str: ...

    @abstractmethod
    def to_json_dict(self) -> dict: ...

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.name()


def _evaluate_series_numbers(
    coefficients: Sequence[Fraction], dim: int, degree: Fraction
) -> dict[Monomial, Fraction]:
    """Chern numbers when c_i = a_i h^i in a one-variable ring with
    int h^n = degree."""
    values: dict[Monomial, Fraction] = {}
    for mono in weight_basis(dim):
        total = Fraction(1)
        for i, e in enumerate(mono):
            if e:
                total *= coefficients[i + 1] ** e
        values[mono] = total * degree
    return values


@dataclass(frozen=True)
class ProjectiveSpace(VarietyDescriptor):
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"projective space dimension must be >= 1: {self.n!r}")

    @property
    def dimension(self) -> int:
        return self.n

    def _tangent_values(self) -> dict[Monomial, Fraction]:
        coeffs = [Fraction(comb(self.n + 1, i)) for i in range(self.n + 1)]
        return _evaluate_series_numbers(coeffs, self.n, Fraction(1))

    def name(self) -> str:
        return f"pn:{self.n}"

    def to_json_dict(self) -> dict:
        return {"n": self.n, "type": "pn"}


@dataclass(frozen=True)
class Curve(VarietyDescriptor):
    genus: int

    def __post_init__(self):
        if isinstance(self.genus, bool) or not isinstance(self.genus, int) or self.genus < 0:
            raise ValueError(f"genus must be a non-negative integer: {self.genus!r}")

    @property
    def dimension(self) -> int:
        return 1

    def _tangent_values(self) -> dict[Monomial, Fraction]:
        return {(1,): Fraction(2 - 2 * self.genus)}

    def name(self) -> str:
        return f"curve:{self.genus}"

    def to_json_dict(self) -> dict:
        return {"genus": self.genus, "type": "curve"}


@dataclass(frozen=True)
class Surface(VarietyDescriptor):
    """Surface given by its two Chern numbers (cotangent convention; both
    monomials have even weight, so the tangent numbers are identical)."""

    c1sq: int
    c2: int

    @property
    def dimension(self) -> int:
        return 2

    def _tangent_values(self) -> dict[Monomial, Fraction]:
        return {(2, 0): as_rational(self.c1sq), (0, 1): as_rational(self.c2)}

    def name(self) -> str:
        return f"surface:{self.c1sq}:{self.c2}"

    def to_json_dict(self) -> dict:
        return {"c1sq": self.c1sq, "c2": self.c2, "type": "surface"}


@dataclass(frozen=True)
class Hypersurface(VarietyDescriptor):
    """Smooth degree-d hypersurface in projective space of the given
    (ambient) dimension."""

    degree: int
    ambient: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError(f"degree must be a positive integer: {self.degree!r}")
        if not isinstance(self.ambient, int) or self.ambient < 2:
            raise ValueError(f"ambient dimension must be >= 2: {self.ambient!r}")

    @property
    def dimension(self) -> int:
        return self.ambient - 1

    def _tangent_values(self) -> dict[Monomial, Fraction]:
        n = self.dimension
        d = self.degree
        # c(T) = (1+h)^{n+2} (1+dh)^{-1} truncated at h^n
        binomials = [Fraction(comb(n + 2, i)) for i in range(n + 1)]
        series = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            acc = Fraction(0)
            for i in range(k + 1):
                acc += binomials[i] * Fraction((-d) ** (k - i))
            series[k] = acc
        return _evaluate_series_numbers(series, n, Fraction(d))

    def name(self) -> str:
        return f"hypersurface:{self.degree}:{self.ambient}"

    def to_json_dict(self) -> dict:
        return {"ambient": self.ambient, "degree": self.degree, "type": "hypersurface"}


@dataclass(frozen=True)
class AbelianVariety(VarietyDescriptor):
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"abelian variety dimension must be >= 1: {self.n!r}")

    @property
    def dimension(self) -> int:
        return self.n

    def _tangent_values(self) -> dict[Monomial, Fraction]:
        return {}  # trivial tangent bundle

    def name(self) -> str:
        return f"abelian:{self.n}"

    def to_json_dict(self) -> dict:
        return {"n": self.n, "type": "abelian"}


def _bi_mul(
    a: dict[tuple[Monomial, Monomial], Fraction],
    b: dict[tuple[Monomial, Monomial], Fraction],
    nx: int,
    ny: int,
) -> dict[tuple[Monomial, Monomial], Fraction]:
    out: dict[tuple[Monomial, Monomial], Fraction] = {}
    for (xa, ya), ca in a.items():
        for (xb, yb), cb in b.items():
            x = mono_mul(xa, xb)
            y = mono_mul(ya, yb)
            if mono_weight(x) > nx or mono_weight(y) > ny:
                continue
            key = (x, y)
            v = out.get(key, Fraction(0)) + ca * cb
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


@dataclass(frozen=True)
class Product(VarietyDescriptor):
    left: VarietyDescriptor
    right: VarietyDescriptor

    @property
    def dimension(self) -> int:
        return self.left.dimension + self.right.dimension

    def _tangent_values(self) -> dict[Monomial, Fraction]:
        nx = self.left.dimension
        ny = self.right.dimension
        total = nx + ny
        left_values = self.left._tangent_values()
        right_values = self.right._tangent_values()
        left_lookup = {m: left_values.get(m, Fraction(0)) for m in weight_basis(nx)}
        right_lookup = {m: right_values.get(m, Fraction(0)) for m in weight_basis(ny)}

        def unit(dim: int, i: int) -> Monomial:
            exps = [0] * dim
            if i > 0:
                exps[i - 1] = 1
            return tuple(exps)

        # c_k(X x Y) = sum_{i+j=k} c_i(X) (x) c_j(Y), stored by bidegree
        components: list[dict[tuple[Monomial, Monomial], Fraction]] = []
        for k in range(1, total + 1):
            component: dict[tuple[Monomial, Monomial], Fraction] = {}
            for i in range(0, min(k, nx) + 1):
                j = k - i
                if j > ny:
                    continue
                component[(unit(nx, i), unit(ny, j))] = Fraction(1)
            components.append(component)

        values: dict[Monomial, Fraction] = {}
        identity = {(unit(nx, 0), unit(ny, 0)): Fraction(1)}
        for mono in weight_basis(total):
            acc = identity
            for idx, e in enumerate(mono):
                for _ in range(e):
                    acc = _bi_mul(acc, components[idx], nx, ny)
            number = Fraction(0)
            for (mx, my), coef in acc.items():
                if mono_weight(mx) == nx and mono_weight(my) == ny:
                    number += coef * left_lookup[mx] * right_lookup[my]
            values[mono] = number
        return values

    def name(self) -> str:
        return f"product({self.left.name()},{self.right.name()})"

    def to_json_dict(self) -> dict:
        return {
            "left": self.left.to_json_dict(),
            "right": self.right.to_json_dict(),
            "type": "product",
        }


class Explicit(VarietyDescriptor):
    """Raw Chern numbers, for manifolds outside the recipe set."""

    def __init__(
        self,
        n: int,
        values: Mapping[Monomial, RationalLike] | Mapping[str, RationalLike],
        convention: BasisConvention = BasisConvention.COTANGENT,
        name: str | None = None,
    ):
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ValueError(f"dimension must be a non-negative integer: {n!r}")
        normalized: dict[Monomial, Fraction] = {}
        for key, value in values.items():
            mono = _parse_monomial_key(key, n) if isinstance(key, str) else tuple(key)
            normalized[mono] = as_rational(value)
        self._numbers = ChernNumberSet.from_values(n, convention, normalized)
        self._name = name or f"explicit:{n}"

    @property
    def dimension(self) -> int:
        return self._numbers.dimension

    @property
    def convention(self) -> BasisConvention:
        return self._numbers.convention

    def _tangent_values(self) -> dict[Monomial, Fraction]:
        return self._numbers.in_convention(BasisConvention.TANGENT).as_dict()

    def name(self) -> str:
        return self._name

    def to_json_dict(self) -> dict:
        return {
            "convention": self._numbers.convention.value,
            "n": self._numbers.dimension,
            "type": "explicit",
            "values": {
                (mono_text(m) or "1"): str(v)
                for m, v in self._numbers.as_dict().items()
                if v
            },
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Explicit):
            return NotImplemented
        return self._numbers == other._numbers

    def __hash__(self) -> int:
        return hash(self._numbers)


def _parse_monomial_key(key: str, dim: int) -> Monomial:
    """Parse 'c1^2*c2' (or '1' for the constant) into an exponent tuple."""
    poly = GradedPoly.from_text(dim, key if key != "1" else "1")
    terms = poly.terms()
    if len(terms) != 1:
        raise ValueError(f"monomial key expected, got {key!r}")
    ((mono, coef),) = terms.items()
    if coef != 1:
        raise ValueError(f"monomial key must have coefficient 1: {key!r}")
    return mono


def chern_numbers(
    v: VarietyDescriptor,
    convention: BasisConvention = BasisConvention.TANGENT,
    max_dim: int = DEFAULT_MAX_DIM,
) -> ChernNumberSet:
    """Exact Chern numbers of a descriptor in the requested convention."""
    if not isinstance(v, VarietyDescriptor):
        raise TypeError("chern_numbers expects a VarietyDescriptor")
    if v.dimension > max_dim:
        raise ValueError(
            f"dimension {v.dimension} exceeds configured maximum {max_dim}"
        )
    tangent = ChernNumberSet.from_values(
        v.dimension, BasisConvention.TANGENT, v._tangent_values()
    )
    return tangent.in_convention(convention)


def evaluate(f: ChernFunctional, v: VarietyDescriptor | ChernNumberSet) -> Fraction:
    """Pair a functional with a variety's Chern numbers (exact dot product)."""
    numbers = v if isinstance(v, ChernNumberSet) else chern_numbers(v, f.convention)
    if numbers.dimension != f.dimension:
        raise DimensionMismatch(
            f"functional dimension {f.dimension} != variety {numbers.dimension}"
        )
    return f.dot(numbers.in_convention(f.convention).entries)


def chi_values(v: VarietyDescriptor) -> tuple[Fraction, ...]:
    """The evaluated chi^p table (chi^0, ..., chi^n) of a descriptor."""
    numbers = chern_numbers(v, BasisConvention.COTANGENT)
    table = chi_table(v.dimension)
    return tuple(row.dot(numbers.entries) for row in table.rows)


@dataclass(frozen=True)
class SignAuditRow:
    p: int
    value: Fraction
    sign: int
    ok: bool

    @property
    def signed_value(self) -> Fraction:
        return self.value * self.sign

    def to_json_dict(self) -> dict:
        return {
            "chi": str(self.value),
            "ok": self.ok,
            "p": self.p,
            "sign": self.sign,
            "signed": str(self.signed_value),
        }


@dataclass(frozen=True)
class SignAudit:
    variety: str
    dimension: int
    mode: str
    rows: tuple[SignAuditRow, ...]
    euler: Fraction

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dimension,
            "euler": str(self.euler),
            "mode": self.mode,
            "pass": self.passed,
            "rows": [row.to_json_dict() for row in self.rows],
            "variety": self.variety,
        }


def check_signs(v: VarietyDescriptor, mode: str) -> SignAudit:
    """Audit the sign pattern of the evaluated chi^p values.

    ``nef_cotangent`` checks (-1)^{n-p} chi^p >= 0; ``nef_tangent`` checks
    (-1)^p chi^p >= 0.  The caller asserts the geometric hypothesis; this
    only decides the arithmetic.
    """
    if mode not in SIGN_MODES:
        raise ValueError(f"mode must be one of {SIGN_MODES}, got {mode!r}")
    n = v.dimension
    values = chi_values(v)
    rows = []
    for p, value in enumerate(values):
        sign = (-1) ** (n - p) if mode == "nef_cotangent" else (-1) ** p
        rows.append(SignAuditRow(p=p, value=value, sign=sign, ok=value * sign >= 0))
    euler = evaluate(euler_functional(n), v)
    return SignAudit(
        variety=v.name(), dimension=n, mode=mode, rows=tuple(rows), euler=euler
    )


# -- descriptor (de)serialization -------------------------------------------


def descriptor_from_json(obj: Mapping) -> VarietyDescriptor:
    try:
        kind = obj["type"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"descriptor JSON needs a 'type' field: {obj!r}") from exc
    if kind == "pn":
        return ProjectiveSpace(obj["n"])
    if kind == "curve":
        return Curve(obj["genus"])
    if kind == "surface":
        return Surface(obj["c1sq"], obj["c2"])
    if kind == "hypersurface":
        return Hypersurface(obj["degree"], obj["ambient"])
    if kind == "abelian":
        return AbelianVariety(obj["n"])
    if kind == "product":
        return Product(descriptor_from_json(obj["left"]), descriptor_from_json(obj["right"]))
    if kind == "explicit":
        return Explicit(
            obj["n"],
            obj.get("values", {}),
            BasisConvention(obj.get("convention", "cotangent")),
        )
    raise ValueError(f"unknown descriptor type {kind!r}")


def descriptor_from_token(token: str) -> VarietyDescriptor:
    """Parse the builtin names: pn:3, curve:2, abelian:2, surface:9:3,
    hypersurface:5:4, product(pn:1,curve:2)."""
    token = token.strip()
    if token.startswith("product(") and token.endswith(")"):
        inner = token[len("product(") : -1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return Product(
                    descriptor_from_token(inner[:i]),
                    descriptor_from_token(inner[i + 1 :]),
                )
        raise ValueError(f"malformed product token {token!r}")
    head, _, rest = token.partition(":")
    args = rest.split(":") if rest else []
    try:
        if head == "pn":
            return ProjectiveSpace(int(args[0]))
        if head == "curve":
            return Curve(int(args[0]))
        if head == "abelian":
            return AbelianVariety(int(args[0]))
        if head == "surface":
            return Surface(int(args[0]), int(args[1]))
        if head == "hypersurface":
            return Hypersurface(int(args[0]), int(args[1]))
    except (IndexError, ValueError) as exc:
        raise ValueError(f"malformed variety token {token!r}") from exc
    raise ValueError(f"unknown variety token {token!r}")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    descriptor: VarietyDescriptor
    expected: dict


def load_corpus(path) -> list[CorpusEntry]:
    """Read a JSON-lines corpus: {"name": ..., "descriptor": {...},
    "expected": {...}} per line."""
    entries = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
                entries.append(
                    CorpusEntry(
                        name=obj["name"],
                        descriptor=descriptor_from_json(obj["descriptor"]),
                        expected=obj.get("expected", {}),
                    )
                )
            except (KeyError, ValueError) as exc:
                raise ValueError(f"bad corpus line {line_number}: {exc}") from exc
    return entries
