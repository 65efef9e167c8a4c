"""Positivity-generator catalogs and exact rational cone-membership
certificates.

A sign statement "this Chern-number functional is non-negative on every
manifold satisfying the hypotheses" is proved here by exhibiting the
functional as a non-negative rational combination of generator
functionals that are non-negative by assumption: the Schur polynomials of
a nef bundle, and optional inequality generators (3c_2 - c_1^2 in
dimension 2, (5/2)c_1^2 c_2 - c_1^4 in dimension 4, c_1^n).

Membership is decided by an exact phase-1 simplex over Fractions with
Bland's anti-cycling rule, so answers are deterministic and certificates
are mathematical proofs, not numerics.  Non-membership is certified by a
Farkas witness: a linear functional pairing <= 0 with every generator and
> 0 with the target.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .hrr import ChernFunctional, ConsistencyError, chi_p, top_part
from .poly import DimensionMismatch, GradedPoly, as_rational
from .symchern import (
    BasisConvention,
    ConventionMismatch,
    partition_label,
    partitions_of,
    schur,
)

__all__ = [
    "ASSUMPTION_TAGS",
    "GeneratorSet",
    "Certificate",
    "Infeasibility",
    "ChiSignRow",
    "ChiSignReport",
    "generators",
    "certify",
    "verify_certificate",
    "certify_chi_signs",
    "DEFAULT_CERTIFY_MAX_DIM",
]

ASSUMPTION_TAGS = ("schur", "my2", "my4", "c1top")
DEFAULT_CERTIFY_MAX_DIM = 6


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered, named generator functionals of one dimension/convention.

    Schur generators come first, in the fixed partition order, so
    certificate coefficients are stable across runs.
    """

    dimension: int
    convention: BasisConvention
    generators: tuple[tuple[str, ChernFunctional], ...]

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    def functionals(self) -> tuple[ChernFunctional, ...]:
        return tuple(f for _, f in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def to_json_dict(self) -> dict:
        return {
            "convention": self.convention.value,
            "dim": self.dimension,
            "generators": [
                {"name": name, "poly": f.as_poly().to_json_dict()}
                for name, f in self.generators
            ],
        }


def generators(
    n: int,
    assumptions: Sequence[str] | set[str] = ("schur",),
    convention: BasisConvention = BasisConvention.COTANGENT,
) -> GeneratorSet:
    """Build the generator catalog for dimension n.

    `assumptions` selects which families are taken as non-negative:

    * ``schur``  -- all Schur polynomials of the (co)tangent bundle;
    * ``my2``    -- 3c_2 - c_1^2 >= 0 (dimension 2 only);
    * ``my4``    -- (5/2)c_1^2 c_2 - c_1^4 >= 0 (dimension 4 only);
    * ``c1top``  -- c_1^n >= 0.

    The inequality generators carry geometric hypotheses, so they are
    strictly opt-in and never assumed silently.
    """
    tags = set(assumptions)
    unknown = tags.difference(ASSUMPTION_TAGS)
    if unknown:
        raise ValueError(f"unknown assumption tags: {sorted(unknown)}")
    if "my2" in tags and n != 2:
        raise ValueError("assumption 'my2' is only valid in dimension 2")
    if "my4" in tags and n != 4:
        raise ValueError("assumption 'my4' is only valid in dimension 4")
    convention = BasisConvention(convention)
    entries: list[tuple[str, ChernFunctional]] = []
    if "schur" in tags:
        for a in partitions_of(n):
            entries.append((partition_label(a), top_part(schur(a, n), convention)))
    if "my2" in tags:
        c1, c2 = GradedPoly.variable(2, 1), GradedPoly.variable(2, 2)
        entries.append(("my2", top_part(c2 * 3 - c1 * c1, convention)))
    if "my4" in tags:
        c1, c2 = GradedPoly.variable(4, 1), GradedPoly.variable(4, 2)
        my4 = c1 * c1 * c2 * Fraction(5, 2) - c1 ** 4
        entries.append(("my4", top_part(my4, convention)))
    if "c1top" in tags:
        c1 = GradedPoly.variable(n, 1)
        entries.append(("c1top", top_part(c1 ** n, convention)))
    return GeneratorSet(n, convention, tuple(entries))


@dataclass(frozen=True)
class Certificate:
    """target = sum lambda_i * generator_i + residual, every lambda_i >= 0.

    The residual must itself be certified: identically zero, or a declared
    non-negative multiple of one of the generators.
    """

    target: ChernFunctional
    generator_names: tuple[str, ...]
    coefficients: tuple[Fraction, ...]
    residual: ChernFunctional

    def __post_init__(self):
        coefficients = tuple(as_rational(c) for c in self.coefficients)
        if len(coefficients) != len(self.generator_names):
            raise ValueError("one coefficient per generator name required")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "generator_names", tuple(self.generator_names))

    def named_coefficients(self) -> tuple[tuple[str, Fraction], ...]:
        return tuple(
            (name, coef)
            for name, coef in zip(self.generator_names, self.coefficients)
            if coef
        )

    def to_json_dict(self) -> dict:
        return {
            "residual": self.residual.as_poly().to_json_dict(),
            "target": self.target.as_poly().to_json_dict(),
            "terms": [
                {"coef": str(coef), "gen": name}
                for name, coef in self.named_coefficients()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class Infeasibility:
    """Farkas witness: pairs <= 0 with every generator, > 0 with the target."""

    witness: ChernFunctional

    def to_json_dict(self) -> dict:
        return {"witness": self.witness.as_poly().to_json_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


CertifyResult = Union[Certificate, Infeasibility]


def _pivot(
    tableau: list[list[Fraction]],
    reduced: list[Fraction],
    basis: list[int],
    row: int,
    col: int,
) -> None:
    pivot_value = tableau[row][col]
    tableau[row] = [x / pivot_value for x in tableau[row]]
    for i, other in enumerate(tableau):
        if i != row and other[col]:
            factor = other[col]
            tableau[i] = [x - factor * y for x, y in zip(other, tableau[row])]
    if reduced[col]:
        factor = reduced[col]
        for j, y in enumerate(tableau[row]):
            reduced[j] -= factor * y
    basis[row] = col


def _phase_one(
    columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[str, tuple[Fraction, ...]]:
    """Exact phase-1 simplex for: find lambda >= 0 with sum_j lambda_j col_j = rhs.

    Returns ("feasible", lambda) or ("infeasible", w) where w is a Farkas
    witness with respect to the original (unflipped) rows.  Bland's rule
    throughout, so the outcome is deterministic.
    """
    m = len(rhs)
    k = len(columns)
    signs = [Fraction(-1) if value < 0 else Fraction(1) for value in rhs]
    tableau: list[list[Fraction]] = []
    for i in range(m):
        row = [signs[i] * columns[j][i] for j in range(k)]
        row.extend(Fraction(1) if r == i else Fraction(0) for r in range(m))
        row.append(signs[i] * rhs[i])
        tableau.append(row)
    ncols = k + m
    basis = [k + i for i in range(m)]
    # minimize the sum of artificials: reduced costs start at c_j - 1^T A_j
    reduced = [Fraction(0)] * (ncols + 1)
    for j in range(ncols):
        cost = Fraction(0) if j < k else Fraction(1)
        reduced[j] = cost - sum(tableau[i][j] for i in range(m))
    reduced[ncols] = -sum(tableau[i][ncols] for i in range(m))
    while True:
        enter = next((j for j in range(ncols) if reduced[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tableau[i][enter] > 0:
                ratio = tableau[i][ncols] / tableau[i][enter]
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave is None:
            raise ConsistencyError("phase-1 simplex became unbounded")
        _pivot(tableau, reduced, basis, leave, enter)
    objective = -reduced[ncols]
    if objective == 0:
        lam = [Fraction(0)] * k
        for i, bv in enumerate(basis):
            if bv < k:
                lam[bv] = tableau[i][ncols]
        return "feasible", tuple(lam)
    # duals from the optimal reduced costs of the artificial columns
    duals = [Fraction(1) - reduced[k + i] for i in range(m)]
    witness = tuple(signs[i] * duals[i] for i in range(m))
    return "infeasible", witness


def certify(target: ChernFunctional, gens: GeneratorSet) -> CertifyResult:
    """Decide exact membership of `target` in the cone spanned by `gens`.

    Feasibility means target = sum lambda_i g_i with lambda >= 0 and zero
    residual; otherwise a Farkas witness is returned.  Both outcomes are
    re-verified exactly before being handed back.
    """
    if target.dimension != gens.dimension:
        raise DimensionMismatch(
            f"target dimension {target.dimension} != generators {gens.dimension}"
        )
    if target.convention != gens.convention:
        raise ConventionMismatch(
            f"target convention {target.convention.value} != "
            f"generators {gens.convention.value}"
        )
    columns = [f.coeffs for f in gens.functionals()]
    status, data = _phase_one(columns, target.coeffs)
    if status == "feasible":
        certificate = Certificate(
            target=target,
            generator_names=gens.names(),
            coefficients=data,
            residual=ChernFunctional.zero(gens.dimension, gens.convention),
        )
        if not verify_certificate(certificate, gens):
            raise ConsistencyError("simplex returned an invalid certificate")
        return certificate
    witness = ChernFunctional(gens.dimension, gens.convention, data)
    for name, f in gens.generators:
        if witness.dot(f.coeffs) > 0:
            raise ConsistencyError(f"Farkas witness pairs positively with {name}")
    if witness.dot(target.coeffs) <= 0:
        raise ConsistencyError("Farkas witness does not separate the target")
    return Infeasibility(witness)


def verify_certificate(
    cert: Certificate,
    gens: GeneratorSet,
    diagnostics: list[str] | None = None,
) -> bool:
    """Re-expand a certificate and check it exactly.

    True iff sum lambda_i g_i + residual == target, all lambda_i >= 0, and
    the residual is zero or a non-negative multiple of a single generator.
    On failure a reason is appended to `diagnostics` (if given).
    """

    def fail(reason: str) -> bool:
        if diagnostics is not None:
            diagnostics.append(reason)
        return False

    if cert.generator_names != gens.names():
        return fail("certificate is not aligned with this generator set")
    if cert.target.dimension != gens.dimension:
        return fail("certificate dimension disagrees with generator set")
    if cert.target.convention != gens.convention:
        return fail("certificate convention disagrees with generator set")
    if any(coef < 0 for coef in cert.coefficients):
        return fail("negative combination coefficient")
    combo = ChernFunctional.zero(gens.dimension, gens.convention)
    for coef, (_, f) in zip(cert.coefficients, gens.generators):
        if coef:
            combo = combo + f.scaled(coef)
    if combo + cert.residual != cert.target:
        return fail("combination plus residual does not reproduce the target")
    if not cert.residual.is_zero():
        for name, f in gens.generators:
            anchor = next((i for i, c in enumerate(f.coeffs) if c), None)
            if anchor is None:
                continue
            ratio = cert.residual.coeffs[anchor] / f.coeffs[anchor]
            if ratio >= 0 and f.scaled(ratio) == cert.residual:
                break
        else:
            return fail("residual is not a non-negative multiple of a generator")
    return True


@dataclass(frozen=True)
class ChiSignRow:
    """Outcome of one sign question (-1)^s chi^p >= 0."""

    p: int
    sign: int
    scale: int
    target: ChernFunctional
    result: CertifyResult
    status: str  # "certified" or "open"

    def to_json_dict(self) -> dict:
        payload: dict = {
            "p": self.p,
            "scale": self.scale,
            "sign": self.sign,
            "status": self.status,
            "target": self.target.as_poly().to_json_dict(),
        }
        if isinstance(self.result, Certificate):
            payload["certificate"] = self.result.to_json_dict()
        else:
            payload["infeasibility"] = self.result.to_json_dict()
        return payload


@dataclass(frozen=True)
class ChiSignReport:
    """Per-p certification report for one dimension and sign mode."""

    dimension: int
    mode: str
    assumptions: tuple[str, ...]
    convention: BasisConvention
    rows: tuple[ChiSignRow, ...]

    @property
    def all_certified(self) -> bool:
        return all(row.status == "certified" for row in self.rows)

    def row(self, p: int) -> ChiSignRow:
        return self.rows[p]

    def to_json_dict(self) -> dict:
        return {
            "allCertified": self.all_certified,
            "assumptions": list(self.assumptions),
            "convention": self.convention.value,
            "dim": self.dimension,
            "mode": self.mode,
            "rows": [row.to_json_dict() for row in self.rows],
        }


SIGN_MODES = ("nef_cotangent", "nef_tangent")


def certify_chi_signs(
    n: int,
    mode: str,
    assumptions: Sequence[str] | set[str] = ("schur",),
    max_dim: int = DEFAULT_CERTIFY_MAX_DIM,
) -> ChiSignReport:
    """Try to certify the sign pattern of every chi^p in dimension n.

    ``nef_cotangent`` asks for (-1)^{n-p} chi^p >= 0 against generators of
    the cotangent bundle; ``nef_tangent`` asks for (-1)^p chi^p >= 0
    against generators of the tangent bundle (targets are flipped into
    tangent variables first).  Each target is cleared of denominators, so
    certificates are statements about integral functionals.

    A row that the generator cone cannot reproduce is reported with status
    "open" and carries the Farkas witness: the witness shows these
    generators are insufficient, not that the sign statement is false.
    """
    if mode not in SIGN_MODES:
        raise ValueError(f"mode must be one of {SIGN_MODES}, got {mode!r}")
    if n > max_dim:
        raise ValueError(f"dimension {n} exceeds configured maximum {max_dim}")
    convention = (
        BasisConvention.COTANGENT if mode == "nef_cotangent" else BasisConvention.TANGENT
    )
    gens = generators(n, assumptions, convention)
    rows = []
    for p in range(n + 1):
        functional = chi_p(n, p)
        if mode == "nef_tangent":
            functional = functional.flipped()
            sign = (-1) ** p
        else:
            sign = (-1) ** (n - p)
        target, scale = functional.scaled(sign).clear_denominators()
        result = certify(target, gens)
        status = "certified" if isinstance(result, Certificate) else "open"
        rows.append(
            ChiSignRow(
                p=p, sign=sign, scale=scale, target=target, result=result, status=status
            )
        )
    return ChiSignReport(
        dimension=n,
        mode=mode,
        assumptions=tuple(sorted(set(assumptions))),
        convention=convention,
        rows=tuple(rows),
    )
