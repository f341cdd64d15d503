"""CSS construction of asymmetric quantum codes from nested classical codes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from toricq.codes import LinearCode, code_from_polytope, dual_code
from toricq.distance import DEFAULT_BUDGET, DEFAULT_SEED, DistanceResult, min_weight, relative_min_weight
from toricq.field import GF, format_matrix
from toricq.geometry import RangeError, check_params


class NestingError(ValueError):
    def __init__(self, report: NestingReport) -> None:
        super().__init__(report.describe())
        self.report = report


@dataclass(frozen=True)
class NestingReport:
    """Witness dimensions for the inclusions C1^perp <= C2 and C2^perp <= C1."""

    dim_dual1: int
    dim_c2: int
    rank_dual1_c2: int
    dim_dual2: int
    dim_c1: int
    rank_dual2_c1: int

    @property
    def dual1_in_c2(self) -> bool:
        return self.rank_dual1_c2 == self.dim_c2

    @property
    def dual2_in_c1(self) -> bool:
        return self.rank_dual2_c1 == self.dim_c1

    @property
    def nested(self) -> bool:
        return self.dual1_in_c2 and self.dual2_in_c1

    def describe(self) -> str:
        parts = []
        for name, ok, d, c, s in (
            ("C1^perp <= C2", self.dual1_in_c2, self.dim_dual1, self.dim_c2, self.rank_dual1_c2),
            ("C2^perp <= C1", self.dual2_in_c1, self.dim_dual2, self.dim_c1, self.rank_dual2_c1),
        ):
            parts.append(f"{name}: {'holds' if ok else 'fails'} (dim {d} into dim {c}, joint rank {s})")
        return "; ".join(parts)


def _joint_rank(field: GF, a: np.ndarray, b: np.ndarray) -> int:
    return field.rank(np.vstack([a, b])) if len(a) + len(b) else 0


def nesting_report(C1: LinearCode, C2: LinearCode) -> NestingReport:
    if C1.n != C2.n:
        raise ValueError(f"length mismatch: {C1.n} vs {C2.n}")
    f = C1.field
    d1, d2 = dual_code(C1), dual_code(C2)
    return NestingReport(
        d1.k, C2.k, _joint_rank(f, C2.generator, d1.generator),
        d2.k, C1.k, _joint_rank(f, C1.generator, d2.generator),
    )


def check_nesting(C1: LinearCode, C2: LinearCode) -> bool:
    """True iff C1^perp is contained in C2 (equivalently C2^perp in C1)."""
    rep = nesting_report(C1, C2)
    if rep.dual1_in_c2 != rep.dual2_in_c1:
        raise AssertionError(f"inclusion symmetry broken: {rep.describe()}")
    return rep.dual1_in_c2


@dataclass(frozen=True, eq=False)
class AsymmetricCssCode:
    """An [[n, k, d_z/d_x]]_q code with its stabilizer generator matrices.

    ``g_x`` spans C2^perp and ``g_z`` spans C1^perp, so every row of one is
    orthogonal to every row of the other.
    """

    field: GF
    n: int
    k: int
    k1: int
    k2: int
    d_z: DistanceResult
    d_x: DistanceResult
    pure_x: bool
    pure_z: bool
    g_x: np.ndarray
    g_z: np.ndarray
    weight_c1_rel: DistanceResult
    weight_c2_rel: DistanceResult
    weight_c1: DistanceResult
    weight_c2: DistanceResult

    @property
    def exact(self) -> bool:
        return self.d_x.exact and self.d_z.exact

    @property
    def purity_exact(self) -> bool:
        return all(w.exact for w in (self.weight_c1_rel, self.weight_c2_rel, self.weight_c1, self.weight_c2))

    def __repr__(self) -> str:
        return f"[[{self.n},{self.k},{self.d_z.value}/{self.d_x.value}]]_{self.field.q}"


def build_css(
    C1: LinearCode,
    C2: LinearCode,
    budget: int = DEFAULT_BUDGET,
    seed: int = DEFAULT_SEED,
) -> AsymmetricCssCode:
    rep = nesting_report(C1, C2)
    if not rep.nested:
        raise NestingError(rep)
    dual1, dual2 = dual_code(C1), dual_code(C2)
    rel1 = relative_min_weight(C1, dual2, budget, seed=seed)
    rel2 = relative_min_weight(C2, dual1, budget, seed=seed)
    w1 = min_weight(C1, budget, seed=seed)
    w2 = min_weight(C2, budget, seed=seed)
    d_x, d_z = sorted((rel1, rel2), key=lambda d: d.value)
    return AsymmetricCssCode(
        field=C1.field,
        n=C1.n,
        k=C1.k + C2.k - C1.n,
        k1=C1.k,
        k2=C2.k,
        d_z=d_z,
        d_x=d_x,
        pure_x=w1.value == rel1.value,
        pure_z=w2.value == rel2.value,
        g_x=dual2.generator,
        g_z=dual1.generator,
        weight_c1_rel=rel1,
        weight_c2_rel=rel2,
        weight_c1=w1,
        weight_c2=w2,
    )


@dataclass(frozen=True)
class FamilyParams:
    q: int
    r: int
    b1: int
    b2: int
    predicted_n: int
    predicted_k: int
    predicted_dz: int
    predicted_dx: int
    purity_predicted: bool


def family_threshold(q: int, r: int) -> int:
    """(r-1)(q-2)/r: the largest admissible shift and the lower bound on b1+b2."""
    return (r - 1) * check_params(q, r, 0)


def predicted_family_params(q: int, r: int, b1: int, b2: int) -> FamilyParams:
    width = check_params(q, r, 0)
    top = family_threshold(q, r)
    for b in (b1, b2):
        if not 0 <= b <= top:
            raise RangeError(f"b={b} outside [0, {top}]")
    if b1 + b2 < top:
        raise RangeError(f"b1+b2 = {b1 + b2} is below (r-1)(q-2)/r = {top}")
    return FamilyParams(
        q=q,
        r=r,
        b1=b1,
        b2=b2,
        predicted_n=(q - 1) ** 2,
        predicted_k=(width + 1) * q // 2 + (b1 + b2) * (q - 1),
        predicted_dz=(q - 1 - min(b1, b2)) * (q - 1),
        predicted_dx=(q - 1 - max(b1, b2)) * (q - 1),
        purity_predicted=b1 + b2 != top,
    )


@dataclass(frozen=True)
class FamilyResult:
    params: FamilyParams
    nesting: NestingReport
    code: AsymmetricCssCode | None
    c1: LinearCode
    c2: LinearCode

    @property
    def ok(self) -> bool:
        return self.code is not None


def build_family_code(
    q: int, r: int, b1: int, b2: int, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED
) -> FamilyResult:
    """Build C_{b1}, C_{b2} and, when they really nest, the CSS code."""
    params = predicted_family_params(q, r, b1, b2)
    c1, c2 = code_from_polytope(q, r, b1), code_from_polytope(q, r, b2)
    rep = nesting_report(c1, c2)
    code = build_css(c1, c2, budget, seed) if rep.nested else None
    return FamilyResult(params, rep, code, c1, c2)


def format_stabilizers(code: AsymmetricCssCode, q: int, r: int, b1: int, b2: int) -> str:
    head = f"css q={q} r={r} b1={b1} b2={b2} n={code.n} k={code.k}\n"
    return head + "GX\n" + format_matrix(code.field, code.g_x) + "GZ\n" + format_matrix(code.field, code.g_z)
