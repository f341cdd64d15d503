"""Toric evaluation codes over GF(q) and their duals.

A code is built from a set U of exponent vectors in H = {0..q-2}^2 by
evaluating the monomials x^m1 y^m2, m in U, at every point of the torus
(F_q^*)^2.  The torus points are ordered (g^i, g^j), i, j = 0..q-2, where g
is the field's distinguished primitive element.
"""

from __future__ import annotations

import functools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from toricq.field import GF, field_of_order, format_matrix
from toricq.geometry import (
    LatticePoint,
    box_polytope,
    check_params,
    dual_b,
    lattice_points,
    predicted_lattice_count,
)


@dataclass(frozen=True)
class ExponentSet:
    """Sorted, duplicate-free exponents inside H = {0, ..., q-2}^2."""

    q: int
    points: tuple[LatticePoint, ...]

    def __post_init__(self) -> None:
        pts = tuple(sorted({LatticePoint(int(x), int(y)) for x, y in self.points}))
        for x, y in pts:
            if not (0 <= x <= self.q - 2 and 0 <= y <= self.q - 2):
                raise ValueError(f"exponent ({x},{y}) outside H = [0,{self.q - 2}]^2")
        object.__setattr__(self, "points", pts)

    @classmethod
    def full(cls, q: int) -> ExponentSet:
        return cls(q, tuple(LatticePoint(x, y) for x in range(q - 1) for y in range(q - 1)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, m) -> bool:
        return LatticePoint(*m) in set(self.points)

    def issubset(self, other: ExponentSet) -> bool:
        return set(self.points) <= set(other.points)

    def format(self) -> str:
        return ";".join(f"{x},{y}" for x, y in self.points)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A linear code given by a full-rank generator matrix.

    ``provenance`` is a free-form mapping (e.g. ``{"q": 4, "r": 2, "b": 1}``)
    carried into exports.
    """

    field: GF
    generator: np.ndarray
    source: ExponentSet | None = None
    provenance: dict = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        g = np.asarray(self.generator, dtype=np.int64)
        if g.ndim != 2:
            raise ValueError("generator must be 2-D")
        rk = self.field.rank(g) if g.shape[0] else 0
        if rk != g.shape[0]:
            g = self.field.row_basis(g)
        g.setflags(write=False)
        object.__setattr__(self, "generator", g)
        if self.source is not None and len(self.source) != g.shape[0]:
            raise ValueError(f"exponent set of size {len(self.source)} gave rank {g.shape[0]}")

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @functools.cached_property
    def rref(self) -> np.ndarray:
        return self.field.row_basis(self.generator) if self.k else self.generator

    @functools.cached_property
    def parity_check(self) -> np.ndarray:
        return self.field.nullspace(self.generator) if self.k else np.eye(self.n, dtype=np.int64)

    def contains(self, other: LinearCode) -> bool:
        if other.k == 0:
            return True
        if self.k < other.k:
            return False
        return self.field.is_subspace(other.generator, self.generator)

    def same_space(self, other: LinearCode) -> bool:
        return self.k == other.k and np.array_equal(self.rref, other.rref)

    def contains_vectors(self, vectors) -> np.ndarray:
        """Boolean mask: which rows of ``vectors`` are codewords."""
        v = np.asarray(vectors, dtype=np.int64)
        if self.k == self.n:
            return np.ones(v.shape[0], dtype=bool)
        syn = self.field.matmul(v, self.parity_check.T)
        return ~np.any(syn, axis=1)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}] over GF({self.field.q}))"


def evaluation_points(field: GF) -> list[tuple[int, int]]:
    if field.q < 3:
        raise ValueError("the torus needs q >= 3")
    powers = [field.exp(i) for i in range(field.q - 1)]
    return [(x, y) for x in powers for y in powers]


def eval_monomial(field: GF, m: Sequence[int], t: Sequence[int]) -> int:
    if t[0] == 0 or t[1] == 0:
        raise ValueError(f"torus point {tuple(t)} has a zero coordinate")
    return field.mul(field.pow(t[0], m[0]), field.pow(t[1], m[1]))


def evaluation_matrix(field: GF, exponents: Iterable[Sequence[int]]) -> np.ndarray:
    """Rows ``(e(m)(t))_t`` in exponent order; computed through discrete logs."""
    n1 = field.q - 1
    ex = np.array(list(exponents), dtype=np.int64).reshape(-1, 2)
    i = np.repeat(np.arange(n1), n1)
    j = np.tile(np.arange(n1), n1)
    logs = (ex[:, :1] * i[None, :] + ex[:, 1:] * j[None, :]) % n1
    return np.asarray(field.exp(logs)).reshape(len(ex), n1 * n1)


def build_code(field: GF, U: ExponentSet, provenance: dict | None = None) -> LinearCode:
    if len(U) == 0:
        raise ValueError("empty exponent set")
    if U.q != field.q:
        raise ValueError(f"exponent set for q={U.q} used with GF({field.q})")
    return LinearCode(field, evaluation_matrix(field, U.points), U, provenance or {})


def polytope_exponents(q: int, r: int, b: int) -> ExponentSet:
    return ExponentSet(q, tuple(lattice_points(box_polytope(q, r, b))))


def code_from_polytope(q: int, r: int, b: int) -> LinearCode:
    field = field_of_order(q)
    return build_code(field, polytope_exponents(q, r, b), {"q": q, "r": r, "b": b})


def dual_code(C: LinearCode) -> LinearCode:
    return LinearCode(C.field, C.parity_check)


def dual_exponent_set(U: ExponentSet) -> ExponentSet:
    """H minus the negated set -U (mod q-1)."""
    n1 = U.q - 1
    neg = {((n1 - x) % n1, (n1 - y) % n1) for x, y in U.points}
    return ExponentSet(U.q, tuple(m for m in ExponentSet.full(U.q).points if tuple(m) not in neg))


class CodeParams(NamedTuple):
    n: int
    k: int
    d: int


def predicted_params(q: int, r: int, b: int) -> CodeParams:
    """Closed forms n = (q-1)^2, k = lattice count, d = (q-1-a)(q-1)."""
    a = b + check_params(q, r, b)
    return CodeParams((q - 1) ** 2, predicted_lattice_count(q, r, b), (q - 1 - a) * (q - 1))


@dataclass(frozen=True)
class DualClaim:
    b_dual: int
    claimed: ExponentSet
    exact_dual: LinearCode
    agrees: bool

    @property
    def gap(self) -> int:
        return len(self.claimed) - self.exact_dual.k


def dual_polytope_claim(q: int, r: int, b: int) -> DualClaim:
    """Compare the box member at ``dual_b(b)`` with the exact dual of C_b."""
    bd = dual_b(q, r, b)
    C = code_from_polytope(q, r, b)
    exact = dual_code(C)
    claimed = polytope_exponents(q, r, bd)
    agrees = len(claimed) == exact.k and build_code(C.field, claimed).same_space(exact)
    return DualClaim(bd, claimed, exact, agrees)


def format_code(C: LinearCode) -> str:
    if C.source is not None and {"q", "r", "b"} <= C.provenance.keys():
        p = C.provenance
        head = f"toric q={p['q']} r={p['r']} b={p['b']} g={C.field.generator}"
    elif C.source is not None:
        head = f"exponents: {C.source.format()}"
    else:
        head = "exponents: "
    return head + "\n" + format_matrix(C.field, C.generator)
