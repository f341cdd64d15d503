"""Minimum weights, relative minimum weights and weight distributions.

Three exact routes exist and the cheapest one inside the budget is used:

``scan``
    meet-in-the-middle enumeration: a table with the span of the last few
    generator rows is added (vectorised) to every combination of the
    remaining rows.
``macwilliams``
    exact weight distributions, each taken either by direct enumeration or,
    when the dual is smaller, from the dual's distribution through the
    MacWilliams transform.
``stochastic``
    random information sets; gives an upper bound only and is flagged
    ``exact=False``.

The budget counts codewords enumerated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from toricq.codes import LinearCode, dual_code
from toricq.field import GF

DEFAULT_BUDGET = 10**8
DEFAULT_SEED = 0xA5C3
MAX_STOCHASTIC_ITERATIONS = 400

_INNER_ROWS = 1 << 12
_CHUNK_ELEMS = 1 << 22

METHODS = ("auto", "scan", "macwilliams", "stochastic")


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DistanceResult:
    """A measured minimum weight.

    ``exact=False`` means ``value`` is only an upper bound.
    """

    value: int
    exact: bool
    enumerated: int
    budget_hit: bool
    method: str = ""

    def __post_init__(self) -> None:
        if self.exact and self.budget_hit:
            raise ValueError("an exact result cannot have hit the budget")


# -- enumeration helpers -----------------------------------------------------


def _digits(idx: np.ndarray, q: int, k: int) -> np.ndarray:
    out = np.empty((idx.size, k), dtype=np.int64)
    rest = idx.copy()
    for i in range(k - 1, -1, -1):
        out[:, i] = rest % q
        rest //= q
    return out


def _span(field: GF, rows: np.ndarray, marked: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All combinations of ``rows`` plus a flag: any marked row used with c != 0."""
    n = rows.shape[1]
    table = np.zeros((1, n), dtype=np.int64)
    flag = np.zeros(1, dtype=bool)
    for row, mk in zip(rows, marked):
        parts = [table]
        flags = [flag]
        for c in range(1, field.q):
            parts.append(np.asarray(field.add(table, field.mul(c, row)[None, :])))
            flags.append(flag | bool(mk))
        table = np.concatenate(parts)
        flag = np.concatenate(flags)
    return table, flag


def _scan(field: GF, free: np.ndarray, fixed: np.ndarray, floor: int) -> tuple[int, int]:
    """Least weight of sum(c_i free_i) + sum(d_j fixed_j) with some c_i != 0."""
    rows = np.vstack([free, fixed])
    marked = np.array([True] * len(free) + [False] * len(fixed))
    k, n = rows.shape
    q = field.q
    t = 1
    while t < k and q ** (t + 1) <= _INNER_ROWS:
        t += 1
    inner, inner_flag = _span(field, rows[k - t :], marked[k - t :])
    outer_rows, outer_marked = rows[: k - t], marked[: k - t]
    n_outer = q ** (k - t)
    chunk = max(1, _CHUNK_ELEMS // (len(inner) * n))
    best = n + 1
    enumerated = 0
    for start in range(0, n_outer, chunk):
        idx = np.arange(start, min(start + chunk, n_outer), dtype=np.int64)
        if k - t:
            dig = _digits(idx, q, k - t)
            outer = field.matmul(dig, outer_rows)
            oflag = np.any(dig[:, outer_marked] != 0, axis=1)
        else:
            outer = np.zeros((1, n), dtype=np.int64)
            oflag = np.zeros(1, dtype=bool)
        sums = field.add(outer[:, None, :], inner[None, :, :])
        weights = np.count_nonzero(sums, axis=2)
        valid = oflag[:, None] | inner_flag[None, :]
        enumerated += int(valid.sum())
        if valid.any():
            best = min(best, int(weights[valid].min()))
        if best <= floor:
            break
    return best, enumerated


def _enumerate_distribution(C: LinearCode) -> list[int]:
    """Weight counts by direct encoding of every message."""
    field, G = C.field, C.generator
    n, k, q = C.n, C.k, field.q
    counts = np.zeros(n + 1, dtype=np.int64)
    if k == 0:
        counts[0] = 1
        return counts.tolist()
    total = q**k
    chunk = max(1, _CHUNK_ELEMS // max(n, k))
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        words = field.matmul(_digits(idx, q, k), G)
        counts += np.bincount(np.count_nonzero(words, axis=1), minlength=n + 1)
    return [int(c) for c in counts]


def macwilliams(distribution: list[int], q: int) -> list[int]:
    """Weight distribution of the dual code, in exact integer arithmetic."""
    n = len(distribution) - 1
    size = sum(distribution)
    k = round(math.log(size, q)) if size > 0 else -1
    if k < 0 or q**k != size or distribution[0] != 1:
        raise ValueError("input is not the weight distribution of a linear code")
    out = []
    for j in range(n + 1):
        acc = 0
        for w, a in enumerate(distribution):
            if not a:
                continue
            kraw = sum(
                (-1) ** s * (q - 1) ** (j - s) * math.comb(w, s) * math.comb(n - w, j - s)
                for s in range(0, min(j, w) + 1)
            )
            acc += a * kraw
        if acc % size:
            raise ValueError("input is not the weight distribution of a linear code")
        out.append(acc // size)
    return out


def _distribution_cost(C: LinearCode) -> int:
    q = C.field.q
    return min(q**C.k, q ** (C.n - C.k))


def _distribution(C: LinearCode) -> tuple[list[int], int]:
    q = C.field.q
    if q**C.k <= q ** (C.n - C.k):
        return _enumerate_distribution(C), q**C.k
    dual = _enumerate_distribution(dual_code(C))
    return macwilliams(dual, q), q ** (C.n - C.k)


def weight_distribution(C: LinearCode, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Counts ``A_0..A_n`` by enumerating all ``q**k`` codewords."""
    if C.field.q**C.k > budget:
        raise BudgetExceeded(f"q^k = {C.field.q}^{C.k} codewords exceed the budget {budget}")
    return _enumerate_distribution(C)


# -- stochastic upper bound ------------------------------------------------------


def _stochastic(C: LinearCode, D: LinearCode | None, budget: int, seed: int, floor: int, max_iterations: int):
    field = C.field
    q, n, k = field.q, C.n, C.k
    per_iter = k + k * (k - 1) // 2 * (q - 1)
    iterations = max(1, min(max_iterations, budget // per_iter))
    rng = np.random.default_rng(seed)
    scalars = np.arange(1, q, dtype=np.int64)
    best = n + 1
    enumerated = 0
    for _ in range(iterations):
        perm = rng.permutation(n)
        R, _, _ = field.rref(C.generator[:, perm])
        sys = np.empty_like(R)
        sys[:, perm] = R
        batches = [sys]
        for i in range(k - 1):
            others = sys[i + 1 :]
            combo = field.add(sys[i][None, None, :], field.mul(scalars[None, :, None], others[:, None, :]))
            batches.append(np.asarray(combo).reshape(-1, n))
        for cands in batches:
            enumerated += len(cands)
            if D is not None and D.k:
                cands = cands[~D.contains_vectors(cands)]
            if len(cands):
                best = min(best, int(np.count_nonzero(cands, axis=1).min()))
        if best <= floor:
            return best, enumerated, True
    return best, enumerated, False


# -- public API --------------------------------------------------------------------


def relative_min_weight(
    C: LinearCode,
    D: LinearCode | None,
    budget: int = DEFAULT_BUDGET,
    *,
    method: str = "auto",
    seed: int = DEFAULT_SEED,
    floor: int = 1,
    max_iterations: int = MAX_STOCHASTIC_ITERATIONS,
) -> DistanceResult:
    """Least weight of a codeword of ``C`` outside the subcode ``D``.

    ``D=None`` (or the zero code) gives the ordinary minimum weight.
    ``floor`` is a lower bound known to the caller: once a word of that
    weight is seen the search stops, and the answer is still exact.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if C.k == 0:
        raise ValueError("the zero code has no minimum weight")
    field = C.field
    q = field.q
    kd = 0
    if D is not None and D.k:
        if D.field != field or D.n != C.n:
            raise ValueError("codes over different fields or lengths")
        if not C.contains(D):
            raise ValueError("D is not a subcode of C")
        if D.k == C.k:
            raise ValueError("C \\ D is empty: D equals C")
        kd = D.k
    else:
        D = None

    cost_scan = q**C.k - q**kd
    cost_mw = _distribution_cost(C) + (_distribution_cost(D) if D is not None else 0)
    if method == "auto":
        if min(cost_scan, cost_mw) > budget:
            method = "stochastic"
        else:
            method = "scan" if cost_scan <= cost_mw else "macwilliams"
    elif method == "scan" and cost_scan > budget:
        raise BudgetExceeded(f"scan needs {cost_scan} codewords, budget {budget}")
    elif method == "macwilliams" and cost_mw > budget:
        raise BudgetExceeded(f"distributions need {cost_mw} codewords, budget {budget}")

    if method == "scan":
        if D is None:
            free, fixed = C.generator, np.zeros((0, C.n), dtype=np.int64)
        else:
            fixed = D.rref
            free = _complement_rows(field, fixed, C.generator)
        value, enumerated = _scan(field, free, fixed, floor)
        return DistanceResult(value, True, enumerated, False, "scan")

    if method == "macwilliams":
        a_c, cost = _distribution(C)
        a_d = [1] + [0] * C.n
        if D is not None:
            a_d, cost_d = _distribution(D)
            cost += cost_d
        value = next(w for w in range(1, C.n + 1) if a_c[w] > a_d[w])
        return DistanceResult(value, True, cost, False, "macwilliams")

    value, enumerated, hit_floor = _stochastic(C, D, budget, seed, floor, max_iterations)
    return DistanceResult(value, hit_floor, enumerated, not hit_floor, "stochastic")


def _complement_rows(field: GF, basis: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Rows of ``rows`` that extend ``basis`` to a basis of their joint span."""
    keep = []
    current = basis
    rank = field.rank(current) if len(current) else 0
    for row in rows:
        trial = np.vstack([current, row[None, :]])
        rk = field.rank(trial)
        if rk > rank:
            keep.append(row)
            current, rank = trial, rk
    return np.array(keep, dtype=np.int64).reshape(len(keep), rows.shape[1])


def min_weight(
    C: LinearCode,
    budget: int = DEFAULT_BUDGET,
    *,
    method: str = "auto",
    seed: int = DEFAULT_SEED,
    floor: int = 1,
    max_iterations: int = MAX_STOCHASTIC_ITERATIONS,
) -> DistanceResult:
    """Minimum Hamming weight of a nonzero codeword of ``C``."""
    return relative_min_weight(
        C, None, budget, method=method, seed=seed, floor=floor, max_iterations=max_iterations
    )


def zero_count_bound(q: int, r: int, a: int, A: int) -> int:
    """A(q-1) + (q-1-A) max(0, q-2-Ar): zeros of a section vanishing on A strata."""
    if not 0 <= A <= a:
        raise ValueError(f"A={A} outside [0, {a}]")
    return A * (q - 1) + (q - 1 - A) * max(0, q - 2 - A * r)
