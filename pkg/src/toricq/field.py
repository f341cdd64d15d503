"""Finite fields GF(p^m) and dense linear algebra over them.

Elements are encoded as integers in ``[0, q)``: the residue
``a_0 + a_1 x + ... + a_{m-1} x^{m-1}`` (modulo the defining polynomial)
is stored as ``a_0 + a_1 p + ... + a_{m-1} p^{m-1}``.  All operations accept
Python ints or numpy integer arrays and broadcast like numpy ufuncs.

The defining polynomial is the lexicographically least monic irreducible
polynomial of degree ``m`` (coefficients read as a base-``p`` integer, low
degree first), and the distinguished primitive element is the least encoding
that generates the multiplicative group.  Both choices are deterministic so
that exported matrices are reproducible bit for bit.
"""

from __future__ import annotations

import functools
from collections.abc import Sequence

import numpy as np

MAX_ORDER = 2**16
_ADD_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``; raise if impossible."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"q={q} is not a prime power")
    p = ps[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return p, m


# -- polynomials over F_p as coefficient lists, low degree first ------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``f``."""
    r = [c % p for c in a]
    _poly_trim(r)
    d = len(f) - 1
    while len(r) - 1 >= d:
        c = r[-1]
        shift = len(r) - 1 - d
        for i, fc in enumerate(f):
            r[shift + i] = (r[shift + i] - c * fc) % p
        _poly_trim(r)
    return r


def _all_monic(degree: int, p: int):
    for low in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(low % p)
            low //= p
        yield coeffs + [1]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial-division irreducibility test for a monic polynomial over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for g in _all_monic(d, p):
            if not _poly_mod(f, g, p):
                return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    for f in _all_monic(m, p):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """The finite field with ``q = p**m`` elements.

    Instances are immutable; use :func:`field_new` to get a cached instance.

    >>> F = GF(2, 2)
    >>> F.mul(2, 2)
    3
    >>> F.trace(2)
    1
    """

    def __init__(self, p: int, m: int = 1) -> None:
        if not is_prime(p):
            raise ValueError(f"characteristic p={p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree m={m} must be >= 1")
        if p**m > MAX_ORDER:
            raise ValueError(f"field order {p}**{m} exceeds the limit {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = least_irreducible(p, m)
        self._pows = np.array([p**i for i in range(m)], dtype=np.int64)

        self.generator = self._find_generator()
        q = self.q
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, self.generator)
        exp[q - 1 :] = exp[: q - 1]
        exp.setflags(write=False)
        log.setflags(write=False)
        self._exp = exp
        self._log = log

        self._add_table = None
        self._neg_table = None
        if p > 2 and m > 1 and q <= _ADD_TABLE_LIMIT:
            e = np.arange(q)
            add = self._add_digits(e[:, None], e[None, :])
            add.setflags(write=False)
            self._add_table = add
            neg = self._neg_digits(e)
            neg.setflags(write=False)
            self._neg_table = neg

    def __repr__(self) -> str:
        return f"GF({self.p}**{self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))

    def __reduce__(self):
        return field_new, (self.p, self.m)

    # -- table construction ----------------------------------------------

    def to_digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        return sum((d % self.p) * self.p**i for i, d in enumerate(digits))

    def _mul_slow(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        da, db = self.to_digits(a), self.to_digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.from_digits(_poly_mod(prod, self.modulus, self.p))

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        order = self.q - 1
        ls = prime_factors(order)
        for g in range(2, self.q):
            if all(self._pow_slow(g, order // ell) != 1 for ell in ls):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    def _digits_array(self, a: np.ndarray) -> np.ndarray:
        return (a[..., None] // self._pows) % self.p

    def _add_digits(self, a, b) -> np.ndarray:
        da, db = self._digits_array(np.asarray(a)), self._digits_array(np.asarray(b))
        return (((da + db) % self.p) * self._pows).sum(axis=-1)

    def _neg_digits(self, a) -> np.ndarray:
        da = self._digits_array(np.asarray(a))
        return (((-da) % self.p) * self._pows).sum(axis=-1)

    # -- elementwise arithmetic -------------------------------------------

    @staticmethod
    def _out(r):
        r = np.asarray(r)
        return int(r) if r.ndim == 0 else r

    def add(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            r = a ^ b
        elif self.m == 1:
            r = (a + b) % self.p
        elif self._add_table is not None:
            r = self._add_table[a, b]
        else:
            r = self._add_digits(a, b)
        return self._out(r)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            r = a
        elif self.m == 1:
            r = (-a) % self.p
        elif self._neg_table is not None:
            r = self._neg_table[a]
        else:
            r = self._neg_digits(a)
        return self._out(r)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        r = np.where((a == 0) | (b == 0), 0, self._exp[self._log[a] + self._log[b]])
        return self._out(r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse in a field")
        return self._out(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        a, e = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(e, dtype=np.int64))
        zero = a == 0
        if np.any(zero & (e < 0)):
            raise ZeroDivisionError("0 cannot be raised to a negative power")
        r = self._exp[(self._log[a] * e) % (self.q - 1)]
        r = np.where(zero, np.where(e == 0, 1, 0), r)
        return self._out(r)

    def log(self, a):
        """Discrete logarithm to the base :attr:`generator`."""
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ValueError("log of 0 is undefined")
        return self._out(self._log[a])

    def exp(self, e):
        """``generator ** e`` for integer arrays ``e`` of any sign."""
        return self._out(self._exp[np.asarray(e, dtype=np.int64) % (self.q - 1)])

    def trace(self, a):
        """Absolute trace ``a + a^p + ... + a^(p^(m-1))``, an element of F_p."""
        a = np.asarray(a, dtype=np.int64)
        acc = np.zeros_like(a)
        x = a
        for _ in range(self.m):
            acc = np.asarray(self.add(acc, x))
            x = np.asarray(self.pow(x, self.p))
        return self._out(acc)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # -- linear algebra ---------------------------------------------------

    def matrix(self, rows, cols: int | None = None) -> np.ndarray:
        """Coerce to a 2-D int64 array of valid encodings."""
        a = np.array(rows, dtype=np.int64)
        if a.size == 0:
            return np.zeros((0, cols or 0), dtype=np.int64)
        if a.ndim == 1:
            a = a[None, :]
        if a.ndim != 2:
            raise ValueError("expected a 2-D matrix")
        if a.min() < 0 or a.max() >= self.q:
            raise ValueError(f"entries must be encodings in [0, {self.q})")
        return a

    def matmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[-1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if self.m == 1:
            # entries < p <= 2**16, so each partial product fits comfortably
            return (a @ b) % self.p
        out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
        for i in range(a.shape[-1]):
            out = self.add(out, self.mul(a[..., i, None], b[i]))
        return np.asarray(out)

    def rref(self, a) -> tuple[np.ndarray, int, tuple[int, ...]]:
        """Reduced row-echelon form, rank and pivot columns.

        Pivots are chosen left to right, taking the topmost available row.
        """
        r = np.array(a, dtype=np.int64)
        if r.ndim != 2:
            raise ValueError("expected a 2-D matrix")
        rows, cols = r.shape
        pivots = []
        row = 0
        for col in range(cols):
            if row == rows:
                break
            nz = np.flatnonzero(r[row:, col])
            if nz.size == 0:
                continue
            piv = row + int(nz[0])
            if piv != row:
                r[[row, piv]] = r[[piv, row]]
            r[row] = self.mul(r[row], self.inv(int(r[row, col])))
            others = np.flatnonzero(r[:, col])
            others = others[others != row]
            if others.size:
                factors = r[others, col]
                r[others] = self.sub(r[others], self.mul(factors[:, None], r[row][None, :]))
            pivots.append(col)
            row += 1
        return r, len(pivots), tuple(pivots)

    def rank(self, a) -> int:
        a = np.asarray(a)
        if a.size == 0:
            return 0
        return self.rref(a)[1]

    def row_basis(self, a) -> np.ndarray:
        """Nonzero rows of the rref: a canonical basis of the row space."""
        a = np.asarray(a, dtype=np.int64)
        if a.shape[0] == 0:
            return a.reshape(0, a.shape[1] if a.ndim == 2 else 0)
        r, rk, _ = self.rref(a)
        return r[:rk]

    def nullspace(self, a) -> np.ndarray:
        """Basis (as rows) of ``{v : a @ v == 0}``, one row per free column."""
        a = np.asarray(a, dtype=np.int64)
        cols = a.shape[1]
        if a.shape[0] == 0:
            return np.eye(cols, dtype=np.int64)
        r, rk, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for i, f in enumerate(free):
            basis[i, f] = 1
            basis[i, list(pivots)] = self.neg(r[:rk, f])
        return basis

    def is_subspace(self, a, b) -> bool:
        """True iff rowspace(a) is contained in rowspace(b)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] != b.shape[1]:
            raise ValueError(f"column mismatch: {a.shape[1]} vs {b.shape[1]}")
        if a.shape[0] == 0:
            return True
        return self.rank(b) == self.rank(np.vstack([b, a]))

    def same_rowspace(self, a, b) -> bool:
        return self.is_subspace(a, b) and self.is_subspace(b, a)


@functools.lru_cache(maxsize=None)
def field_new(p: int, m: int = 1) -> GF:
    """Cached constructor for :class:`GF`."""
    return GF(p, m)


def field_of_order(q: int) -> GF:
    p, m = prime_power(q)
    return field_new(p, m)


# -- matrix text format ------------------------------------------------------


def format_matrix(field: GF, a) -> str:
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    mod = ",".join(str(c) for c in field.modulus)
    lines = [f"q={field.q} p={field.p} m={field.m} modulus={mod} rows={rows} cols={cols}"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in a)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple[GF, np.ndarray]:
    """Inverse of :func:`format_matrix`; leading blank lines are skipped."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    header = dict(tok.split("=", 1) for tok in lines[0].split())
    try:
        p, m, q = int(header["p"]), int(header["m"]), int(header["q"])
        rows, cols = int(header["rows"]), int(header["cols"])
        modulus = tuple(int(c) for c in header["modulus"].split(","))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad matrix header: {lines[0]!r}") from exc
    field = field_new(p, m)
    if field.q != q or field.modulus != modulus:
        raise ValueError(f"header field q={q} modulus={modulus} does not match {field.modulus}")
    body = lines[1 : 1 + rows]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    data = np.array([[int(v) for v in ln.split()] for ln in body], dtype=np.int64).reshape(rows, cols)
    return field, field.matrix(data, cols)
