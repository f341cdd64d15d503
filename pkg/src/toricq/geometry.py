"""Lattice polygons in Z^2, the box polytope family, and toric fan data.

Everything here is exact integer arithmetic.  Polygons are stored in a
canonical form: vertices counterclockwise, no three consecutive collinear,
starting from the lexicographically least vertex.  Points and segments are
allowed as degenerate polytopes.
"""

from __future__ import annotations

import functools
import math
import warnings
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple


class LatticePoint(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # type: ignore[override]
        return LatticePoint(self.x + other[0], self.y + other[1])

    def __neg__(self):
        return LatticePoint(-self.x, -self.y)


def pairing(m: Sequence[int], n: Sequence[int]) -> int:
    return m[0] * n[0] + m[1] * n[1]


def det(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


class ParameterError(ValueError):
    """Base class for invalid (q, r, b) parameters."""


class DivisibilityError(ParameterError):
    """r does not divide q - 2."""


class RangeError(ParameterError):
    """A parameter falls outside its admissible range."""


class ParameterWarning(UserWarning):
    pass


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Sequence[int]]) -> tuple[LatticePoint, ...]:
    """Extreme points, counterclockwise from the lexicographically least one."""
    pts = sorted({LatticePoint(int(p[0]), int(p[1])) for p in points})
    if len(pts) <= 2:
        return tuple(pts)
    lower: list[LatticePoint] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[LatticePoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return tuple(hull)


@dataclass(frozen=True)
class LatticePolytope:
    """A convex lattice polygon (or segment, or point) in canonical form."""

    vertices: tuple[LatticePoint, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("empty polytope")
        if convex_hull(self.vertices) != tuple(self.vertices):
            raise ValueError("vertices are not in canonical convex position; use LatticePolytope.hull")

    @classmethod
    def hull(cls, points: Iterable[Sequence[int]]) -> LatticePolytope:
        return cls(convex_hull(points))

    @property
    def dim(self) -> int:
        return min(len(self.vertices) - 1, 2)

    def halfplanes(self) -> list[tuple[LatticePoint, int]]:
        """Pairs ``(n, c)`` with primitive inward normal n: P = {m : <m,n> >= c}."""
        if self.dim < 2:
            raise ValueError("half-plane description needs a 2-dimensional polygon")
        out = []
        vs = self.vertices
        for i, v in enumerate(vs):
            w = vs[(i + 1) % len(vs)]
            dx, dy = w.x - v.x, w.y - v.y
            g = math.gcd(dx, dy)
            n = LatticePoint(-dy // g, dx // g)
            out.append((n, pairing(v, n)))
        return out

    def contains(self, m: Sequence[int]) -> bool:
        if self.dim == 2:
            return all(pairing(m, n) >= c for n, c in self.halfplanes())
        if self.dim == 0:
            return tuple(m) == tuple(self.vertices[0])
        a, b = self.vertices
        if _cross(a, b, m) != 0:
            return False
        return min(a.x, b.x) <= m[0] <= max(a.x, b.x) and min(a.y, b.y) <= m[1] <= max(a.y, b.y)

    def bounding_box(self) -> tuple[int, int, int, int]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def lattice_points(self) -> list[LatticePoint]:
        return lattice_points(self)

    def __str__(self) -> str:
        return " ".join(f"({v.x},{v.y})" for v in self.vertices)


def segment(p0: Sequence[int], p1: Sequence[int]) -> LatticePolytope:
    return LatticePolytope.hull([p0, p1])


def lattice_points(P: LatticePolytope) -> list[LatticePoint]:
    """All integral points of ``P`` ordered by (x, y)."""
    x0, x1, y0, y1 = P.bounding_box()
    if P.dim < 2:
        return [LatticePoint(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1) if P.contains((x, y))]
    hp = P.halfplanes()
    return [
        LatticePoint(x, y)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        if all(n.x * x + n.y * y >= c for n, c in hp)
    ]


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    return LatticePolytope.hull(v + w for v in P.vertices for w in Q.vertices)


def polytope_contains(P: LatticePolytope, Q: LatticePolytope) -> bool:
    """True iff ``Q`` is a subset of ``P``."""
    return all(P.contains(v) for v in Q.vertices)


def support_function(P: LatticePolytope, n: Sequence[int]) -> int:
    """``min <m, n>`` over ``P``; attained at a vertex."""
    return min(pairing(v, n) for v in P.vertices)


# -- the box family ------------------------------------------------------------


def check_params(q: int, r: int, b: int = 0) -> int:
    """Validate ``(q, r, b)`` and return the slope width ``(q - 2) // r``."""
    if q < 3:
        raise RangeError(f"q={q} must be at least 3")
    if r < 1:
        raise RangeError(f"r={r} must be at least 1")
    if (q - 2) % r:
        raise DivisibilityError(f"r={r} does not divide q-2={q - 2}; the polytope would not be integral")
    if q % r:
        warnings.warn(f"r={r} does not divide q={q}", ParameterWarning, stacklevel=3)
    width = (q - 2) // r
    if b < 0:
        raise RangeError(f"b={b} must be non-negative")
    if b + width > q - 2:
        raise RangeError(f"a = b + (q-2)/r = {b + width} exceeds q-2 = {q - 2}")
    return width


def box_polytope(q: int, r: int, b: int) -> LatticePolytope:
    """Quadrilateral with vertices (0,0), (b+(q-2)/r, 0), (b, q-2), (0, q-2).

    For ``b == 0`` this is a triangle.
    """
    a = b + check_params(q, r, b)
    return LatticePolytope.hull([(0, 0), (a, 0), (b, q - 2), (0, q - 2)])


def predicted_lattice_count(q: int, r: int, b: int) -> int:
    """Closed-form point count ((q-2)/r + 1) q / 2 + b (q - 1)."""
    width = check_params(q, r, b)
    twice = (width + 1) * q
    return twice // 2 + b * (q - 1)


def dual_b(q: int, r: int, b: int) -> int:
    """The shift ``(r-1)(q-2)/r - b`` of the dual member of the family."""
    width = check_params(q, r, 0)
    top = (r - 1) * width
    if not 0 <= b <= top:
        raise RangeError(f"b={b} outside [0, {top}]")
    return top - b


def zero_bound(q: int, r: int, A: int) -> int:
    """Per-stratum zero bound (q - 2) - A r; may be negative."""
    if A < 0:
        raise RangeError(f"A={A} must be non-negative")
    return (q - 2) - A * r


# -- fans ----------------------------------------------------------------------


@dataclass(frozen=True)
class Ray:
    generator: LatticePoint
    label: str = ""

    def __post_init__(self) -> None:
        x, y = self.generator
        if (x, y) == (0, 0) or math.gcd(x, y) != 1:
            raise ValueError(f"ray generator {self.generator} is not primitive")


@dataclass(frozen=True)
class Cone:
    rays: tuple[int, int]
    functional: LatticePoint


@dataclass(frozen=True)
class Fan:
    """Complete 2-D fan; rays sorted counterclockwise, cone i spans rays i, i+1."""

    rays: tuple[Ray, ...]
    cones: tuple[Cone, ...]

    def index(self, ray: Ray | Sequence[int] | str) -> int:
        for i, rho in enumerate(self.rays):
            if ray == rho or (isinstance(ray, str) and ray == rho.label) or (
                not isinstance(ray, (Ray, str)) and tuple(ray) == tuple(rho.generator)
            ):
                return i
        raise KeyError(f"{ray!r} is not a ray of this fan")

    def neighbors(self, ray) -> tuple[LatticePoint, LatticePoint]:
        i = self.index(ray)
        k = len(self.rays)
        return self.rays[(i - 1) % k].generator, self.rays[(i + 1) % k].generator

    def determinants(self) -> list[int]:
        k = len(self.rays)
        return [det(self.rays[i].generator, self.rays[(i + 1) % k].generator) for i in range(k)]

    def is_refined(self) -> bool:
        return all(abs(d) == 1 for d in self.determinants())


def _half(v: Sequence[int]) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(u: Sequence[int], v: Sequence[int]) -> int:
    if _half(u) != _half(v):
        return _half(u) - _half(v)
    return -det(u, v)


def _functional(P: LatticePolytope, u: Sequence[int], v: Sequence[int]) -> LatticePoint:
    hu, hv = support_function(P, u), support_function(P, v)
    for m in P.vertices:
        if pairing(m, u) == hu and pairing(m, v) == hv:
            return m
    raise ValueError(f"support function of {P} is not linear on the cone {u}, {v}")


def _fan_from_rays(P: LatticePolytope, gens: Sequence[Sequence[int]], prefix: str = "rho") -> Fan:
    rays = tuple(Ray(LatticePoint(*g), f"{prefix}{i + 1}") for i, g in enumerate(gens))
    k = len(rays)
    cones = tuple(
        Cone((i, (i + 1) % k), _functional(P, rays[i].generator, rays[(i + 1) % k].generator))
        for i in range(k)
    )
    return Fan(rays, cones)


def normal_fan(P: LatticePolytope) -> Fan:
    """Coarsest fan on which the support function of ``P`` is linear."""
    normals = sorted({n for n, _ in P.halfplanes()}, key=functools.cmp_to_key(_angle_cmp))
    return _fan_from_rays(P, normals)


def _subdivide(u: LatticePoint, v: LatticePoint) -> list[LatticePoint]:
    """Rays strictly between ``u`` and ``v`` making every adjacent pair unimodular."""
    d = det(u, v)
    if d <= 1:
        return []
    for k in range(d):
        wx, wy = k * u.x + v.x, k * u.y + v.y
        if wx % d == 0 and wy % d == 0:
            w = LatticePoint(wx // d, wy // d)
            return [w] + _subdivide(w, v)
    raise AssertionError("no subdividing ray")  # pragma: no cover


def refine(P: LatticePolytope, fan: Fan) -> Fan:
    gens: list[LatticePoint] = []
    k = len(fan.rays)
    for i in range(k):
        u, v = fan.rays[i].generator, fan.rays[(i + 1) % k].generator
        gens.append(u)
        gens.extend(_subdivide(u, v))
    return _fan_from_rays(P, gens)


def refined_normal_fan(q: int, r: int) -> Fan:
    """The fixed smooth fan for the triangle (b = 0): rays (1,0), (0,1), (-1,0), (-r,-1).

    Cone functionals: (0,0), ((q-2)/r, 0), ((q-2)/r, 0), (0, q-2).
    """
    width = check_params(q, r, 0)
    rays = (
        Ray(LatticePoint(1, 0), "rho1"),
        Ray(LatticePoint(0, 1), "rho2"),
        Ray(LatticePoint(-1, 0), "rho3"),
        Ray(LatticePoint(-r, -1), "rho4"),
    )
    ls = (LatticePoint(0, 0), LatticePoint(width, 0), LatticePoint(width, 0), LatticePoint(0, q - 2))
    cones = tuple(Cone((i, (i + 1) % 4), ls[i]) for i in range(4))
    return Fan(rays, cones)


def divisor_coefficients(fan: Fan, P: LatticePolytope) -> dict[str, int]:
    """Coefficients ``-h(n(rho))`` of the Cartier divisor of ``P``, keyed by ray label."""
    return {rho.label: -support_function(P, rho.generator) for rho in fan.rays}


def divisor_of_h0(q: int, r: int) -> dict[str, int]:
    return divisor_coefficients(refined_normal_fan(q, r), box_polytope(q, r, 0))


def _solve_pairing(n: Sequence[int], value: int) -> LatticePoint:
    """Some integral m with <m, n> = value, for primitive n."""
    a, b = n
    # extended Euclid on |a|, |b|
    old_r, rr = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while rr:
        quo = old_r // rr
        old_r, rr = rr, old_r - quo * rr
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    if old_r != 1:
        raise ValueError(f"{tuple(n)} is not primitive")
    return LatticePoint(old_s * value, old_t * value)


def intersection_number(
    fan: Fan,
    h: Callable[[Sequence[int]], int] | LatticePolytope,
    ray,
    l_rho: Sequence[int] | None = None,
) -> int:
    """Intersection number of the divisor of ``h`` with the curve of ``ray``.

    ``h`` is a support function (or a polytope whose support function is
    used).  ``l_rho`` is any lattice point agreeing with ``h`` on the ray; one
    is solved for when omitted.  The answer does not depend on that choice.
    """
    if isinstance(h, LatticePolytope):
        poly = h
        h = lambda n: support_function(poly, n)  # noqa: E731
    n_rho = fan.rays[fan.index(ray)].generator
    n1, n2 = fan.neighbors(ray)
    if l_rho is None:
        l_rho = _solve_pairing(n_rho, h(n_rho))
    elif pairing(l_rho, n_rho) != h(n_rho):
        raise ValueError(f"l_rho={tuple(l_rho)} does not agree with h on {n_rho}")
    hbar = lambda n: h(n) - pairing(l_rho, n)  # noqa: E731
    return -(hbar(n1) + hbar(n2))


def self_intersection(fan: Fan, ray) -> int:
    """The integer c with n' + n'' + c n(rho) = 0 for the two neighbours of ``ray``."""
    n_rho = fan.rays[fan.index(ray)].generator
    n1, n2 = fan.neighbors(ray)
    s = n1 + n2
    if det(s, n_rho) != 0:
        raise ValueError(f"neighbours of {n_rho} do not sum into its span")
    num = -pairing(s, n_rho)
    den = pairing(n_rho, n_rho)
    if num % den:
        raise ValueError(f"neighbour sum {s} is not an integral multiple of {n_rho}")
    return num // den


# -- polytope text format --------------------------------------------------------


def format_polytope(P: LatticePolytope, q: int, r: int, b: int) -> str:
    lines = [f"polytope q={q} r={r} b={b}"]
    lines.extend(f"{v.x} {v.y}" for v in P.vertices)
    return "\n".join(lines) + "\n"


def parse_polytope(text: str) -> tuple[dict[str, int], LatticePolytope]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split() if lines else []
    if not head or head[0] != "polytope":
        raise ValueError("missing 'polytope' header")
    params = {k: int(v) for k, v in (tok.split("=", 1) for tok in head[1:])}
    verts = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    return params, LatticePolytope(tuple(LatticePoint(*v) for v in verts))
