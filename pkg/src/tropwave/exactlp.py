"""Exact rational linear programming and polytope helpers in the plane.

All routines work over `fractions.Fraction` with no floating point.  A
constraint is a pair ``(n, a)`` encoding the closed half-plane
``n . z + a >= 0`` with ``n`` an integer (or rational) vector.  Problem
sizes here are tiny (a handful of constraints), so everything is done by
basic-solution enumeration, which is simple and exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Tuple

Vec = Tuple[int, int]
Point = Tuple[Fraction, Fraction]
Constraint = Tuple[Vec, Fraction]

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def vsub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def vadd(u, v):
    return (u[0] + v[0], u[1] + v[1])


def vneg(u):
    return (-u[0], -u[1])


def satisfies(c: Constraint, p: Point, strict: bool = False) -> bool:
    val = dot(c[0], p) + c[1]
    return val > 0 if strict else val >= 0


def boundary_intersection(c1: Constraint, c2: Constraint) -> Optional[Point]:
    """Intersection point of the two boundary lines, or None if parallel."""
    n1, a1 = c1
    n2, a2 = c2
    det = cross(n1, n2)
    if det == 0:
        return None
    x = Fraction(-a1 * n2[1] + a2 * n1[1], 1) / det
    y = Fraction(-a2 * n1[0] + a1 * n2[0], 1) / det
    return (x, y)


def _int_constraints(cons: Sequence[Constraint]):
    """Clear denominators: (A, B, C) means A x + B y + C >= 0, all integers."""
    import math

    out = []
    for n, a in cons:
        a = Fraction(a)
        n0 = Fraction(n[0])
        n1 = Fraction(n[1])
        q = math.lcm(a.denominator, n0.denominator, n1.denominator)
        out.append((int(n0 * q), int(n1 * q), int(a * q)))
    return out


def basic_points(cons: Sequence[Constraint]) -> list[Point]:
    """All pairwise boundary intersections satisfying every constraint.

    Runs on denominator-cleared integer constraints: candidate points are
    kept as homogeneous integer triples so every feasibility check is pure
    integer arithmetic.
    """
    import math

    ics = _int_constraints(cons)
    m = len(ics)
    pts: list[Point] = []
    seen = set()
    for i in range(m):
        A1, B1, C1 = ics[i]
        for j in range(i + 1, m):
            A2, B2, C2 = ics[j]
            det = A1 * B2 - B1 * A2
            if det == 0:
                continue
            xn = -C1 * B2 + C2 * B1
            yn = -C2 * A1 + C1 * A2
            if det < 0:
                xn, yn, det = -xn, -yn, -det
            g = math.gcd(math.gcd(abs(xn), abs(yn)), det)
            key = (xn // g, yn // g, det // g)
            if key in seen:
                continue
            ok = True
            for A, B, C in ics:
                if A * xn + B * yn + C * det < 0:
                    ok = False
                    break
            if ok:
                seen.add(key)
                pts.append((Fraction(key[0], key[2]), Fraction(key[1], key[2])))
    return pts


def _parallel_interval(cons: Sequence[Constraint]):
    """For constraints whose normals all lie on one line, reduce to bounds
    lo <= n0 . z <= hi along the shared primitive direction n0.

    Returns (n0, lo, hi) where lo/hi may be None for one-sided systems.
    """
    from math import gcd

    n0 = None
    for n, _ in cons:
        if n != (0, 0):
            g = gcd(abs(n[0]), abs(n[1]))
            cand = (n[0] // g, n[1] // g)
            if cand[0] < 0 or (cand[0] == 0 and cand[1] < 0):
                cand = vneg(cand)
            n0 = cand
            break
    if n0 is None:
        return None
    lo = None
    hi = None
    for n, a in cons:
        if cross(n, n0) != 0:
            return None  # not actually parallel
        if dot(n, n0) > 0:
            scale = Fraction(dot(n, n0), dot(n0, n0))
            bound = Fraction(-a, 1) / scale
            lo = bound if lo is None else max(lo, bound)
        else:
            scale = Fraction(-dot(n, n0), dot(n0, n0))
            bound = Fraction(a, 1) / scale
            hi = bound if hi is None else min(hi, bound)
    return n0, lo, hi


def feasible_point(cons: Sequence[Constraint]) -> Optional[Point]:
    """Some point satisfying every constraint, or None."""
    if not cons:
        return (Fraction(0), Fraction(0))
    pts = basic_points(cons)
    if pts:
        return pts[0]
    # No basic point: either infeasible or all normals parallel (a strip,
    # half-plane, or line), where boundary lines never cross.
    interval = _parallel_interval(cons)
    if interval is None:
        return None
    n0, lo, hi = interval
    if lo is not None and hi is not None and lo > hi:
        return None
    s = lo if lo is not None else hi
    if s is None:
        return (Fraction(0), Fraction(0))
    nn = Fraction(dot(n0, n0))
    return (s * n0[0] / nn, s * n0[1] / nn)


def cone_contains(gens: Sequence[Vec], v) -> bool:
    """Is v a nonnegative combination of the generators? (Caratheodory in 2D:
    a single generator or a pair suffices.)"""
    if v == (0, 0) or (v[0] == 0 and v[1] == 0):
        return True
    gens = [g for g in gens if g != (0, 0)]
    for g in gens:
        if cross(g, v) == 0 and dot(g, v) > 0:
            return True
    m = len(gens)
    for i in range(m):
        for j in range(i + 1, m):
            g, h = gens[i], gens[j]
            det = cross(g, h)
            if det == 0:
                continue
            alpha = Fraction(cross(v, h), det)
            beta = Fraction(cross(g, v), det)
            if alpha >= 0 and beta >= 0:
                return True
    return False


def minimize(obj, cons: Sequence[Constraint]):
    """Minimize obj . z subject to the constraints.

    Returns (status, value, argmin_point); value/point are None unless
    status == OPTIMAL.
    """
    witness = feasible_point(cons)
    if witness is None:
        return (INFEASIBLE, None, None)
    if obj == (0, 0):
        return (OPTIMAL, Fraction(0), witness)
    if not cone_contains([c[0] for c in cons], obj):
        return (UNBOUNDED, None, None)
    pts = basic_points(cons)
    if pts:
        best = min(pts, key=lambda p: dot(obj, p))
        return (OPTIMAL, dot(obj, best), best)
    # Pointed case always has a basic optimum; remaining case is a strip or
    # half-plane with obj parallel to the shared normal direction.
    interval = _parallel_interval(cons)
    assert interval is not None
    n0, lo, hi = interval
    nn = Fraction(dot(n0, n0))
    if dot(obj, n0) > 0:
        s = lo
    else:
        s = hi
    assert s is not None  # bounded => the relevant bound exists
    p = (s * n0[0] / nn, s * n0[1] / nn)
    return (OPTIMAL, dot(obj, p), p)


def polytope_vertices(cons: Sequence[Constraint]) -> list[Point]:
    """Vertices (basic feasible points) of the polyhedron."""
    return basic_points(cons)


def _collinear(a: Point, b: Point, c: Point) -> bool:
    return cross(vsub(b, a), vsub(c, a)) == 0


def has_interior(cons: Sequence[Constraint]) -> bool:
    """Does the polyhedron have nonempty interior?

    A feasible point z0 is found first; the polyhedron has interior iff its
    intersection with a unit box around z0 has three non-collinear vertices
    (interior points of a convex set exist arbitrarily close to any point).
    """
    z0 = feasible_point(cons)
    if z0 is None:
        return False
    one = Fraction(1)
    box = [
        ((1, 0), -z0[0] + one),
        ((-1, 0), z0[0] + one),
        ((0, 1), -z0[1] + one),
        ((0, -1), z0[1] + one),
    ]
    verts = polytope_vertices(list(cons) + box)
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            for k in range(j + 1, len(verts)):
                if not _collinear(verts[i], verts[j], verts[k]):
                    return True
    return False


def centroid(points: Sequence[Point]) -> Point:
    n = len(points)
    sx = sum((p[0] for p in points), Fraction(0))
    sy = sum((p[1] for p in points), Fraction(0))
    return (sx / n, sy / n)


def region_meets_interior(region: Sequence[Constraint],
                          strict: Sequence[Constraint]) -> bool:
    """Does {region constraints} (a bounded region inside the domain) contain
    a point strictly satisfying all `strict` constraints?

    The region is the convex hull of its vertices; the centroid of the vertex
    set lies in the region's relative interior, and a supporting line of the
    region through the centroid would have to contain the whole region.  So
    the centroid is strictly inside unless the region lies on a boundary line.
    """
    verts = polytope_vertices(list(region) + list(strict))
    if not verts:
        return False
    c = centroid(verts)
    return all(satisfies(s, c, strict=True) for s in strict)


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Monotone-chain convex hull; returns CCW vertex list without repeats."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return list(pts)
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(vsub(lower[-1], lower[-2]), vsub(p, lower[-2])) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(vsub(upper[-1], upper[-2]), vsub(p, upper[-2])) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def hull_lattice_points(points: Sequence[Point]) -> list[Vec]:
    """All integer points inside the convex hull of `points`."""
    if not points:
        return []
    hull = convex_hull(points)
    if len(hull) == 1:
        p = hull[0]
        ok = p[0].denominator == 1 and p[1].denominator == 1
        return [(int(p[0]), int(p[1]))] if ok else []
    import math

    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_lo, x_hi = math.ceil(min(xs)), math.floor(max(xs))
    y_lo, y_hi = math.ceil(min(ys)), math.floor(max(ys))
    if len(hull) == 2:
        cons = _segment_constraints(hull[0], hull[1])
    else:
        cons = []
        m = len(hull)
        for i in range(m):
            a, b = hull[i], hull[(i + 1) % m]
            d = vsub(b, a)
            n = (-d[1], d[0])  # inward for CCW hull
            cons.append((n, -(n[0] * a[0] + n[1] * a[1])))
    out = []
    for x in range(x_lo, x_hi + 1):
        for y in range(y_lo, y_hi + 1):
            if all(n[0] * x + n[1] * y + a >= 0 for n, a in cons):
                out.append((x, y))
    return out


def _segment_constraints(a: Point, b: Point):
    d = vsub(b, a)
    n = (-d[1], d[0])
    return [
        (n, -(n[0] * a[0] + n[1] * a[1])),
        (vneg(n), n[0] * a[0] + n[1] * a[1]),
        (d, -(d[0] * a[0] + d[1] * a[1])),
        (vneg(d), d[0] * b[0] + d[1] * b[1]),
    ]


def polygon_area(vertices: Sequence[Point]) -> Fraction:
    """Shoelace area of a CCW (or CW, absolute value taken) vertex cycle."""
    n = len(vertices)
    if n < 3:
        return Fraction(0)
    s = Fraction(0)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        s += a[0] * b[1] - b[0] * a[1]
    return abs(s) / 2


def sort_ccw(points: Sequence[Point]) -> list[Point]:
    """Sort points counterclockwise around their centroid (exact comparator)."""
    pts = list(dict.fromkeys(points))
    if len(pts) <= 2:
        return pts
    c = centroid(pts)

    def half(p):
        d = vsub(p, c)
        # 0 for upper half (angle in [0, pi)), 1 for lower
        if d[1] > 0 or (d[1] == 0 and d[0] > 0):
            return 0
        return 1

    import functools

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return -1 if hp < hq else 1
        cr = cross(vsub(p, c), vsub(q, c))
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    return sorted(pts, key=functools.cmp_to_key(cmp))


def point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    """Exact squared distance from point p to segment [a, b]."""
    d = vsub(b, a)
    dd = dot(d, d)
    if dd == 0:
        w = vsub(p, a)
        return dot(w, w)
    t = Fraction(dot(vsub(p, a), d), 1) / dd
    if t < 0:
        t = Fraction(0)
    elif t > 1:
        t = Fraction(1)
    q = (a[0] + t * d[0], a[1] + t * d[1])
    w = vsub(p, q)
    return dot(w, w)


def floor_sqrt_fraction(x: Fraction) -> Fraction:
    """A rational lower bound for sqrt(x): isqrt(num*den)/den <= sqrt(x)."""
    if x < 0:
        raise ValueError("negative")
    import math

    return Fraction(math.isqrt(x.numerator * x.denominator), x.denominator)
