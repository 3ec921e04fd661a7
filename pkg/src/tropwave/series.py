"""Tropical series on convex rational domains.

A series is the pointwise min of finitely many affine monomials
``i*x + j*y + a_ij`` with integer slopes, nonnegative on the domain and
vanishing on its boundary.  Internally we keep the *small canonical form*:
the coefficient of every stored monomial is minimal (``sup(f - v.z)`` over
the domain) and every stored monomial actually touches the function at some
interior point.  The full canonical form over all of Z^2 is virtual and
computed coefficient-by-coefficient on demand.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from . import exactlp as lp
from .exactlp import Point, Vec, cross, dot, vsub
from .geometry import (ConvexDomain, QPolygon, SupportOracle, primitive,
                       support_coeff)


class SeriesError(Exception):
    pass


class OutsideDomain(SeriesError):
    pass


class NotAdmissible(SeriesError):
    pass


class UnboundedMonomial(SeriesError):
    pass


class DomainMismatch(SeriesError):
    pass


class BoundaryMismatch(SeriesError):
    pass


class NegativeIncrement(SeriesError):
    pass


Support = Dict[Vec, Fraction]


class TropicalSeries:
    """Finite sparse monomial map over a domain, in small canonical form.

    Construct with ``canonical=True`` only when the support is already known
    to be a small canonical form (internal fast path); otherwise the
    presentation is renormalized.
    """

    def __init__(self, domain: ConvexDomain, support: Support, *,
                 canonical: bool = False, truncated: bool = False):
        self.domain = domain
        self.truncated = truncated
        support = {tuple(v): Fraction(a) for v, a in support.items()}
        if not support:
            raise SeriesError("series needs at least one monomial")
        if isinstance(domain, SupportOracle):
            # Oracle domains carry presentations verbatim; the boundary
            # cannot be certified, so the series is flagged truncated.
            self.support = dict(sorted(support.items()))
            self.truncated = True
            self._cells = None
            return
        if not domain.bounded:
            raise SeriesError("series require a bounded polygon domain")
        if canonical:
            self.support = dict(sorted(support.items()))
        else:
            self.support = _small_canonical_terms(domain, support)
        self._cells: Optional[dict] = None
        self._complex_vertices = None
        self._quasi_degree = None

    # -- basics ----------------------------------------------------------

    def terms(self):
        return self.support.items()

    def __call__(self, z: Point) -> Fraction:
        return evaluate(self, z)

    def __eq__(self, other):
        return (isinstance(other, TropicalSeries)
                and self.domain == other.domain
                and self.support == other.support)

    def __repr__(self):
        parts = ", ".join(f"{v}:{a}" for v, a in self.support.items())
        return f"TropicalSeries({parts})"

    # -- cached geometry ---------------------------------------------------

    def cell_constraints(self, v: Vec) -> list:
        """Half-plane constraints of the closed dominance region of v.

        Constraints already satisfied on the whole domain (checked at the
        domain vertices, exact by convexity) are dropped up front.
        """
        cons = self.domain.constraints()
        av = self.support[v]
        verts = self.domain.vertices
        for w, aw in self.support.items():
            if w == v:
                continue
            n = vsub(w, v)
            a = aw - av
            if min(dot(n, z) + a for z in verts) < 0:
                cons.append((n, a))
        return cons

    def cells(self) -> dict:
        """Monomial -> CCW vertex list of its (possibly degenerate) region."""
        if self._cells is None:
            out = {}
            for v in self.support:
                verts = lp.polytope_vertices(self.cell_constraints(v))
                out[v] = lp.sort_ccw(verts)
            self._cells = out
        return self._cells

    def complex_vertices(self) -> list[Point]:
        """All vertices of the linearity decomposition (and the domain)."""
        if self._complex_vertices is None:
            seen = {}
            for verts in self.cells().values():
                for p in verts:
                    seen[p] = True
            self._complex_vertices = list(seen)
        return self._complex_vertices


def evaluate(f: TropicalSeries, z: Point) -> Fraction:
    z = (Fraction(z[0]), Fraction(z[1]))
    if isinstance(f.domain, QPolygon) and not f.domain.contains(z):
        raise OutsideDomain(f"{z} is outside the domain")
    return min(dot(v, z) + a for v, a in f.support.items())


def zero_series(domain: ConvexDomain) -> TropicalSeries:
    return TropicalSeries(domain, {(0, 0): Fraction(0)}, canonical=True)


# -- small canonical form -------------------------------------------------


def _side_vanishing_multiplier(side_hp, term: Tuple[Vec, Fraction]) -> Optional[int]:
    """If the monomial vanishes identically on the side's line, return its
    multiplier m >= 0 with exponent m * n(S); otherwise None."""
    v, a = term
    n = side_hp.n
    if v == (0, 0):
        return 0 if a == 0 else None
    if cross(v, n) != 0 or dot(v, n) <= 0:
        return None
    m = Fraction(dot(v, n), dot(n, n))
    if m.denominator != 1:
        return None
    # vanishing on the line n.z + a_side = 0 means a == m * a_side
    return int(m) if a == m * side_hp.a else None


def _presentation_side_degrees(domain: QPolygon, terms: Support) -> Dict[Vec, int]:
    """Per side (keyed by primitive normal), the smallest multiplier of a
    vanishing monomial present in the presentation; raises if a side has
    none (the function would not vanish there)."""
    out: Dict[Vec, int] = {}
    for hp, _, _ in domain.sides():
        ms = [m for m in (_side_vanishing_multiplier(hp, t) for t in terms.items())
              if m is not None]
        if not ms:
            raise BoundaryMismatch(f"no monomial vanishes on side {hp.n}")
        out[hp.n] = min(ms)
    return out


def _candidate_hull(domain: QPolygon, degrees: Dict[Vec, int]) -> list[Vec]:
    """Lattice points of conv{m(S) * n(S)}; the small support of any series
    with side degrees <= m(S) lies inside this hull."""
    pts = [(Fraction(m * n[0]), Fraction(m * n[1])) for n, m in degrees.items()]
    pts.append((Fraction(0), Fraction(0)))
    return lp.hull_lattice_points(pts)


def _values_at(terms: Support, pts: Sequence[Point]) -> list[Fraction]:
    return [min(dot(v, p) + a for v, a in terms.items()) for p in pts]


def _small_canonical_terms(domain: QPolygon, terms: Support) -> Support:
    """Renormalize a finite presentation to the small canonical form.

    The presentation must define a valid series: nonnegative (checked at the
    domain vertices, where the concave min attains its minimum) and vanishing
    on every side (a vanishing monomial per side must be present).

    A candidate stays iff its canonical affine touches the function at an
    interior point.  The touching set is the argmax of a concave piecewise
    linear function, hence the convex hull of the attaining complex vertices;
    it meets the open interior iff the centroid of those attainers does (a
    supporting boundary line through the centroid would contain them all).
    """
    for p in domain.vertices:
        if min(dot(v, p) + a for v, a in terms.items()) < 0:
            raise SeriesError("presentation is negative on the domain")
    degrees = _presentation_side_degrees(domain, terms)
    candidates = _candidate_hull(domain, degrees)

    # vertices of the presentation's linearity complex
    probe = TropicalSeries(domain, terms, canonical=True)
    verts = probe.complex_vertices()
    vals = _values_at(terms, verts)

    kept: Support = {}
    for u in candidates:
        gaps = [val - dot(u, p) for p, val in zip(verts, vals)]
        b = max(gaps)
        attain = [p for p, gap in zip(verts, gaps) if gap == b]
        cx = sum((p[0] for p in attain), Fraction(0)) / len(attain)
        cy = sum((p[1] for p in attain), Fraction(0)) / len(attain)
        if domain.contains((cx, cy), strict=True):
            kept[u] = b
    return dict(sorted(kept.items()))


def make_series(domain: ConvexDomain, support: Support) -> TropicalSeries:
    """Public constructor: renormalizes the presentation."""
    return TropicalSeries(domain, support)


# -- the spec operations ---------------------------------------------------


def distance_function(domain: ConvexDomain) -> TropicalSeries:
    """The weighted distance function: inf over nonzero monomials of the
    minimal affine form nonnegative on the domain."""
    from .geometry import is_admissible

    if not is_admissible(domain):
        raise NotAdmissible("domain is not admissible")
    if isinstance(domain, SupportOracle):
        terms = {v: -c for v, c in domain.support_values() if v != (0, 0)}
        return TropicalSeries(domain, terms, truncated=True)
    degrees = {hp.n: 1 for hp in domain.halfplanes}
    cands = _candidate_hull(domain, degrees)
    terms: Support = {}
    for v in cands:
        if v == (0, 0):
            continue
        c = support_coeff(domain, v)
        terms[v] = -c
    return TropicalSeries(domain, terms)


def canonical_coefficient(f: TropicalSeries, v: Vec) -> Fraction:
    """sup over the domain of (f - v.z): the canonical-form coefficient."""
    v = tuple(v)
    if isinstance(f.domain, SupportOracle) or not isinstance(f.domain, QPolygon):
        raise SeriesError("canonical coefficients require a polygon domain")
    if support_coeff(f.domain, v) is None:
        raise UnboundedMonomial(f"{v} has no finite support coefficient")
    if v in f.support:
        return f.support[v]
    verts = f.complex_vertices()
    vals = _values_at(f.support, verts)
    return max(val - dot(v, p) for p, val in zip(verts, vals))


def rho(f: TropicalSeries, g: TropicalSeries) -> Fraction:
    """sup over the union of small supports of coefficient differences,
    missing coefficients filled canonically."""
    if f.domain != g.domain:
        raise DomainMismatch("series live on different domains")
    best = Fraction(0)
    for v in set(f.support) | set(g.support):
        av = canonical_coefficient(f, v)
        bv = canonical_coefficient(g, v)
        best = max(best, abs(av - bv))
    return best


def quasi_degree(f: TropicalSeries) -> Dict[Vec, int]:
    """Per side (keyed by primitive inward normal): the multiplier of the
    monomial dominating near that side.  Zero only for the zero series."""
    if f._quasi_degree is None:
        if not isinstance(f.domain, QPolygon):
            raise SeriesError("quasi-degree requires a polygon domain")
        f._quasi_degree = _presentation_side_degrees(f.domain, f.support)
    return dict(f._quasi_degree)


def is_nice(f: TropicalSeries) -> bool:
    """Unimodular polygon and quasi-degree with isolated >1 sides."""
    from .geometry import is_unimodular

    if not isinstance(f.domain, QPolygon):
        raise SeriesError("niceness requires a polygon domain")
    if not is_unimodular(f.domain):
        return False
    deg = quasi_degree(f)
    sides = [hp.n for hp in f.domain.halfplanes]  # sorted by angle = cyclic order
    k = len(sides)
    for i, n in enumerate(sides):
        if deg[n] > 1:
            left = deg[sides[(i - 1) % k]]
            right = deg[sides[(i + 1) % k]]
            if left != 1 or right != 1:
                return False
    return True


def add_monomial(f: TropicalSeries, v: Vec, c: Fraction) -> TropicalSeries:
    """Raise the canonical coefficient of v by c >= 0 and renormalize.

    Candidates for the new small support are the lattice points of the
    quasi-degree hull of a finite upper envelope of the result (the bumped
    small form plus, per side, the next vanishing multiple); coefficients
    come from the canonical form of f with only v bumped.
    """
    v = tuple(v)
    c = Fraction(c)
    if c < 0:
        raise NegativeIncrement("increment must be nonnegative")
    if not isinstance(f.domain, QPolygon):
        raise SeriesError("add_monomial requires a polygon domain")
    if c == 0:
        return f
    a_v = canonical_coefficient(f, v)

    envelope: Support = dict(f.support)
    envelope[v] = a_v + c
    old_degrees = _presentation_side_degrees(f.domain, f.support)
    for hp, _, _ in f.domain.sides():
        m = _side_vanishing_multiplier(hp, (v, a_v))
        if m is not None and m == old_degrees[hp.n]:
            nxt = ((m + 1) * hp.n[0], (m + 1) * hp.n[1])
            envelope.setdefault(nxt, (m + 1) * hp.a)
    degrees = _presentation_side_degrees(f.domain, envelope)
    candidates = _candidate_hull(f.domain, degrees)

    terms: Support = {}
    for u in candidates:
        terms[u] = a_v + c if u == v else canonical_coefficient(f, u)
    if v not in terms:
        terms[v] = a_v + c
    return TropicalSeries(f.domain, terms)


def tropical_product(f: TropicalSeries, g: TropicalSeries) -> TropicalSeries:
    """Pointwise sum (min-plus product) of two series on the same domain."""
    if f.domain != g.domain:
        raise DomainMismatch("series live on different domains")
    terms: Support = {}
    for u, a in f.support.items():
        for w, b in g.support.items():
            key = (u[0] + w[0], u[1] + w[1])
            val = a + b
            if key not in terms or val < terms[key]:
                terms[key] = val
    return TropicalSeries(f.domain, terms)


def clamp(f: TropicalSeries, level: Fraction) -> TropicalSeries:
    """min(f, level): adds the constant monomial at the given level."""
    terms = dict(f.support)
    level = Fraction(level)
    if (0, 0) not in terms or terms[(0, 0)] > level:
        terms[(0, 0)] = level
    return TropicalSeries(f.domain, terms)
