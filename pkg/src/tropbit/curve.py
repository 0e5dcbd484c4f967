"""Tropical plane curves and their intersections with tropical lines.

A curve is the dual complex of the regular subdivision of its Newton
polygon: one vertex per 2-cell at (-alpha, -beta) of the cell's lifted
plane, bounded edges dual to interior 1-cells, rays dual to boundary
1-cells with outward normal directions.  Edge weights are lattice lengths
of the dual 1-cells.

Stable intersection follows the definition: displace the second curve by
eps * v for a direction v transversal to everything, intersect, and let
eps go to 0.  Since all pieces are straight, every crossing parameter is
an affine function of eps, so membership "for all small eps > 0" is a
lexicographic sign test and no limit is ever taken numerically.
"""

from fractions import Fraction

from .errors import ParallelDirections
from .newton import PlanePolynomial, lattice_length, regular_subdivision

__all__ = [
    "TropicalCurve",
    "Piece",
    "dual_curve",
    "line_curve",
    "stable_intersection",
    "intersection_multiplicity_at",
    "set_intersection_components",
    "classify_components",
    "is_bitangent",
    "TangencyComponent",
    "LINE_END_DIRECTIONS",
]

LINE_END_DIRECTIONS = ((-1, 0), (0, -1), (1, 1))


def _frac_point(p):
    return (Fraction(p[0]), Fraction(p[1]))


def _primitive(v):
    """Primitive integer vector parallel to v (components may be rational)."""
    from math import gcd

    a, b = Fraction(v[0]), Fraction(v[1])
    if a == 0 and b == 0:
        return (0, 0)
    den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    ia, ib = int(a * den), int(b * den)
    g = gcd(abs(ia), abs(ib))
    return (ia // g, ib // g)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


class Piece:
    """A bounded edge (b is a point) or ray (b is None) of a curve."""

    __slots__ = ("a", "b", "direction", "weight", "dual", "smax")

    def __init__(self, a, b, direction, weight, dual):
        self.a = _frac_point(a)
        self.b = _frac_point(b) if b is not None else None
        self.direction = direction
        self.weight = weight
        self.dual = dual
        if self.b is None:
            self.smax = None
        else:
            dx, dy = self.b[0] - self.a[0], self.b[1] - self.a[1]
            self.smax = dx / direction[0] if direction[0] else dy / direction[1]

    def point_at(self, s):
        return (self.a[0] + s * self.direction[0], self.a[1] + s * self.direction[1])

    def param_of(self, p):
        """Parameter of a point assumed on the supporting line."""
        if self.direction[0]:
            return (p[0] - self.a[0]) / self.direction[0]
        return (p[1] - self.a[1]) / self.direction[1]

    def on_line(self, p):
        return _cross(self.direction, (p[0] - self.a[0], p[1] - self.a[1])) == 0

    def contains(self, p):
        if not self.on_line(p):
            return False
        s = self.param_of(p)
        return s >= 0 and (self.smax is None or s <= self.smax)

    def __repr__(self):
        if self.b is None:
            return "Piece(%s -> dir %s, w=%d)" % (self.a, self.direction, self.weight)
        return "Piece(%s -- %s, w=%d)" % (self.a, self.b, self.weight)


class TropicalCurve:
    """Dual curve of a regular subdivision."""

    def __init__(self, subdivision):
        self.subdivision = subdivision
        self.cell_vertex = [c.dual_vertex() for c in subdivision.cells]
        self.pieces = []
        for p, q, ca, cb in subdivision.interior_edges:
            va, vb = self.cell_vertex[ca], self.cell_vertex[cb]
            d = _primitive((vb[0] - va[0], vb[1] - va[1]))
            self.pieces.append(Piece(va, vb, d, lattice_length(p, q), (p, q)))
        for p, q, ca in subdivision.boundary_edges:
            va = self.cell_vertex[ca]
            d = (q[1] - p[1], -(q[0] - p[0]))
            d = _primitive(d)
            # orient outward: the dual ray points away from the polygon
            inner = None
            for r in subdivision.cells[ca].points:
                if _cross((q[0] - p[0], q[1] - p[1]), (r[0] - p[0], r[1] - p[1])) != 0:
                    inner = r
                    break
            if inner is not None and (
                d[0] * (inner[0] - p[0]) + d[1] * (inner[1] - p[1]) > 0
            ):
                d = (-d[0], -d[1])
            self.pieces.append(Piece(va, None, d, lattice_length(p, q), (p, q)))
        self.vertices = sorted(set(self.cell_vertex))

    def degree(self):
        return max(i + j for c in self.subdivision.cells for (i, j) in c.points)

    def cell_of_vertex(self, v):
        v = _frac_point(v)
        for idx, w in enumerate(self.cell_vertex):
            if w == v:
                return self.subdivision.cells[idx]
        return None

    def pieces_at(self, p):
        p = _frac_point(p)
        return [e for e in self.pieces if e.contains(p)]

    def contains(self, p):
        return bool(self.pieces_at(p))


def dual_curve(poly):
    return TropicalCurve(regular_subdivision(poly))


def curve_from_heights(heights):
    return TropicalCurve(regular_subdivision(heights))


def line_curve(vx, vy):
    """The tropical line with vertex (vx, vy): ends (-1,0), (0,-1), (1,1)."""
    vx, vy = Fraction(vx), Fraction(vy)
    c = curve_from_heights({(0, 0): vy, (1, 0): vy - vx, (0, 1): Fraction(0)})
    c.vertex = (vx, vy)
    return c


# -- stable intersection ---------------------------------------------------


def _pick_displacement(c1, c2):
    slopes = set()
    for c in (c1, c2):
        for e in c.pieces:
            if e.direction[0] != 0:
                slopes.add(Fraction(e.direction[1], e.direction[0]))
    k = 1
    while Fraction(k) in slopes:
        k += 1
    return (Fraction(1), Fraction(k))


def _lex_pos(pair):
    return pair[0] > 0 or (pair[0] == 0 and pair[1] > 0)


def stable_intersection(c1, c2, displacement=None):
    """Points of the stable intersection with multiplicities.

    Returns a sorted list of ((x, y), mult).  The result is independent of
    the displacement; passing one is for tests.  A displacement parallel to
    any piece raises ParallelDirections.
    """
    v = displacement if displacement is not None else _pick_displacement(c1, c2)
    v = _frac_point(v)
    for c in (c1, c2):
        for e in c.pieces:
            if _cross(v, e.direction) == 0:
                raise ParallelDirections("displacement %r parallel to %r" % (v, e))
    hits = {}
    for e in c1.pieces:
        de = e.direction
        for f in c2.pieces:
            df = f.direction
            den = _cross(de, df)
            if den == 0:
                continue
            w0 = (f.a[0] - e.a[0], f.a[1] - e.a[1])
            # e.a + s*de = f.a + eps*v + u*df;  s = s0 + s1*eps, u = u0 + u1*eps
            s0 = _cross(w0, df) / den
            s1 = _cross(v, df) / den
            u0 = -_cross(de, w0) / den
            u1 = -_cross(de, v) / den
            # 0 < s(eps) and (s(eps) < smax) for all small eps > 0, same for u
            if not _lex_pos((s0, s1)):
                continue
            if e.smax is not None and not _lex_pos((e.smax - s0, -s1)):
                continue
            if not _lex_pos((u0, u1)):
                continue
            if f.smax is not None and not _lex_pos((f.smax - u0, -u1)):
                continue
            p = e.point_at(s0)
            m = e.weight * f.weight * abs(den)
            hits[p] = hits.get(p, 0) + m
    return sorted(hits.items())


def intersection_multiplicity_at(c1, c2, p):
    p = _frac_point(p)
    for q, m in stable_intersection(c1, c2):
        if q == p:
            return m
    return 0


# -- set-theoretic intersection and tangency components --------------------


def _intersect_pieces(e, f):
    """Closed intersection of two pieces.

    None, ("point", p), ("segment", p, q) or ("ray", p, dir)."""
    de, df = e.direction, f.direction
    den = _cross(de, df)
    w0 = (f.a[0] - e.a[0], f.a[1] - e.a[1])
    if den != 0:
        s = _cross(w0, df) / den
        u = -_cross(de, w0) / den
        if s < 0 or (e.smax is not None and s > e.smax):
            return None
        if u < 0 or (f.smax is not None and u > f.smax):
            return None
        return ("point", e.point_at(s))
    if _cross(de, w0) != 0:
        return None
    # collinear: intersect parameter ranges on e
    sf0 = e.param_of(f.a)
    same_dir = de == df
    if f.smax is None:
        lo, hi = (sf0, None) if same_dir else (None, sf0)
    else:
        sf1 = e.param_of(f.b)
        lo, hi = min(sf0, sf1), max(sf0, sf1)
    lo = Fraction(0) if lo is None else max(lo, Fraction(0))
    if e.smax is not None:
        hi = e.smax if hi is None else min(hi, e.smax)
    if hi is not None and lo > hi:
        return None
    if hi is None:
        return ("ray", e.point_at(lo), de)
    if lo == hi:
        return ("point", e.point_at(lo))
    return ("segment", e.point_at(lo), e.point_at(hi))


def _element_points(el):
    if el[0] == "point":
        return [el[1]]
    if el[0] == "segment":
        return [el[1], el[2]]
    return [el[1]]


def _element_contains(el, p):
    if el[0] == "point":
        return el[1] == p
    if el[0] == "segment":
        a, b = el[1], el[2]
        d = (b[0] - a[0], b[1] - a[1])
    else:
        a, d = el[1], el[2]
    w = (p[0] - a[0], p[1] - a[1])
    if _cross(d, w) != 0:
        return False
    s = w[0] / d[0] if d[0] else w[1] / d[1]
    if el[0] == "segment":
        return 0 <= s <= 1
    return s >= 0


def _elements_touch(e1, e2):
    for p in _element_points(e1):
        if _element_contains(e2, p):
            return True
    for p in _element_points(e2):
        if _element_contains(e1, p):
            return True
    return False


class TangencyComponent:
    """One connected component of the set-theoretic intersection, with its
    stable multiplicity and classification."""

    __slots__ = (
        "elements",
        "mult",
        "kind",
        "anchor",
        "curve_vertices",
        "has_line_vertex",
        "overlap_ends",
        "unbounded",
        "segment",
        "stable_points",
        "curve_edges",
        "line_ends",
    )

    def __init__(self, elements):
        self.elements = elements
        self.mult = 0
        self.kind = None
        self.anchor = None
        self.curve_vertices = ()
        self.has_line_vertex = False
        self.overlap_ends = ()
        self.unbounded = any(el[0] == "ray" for el in elements)
        self.segment = None
        self.stable_points = []
        self.curve_edges = ()
        self.line_ends = ()

    def contains(self, p):
        return any(_element_contains(el, p) for el in self.elements)

    def is_point(self):
        return all(el[0] == "point" for el in self.elements)

    def point(self):
        return self.elements[0][1]

    def __repr__(self):
        return "TangencyComponent(%s, mult=%d, at %s)" % (self.kind, self.mult, self.anchor)


def set_intersection_components(curve, line):
    """Connected components of curve INTERSECT line, with bookkeeping of
    which pieces produced each element."""
    raw = []
    for e in curve.pieces:
        for f in line.pieces:
            el = _intersect_pieces(e, f)
            if el is not None:
                raw.append((el, e, f))
    n = len(raw)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    for i in range(n):
        for j in range(i + 1, n):
            if _elements_touch(raw[i][0], raw[j][0]):
                union(i, j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    comps = []
    for members in groups.values():
        comp = TangencyComponent([raw[i][0] for i in members])
        comp.curve_edges = tuple(raw[i][1] for i in members)
        comp.line_ends = tuple(raw[i][2] for i in members)
        comps.append(comp)
    comps.sort(key=lambda c: min(_element_points(el)[0] for el in c.elements))
    return comps


def _line_end_index(direction):
    d = _primitive(direction)
    for k, led in enumerate(LINE_END_DIRECTIONS):
        if d == led or d == (-led[0], -led[1]):
            return k
    return None


def classify_components(curve, line):
    """Classify each intersection component.

    kind is one of "case1" (edge-end crossing), "case2" (curve vertex on an
    end), "case3" (overlap segment on an end), "case4" (line vertex on an
    edge), "case5" (line vertex at a curve vertex), "star" (line vertex on
    the curve with overlap along all three ends), "segment_through_vertex"
    (overlap reaching the line vertex without being a star).
    """
    comps = set_intersection_components(curve, line)
    stable = stable_intersection(curve, line)
    for p, m in stable:
        for comp in comps:
            if comp.contains(p):
                comp.mult += m
                comp.stable_points.append((p, m))
                break
    lv = _frac_point(line.vertex)
    curve_vertex_set = set(curve.vertices)
    for comp in comps:
        pts = set()
        for el in comp.elements:
            pts.update(_element_points(el))
        comp.curve_vertices = tuple(sorted(p for p in pts if p in curve_vertex_set))
        # interior curve vertices of overlap segments count too
        for v in curve.vertices:
            if v not in pts and comp.contains(v):
                comp.curve_vertices += (v,)
        comp.has_line_vertex = comp.contains(lv)
        if comp.has_line_vertex:
            dirs = set()
            for el in comp.elements:
                if el[0] == "point":
                    continue
                a = el[1]
                b = el[2] if el[0] == "segment" else (el[1][0] + el[2][0], el[1][1] + el[2][1])
                d = None
                if a == lv:
                    d = (b[0] - a[0], b[1] - a[1]) if el[0] == "segment" else el[2]
                elif el[0] == "segment" and b == lv:
                    d = (a[0] - b[0], a[1] - b[1])
                elif _element_contains(el, lv):
                    # vertex interior to the element: both directions
                    d = (b[0] - a[0], b[1] - a[1]) if el[0] == "segment" else el[2]
                    k = _line_end_index((d[0], d[1]))
                    if k is not None:
                        dirs.add(k)
                    d = (-d[0], -d[1])
                if d is not None:
                    k = _line_end_index(d)
                    if k is not None:
                        dirs.add(k)
            comp.overlap_ends = tuple(sorted(dirs))
            if len(comp.overlap_ends) == 3:
                comp.kind = "star"
            elif lv in curve_vertex_set:
                comp.kind = "case5"
            elif comp.overlap_ends:
                comp.kind = "segment_through_vertex"
            else:
                comp.kind = "case4"
            comp.anchor = lv
        elif comp.is_point():
            p = comp.point()
            comp.anchor = p
            comp.kind = "case2" if p in curve_vertex_set else "case1"
        else:
            segs = [el for el in comp.elements if el[0] != "point"]
            comp.kind = "case3"
            if any(s[0] == "ray" for s in segs):
                comp.unbounded = True
                comp.anchor = min(s[1] for s in segs)
            else:
                ends = []
                for s in segs:
                    ends.extend([s[1], s[2]])
                lo, hi = min(ends), max(ends)
                comp.segment = (lo, hi)
                comp.anchor = ((lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2)
    return comps


def is_bitangent(curve, line):
    """A line is bitangent when every intersection component has even
    stable multiplicity (the multiset of component degrees is then {2, 2}
    or {4} for a quartic)."""
    comps = classify_components(curve, line)
    return all(c.mult % 2 == 0 for c in comps)
