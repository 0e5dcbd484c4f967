"""Plane polynomials over Puiseux series, Newton polygons and their
regular subdivisions, and the curve file format.

The subdivision of the Newton polygon is induced by the heights
``h(i,j) = -val(c_ij)``: cells are the projections of the upper facets of
the lifted point set.  A curve is smooth when this subdivision is a
unimodular triangulation of the full triangle of its degree.

Exponents may be negative; local charts around a point of the curve are
polynomials on a shifted (possibly non-positive) support.
"""

from fractions import Fraction

from .errors import ParseError, TruncatedToZero, WrongDegree, WrongPolygon
from .puiseux import TruncatedPuiseux, format_series, parse_series

__all__ = [
    "PlanePolynomial",
    "Subdivision",
    "Cell",
    "regular_subdivision",
    "is_smooth",
    "assert_smooth",
    "parse_curve_file",
    "format_curve_file",
    "lattice_length",
    "convex_hull",
    "polygon_area2",
]


def _as_series(v):
    if isinstance(v, TruncatedPuiseux):
        return v
    if isinstance(v, str):
        return parse_series(v)
    return TruncatedPuiseux([(Fraction(0), v)])


class PlanePolynomial:
    """Polynomial sum of ``c_ij(t) * x^i y^j`` with series coefficients.

    Immutable mapping from integer exponent pairs to series.  Coefficients
    that are exactly zero are dropped; truncated-to-zero ones are kept
    (they still carry the information "valuation >= order").
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        clean = {}
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        for (i, j), c in items:
            c = _as_series(c)
            if c.is_exactly_zero():
                continue
            key = (int(i), int(j))
            if key in clean:
                c = clean[key] + c
            if c.is_exactly_zero():
                del clean[key]
            else:
                clean[key] = c
        self.coeffs = dict(sorted(clean.items()))

    def support(self):
        return tuple(k for k, c in self.coeffs.items() if c)

    def coefficient(self, i, j):
        return self.coeffs.get((int(i), int(j)), TruncatedPuiseux([]))

    def degree(self):
        return max(i + j for i, j in self.coeffs) if self.coeffs else 0

    def heights(self):
        """(i,j) -> -valuation(c_ij) over the visible support."""
        out = {}
        for (i, j), c in self.coeffs.items():
            v = c.valuation()
            if v is None:
                raise TruncatedToZero(
                    "coefficient of x^%d y^%d only known to be O(t^%s)" % (i, j, c.order)
                )
            out[(i, j)] = -v
        return out

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PlanePolynomial):
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return PlanePolynomial(out)

    def __neg__(self):
        return PlanePolynomial({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, PlanePolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, TruncatedPuiseux)):
            s = _as_series(other)
            return PlanePolynomial({k: c * s for k, c in self.coeffs.items()})
        if not isinstance(other, PlanePolynomial):
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                p = c1 * c2
                out[k] = out[k] + p if k in out else p
        return PlanePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = PlanePolynomial({(0, 0): 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, PlanePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    # -- calculus and substitution ------------------------------------

    def partial_x(self):
        return PlanePolynomial(
            {(i - 1, j): c * i for (i, j), c in self.coeffs.items() if i != 0}
        )

    def partial_y(self):
        return PlanePolynomial(
            {(i, j - 1): c * j for (i, j), c in self.coeffs.items() if j != 0}
        )

    def evaluate(self, sx, sy):
        """Value at series arguments; negative exponents invert the series."""
        sx, sy = _as_series(sx), _as_series(sy)
        powers = {}

        def power(s, k, tag):
            if (tag, k) not in powers:
                powers[(tag, k)] = s ** k if k >= 0 else s.inverse() ** (-k)
            return powers[(tag, k)]

        total = TruncatedPuiseux([])
        for (i, j), c in self.coeffs.items():
            total = total + c * power(sx, i, "x") * power(sy, j, "y")
        return total

    def scale_arguments(self, a, b):
        """Substitute x -> t^a x, y -> t^b y."""
        a, b = Fraction(a), Fraction(b)
        return PlanePolynomial(
            {(i, j): c.shift(a * i + b * j) for (i, j), c in self.coeffs.items()}
        )

    def shift_all(self, e):
        """Multiply the whole polynomial by t^e."""
        return PlanePolynomial({k: c.shift(e) for k, c in self.coeffs.items()})

    def monomial_transform(self, m, shift=(0, 0)):
        """Relabel exponents by the affine lattice map  v -> M v + shift.

        M = ((a, b), (c, d)) acts on column vectors (i, j).  The map must be
        injective on the support (|det| = 1 in all our uses)."""
        (a, b), (c, d) = m
        out = {}
        for (i, j), coeff in self.coeffs.items():
            k = (a * i + b * j + shift[0], c * i + d * j + shift[1])
            if k in out:
                raise ValueError("monomial transform not injective on support")
            out[k] = coeff
        return PlanePolynomial(out)

    def truncate(self, order):
        return PlanePolynomial({k: c.truncate(order) for k, c in self.coeffs.items()})

    def map_coefficients(self, f):
        return PlanePolynomial({k: f(c) for k, c in self.coeffs.items()})

    def __repr__(self):
        inner = ", ".join("(%d, %d): %r" % (i, j, str(c)) for (i, j), c in self.coeffs.items())
        return "PlanePolynomial({%s})" % inner


# -- lattice geometry helpers ----------------------------------------------


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def lattice_length(p, q):
    return _gcd(q[0] - p[0], q[1] - p[1])


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Corner points of the convex hull, counterclockwise (monotone chain).
    Collinear non-corner points are dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def polygon_area2(hull):
    s = 0
    for k in range(len(hull)):
        x1, y1 = hull[k]
        x2, y2 = hull[(k + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return abs(s)


class Cell:
    """One 2-cell of a regular subdivision.

    points: every support point on the facet (corners and marked interior),
    hull: its corners counterclockwise, plane: (alpha, beta, gamma) with
    h = alpha*i + beta*j + gamma on the facet and >= h elsewhere.
    """

    __slots__ = ("points", "hull", "plane")

    def __init__(self, points, plane):
        self.points = tuple(sorted(points))
        self.hull = convex_hull(self.points)
        self.plane = plane

    def area2(self):
        return polygon_area2(self.hull)

    def dual_vertex(self):
        return (-self.plane[0], -self.plane[1])

    def __repr__(self):
        return "Cell(%r)" % (self.hull,)


class Subdivision:
    """Regular subdivision of a Newton polygon induced by coefficient
    valuations.

    interior_edges: (p, q, cell_a, cell_b) for 1-cells shared by two cells,
    boundary_edges: (p, q, cell) for 1-cells on the polygon boundary, with
    p < q lexicographically.
    """

    def __init__(self, cells, hull):
        self.cells = cells
        self.hull = hull
        self.interior_edges = []
        self.boundary_edges = []
        seen = {}
        for idx, cell in enumerate(cells):
            corners = cell.hull
            n = len(corners)
            if n == 1:
                continue
            if n == 2:
                sides = [(corners[0], corners[1])]
            else:
                sides = [(corners[k], corners[(k + 1) % n]) for k in range(n)]
            for p, q in sides:
                key = (p, q) if p < q else (q, p)
                seen.setdefault(key, []).append(idx)
        for (p, q), owners in sorted(seen.items()):
            if len(owners) == 2:
                self.interior_edges.append((p, q, owners[0], owners[1]))
            elif len(owners) == 1:
                self.boundary_edges.append((p, q, owners[0]))
            else:
                raise ValueError("edge %r-%r shared by %d cells" % (p, q, len(owners)))

    def is_triangulation(self):
        return all(len(c.hull) == 3 and c.area2() == 1 for c in self.cells)


def _solve_plane(p1, p2, p3, h):
    # alpha*i + beta*j + gamma = h(p) for the three points; Cramer
    rows = [(Fraction(p[0]), Fraction(p[1]), Fraction(1), h[p]) for p in (p1, p2, p3)]
    det = (
        rows[0][0] * (rows[1][1] - rows[2][1])
        - rows[0][1] * (rows[1][0] - rows[2][0])
        + (rows[1][0] * rows[2][1] - rows[2][0] * rows[1][1])
    )
    if det == 0:
        return None
    def rep(col):
        m = [list(r[:3]) for r in rows]
        for k in range(3):
            m[k][col] = rows[k][3]
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[2][1] * m[1][2])
            - m[0][1] * (m[1][0] * m[2][2] - m[2][0] * m[1][2])
            + m[0][2] * (m[1][0] * m[2][1] - m[2][0] * m[1][1])
        )
    return rep(0) / det, rep(1) / det, rep(2) / det


def regular_subdivision(poly_or_heights):
    """Cells of the height-induced subdivision, exactly.

    Accepts a PlanePolynomial or a {(i,j): height} mapping.  Every subset of
    support points lying on a common upper plane becomes one cell; with all
    heights equal the result is the single cell spanned by the whole support.
    """
    if isinstance(poly_or_heights, PlanePolynomial):
        h = poly_or_heights.heights()
    else:
        h = {k: Fraction(v) for k, v in poly_or_heights.items()}
    pts = sorted(h)
    if not pts:
        raise WrongPolygon("empty support")
    hull = convex_hull(pts)
    if len(hull) <= 2:
        raise WrongPolygon("support is not two-dimensional: %r" % (hull,))
    found = {}
    n = len(pts)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                plane = _solve_plane(pts[a], pts[b], pts[c], h)
                if plane is None:
                    continue
                alpha, beta, gamma = plane
                members = []
                ok = True
                for p in pts:
                    val = alpha * p[0] + beta * p[1] + gamma
                    if val < h[p]:
                        ok = False
                        break
                    if val == h[p]:
                        members.append(p)
                if not ok:
                    continue
                key = frozenset(members)
                if key not in found:
                    found[key] = Cell(members, plane)
    cells = sorted(found.values(), key=lambda c: c.points)
    sub = Subdivision(cells, hull)
    total = sum(c.area2() for c in cells)
    if total != polygon_area2(hull):
        raise WrongPolygon("subdivision does not tile the polygon")
    return sub


def is_smooth(poly, degree=None):
    """True when the dual subdivision is a unimodular triangulation of the
    full triangle of the given degree (default: the polynomial's degree)."""
    try:
        assert_smooth(poly, degree)
    except (WrongPolygon, WrongDegree):
        return False
    return True


def assert_smooth(poly, degree=None):
    d = poly.degree() if degree is None else degree
    if degree is not None and poly.degree() != degree:
        raise WrongDegree("degree %d, expected %d" % (poly.degree(), degree))
    sub = regular_subdivision(poly)
    triangle = ((0, 0), (d, 0), (0, d))
    if tuple(sorted(sub.hull)) != tuple(sorted(triangle)):
        raise WrongPolygon(
            "Newton polygon %r is not the degree-%d triangle" % (sub.hull, d)
        )
    for cell in sub.cells:
        if len(cell.hull) != 3 or cell.area2() != 1 or len(cell.points) != 3:
            raise WrongPolygon("cell %r is not a unimodular triangle" % (cell.hull,))
    return sub


# -- curve files -----------------------------------------------------------


def parse_curve_file(text):
    """Read the ``i j : series`` format.

    Directive lines ``degree: d``, ``field: rational`` and
    ``truncation: e`` may precede the monomials; ``#`` starts a comment.
    Returns (PlanePolynomial, meta dict).
    """
    coeffs = {}
    meta = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'i j : series' or 'key: value'", line=lineno)
        head, _, tail = line.partition(":")
        head = head.strip()
        tail = tail.strip()
        if head in ("degree", "field", "truncation"):
            if head == "degree":
                meta["degree"] = int(tail)
            elif head == "field":
                if tail != "rational":
                    raise ParseError("unsupported field %r" % tail, line=lineno)
                meta["field"] = tail
            else:
                meta["truncation"] = Fraction(tail)
            continue
        parts = head.split()
        if len(parts) != 2:
            raise ParseError("expected two exponents before ':'", line=lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("bad exponents %r" % head, line=lineno)
        if (i, j) in coeffs:
            raise ParseError("duplicate monomial %d %d" % (i, j), line=lineno)
        try:
            coeffs[(i, j)] = parse_series(tail)
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno)
    if not coeffs:
        raise ParseError("no monomials in curve file")
    if "truncation" in meta:
        coeffs = {k: c.truncate(meta["truncation"]) for k, c in coeffs.items()}
    poly = PlanePolynomial(coeffs)
    if "degree" in meta and poly.degree() != meta["degree"]:
        raise WrongDegree(
            "file says degree %d but monomials give %d" % (meta["degree"], poly.degree())
        )
    return poly, meta


def format_curve_file(poly, meta=None):
    """Canonical curve file: directives, then monomials sorted by (i, j)."""
    lines = []
    meta = meta or {}
    if "degree" in meta:
        lines.append("degree: %d" % meta["degree"])
    if "field" in meta:
        lines.append("field: %s" % meta["field"])
    if "truncation" in meta:
        lines.append("truncation: %s" % meta["truncation"])
    for (i, j), c in sorted(poly.coeffs.items()):
        lines.append("%d %d : %s" % (i, j, format_series(c)))
    return "\n".join(lines) + "\n"
