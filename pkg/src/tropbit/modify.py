"""Linear re-embeddings of plane curves and the coefficient cancellation search.

Substituting z = y + m (degenerate line) or z = y + n*x + m (line with a
vertex) re-embeds a plane curve; projecting back out gives a new plane
polynomial whose Newton data can differ from the generic prediction.  The
searches below tune m (and n) order by order until designated coefficients
drop below their generic valuation, which is what exposes hidden tangency
structure.
"""

from fractions import Fraction

from .errors import NonGenericTie, TruncatedToZero
from .newton import PlanePolynomial
from .puiseux import TruncatedPuiseux, constant, t_power


def _as_tp(v):
    if isinstance(v, TruncatedPuiseux):
        return v
    return constant(v)


def _substitute_second(q, sub):
    """Replace y by the polynomial ``sub`` (written in the target variables)."""
    pairs = []
    powers = {0: PlanePolynomial({(0, 0): 1})}
    for (i, j), c in q.coeffs.items():
        if j < 0:
            raise ValueError("cannot substitute into negative y-exponent")
        while max(powers) < j:
            k = max(powers)
            powers[k + 1] = powers[k] * sub
        for (s, k2), d in (powers[j] * c).coeffs.items():
            pairs.append(((i + s, k2), d))
    return PlanePolynomial(pairs)


def _substitute_first(q, sub):
    """Replace x by ``sub``; the old y-exponent becomes the first index."""
    pairs = []
    powers = {0: PlanePolynomial({(0, 0): 1})}
    for (i, j), c in q.coeffs.items():
        if i < 0:
            raise ValueError("cannot substitute into negative x-exponent")
        while max(powers) < i:
            k = max(powers)
            powers[k + 1] = powers[k] * sub
        for (s, k2), d in (powers[i] * c).coeffs.items():
            pairs.append(((s + j, k2), d))
    return PlanePolynomial(pairs)


def reembed_I(q, m):
    """Project the re-embedding along z = y + m, i.e. substitute y -> z - m."""
    m = _as_tp(m)
    sub = PlanePolynomial({(0, 1): 1, (0, 0): -m})
    return _substitute_second(q, sub)


def reembed_II_xz(q, n, m):
    """Only the (x, z)-projection of the re-embedding along z = y + n*x + m."""
    n, m = _as_tp(n), _as_tp(m)
    sub = PlanePolynomial({(0, 1): 1, (1, 0): -n, (0, 0): -m})
    return _substitute_second(q, sub)


def reembed_II(q, n, m):
    """Both projections for z = y + n*x + m.

    Returns (q_xz, q_yz): q_xz = q(x, z - n*x - m) indexed by (x, z), and
    q_yz = q((z - y - m)/n, y) indexed by (y, z).
    """
    n, m = _as_tp(n), _as_tp(m)
    q_xz = reembed_II_xz(q, n, m)
    inv = n.inverse() if isinstance(n, TruncatedPuiseux) else None
    sub = PlanePolynomial({(0, 1): inv, (1, 0): -inv, (0, 0): -(m * inv)})
    q_yz = _substitute_first(q, sub)
    return q_xz, q_yz


def expected_valuations(q, kind, val_m=0, val_n=0):
    """Generic lower bound for each projected coefficient's valuation.

    Every source term x^i y^j spreads out under the substitution: in kind
    "I" it reaches (i, k) for 0 <= k <= j, in kind "xz" it reaches
    (i+s, k) for s+k <= j, and in kind "yz" it reaches (j+s, k) for
    s+k <= i.  The bound is the minimum of source valuation plus the cost
    in powers of m and n along each route.
    """
    val_m, val_n = Fraction(val_m), Fraction(val_n)
    out = {}

    def feed(key, v):
        if key not in out or v < out[key]:
            out[key] = v

    for (i, j), c in q.coeffs.items():
        v = c.valuation()
        if v is None:
            v = c.order
        if kind == "I":
            for k in range(j + 1):
                feed((i, k), v + (j - k) * val_m)
        elif kind == "xz":
            for s in range(j + 1):
                for k in range(j - s + 1):
                    feed((i + s, k), v + s * val_n + (j - k - s) * val_m)
        elif kind == "yz":
            for s in range(i + 1):
                for k in range(i - s + 1):
                    feed((j + s, k), v - i * val_n + (i - k - s) * val_m)
        else:
            raise ValueError("kind must be 'I', 'xz' or 'yz'")
    return out


def find_cancellations(q, projected, kind, val_m=0, val_n=0):
    """Lattice points whose projected coefficient beats the generic bound."""
    expected = expected_valuations(q, kind, val_m, val_n)
    out = []
    for key, bound in sorted(expected.items()):
        c = projected.coefficient(*key)
        v = c.valuation()
        if v is None:
            v = c.order
        if v is None or v > bound:
            out.append(key)
    return tuple(out)


class Reembedding:
    """A chosen lift of the line together with its projections.

    kind "I" holds m and the single projection in ``q_xz``; kind "II" holds
    m, n and both projections.  ``cancellations`` lists the lattice points
    of the primary projection whose coefficient dropped below the generic
    valuation bound.
    """

    __slots__ = ("kind", "m", "n", "q_xz", "q_yz", "cancellations")

    def __init__(self, kind, m, n, q_xz, q_yz, cancellations):
        self.kind = kind
        self.m = m
        self.n = n
        self.q_xz = q_xz
        self.q_yz = q_yz
        self.cancellations = tuple(cancellations)

    def __repr__(self):
        return "Reembedding(kind=%r, m=%s, n=%s, cancellations=%r)" % (
            self.kind,
            self.m,
            self.n,
            self.cancellations,
        )


def make_reembedding(q, m, n=None):
    m = _as_tp(m)
    vm = m.valuation() or 0
    if n is None:
        qt = reembed_I(q, m)
        return Reembedding("I", m, None, qt, None, find_cancellations(q, qt, "I", vm))
    n = _as_tp(n)
    vn = n.valuation() or 0
    q_xz, q_yz = reembed_II(q, n, m)
    return Reembedding(
        "II", m, n, q_xz, q_yz, find_cancellations(q, q_xz, "xz", vm, vn)
    )


def _val_or_fail(e, target, what):
    """Valuation of e, None when it is already certified past target."""
    v = e.valuation()
    if v is not None:
        return None if v > target else v
    if e.order is None or e.order > target:
        return None
    raise TruncatedToZero(
        "%s only known to O(t^%s), target %s needs deeper input truncation"
        % (what, e.order, target)
    )


def _default_start(q, column):
    """Quotient of the two valuation-zero coefficients in the column."""
    rows = sorted(
        j for (i, j), c in q.coeffs.items() if i == column and c.valuation() == 0
    )
    if len(rows) != 2 or rows[1] != rows[0] + 1:
        raise NonGenericTie(
            "column %d does not carry exactly two adjacent valuation-zero rows"
            % column
        )
    lo = q.coefficient(column, rows[0]).residue()
    hi = q.coefficient(column, rows[1]).residue()
    return constant(lo / hi)


def cancellation_search(q, column, target, start=None, max_steps=64):
    """Tune m so the (column, 0) coefficient of q(x, z - m) passes ``target``.

    The first coefficient of m is pinned by the residues of the column
    itself; afterwards each step removes the lowest surviving term of the
    designated coefficient with one linear solve.  Raises NonGenericTie when
    the linear coefficient degenerates before the target is reached.
    """
    m = _as_tp(start) if start is not None else _default_start(q, column)
    key = (int(column), 0)
    for _ in range(max_steps):
        e = reembed_I(q, m).coefficient(*key)
        v = _val_or_fail(e, target, "coefficient of x^%d" % column)
        if v is None:
            return make_reembedding(q, m)
        if v <= 0:
            raise NonGenericTie(
                "starting residue does not cancel the order-%s term" % v
            )
        probe = reembed_I(q, m + t_power(v)).coefficient(*key)
        lin = (probe - e).coefficient(v)
        if not lin:
            raise NonGenericTie(
                "no linear progress at order %s in column %d" % (v, column)
            )
        m = m + TruncatedPuiseux([(v, -(e.coefficient(v) / lin))])
    raise NonGenericTie("cancellation search exhausted %d steps" % max_steps)


def star_cancellation_search(
    q, col_low, target_low, col_high, target_high, alpha, beta, max_steps=80
):
    """Tune the lift z = y + alpha*x + beta of a line through a curve vertex.

    Adjusts alpha and beta order by order until the row-zero coefficients of
    q(x, z - alpha*x - beta) at columns ``col_low`` and ``col_high`` both
    pass their target valuations.  Corrections at a shared order are solved
    as a 2x2 linear system; a single pending target uses the unknown it
    reacts to (beta for the low column, alpha for the high one, falling back
    to the other when the preferred direction is degenerate).
    """
    alpha, beta = _as_tp(alpha), _as_tp(beta)
    keys = ((int(col_low), 0), (int(col_high), 0))
    targets = (Fraction(target_low), Fraction(target_high))
    names = ("coefficient of x^%d" % col_low, "coefficient of x^%d" % col_high)
    for _ in range(max_steps):
        q_xz = reembed_II_xz(q, alpha, beta)
        vals = [
            _val_or_fail(q_xz.coefficient(*k), tg, nm)
            for k, tg, nm in zip(keys, targets, names)
        ]
        pending = [idx for idx in (0, 1) if vals[idx] is not None]
        if not pending:
            rb = make_reembedding(q, beta, alpha)
            return rb
        w = min(vals[idx] for idx in pending)
        if w <= 0:
            raise NonGenericTie("starting residues do not cancel at order %s" % w)
        active = [idx for idx in pending if vals[idx] == w]
        qa = reembed_II_xz(q, alpha + t_power(w), beta)
        qb = reembed_II_xz(q, alpha, beta + t_power(w))
        rhs = [-(q_xz.coefficient(*keys[i]).coefficient(w)) for i in active]
        da = [
            (qa.coefficient(*keys[i]) - q_xz.coefficient(*keys[i])).coefficient(w)
            for i in active
        ]
        db = [
            (qb.coefficient(*keys[i]) - q_xz.coefficient(*keys[i])).coefficient(w)
            for i in active
        ]
        if len(active) == 2:
            det = da[0] * db[1] - da[1] * db[0]
            if not det:
                raise NonGenericTie("degenerate correction system at order %s" % w)
            xa = (rhs[0] * db[1] - rhs[1] * db[0]) / det
            xb = (da[0] * rhs[1] - da[1] * rhs[0]) / det
        else:
            prefer_beta = active[0] == 0
            first, second = (db[0], da[0]) if prefer_beta else (da[0], db[0])
            if first:
                solved = rhs[0] / first
                xa, xb = (0, solved) if prefer_beta else (solved, 0)
            elif second:
                solved = rhs[0] / second
                xa, xb = (solved, 0) if prefer_beta else (0, solved)
            else:
                raise NonGenericTie("no linear progress at order %s" % w)
        if xa:
            alpha = alpha + TruncatedPuiseux([(w, xa)])
        if xb:
            beta = beta + TruncatedPuiseux([(w, xb)])
    raise NonGenericTie("cancellation search exhausted %d steps" % max_steps)
