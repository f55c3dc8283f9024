"""Quotient surface attached to a polynomial map and its point counts.

For a map f the four-point sum f(x0)+f(x1)+f(x2)+f(x0+x1+x2) vanishes on
the three planes x0=x1, x1=x2, x0=x2; dividing by the product of those
linear forms leaves a surface of degree deg(f)-3 whose affine rational
points away from that triple locus are exactly the witnesses against
differential uniformity two.
"""

import numpy as np

from . import kernels
from .errors import (BudgetExceeded, DegreeOutOfRange, DegreeTooSmall,
                     DiagonalNotConstant, NotDivisible, QAffineInput)
from .gf2m import Field
from .mvpoly import TriPoly, UniPoly, uni_roots
from .polyfunc import PolyFunc, is_q_affine, normalize

COUNT_M_MAX = 10
NEG_DEG = float("-inf")


def _sum_of_vars(field, slots):
    t = {}
    for s in slots:
        e = [0, 0, 0, 0]
        e[s] = 1
        t[tuple(e)] = 1
    return TriPoly(field, t)


def _compose(f, slots):
    """f evaluated at the sum of the variables in slots, as a TriPoly."""
    arg = _sum_of_vars(f.field, slots)
    out = TriPoly.zero(f.field)
    cache = {}
    for e, c in f.terms():
        if e not in cache:
            cache[e] = arg.pow_(e)
        out = out + cache[e].scale(c)
    return out


def _linear_form(field, i, j):
    return TriPoly.var(field, i) + TriPoly.var(field, j)


def four_point_sum(f):
    """f(x0)+f(x1)+f(x2)+f(x0+x1+x2)."""
    return (_compose(f, (0,)) + _compose(f, (1,))
            + _compose(f, (2,)) + _compose(f, (0, 1, 2)))


def triple_locus_product(field):
    """(x0+x1)(x1+x2)(x0+x2)."""
    return (_linear_form(field, 0, 1) * _linear_form(field, 1, 2)
            * _linear_form(field, 0, 2))


class Surface:
    """The quotient form of a map, with the map it came from."""

    __slots__ = ("field", "poly", "source", "source_degree")

    def __init__(self, field, poly, source, source_degree):
        self.field = field
        self.poly = poly
        self.source = source
        self.source_degree = source_degree

    @property
    def degree(self):
        return self.source_degree - 3

    def infinity_part(self):
        """Top homogeneous component; cuts the plane at infinity in the
        projective closure."""
        return self.poly.homogeneous_component(self.degree)

    def homogenized(self):
        return self.poly.homogenize(self.degree)

    def __repr__(self):
        return (f"Surface(m={self.field.m}, source_degree={self.source_degree}, "
                f"terms={len(self.poly.terms)})")


def build_surface(f):
    """Quotient surface of a map; the map is normalized first, so the
    result only depends on its class modulo affine summands."""
    if f.is_zero or is_q_affine(f):
        raise QAffineInput("map is affine: the four-point sum vanishes")
    g = normalize(f)
    d = g.degree
    if d < 3:
        raise DegreeOutOfRange(f"normalized degree {d} below 3")
    num = four_point_sum(g)
    if num.is_zero:
        raise QAffineInput("four-point sum vanished after reduction")
    phi = num.exact_divide(triple_locus_product(f.field))
    assert phi.total_degree == d - 3
    return Surface(f.field, phi, g, d)


def infinity_curve(d):
    """The degree d-3 plane curve cut at infinity; it only depends on the
    source degree, so it is returned with coefficients in GF(2)."""
    if d < 3:
        raise DegreeOutOfRange(f"degree {d} below 3")
    fld = Field(1)
    num = (TriPoly.var(fld, 0).pow_(d) + TriPoly.var(fld, 1).pow_(d)
           + TriPoly.var(fld, 2).pow_(d) + _sum_of_vars(fld, (0, 1, 2)).pow_(d))
    if num.is_zero:
        raise QAffineInput(f"x^{d} is linearized; no curve at infinity")
    return num.exact_divide(triple_locus_product(fld))


def section_at(surface, a):
    """Plane section x2 = a of the surface, as a polynomial in x0, x1."""
    return surface.poly.substitute_const(2, a)


def pencil_curve(f):
    """Common quotient of the sections x2 = x1 + a, with a left symbolic
    in the third slot: [f(x0)+f(x1)+f(x1+a)+f(x0+a)] / [(x0+x1)(x0+x1+a)]."""
    if f.is_zero or is_q_affine(f):
        raise QAffineInput("map is affine: the four-point sum vanishes")
    g = normalize(f)
    num = (_compose(g, (0,)) + _compose(g, (1,))
           + _compose(g, (1, 2)) + _compose(g, (0, 2)))
    den = _linear_form(g.field, 0, 1) * (_linear_form(g.field, 0, 1)
                                         + TriPoly.var(g.field, 2))
    return num.exact_divide(den)


def derivative_divisibility(surface):
    """Each partial of the quotient form is divisible by the linear form
    in the two other variables; returns the three quotients."""
    pairs = ((0, 1, 2), (1, 0, 2), (2, 0, 1))
    out = []
    for var, i, j in pairs:
        dp = surface.poly.partial(var)
        if dp.is_zero:
            out.append(TriPoly.zero(surface.field))
            continue
        try:
            out.append(dp.exact_divide(_linear_form(surface.field, i, j)))
        except NotDivisible:
            return None
    return out


def _diagonal(poly):
    """Restriction to x0 = x1 = x2, as a univariate polynomial."""
    fld = poly.field
    c = {}
    for e, v in poly.terms.items():
        k = e[0] + e[1] + e[2]
        c[k] = c.get(k, 0) ^ v
    deg = max((k for k, v in c.items() if v), default=-1)
    out = [0] * (deg + 1)
    for k, v in c.items():
        if v and k <= deg:
            out[k] = v
    return UniPoly(fld, out)


def diagonal_infinity_singular(surface):
    """True when (1:1:1:0) is a singular point of the projective closure.

    Requires the diagonal restriction of the quotient form to be a
    constant; otherwise DiagonalNotConstant is raised, carrying the
    affine diagonal points that lie on the surface.
    """
    d = surface.source_degree
    if d < 5:
        raise DegreeTooSmall(f"closure has degree {d - 3}; need source degree >= 5")
    diag = _diagonal(surface.poly)
    if diag.degree not in (NEG_DEG, 0):
        pts = [(r, r, r) for r in uni_roots(diag)]
        raise DiagonalNotConstant(
            f"diagonal restriction has degree {diag.degree}", points=pts)
    a0 = diag.eval_at(0)
    homog = surface.poly.homogenize(d - 3)
    # consistency: on the diagonal line the closure collapses to a0 * z^(d-3)
    fld = surface.field
    coll = {}
    for e, v in homog.terms.items():
        k = e[3]
        coll[k] = coll.get(k, 0) ^ v
    coll = {k: v for k, v in coll.items() if v}
    assert coll == ({d - 3: a0} if a0 else {})
    point = (1, 1, 1, 0)
    if homog.eval_at(point) != 0:
        return False
    return all(homog.partial(i).eval_at(point) == 0 for i in range(4))


class PointCount:
    """Rational point tally of a surface over its own field."""

    __slots__ = ("q", "affine", "affine_on_locus", "infinity")

    def __init__(self, q, affine, affine_on_locus, infinity):
        self.q = q
        self.affine = affine
        self.affine_on_locus = affine_on_locus
        self.infinity = infinity

    @property
    def affine_off_locus(self):
        return self.affine - self.affine_on_locus

    @property
    def projective(self):
        return self.affine + self.infinity

    def __repr__(self):
        return (f"PointCount(q={self.q}, affine={self.affine}, "
                f"on_locus={self.affine_on_locus}, infinity={self.infinity})")


def _dense_cube(poly):
    d1 = max((max(e[0], e[1], e[2]) for e in poly.terms), default=0) + 1
    cube = np.zeros((d1, d1, d1), dtype=np.int64)
    for e, v in poly.terms.items():
        if e[3]:
            raise ValueError("affine form expected")
        cube[e[0], e[1], e[2]] = v
    return cube


def projective_plane_zeros(curve, field):
    """Number of zeros of a homogeneous form in x0, x1, x2 over the
    projective plane of the given field; GF(2) coefficients are mapped up
    automatically."""
    if curve.field != field:
        if curve.field.m != 1:
            raise ValueError("curve must live over GF(2) or over field")
        curve = TriPoly(field, dict(curve.terms.items()))
    if not curve.is_homogeneous() or any(e[3] for e in curve.terms):
        raise ValueError("curve is not a homogeneous form in x0, x1, x2")
    q = field.q
    ext, log, _ = field.tables()
    # chart x0 = 1
    acc = np.zeros((q, q), dtype=np.int64)
    for e, v in curve.terms.items():
        col = kernels.power_table(field, e[1])
        row = kernels.power_table(field, e[2])
        scaled = ext[log[col] + log[np.int64(v)]]
        acc ^= ext[log[scaled[:, None]] + log[row[None, :]]]
    count = int((acc == 0).sum())
    # line x0 = 0, x1 = 1, then the point (0:0:1)
    for w in range(q):
        if curve.eval_at((0, 1, w, 0)) == 0:
            count += 1
    if curve.eval_at((0, 0, 1, 0)) == 0:
        count += 1
    return count


def count_points(surface):
    """Affine and infinity tallies over the surface's own field."""
    field = surface.field
    if field.m > COUNT_M_MAX:
        raise BudgetExceeded(
            f"point count over m={field.m} exceeds the m <= {COUNT_M_MAX} budget")
    cube = _dense_cube(surface.poly)
    affine, on_locus = kernels.count_affine(cube, field)
    infinity = projective_plane_zeros(surface.infinity_part(), field)
    return PointCount(field.q, affine, on_locus, infinity)


def apn_via_surface(f):
    """Uniformity-two test through the surface: true exactly when every
    affine rational point lies on the triple locus."""
    return count_points(build_surface(f)).affine_off_locus == 0
