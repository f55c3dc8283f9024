"""Polynomials over GF(2^m): univariate, and sparse in three variables
plus a homogenizing fourth.

``UniPoly`` is dense (ascending coefficient list).  ``TriPoly`` is a sparse
dict keyed by exponent 4-tuples (x0, x1, x2, z); affine polynomials keep the
z exponent at 0.  Monomials are ordered graded-lex with x0 > x1 > x2 > z.

Bivariate helpers (gcd, resultant, squarefree part, factorization) treat a
TriPoly supported on two variables as a polynomial in a main variable with
univariate coefficients in the other.
"""

import itertools
import random

from .errors import (
    DegreeCapExceeded,
    DivisionByZero,
    FieldMismatch,
    InvalidParameters,
    NoGoodEvaluationPoint,
    NotDivisible,
)
from .gf2m import Field, common_field

NEG_INF = float("-inf")

FACTOR_DEGREE_CAP = 32


# ---------------------------------------------------------------- univariate

class UniPoly:
    """Dense univariate polynomial; coefficient i of attribute c is for x^i."""

    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        c = [field.check(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @classmethod
    def from_terms(cls, field, terms):
        """terms: iterable of (exponent, coefficient); repeats accumulate."""
        d = {}
        for e, v in terms:
            d[e] = d.get(e, 0) ^ v
        n = max(d, default=-1) + 1
        out = [0] * n
        for e, v in d.items():
            out[e] = v
        return cls(field, out)

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field):
        return cls(field, [1])

    @classmethod
    def const(cls, field, v):
        return cls(field, [v])

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def is_zero(self):
        return not self.c

    @property
    def lead(self):
        if not self.c:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.c[-1]

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.field == other.field
                and self.c == other.c)

    def __hash__(self):
        return hash((self.field, tuple(self.c)))

    def __add__(self, other):
        common_field(self.field, other.field)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] ^= v
        return UniPoly(self.field, out)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        f = common_field(self.field, other.field)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(f)
        if f.m == 1:
            return self._mul_gf2(other)
        a, b = self.c, other.c
        out = [0] * (len(a) + len(b) - 1)
        mul = f._mul
        for i, av in enumerate(a):
            if av:
                for j, bv in enumerate(b):
                    if bv:
                        out[i + j] ^= mul(av, bv)
        return UniPoly(f, out)

    def _mul_gf2(self, other):
        # carry-less multiply on packed bit masks
        a = sum(v << i for i, v in enumerate(self.c))
        b = sum(v << i for i, v in enumerate(other.c))
        r = 0
        while b:
            low = b & -b
            r ^= a << (low.bit_length() - 1)
            b ^= low
        return UniPoly(self.field, [(r >> i) & 1 for i in range(r.bit_length())])

    def scale(self, v):
        f = self.field
        f.check(v)
        if v == 0:
            return UniPoly.zero(f)
        return UniPoly(f, [f._mul(v, x) for x in self.c])

    def shift(self, k):
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return UniPoly(self.field, [0] * k + self.c)

    def __divmod__(self, other):
        f = common_field(self.field, other.field)
        if other.is_zero:
            raise DivisionByZero("division by the zero polynomial")
        if self.degree < other.degree:
            return UniPoly.zero(f), self
        inv_lead = f.inv(other.lead)
        rem = list(self.c)
        db = other.degree
        qc = [0] * (len(rem) - db)
        mul = f._mul
        for i in range(len(rem) - 1, db - 1, -1):
            v = rem[i]
            if v:
                qv = mul(v, inv_lead)
                qc[i - db] = qv
                for j, bv in enumerate(other.c):
                    if bv:
                        rem[i - db + j] ^= mul(qv, bv)
        return UniPoly(f, qc), UniPoly(f, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero:
            raise NotDivisible("univariate division left a remainder", remainder=r)
        return q

    def monic(self):
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.lead))

    def derivative(self):
        f = self.field
        out = [self.c[i] if i % 2 == 1 else 0 for i in range(1, len(self.c))]
        return UniPoly(f, out)

    def eval_at(self, x):
        f = self.field
        f.check(x)
        acc = 0
        mul = f._mul
        for v in reversed(self.c):
            acc = mul(acc, x) ^ v
        return acc

    def pow_(self, e):
        f = self.field
        if e == 0:
            return UniPoly.one(f)
        r = None
        b = self
        while e:
            if e & 1:
                r = b if r is None else r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def taylor_shift(self, a):
        """p(x + a)."""
        f = self.field
        f.check(a)
        out = UniPoly.zero(f)
        xa = UniPoly(f, [a, 1])
        for v in reversed(self.c):
            out = out * xa + UniPoly.const(f, v)
        return out

    def sqrt_even(self):
        """s with s^2 == self; requires every odd-exponent coefficient zero."""
        f = self.field
        if any(self.c[i] for i in range(1, len(self.c), 2)):
            raise InvalidParameters("polynomial is not a square")
        return UniPoly(f, [f.sqrt(self.c[i]) for i in range(0, len(self.c), 2)])

    def frobenius_coeffs(self):
        """Apply the squaring map to every coefficient."""
        f = self.field
        return UniPoly(f, [f._mul(v, v) for v in self.c])

    def key(self):
        return (len(self.c), tuple(self.c))

    def __repr__(self):
        if self.is_zero:
            return "UniPoly(0)"
        terms = [f"{v:#x}*x^{i}" for i, v in enumerate(self.c) if v]
        return "UniPoly(" + " + ".join(terms) + ")"


def uni_gcd(a, b):
    """Monic gcd."""
    common_field(a.field, b.field)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def uni_gcd_many(polys):
    it = iter(polys)
    g = next(it)
    for p in it:
        g = uni_gcd(g, p)
    return g


def _uni_sqrt(p):
    return p.sqrt_even()


def uni_squarefree_part(p):
    """Product of the distinct irreducible factors of p (monic)."""
    if p.is_zero:
        raise InvalidParameters("squarefree part of the zero polynomial")
    p = p.monic()
    if p.degree <= 0:
        return UniPoly.one(p.field)
    dp = p.derivative()
    if dp.is_zero:
        return uni_squarefree_part(_uni_sqrt(p))
    g = uni_gcd(p, dp)
    w = p.exact_div(g)  # odd-multiplicity factors, once each
    r = g
    while True:
        c = uni_gcd(r, w)
        if c.degree <= 0:
            break
        r = r.exact_div(c)
    # r now carries the even-multiplicity factors only, at even powers
    if r.degree <= 0:
        return w
    return w * uni_squarefree_part(_uni_sqrt(r))


def _frob_pow_mod(r, p, m):
    """r^(2^m) mod p."""
    for _ in range(m):
        r = (r * r) % p
    return r


def _ddf(s):
    """Distinct-degree split of squarefree monic s: list of (product, degree)."""
    f = s.field
    out = []
    x = UniPoly.x(f)
    r = x % s
    i = 0
    cur = s
    while cur.degree > 0:
        i += 1
        if 2 * i > cur.degree:
            out.append((cur, cur.degree))
            break
        r = _frob_pow_mod(r, cur, f.m)
        g = uni_gcd(r + (x % cur), cur)
        if g.degree > 0:
            out.append((g, i))
            cur = cur.exact_div(g)
            r = r % cur
    return out


def _edf(g, i, rng):
    """Split monic squarefree g, all of whose factors have degree i."""
    f = g.field
    n = g.degree
    if n == i:
        return [g]
    x = UniPoly.x(f)
    while True:
        h = UniPoly(f, [rng.randrange(f.q) for _ in range(n)])
        if h.degree < 1:
            continue
        # trace map over GF(2) of h modulo g
        t = h % g
        acc = t
        for _ in range(f.m * i - 1):
            t = (t * t) % g
            acc = acc + t
        s = uni_gcd(acc, g)
        if 0 < s.degree < n:
            return _edf(s, i, rng) + _edf(g.exact_div(s), i, rng)


def uni_factor(p, seed=0):
    """Full factorization.

    Returns (unit, factors) with unit in the field and factors a list of
    (monic irreducible UniPoly, multiplicity), sorted canonically; the
    product of unit and the factor powers reconstructs p.
    """
    if p.is_zero:
        raise InvalidParameters("cannot factor the zero polynomial")
    unit = p.lead
    p = p.monic()
    if p.degree == 0:
        return unit, []
    rng = random.Random(seed)
    sq = uni_squarefree_part(p)
    irreducibles = []
    for block, i in _ddf(sq):
        irreducibles.extend(_edf(block, i, rng))
    out = []
    rest = p
    for f_ in sorted(irreducibles, key=UniPoly.key):
        mult = 0
        while True:
            q, r = divmod(rest, f_)
            if not r.is_zero:
                break
            rest = q
            mult += 1
        out.append((f_, mult))
    assert rest.degree == 0
    return unit, out


def uni_is_irreducible(p):
    if p.is_zero or p.degree < 1:
        return False
    _, facs = uni_factor(p)
    return len(facs) == 1 and facs[0][1] == 1


def uni_roots(p):
    """Roots in the coefficient field, ascending."""
    _, facs = uni_factor(p)
    out = []
    for f_, _ in facs:
        if f_.degree == 1:
            out.append(f_.c[0])  # monic x + r has root r (char 2)
    return sorted(out)


# ------------------------------------------------------------ field embedding

class Embedding:
    """Embedding of GF(2^k) into GF(2^(k*e)) along a chosen root of the
    small field's modulus; the smallest root is used, so the map is
    deterministic for a given pair of fields."""

    def __init__(self, small, big):
        if big.m % small.m != 0:
            raise InvalidParameters(
                f"GF(2^{small.m}) does not embed in GF(2^{big.m})")
        self.small = small
        self.big = big
        if small.m == 1 or small == big:
            self.root = 0b10 if small == big and small.m > 1 else 1
            self._pow = None
            if small == big:
                self._pow = "identity"
            self._inverse = None
            return
        mod = UniPoly(big, [(small.poly >> i) & 1 for i in range(small.m + 1)])
        roots = uni_roots(mod)
        assert roots, "modulus must split in the extension"
        self.root = roots[0]
        pows = [1]
        for _ in range(small.m - 1):
            pows.append(big._mul(pows[-1], self.root))
        self._pow = pows
        self._inverse = None

    def map(self, a):
        self.small.check(a)
        if self.small.m == 1:
            return a
        if self._pow == "identity":
            return a
        acc = 0
        for i in range(self.small.m):
            if (a >> i) & 1:
                acc ^= self._pow[i]
        return acc

    def unmap(self, b):
        """Inverse on the image; raises FieldMismatch off the image."""
        if self._inverse is None:
            self._inverse = {self.map(a): a for a in self.small.elements()}
        try:
            return self._inverse[b]
        except KeyError:
            raise FieldMismatch(f"{b:#x} is not in the embedded subfield") from None

    def map_uni(self, p):
        return UniPoly(self.big, [self.map(v) for v in p.c])

    def map_tri(self, p):
        return TriPoly(self.big, {e: self.map(v) for e, v in p.terms.items()})


# ---------------------------------------------------------------- trivariate

def _grlex_key(e):
    return (e[0] + e[1] + e[2] + e[3], e)


class TriPoly:
    """Sparse polynomial in x0, x1, x2 and a homogenizing variable z.

    terms maps exponent 4-tuples to nonzero coefficients.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        self.field = field
        t = {}
        for e, v in terms.items():
            if len(e) == 3:
                e = (e[0], e[1], e[2], 0)
            v = field.check(v)
            if v:
                t[tuple(e)] = v
        self.terms = t

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def const(cls, field, v):
        return cls(field, {(0, 0, 0, 0): v})

    @classmethod
    def var(cls, field, i):
        e = [0, 0, 0, 0]
        e[i] = 1
        return cls(field, {tuple(e): 1})

    @property
    def is_zero(self):
        return not self.terms

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def degree_in(self, var):
        return max((e[var] for e in self.terms), default=NEG_INF)

    def lead_term(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def __eq__(self, other):
        return (isinstance(other, TriPoly) and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        common_field(self.field, other.field)
        t = dict(self.terms)
        for e, v in other.terms.items():
            w = t.get(e, 0) ^ v
            if w:
                t[e] = w
            else:
                t.pop(e, None)
        out = TriPoly.__new__(TriPoly)
        out.field = self.field
        out.terms = t
        return out

    __sub__ = __add__

    def __mul__(self, other):
        f = common_field(self.field, other.field)
        mul = f._mul
        t = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                w = t.get(e, 0) ^ mul(v1, v2)
                if w:
                    t[e] = w
                else:
                    del t[e]
        out = TriPoly.__new__(TriPoly)
        out.field = f
        out.terms = t
        return out

    def scale(self, v):
        f = self.field
        f.check(v)
        if v == 0:
            return TriPoly.zero(f)
        mul = f._mul
        out = TriPoly.__new__(TriPoly)
        out.field = f
        out.terms = {e: mul(v, c) for e, c in self.terms.items()}
        return out

    def square(self):
        # squaring doubles exponents and squares coefficients
        f = self.field
        mul = f._mul
        out = TriPoly.__new__(TriPoly)
        out.field = f
        out.terms = {(2 * e[0], 2 * e[1], 2 * e[2], 2 * e[3]): mul(v, v)
                     for e, v in self.terms.items()}
        return out

    def pow_(self, e):
        f = self.field
        if e == 0:
            return TriPoly.const(f, 1)
        r = None
        b = self
        while e:
            if e & 1:
                r = b if r is None else r * b
            e >>= 1
            if e:
                b = b.square()
        return r

    def eval_at(self, point):
        """point: 3 affine coordinates (z taken as 1) or 4 coordinates."""
        f = self.field
        if len(point) == 3:
            point = (point[0], point[1], point[2], 1)
        pt = [f.check(v) for v in point]
        mul = f._mul
        powc = [{}, {}, {}, {}]
        acc = 0

        def pw(i, e):
            cache = powc[i]
            if e not in cache:
                cache[e] = f.pow_(pt[i], e)
            return cache[e]

        for e, v in self.terms.items():
            t = v
            for i in range(4):
                if e[i]:
                    t = mul(t, pw(i, e[i]))
                    if t == 0:
                        break
            acc ^= t
        return acc

    def partial(self, var):
        """Formal partial derivative (characteristic 2)."""
        f = self.field
        t = {}
        for e, v in self.terms.items():
            if e[var] % 2 == 1:
                ne = list(e)
                ne[var] -= 1
                t[tuple(ne)] = v
        return TriPoly(f, t)

    def substitute_const(self, var, val):
        """Replace a variable by a field constant."""
        f = self.field
        f.check(val)
        mul = f._mul
        t = {}
        for e, v in self.terms.items():
            w = mul(v, f.pow_(val, e[var])) if e[var] else v
            if w:
                ne = list(e)
                ne[var] = 0
                ne = tuple(ne)
                t[ne] = t.get(ne, 0) ^ w
        return TriPoly(f, {e: v for e, v in t.items() if v})

    def homogeneous_component(self, deg):
        return TriPoly(self.field,
                       {e: v for e, v in self.terms.items() if sum(e) == deg})

    def homogenize(self, target=None):
        """Pad each term with z so every total degree equals target."""
        if self.is_zero:
            return self
        top = self.total_degree
        if target is None:
            target = top
        if target < top:
            raise InvalidParameters(f"target degree {target} below {top}")
        t = {}
        for e, v in self.terms.items():
            t[(e[0], e[1], e[2], e[3] + target - sum(e))] = v
        return TriPoly(self.field, t)

    def dehomogenize(self):
        """Set z = 1."""
        t = {}
        for e, v in self.terms.items():
            ne = (e[0], e[1], e[2], 0)
            t[ne] = t.get(ne, 0) ^ v
        return TriPoly(self.field, {e: v for e, v in t.items() if v})

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def exact_divide(self, den):
        """Exact multivariate division; raises NotDivisible with the
        remainder when the division does not come out even."""
        f = common_field(self.field, den.field)
        if den.is_zero:
            raise DivisionByZero("division by the zero polynomial")
        de, dc = den.lead_term()
        dinv = f.inv(dc)
        mul = f._mul
        rem = dict(self.terms)
        quo = {}
        while rem:
            e = max(rem, key=_grlex_key)
            v = rem[e]
            t = (e[0] - de[0], e[1] - de[1], e[2] - de[2], e[3] - de[3])
            if min(t) < 0:
                raise NotDivisible("leading term not divisible",
                                   remainder=TriPoly(f, rem))
            cv = mul(v, dinv)
            quo[t] = cv
            for e2, v2 in den.terms.items():
                ne = (t[0] + e2[0], t[1] + e2[1], t[2] + e2[2], t[3] + e2[3])
                w = rem.get(ne, 0) ^ mul(cv, v2)
                if w:
                    rem[ne] = w
                else:
                    del rem[ne]
        return TriPoly(f, quo)

    def map_coeffs(self, fn, new_field):
        return TriPoly(new_field, {e: fn(v) for e, v in self.terms.items()})

    def support_vars(self):
        used = [False] * 4
        for e in self.terms:
            for i in range(4):
                if e[i]:
                    used[i] = True
        return [i for i in range(4) if used[i]]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ev: _grlex_key(ev[0]),
                      reverse=True)

    def __repr__(self):
        names = ("x0", "x1", "x2", "z")
        if self.is_zero:
            return "TriPoly(0)"
        parts = []
        for e, v in self.sorted_terms():
            bits = [] if v == 1 and any(e) else [f"{v:#x}"]
            for i in range(4):
                if e[i] == 1:
                    bits.append(names[i])
                elif e[i] > 1:
                    bits.append(f"{names[i]}^{e[i]}")
            parts.append("*".join(bits) if bits else "1")
        return "TriPoly(" + " + ".join(parts) + ")"


# ------------------------------------------------------- bivariate utilities

def tri_to_bi(p, main, aux):
    """View a TriPoly supported on {main, aux} as a list of UniPoly in the
    aux variable, indexed by the main-variable exponent."""
    f = p.field
    for i in p.support_vars():
        if i not in (main, aux):
            raise InvalidParameters(f"polynomial touches variable {i}")
    dm = p.degree_in(main)
    n = 0 if dm is NEG_INF else int(dm) + 1
    rows = [{} for _ in range(max(n, 1))]
    for e, v in p.terms.items():
        rows[e[main]][e[aux]] = v
    out = [UniPoly.from_terms(f, r.items()) for r in rows]
    while len(out) > 1 and out[-1].is_zero:
        out.pop()
    return out


def bi_to_tri(rows, main, aux, field):
    t = {}
    for i, p in enumerate(rows):
        for j, v in enumerate(p.c):
            if v:
                e = [0, 0, 0, 0]
                e[main] = i
                e[aux] = j
                t[tuple(e)] = v
    return TriPoly(field, t)


def _bl_strip(rows):
    while rows and rows[-1].is_zero:
        rows.pop()
    return rows


def _bl_deg(rows):
    return len(rows) - 1 if rows else -1


def _bl_add(a, b):
    f = (a[0] if a else b[0]).field
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        pa = a[i] if i < len(a) else UniPoly.zero(f)
        pb = b[i] if i < len(b) else UniPoly.zero(f)
        out.append(pa + pb)
    return _bl_strip(out)


def _bl_scale(rows, u):
    return _bl_strip([p * u for p in rows])


def _bl_shift(rows, k, field):
    return [UniPoly.zero(field)] * k + rows


def _bl_mul(a, b, field):
    if not a or not b:
        return []
    out = [UniPoly.zero(field) for _ in range(len(a) + len(b) - 1)]
    for i, pa in enumerate(a):
        if pa.is_zero:
            continue
        for j, pb in enumerate(b):
            if not pb.is_zero:
                out[i + j] = out[i + j] + pa * pb
    return _bl_strip(out)


def _bl_content(rows):
    nz = [p for p in rows if not p.is_zero]
    return uni_gcd_many(nz)


def _bl_exact_div_uni(rows, u):
    return [p.exact_div(u) for p in rows]


def _bl_primitive(rows):
    c = _bl_content(rows)
    return c, _bl_exact_div_uni(rows, c)


def _bl_pseudo_rem(a, b, field):
    """lc(b)^(deg a - deg b + 1) * a mod b, all in F[aux][main].

    One scale by lc(b) per step, da - db + 1 steps in all, so the result is
    the classical pseudo-remainder the subresultant recurrences expect."""
    da, db = _bl_deg(a), _bl_deg(b)
    lb = b[-1]
    r = list(a)
    for i in range(da, db - 1, -1):
        dr = _bl_deg(r)
        scaled = [p * lb for p in r]
        if dr == i:
            top = r[-1]
            sub = _bl_shift([p * top for p in b], i - db, field)
            r = _bl_strip(_bl_add(scaled, sub))
        else:
            r = _bl_strip(scaled)
    return r


def bi_gcd(p1, p2, main=0, aux=1):
    """Gcd of two TriPolys supported on two variables, via a primitive
    remainder sequence over F[aux]; result normalized so its leading
    main-variable coefficient is monic."""
    f = common_field(p1.field, p2.field)
    a = _bl_strip(tri_to_bi(p1, main, aux))
    b = _bl_strip(tri_to_bi(p2, main, aux))
    if not a:
        return _bi_gcd_normalize(b, main, aux, f)
    if not b:
        return _bi_gcd_normalize(a, main, aux, f)
    ca, a = _bl_primitive(a)
    cb, b = _bl_primitive(b)
    cg = uni_gcd(ca, cb)
    if _bl_deg(a) < _bl_deg(b):
        a, b = b, a
    while True:
        if _bl_deg(b) < 0:
            g = a
            break
        if _bl_deg(b) == 0:
            # main-degree 0: gcd divides a unit times content, already stripped
            g = [UniPoly.one(f)]
            break
        r = _bl_pseudo_rem(a, b, f)
        r = _bl_strip(r)
        if r:
            _, r = _bl_primitive(r)
        a, b = b, r
    g = _bl_scale(g, cg)
    return _bi_gcd_normalize(g, main, aux, f)


def _bi_gcd_normalize(rows, main, aux, field):
    rows = _bl_strip(list(rows))
    if not rows:
        return TriPoly.zero(field)
    lead = rows[-1]
    inv = field.inv(lead.lead)
    rows = [p.scale(inv) for p in rows]
    return bi_to_tri(rows, main, aux, field)


def bi_resultant(p1, p2, eliminate, keep):
    """Resultant with respect to the eliminated variable, as a UniPoly in
    the kept variable.  Subresultant remainder sequence; characteristic 2
    makes every sign factor trivial."""
    f = common_field(p1.field, p2.field)
    a = _bl_strip(tri_to_bi(p1, eliminate, keep))
    b = _bl_strip(tri_to_bi(p2, eliminate, keep))
    if not a or not b:
        return UniPoly.zero(f)
    da, db = _bl_deg(a), _bl_deg(b)
    if da < db:
        a, b = b, a
        da, db = db, da
    if da == 0:
        return UniPoly.one(f)
    if db == 0:
        return b[0].pow_(da)
    one = UniPoly.one(f)
    g, h = one, one
    while True:
        da, db = _bl_deg(a), _bl_deg(b)
        delta = da - db
        r = _bl_pseudo_rem(a, b, f)
        a = b
        denom = g * h.pow_(delta)
        b = _bl_strip([p.exact_div(denom) for p in r])
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g.pow_(delta).exact_div(h.pow_(delta - 1))
        if _bl_deg(b) <= 0:
            break
    if not b:
        return UniPoly.zero(f)
    e = _bl_deg(a)
    s = b[0]
    if e == 0:
        return one
    if e == 1:
        return s
    return s.pow_(e).exact_div(h.pow_(e - 1))


def bi_squarefree(p, main=0, aux=1):
    """Squarefree part: each irreducible factor exactly once, normalized so
    the graded-lex leading coefficient is 1."""
    f = p.field
    if p.is_zero:
        raise InvalidParameters("squarefree part of the zero polynomial")
    if p.total_degree == 0:
        return TriPoly.const(f, 1)
    pu = p.partial(main)
    pv = p.partial(aux)
    if pu.is_zero and pv.is_zero:
        return bi_squarefree(_tri_sqrt(p), main, aux)
    g = p
    for d in (pu, pv):
        if not d.is_zero:
            g = bi_gcd(g, d, main, aux)
    if g.total_degree == 0:
        return _grlex_normalize(p)
    w = p.exact_divide(g)
    r = g
    while True:
        c = bi_gcd(r, w, main, aux)
        if c.total_degree == 0:
            break
        r = r.exact_divide(c)
    if r.total_degree == 0:
        return _grlex_normalize(w)
    return _grlex_normalize(w * bi_squarefree(_tri_sqrt(r), main, aux))


def _tri_sqrt(p):
    f = p.field
    t = {}
    for e, v in p.terms.items():
        if any(x % 2 for x in e):
            raise InvalidParameters("polynomial is not a square")
        t[(e[0] // 2, e[1] // 2, e[2] // 2, e[3] // 2)] = f.sqrt(v)
    return TriPoly(f, t)


def _grlex_normalize(p):
    if p.is_zero:
        return p
    _, c = p.lead_term()
    return p.scale(p.field.inv(c))



# ------------------------------------------------- truncated power series

def _ser_mul(a, b, n, field):
    mul = field._mul
    out = [0] * n
    for i, av in enumerate(a):
        if av:
            top = min(n - i, len(b))
            for j in range(top):
                if b[j]:
                    out[i + j] ^= mul(av, b[j])
    return out


def _ser_inv(a, n, field):
    if a[0] == 0:
        raise DivisionByZero("series has no inverse")
    inv0 = field.inv(a[0])
    out = [0] * n
    out[0] = inv0
    mul = field._mul
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i] and out[k - i]:
                acc ^= mul(a[i], out[k - i])
        out[k] = mul(inv0, acc)
    return out


def _pad_series(p, n):
    """UniPoly -> length-n list."""
    row = [0] * n
    for j, v in enumerate(p.c):
        if j < n:
            row[j] = v
    return row


class _SerPoly:
    """Polynomial in the main variable whose coefficients are power series
    truncated at order n (length-n lists of field elements)."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field, n, rows):
        self.field = field
        self.n = n
        self.rows = rows
        while self.rows and all(v == 0 for v in self.rows[-1]):
            self.rows.pop()

    @property
    def degree(self):
        return len(self.rows) - 1 if self.rows else -1

    def add(self, other):
        n = self.n
        f = self.field
        rows = []
        for i in range(max(len(self.rows), len(other.rows))):
            a = self.rows[i] if i < len(self.rows) else [0] * n
            b = other.rows[i] if i < len(other.rows) else [0] * n
            rows.append([x ^ y for x, y in zip(a, b)])
        return _SerPoly(f, n, rows)

    def mul(self, other):
        n, f = self.n, self.field
        if not self.rows or not other.rows:
            return _SerPoly(f, n, [])
        rows = [[0] * n for _ in range(len(self.rows) + len(other.rows) - 1)]
        for i, a in enumerate(self.rows):
            if all(v == 0 for v in a):
                continue
            for j, b in enumerate(other.rows):
                prod = _ser_mul(a, b, n, f)
                tgt = rows[i + j]
                for k in range(n):
                    tgt[k] ^= prod[k]
        return _SerPoly(f, n, rows)

    def scale_series(self, s):
        n, f = self.n, self.field
        return _SerPoly(f, n, [_ser_mul(r, s, n, f) for r in self.rows])

    def coeff_of_order(self, k):
        """UniPoly in the main variable made of each row's order-k term."""
        return UniPoly(self.field, [r[k] for r in self.rows])

    def copy(self):
        return _SerPoly(self.field, self.n, [list(r) for r in self.rows])


def _serpoly_from_uni(p, n):
    f = p.field
    rows = []
    for v in p.c:
        row = [0] * n
        row[0] = v
        rows.append(row)
    return _SerPoly(f, n, rows)


def _serpoly_from_rows(rows, n, field):
    return _SerPoly(field, n, [_pad_series(p, n) for p in rows])


def _uni_bezout(a, b):
    """s, t with s*a + t*b = 1 for coprime a, b."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = UniPoly.one(f), UniPoly.zero(f)
    t0, t1 = UniPoly.zero(f), UniPoly.one(f)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 + q * s1
        t0, t1 = t1, t0 + q * t1
    assert r0.degree == 0, "inputs were not coprime"
    inv = f.inv(r0.c[0])
    return s0.scale(inv), t0.scale(inv)


def _hensel_pair(pstar, g0, h0, n):
    """Lift the coprime monic split p*(u, 0) = g0*h0 to monic g, h over the
    series ring with p* = g*h at truncation order n."""
    f = pstar.field
    s, t = _uni_bezout(g0, h0)
    g = _serpoly_from_uni(g0, n)
    h = _serpoly_from_uni(h0, n)
    for k in range(1, n):
        err = pstar.add(g.mul(h))  # char 2: difference == sum
        e = err.coeff_of_order(k)
        if e.is_zero:
            continue
        dh = (s * e) % h0
        dg = (e + g0 * dh).exact_div(h0)
        for i, v in enumerate(dg.c):
            if v:
                g.rows[i][k] ^= v
        for i, v in enumerate(dh.c):
            if v:
                h.rows[i][k] ^= v
    return g, h


def _lift_all(pstar, local, n):
    """Lift each monic local factor in turn against the product of the rest."""
    if len(local) == 1:
        return [pstar.copy()]
    g0 = local[0]
    h0 = UniPoly.one(pstar.field)
    for p in local[1:]:
        h0 = h0 * p
    g, h = _hensel_pair(pstar, g0, h0, n)
    return [g] + _lift_all(h, local[1:], n)


def _bl_try_exact_div(a, b, f):
    """Quotient of a by b in F[aux][main] if the division is exact, else None."""
    a = [p for p in a]
    db = _bl_deg(b)
    da = _bl_deg(a)
    if db < 0 or da < db:
        return None
    lb = b[-1]
    q = [UniPoly.zero(f) for _ in range(da - db + 1)]
    for i in range(da, db - 1, -1):
        p = a[i]
        if p.is_zero:
            continue
        try:
            t = p.exact_div(lb)
        except NotDivisible:
            return None
        q[i - db] = t
        for j in range(db + 1):
            a[i - db + j] = a[i - db + j] + t * b[j]
    if any(not p.is_zero for p in a):
        return None
    return q


# ------------------------------------------------------------- factorization

def bi_factor(p, main=0, aux=1, seed=0):
    """Factor a squarefree TriPoly supported on two variables into
    irreducibles over its coefficient field.

    Returns (unit, factors): a field element and a sorted list of
    graded-lex-normalized TriPolys whose product scaled by the unit
    reconstructs p.  Raises NoGoodEvaluationPoint when no specialization
    of the aux variable inside the base field is usable; callers may retry
    after embedding the polynomial into a quadratic extension.
    """
    f = p.field
    if p.is_zero:
        raise InvalidParameters("cannot factor the zero polynomial")
    if p.total_degree > FACTOR_DEGREE_CAP:
        raise DegreeCapExceeded(
            f"total degree {p.total_degree} above cap {FACTOR_DEGREE_CAP}")
    if p.total_degree == 0:
        return p.terms[(0, 0, 0, 0)], []
    for i in p.support_vars():
        if i not in (main, aux):
            raise InvalidParameters(f"polynomial touches variable {i}")
    rows = _bl_strip(tri_to_bi(p, main, aux))
    unit = 1
    factors = []
    if _bl_deg(rows) == 0:
        # univariate in the aux variable
        u, facs = uni_factor(rows[0], seed=seed)
        for fac, mult in facs:
            factors.extend([bi_to_tri([fac], main, aux, f)] * mult)
        return u, _sort_tri_factors(factors)
    cont, prim = _bl_primitive(rows)
    if cont.degree > 0:
        u, facs = uni_factor(cont, seed=seed)
        unit = f._mul(unit, u)
        for fac, mult in facs:
            factors.extend([bi_to_tri([fac], main, aux, f)] * mult)
    else:
        unit = f._mul(unit, cont.c[0])
    prim_factors = _bi_factor_primitive(prim, main, aux, f, seed)
    # reconcile the overall scalar against the reconstructed product
    acc = TriPoly.const(f, 1)
    for t in prim_factors:
        acc = acc * t
    orig = bi_to_tri(prim, main, aux, f)
    _, oc = orig.lead_term()
    _, ac = acc.lead_term()
    unit = f._mul(unit, f._mul(oc, f.inv(ac)))
    factors.extend(prim_factors)
    return unit, _sort_tri_factors(factors)


def _sort_tri_factors(factors):
    def key(t):
        return (t.total_degree, sorted(t.terms.items()))
    return sorted(factors, key=key)


def _bi_factor_primitive(rows, main, aux, f, seed):
    """Irreducible factors of a primitive squarefree bivariate polynomial
    given as a main-variable coefficient list over F[aux]."""
    du = _bl_deg(rows)
    lc = rows[-1]
    maxv = max(int(p.degree) for p in rows if not p.is_zero)
    n = int(lc.degree) + maxv + 1  # series precision covers any true factor
    good = None
    for a in f.elements():
        if lc.eval_at(a) == 0:
            continue
        spec = UniPoly(f, [p.eval_at(a) for p in rows])
        if uni_gcd(spec, spec.derivative()).degree != 0:
            continue
        good = a
        break
    if good is None:
        raise NoGoodEvaluationPoint(
            "no usable specialization point in the coefficient field")
    a = good
    # shift so the chosen point sits at the series origin (w = aux + a)
    work = [p.taylor_shift(a) for p in rows]
    spec = UniPoly(f, [p.c[0] if p.c else 0 for p in work])
    _, sfacs = uni_factor(spec, seed=seed)
    assert all(mult == 1 for _, mult in sfacs)
    local = sorted((fac for fac, _ in sfacs), key=UniPoly.key)
    if len(local) == 1:
        out = _grlex_normalize(bi_to_tri(rows, main, aux, f))
        return [out]
    sp = _serpoly_from_rows(work, n, f)
    inv_lc = _ser_inv(sp.rows[-1], n, f)
    pstar = sp.scale_series(inv_lc)
    lifted = _lift_all(pstar, local, n)
    remaining = list(range(len(local)))
    cur = work  # shifted coordinates throughout the recombination
    found_shifted = []
    while remaining:
        du_cur = _bl_deg(cur)
        if du_cur == 0:
            remaining = []
            break
        hit = None
        for size in range(1, len(remaining) // 2 + 1):
            for combo in itertools.combinations(remaining, size):
                if sum(lifted[i].degree for i in combo) >= du_cur:
                    continue
                res = _try_combo(cur, lifted, combo, f, n)
                if res is not None:
                    hit = (combo, res)
                    break
            if hit:
                break
        if hit is None:
            found_shifted.append(cur)
            break
        combo, (fac_rows, quo_rows) = hit
        found_shifted.append(fac_rows)
        cur = quo_rows
        remaining = [i for i in remaining if i not in combo]
    else:
        if _bl_deg(cur) > 0:
            found_shifted.append(cur)
    out = []
    for fr in found_shifted:
        back = _bl_strip([p.taylor_shift(a) for p in fr])  # char 2: shift back
        out.append(_grlex_normalize(bi_to_tri(back, main, aux, f)))
    return out


def _try_combo(cur, lifted, combo, f, n):
    """Build the candidate factor for a subset of lifted local factors and
    test it by exact division; returns (factor rows, quotient rows) or None."""
    prod = lifted[combo[0]].copy()
    for i in combo[1:]:
        prod = prod.mul(lifted[i])
    # scale the monic candidate by the current leading coefficient and take
    # the primitive part: for a true subset this is exactly the factor
    cand_sp = prod.scale_series(_pad_series(cur[-1], n))
    cand = _bl_strip([UniPoly(f, r) for r in cand_sp.rows])
    if not cand:
        return None
    _, cand = _bl_primitive(cand)
    quo = _bl_try_exact_div(cur, cand, f)
    if quo is None:
        return None
    return cand, _bl_strip(quo)


def bi_is_absolutely_irreducible_step(p, main=0, aux=1, seed=0):
    """One field-level irreducibility check: (irreducible?, witness factor)."""
    unit, facs = bi_factor(p, main, aux, seed=seed)
    if len(facs) == 1:
        return True, None
    nontrivial = [t for t in facs if t.total_degree > 0]
    return False, (nontrivial[0] if nontrivial else None)
