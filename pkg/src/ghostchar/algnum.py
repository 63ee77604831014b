"""Algebraic numbers as (integer minimal polynomial, certified approximation).

Univariate integer polynomials are tuples of coefficients in ascending
order (c0, c1, ..., cd).  Exact factorization is guaranteed for degree <= 4
(rational-root stripping plus propose-and-verify quadratic splits); higher
degree square-free factors are kept as "minpoly candidates" with certified
numeric roots.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import mpmath
from mpmath import mp

__all__ = ["QuadExt", "AlgebraicNumber", "roots_of_intpoly", "factor_rational",
           "squarefree_part", "snap_to_algebraic"]

DEFAULT_PREC_BITS = 256


# ---------------------------------------------------------------------------
# exact quadratic field Q(sqrt(d))
# ---------------------------------------------------------------------------

def _squarefree_core(n):
    """n = core * square^2 with core squarefree (n may be negative)."""
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    n = abs(n)
    core, sq = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            core *= d
        sq *= d ** (e // 2)
        d += 1
    core *= n
    return sign * core, sq


def _mpf_from_frac(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


class QuadExt:
    """Element a + b*sqrt(d) of a real or imaginary quadratic field.

    d is a squarefree integer != 0, 1.  Rationals embed with b = 0 (d kept
    for arithmetic compatibility).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        if d in (0, 1):
            raise ValueError("discriminant core must not be 0 or 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @classmethod
    def rational(cls, a, d):
        return cls(a, 0, d)

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.b and self.b and other.d != self.d:
                raise ValueError("mixed quadratic fields")
            return QuadExt(other.a, other.b, self.d if self.b or not other.b else other.d)
        return QuadExt(other, 0, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadExt(self.a * o.a + self.b * o.b * self.d,
                       self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.a * o.a - o.b * o.b * self.d
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        inv = QuadExt(o.a / n, -o.b / n, self.d)
        return self * inv

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def to_mpc(self):
        s = mpmath.sqrt(mpmath.mpc(self.d))
        return (_mpf_from_frac(self.a) + _mpf_from_frac(self.b) * s)

    def __complex__(self):
        if self.d > 0:
            return complex(float(self.a) + float(self.b) * float(self.d) ** 0.5, 0.0)
        return complex(float(self.a), float(self.b) * float(-self.d) ** 0.5)

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"


# ---------------------------------------------------------------------------
# integer univariate polynomial helpers (ascending coefficient tuples)
# ---------------------------------------------------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _content(p):
    c = 0
    for a in p:
        c = gcd(c, abs(a))
    return c or 1


def primitive(p):
    p = _trim(p)
    if not p:
        return p
    c = _content(p)
    return tuple(a // c for a in p)


def _deriv(p):
    return _trim(tuple(i * p[i] for i in range(1, len(p))))


def _to_frac(p):
    return [Fraction(a) for a in p]


def _poly_divmod(a, b):
    """Division with remainder over Q; a, b lists of Fractions."""
    a = a[:]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for i, cb in enumerate(b):
            a[i + k] -= f * cb
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _gcd_q(a, b):
    a, b = a[:], b[:]
    while any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a


def _frac_to_int(p):
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    return primitive(tuple(int(c * den) for c in p))


def squarefree_part(p):
    """p / gcd(p, p') as a primitive integer polynomial."""
    p = primitive(p)
    if len(p) <= 2:
        return p
    g = _gcd_q(_to_frac(p), _to_frac(_deriv(p)))
    if len(g) <= 1:
        return p
    q, r = _poly_divmod(_to_frac(p), g)
    assert not any(r)
    return _frac_to_int(q)


def _divisors(n):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _eval_frac(p, x: Fraction):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def rational_roots(p):
    """All rational roots of a primitive integer polynomial."""
    p = primitive(p)
    roots = []
    if len(p) > 1 and p[0] == 0:
        roots.append(Fraction(0))
        while len(p) > 1 and p[0] == 0:
            p = p[1:]
    if len(p) <= 1:
        return roots
    for qd in _divisors(p[-1]):
        for pn in _divisors(p[0]) if p[0] else [0]:
            for s in (1, -1):
                cand = Fraction(s * pn, qd)
                if cand not in roots and _eval_frac(_to_frac(p), cand) == 0:
                    roots.append(cand)
    return roots


def _deflate(p, root: Fraction):
    """Divide p by (x - root) exactly; returns primitive integer poly."""
    q, r = _poly_divmod(_to_frac(p), [-root, Fraction(1)])
    assert not any(r), "not a root"
    return _frac_to_int(q)


def _quartic_quadratic_split(p, prec=128):
    """Try to split a rational-root-free integer quartic into two integer
    quadratics, by pairing high-precision roots and verifying exactly."""
    with mp.workprec(prec):
        rts = mpmath.polyroots([mpmath.mpf(c) for c in reversed(p)], maxsteps=200)
        lead = Fraction(p[-1])
        pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
        for (i1, j1), (i2, j2) in pairs:
            r1, r2 = rts[i1], rts[j1]
            s_, p_ = r1 + r2, r1 * r2
            if abs(mpmath.im(s_)) > 1e-12 or abs(mpmath.im(p_)) > 1e-12:
                continue
            cand = []
            for val in (s_, p_):
                fr = Fraction(mpmath.nstr(mpmath.re(val), 25)).limit_denominator(10 ** 6)
                cand.append(fr)
            # candidate factor x^2 - s x + p (times lead handled by division)
            f = _frac_to_int([cand[1], -cand[0], Fraction(1)])
            q, r = _poly_divmod(_to_frac(p), _to_frac(f))
            if not any(r):
                return f, _frac_to_int(q)
    return None


def factor_rational(p):
    """Factor a squarefree primitive integer polynomial over Q.

    Returns (exact_factors, candidates): exact factors are irreducible for
    degree <= 4; factors of degree >= 5 that resist the quartic machinery
    are returned as unproven "candidates".
    """
    p = primitive(p)
    if len(p) <= 1:
        return [], []
    work = [p]
    exact, candidates = [], []
    while work:
        f = work.pop()
        deg = len(f) - 1
        if deg == 0:
            continue
        rr = rational_roots(f)
        if rr:
            for r in rr:
                exact.append(primitive((-r.numerator, r.denominator)))
                f = _deflate(f, r)
            if len(f) > 1:
                work.append(f)
            continue
        if deg <= 3:
            exact.append(f if f[-1] > 0 else tuple(-c for c in f))
            continue
        if deg == 4:
            split = _quartic_quadratic_split(f)
            if split:
                work.extend(split)
            else:
                exact.append(f if f[-1] > 0 else tuple(-c for c in f))
            continue
        candidates.append(f if f[-1] > 0 else tuple(-c for c in f))
    return exact, candidates


# ---------------------------------------------------------------------------
# AlgebraicNumber
# ---------------------------------------------------------------------------

class AlgebraicNumber:
    """A root of an integer polynomial with a certified approximation.

    minpoly: primitive integer coefficients, ascending, positive leading
    coefficient; irreducible over Q whenever `exact` is True (always the
    case for degree <= 4).
    """

    __slots__ = ("minpoly", "approx", "radius", "exact")

    def __init__(self, minpoly, approx, radius, exact=True):
        self.minpoly = tuple(int(c) for c in minpoly)
        self.approx = mpmath.mpc(approx)
        self.radius = mpmath.mpf(radius)
        self.exact = exact

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_rational(cls, q):
        q = Fraction(q)
        with mp.workprec(DEFAULT_PREC_BITS):
            approx = mpmath.mpf(q.numerator) / q.denominator
        return cls((-q.numerator, q.denominator), approx, mpmath.mpf(0))

    @property
    def degree(self):
        return len(self.minpoly) - 1

    def is_rational(self):
        return self.degree == 1

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError("not rational")
        c0, c1 = self.minpoly
        return Fraction(-c0, c1)

    def as_quadext(self):
        """Exact representation in Q(sqrt(d)) for degree <= 2."""
        if self.is_rational():
            return None  # caller embeds rationals explicitly
        if self.degree != 2:
            raise ValueError("degree > 2")
        c0, c1, c2 = self.minpoly
        disc = c1 * c1 - 4 * c2 * c0
        core, sq = _squarefree_core(disc)
        # root = (-c1 +- sq*sqrt(core)) / (2 c2); sign chosen to match approx
        for s in (1, -1):
            val = QuadExt(Fraction(-c1, 2 * c2), Fraction(s * sq, 2 * c2), core)
            if abs(val.to_mpc() - self.approx) <= mpmath.mpf("1e-10") + 4 * self.radius:
                return val
        raise AssertionError("no quadratic branch matches the approximation")

    def __complex__(self):
        return complex(self.approx)

    def __eq__(self, other):
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return (self.minpoly == other.minpoly
                and abs(self.approx - other.approx) <= (self.radius + other.radius) * 2 + mpmath.mpf("1e-30"))

    def __hash__(self):
        return hash(self.minpoly)

    def sort_key(self):
        return (float(mpmath.re(self.approx)), float(mpmath.im(self.approx)))

    def __repr__(self):
        if self.is_rational():
            return f"AlgebraicNumber({self.as_fraction()})"
        return (f"AlgebraicNumber(Root({_poly_str(self.minpoly)}), "
                f"~{mpmath.nstr(self.approx, 12)})")

    def to_json(self):
        return {
            "minpoly": list(self.minpoly),
            "approx": [float(mpmath.re(self.approx)), float(mpmath.im(self.approx))],
            "radius": float(self.radius),
            "exact": self.exact,
        }


def _poly_str(p):
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*z")
        else:
            parts.append(f"{c}*z^{i}")
    return " + ".join(parts) or "0"


def _isolated_roots(intpoly, prec_bits):
    """High-precision roots with radii; retries until disks are disjoint."""
    coeffs = [mpmath.mpf(c) for c in reversed(intpoly)]
    prec = prec_bits
    for _ in range(4):
        with mp.workprec(prec):
            rts, err = mpmath.polyroots(coeffs, error=True, maxsteps=200)
            rts = [mpmath.mpc(r) for r in rts]
            rad = mpmath.mpf(err) * 4 + mpmath.mpf(2) ** (-prec + 8)
            ok = all(abs(rts[i] - rts[j]) > 4 * rad
                     for i in range(len(rts)) for j in range(i + 1, len(rts)))
        if ok:
            return rts, rad
        prec *= 2
    return rts, rad


def roots_of_intpoly(p, prec_bits=DEFAULT_PREC_BITS):
    """All distinct complex roots of an integer polynomial, as
    AlgebraicNumbers carrying exact minpolys where possible."""
    p = squarefree_part(p)
    exact, candidates = factor_rational(p)
    out = []
    for f in exact:
        if len(f) == 2:
            out.append(AlgebraicNumber.from_rational(Fraction(-f[0], f[1])))
            continue
        rts, rad = _isolated_roots(f, prec_bits)
        for r in rts:
            out.append(AlgebraicNumber(f, r, rad, exact=True))
    for f in candidates:
        rts, rad = _isolated_roots(f, prec_bits)
        for r in rts:
            out.append(AlgebraicNumber(f, r, rad, exact=False))
    out.sort(key=AlgebraicNumber.sort_key)
    return out


# ---------------------------------------------------------------------------
# snapping floating values to exact algebraic numbers
# ---------------------------------------------------------------------------

def assignment_domain(coords, prec_bits=DEFAULT_PREC_BITS):
    """Choose the cheapest exact arithmetic able to host all coordinates.

    coords: dict var -> AlgebraicNumber.  Returns (mode, assignment, one)
    with mode one of "rational", "quadratic", "numeric"; the assignment
    maps each var to a Fraction / QuadExt / mpmath.mpc value.
    """
    values = list(coords.values())
    if all(a.is_rational() for a in values):
        return "rational", {v: a.as_fraction() for v, a in coords.items()}, Fraction(1)
    core = None
    ok = all(a.exact for a in values)
    if ok:
        for a in values:
            if a.is_rational():
                continue
            if a.degree != 2:
                ok = False
                break
            d = a.as_quadext().d
            if core is None:
                core = d
            elif core != d:
                ok = False
                break
    if ok and core is not None:
        assign = {}
        for v, a in coords.items():
            assign[v] = (QuadExt.rational(a.as_fraction(), core) if a.is_rational()
                         else a.as_quadext())
        return "quadratic", assign, QuadExt.rational(Fraction(1), core)
    with mp.workprec(prec_bits):
        assign = {v: mpmath.mpc(a.approx) for v, a in coords.items()}
    return "numeric", assign, mpmath.mpf(1)


def snap_to_algebraic(value, tol=1e-9, denom_limit=64, coeff_limit=64):
    """Snap a complex/float value to a rational (denominator <= denom_limit)
    or a small quadratic integer; returns AlgebraicNumber or None."""
    v = mpmath.mpc(value)
    if abs(mpmath.im(v)) < tol:
        re = float(mpmath.re(v))
        fr = Fraction(re).limit_denominator(denom_limit)
        if abs(float(fr) - re) < tol:
            return AlgebraicNumber.from_rational(fr)
        # quadratic: find small (c2, c1, c0) with c2 v^2 + c1 v + c0 ~ 0
        rel = _small_quadratic_relation(mpmath.mpf(re), tol, coeff_limit)
        if rel is not None:
            c0, c1, c2 = rel
            mp_ = primitive((c0, c1, c2))
            if mp_[-1] < 0:
                mp_ = tuple(-c for c in mp_)
            if not rational_roots(mp_):
                for cand in roots_of_intpoly(mp_):
                    if abs(cand.approx - v) < tol * 10:
                        return cand
    return None


def _small_quadratic_relation(x, tol, bound):
    try:
        rel = mpmath.pslq([mpmath.mpf(1), x, x * x], tol=mpmath.mpf(tol) / 100,
                          maxcoeff=bound, maxsteps=2000)
    except Exception:
        rel = None
    if rel is None:
        return None
    c0, c1, c2 = (int(c) for c in rel)
    if c2 == 0:
        return None
    if abs(c0 + c1 * x + c2 * x * x) > tol:
        return None
    return c0, c1, c2
