"""Exact sparse multivariate polynomials in pair variables x[i,j].

Coefficients are arbitrary-precision rationals (fractions.Fraction); the
symbolic pipeline never touches floating point.  A monomial is stored as a
sorted tuple of (PairVar, exponent) with all exponents positive, so the
zero-degree monomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = ["PairVar", "MultiPoly", "det", "poly_from_json", "poly_to_json"]


class PairVar:
    """Variable x[i,j] attached to an unordered pair of arcs i != j.

    Normalized so i < j (x[j,i] is the same variable); x[i,i] is not a
    variable, it is the constant 2.
    """

    __slots__ = ("i", "j")

    def __init__(self, i, j):
        if i == j:
            raise ValueError(f"x[{i},{i}] is the constant 2, not a variable")
        if i > j:
            i, j = j, i
        if i < 1:
            raise ValueError(f"arc ids must be positive, got ({i},{j})")
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)

    def __setattr__(self, *_):
        raise AttributeError("PairVar is immutable")

    def key(self):
        return (self.i, self.j)

    def __eq__(self, other):
        return isinstance(other, PairVar) and self.i == other.i and self.j == other.j

    def __lt__(self, other):
        return (self.i, self.j) < (other.i, other.j)

    def __hash__(self):
        return hash((self.i, self.j))

    def __repr__(self):
        return f"x[{self.i},{self.j}]"


def _as_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class MultiPoly:
    """Sparse polynomial: dict from monomial to nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for mono, c in terms.items():
                c = _as_coeff(c)
                if c:
                    t[mono] = c
        object.__setattr__(self, "terms", t)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, c):
        c = _as_coeff(c)
        return cls({(): c}) if c else cls()

    @classmethod
    def var(cls, v: PairVar):
        return cls({((v, 1),): Fraction(1)})

    # -- predicates -----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(m == () for m in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((), Fraction(0))

    def variables(self):
        vs = set()
        for mono in self.terms:
            for v, _ in mono:
                vs.add(v)
        return vs

    def total_degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, Fraction(0)) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return MultiPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.constant(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = t.get(m, Fraction(0)) + c1 * c2
                if s:
                    t[m] = s
                else:
                    t.pop(m, None)
        return MultiPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = MultiPoly.constant(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- substitution and evaluation --------------------------------------
    def substitute(self, assignment):
        """Replace variables by polynomials (ring homomorphism).

        assignment: dict PairVar -> MultiPoly | Fraction | int.  Variables
        not in the map are kept.
        """
        repl = {}
        for v, p in assignment.items():
            repl[v] = p if isinstance(p, MultiPoly) else MultiPoly.constant(p)
        out = MultiPoly()
        for mono, c in self.terms.items():
            term = MultiPoly.constant(c)
            kept = []
            for v, e in mono:
                if v in repl:
                    term = term * repl[v] ** e
                else:
                    kept.append((v, e))
            if kept:
                term = term * MultiPoly({tuple(kept): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, assignment, one=Fraction(1)):
        """Evaluate at numeric values (any field supporting + - *).

        assignment: dict PairVar -> value; every variable must be covered.
        """
        total = None
        for mono, c in self.terms.items():
            term = one * c.numerator
            if c.denominator != 1:
                term = term / c.denominator
            for v, e in mono:
                val = assignment[v]
                for _ in range(e):
                    term = term * val
            total = term if total is None else total + term
        return total if total is not None else one * 0

    # -- canonical form ----------------------------------------------------
    def canonical(self, order=None):
        """Clear denominators, divide by content, lex-leading coeff > 0."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(den, num)
        lead = max(self.terms, key=lambda m: _mono_sort_key(m, order))
        if self.terms[lead] < 0:
            scale = -scale
        return MultiPoly({m: c * scale for m, c in self.terms.items()})

    # -- display -------------------------------------------------------
    def text(self):
        """Canonical text form: terms like `c * x[i,j]^e * ...` with signs."""
        if not self.terms:
            return "0"
        monos = sorted(self.terms, key=_mono_sort_key, reverse=True)
        parts = []
        for m in monos:
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            body = " * ".join([str(abs(c))] + [f"x[{v.i},{v.j}]^{e}" for v, e in m])
            parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.text()})"


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_sort_key(mono, order=None):
    """Lex key: exponent sequence along the variable order (default (i,j))."""
    if order is None:
        # default: rank variables by (i, j); earlier pair = more significant
        d = dict(mono)
        vs = sorted(d)
        return tuple((-v.i, -v.j, d[v]) for v in vs)
    d = {v: e for v, e in mono}
    return tuple(d.get(v, 0) for v in order)


def det(rows):
    """Determinant by cofactor expansion; entries are MultiPoly (size <= 4)."""
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise ValueError("matrix is not square")
    if k == 0:
        return MultiPoly.constant(1)
    if k > 4:
        raise ValueError("det supports size <= 4")
    grid = [[e if isinstance(e, MultiPoly) else MultiPoly.constant(e) for e in r]
            for r in rows]
    return _det_rec(grid)


def _det_rec(g):
    k = len(g)
    if k == 1:
        return g[0][0]
    out = MultiPoly()
    sign = 1
    for col in range(k):
        minor = [[g[r][c] for c in range(k) if c != col] for r in range(1, k)]
        term = g[0][col] * _det_rec(minor)
        out = out + (term if sign > 0 else -term)
        sign = -sign
    return out


# -- JSON form: [{"coeff": "p/q", "monomial": {"i,j": e}}] -----------------

def poly_to_json(p: MultiPoly):
    out = []
    for m in sorted(p.terms, key=_mono_sort_key, reverse=True):
        c = p.terms[m]
        out.append({
            "coeff": f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator),
            "monomial": {f"{v.i},{v.j}": e for v, e in m},
        })
    return out


def poly_from_json(items):
    terms = {}
    for it in items:
        mono = tuple(sorted(
            (PairVar(*map(int, k.split(","))), int(e))
            for k, e in it["monomial"].items()
        ))
        terms[mono] = Fraction(it["coeff"])
    return MultiPoly(terms)
