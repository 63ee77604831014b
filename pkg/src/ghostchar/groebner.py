"""Buchberger Groebner bases over Q and zero-dimensional system solving.

The public solving order is lexicographic (needed for triangular
elimination); graded reverse lex is available internally because ideal
membership is order-independent and grevlex bases are far cheaper.
"""

from __future__ import annotations

import heapq
import itertools
from fractions import Fraction

import mpmath

from .algnum import (AlgebraicNumber, QuadExt, assignment_domain,
                     roots_of_intpoly, primitive, DEFAULT_PREC_BITS)
from .poly import MultiPoly, PairVar

__all__ = ["GroebnerBasis", "groebner", "groebner_lex", "SolutionPoint",
           "solve_zero_dim", "PositiveDimensionalError", "TooManyCandidatesError"]

ZERO_TOL = mpmath.mpf("1e-20")


class PositiveDimensionalError(RuntimeError):
    """The ideal has no univariate eliminant for some variable."""


class TooManyCandidatesError(RuntimeError):
    """Candidate grid for back-substitution exceeds the safety cap."""


# -- monomials as exponent tuples ------------------------------------------

def _m_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))

def _m_div(a, b):
    return tuple(x - y for x, y in zip(a, b))

def _m_divides(a, b):
    return all(x <= y for x, y in zip(a, b))

def _m_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _key_lex(m):
    return m

def _key_grevlex(m):
    return (sum(m), tuple(-e for e in reversed(m)))

_KEYS = {"lex": _key_lex, "grevlex": _key_grevlex}


def _to_exps(p: MultiPoly, index):
    n = len(index)
    out = {}
    for mono, c in p.terms.items():
        e = [0] * n
        for v, k in mono:
            e[index[v]] = k
        out[tuple(e)] = c
    return out


def _from_exps(d, variables):
    terms = {}
    for e, c in d.items():
        mono = tuple(sorted((variables[i], k) for i, k in enumerate(e) if k))
        terms[mono] = c
    return MultiPoly(terms)


def _normal_form(p, basis, key):
    """Full normal form of dict-poly p modulo [(poly, lm, lc)] basis."""
    p = dict(p)
    r = {}
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        for g, lmg, lcg in basis:
            if _m_divides(lmg, m):
                f = c / lcg
                q = _m_div(m, lmg)
                for mg, cg in g.items():
                    if mg == lmg:
                        continue
                    mm = _m_mul(mg, q)
                    v = p.get(mm, _F0) - f * cg
                    if v:
                        p[mm] = v
                    else:
                        p.pop(mm, None)
                break
        else:
            r[m] = c
    return r

_F0 = Fraction(0)


def _buchberger(polys, nvars, key):
    G = []          # list of (dictpoly, lm, lc)
    for p in polys:
        if p:
            r = _normal_form(p, G, key)
            if r:
                lm = max(r, key=key)
                G.append((r, lm, r[lm]))
    pending = []    # heap of (lcm_key, i, j, lcm)
    inheap = set()

    def push(i, j):
        lcm = _m_lcm(G[i][1], G[j][1])
        heapq.heappush(pending, (key(lcm), i, j, lcm))
        inheap.add((i, j))

    for i, j in itertools.combinations(range(len(G)), 2):
        push(i, j)

    while pending:
        _, i, j, lcm = heapq.heappop(pending)
        inheap.discard((i, j))
        lmi, lmj = G[i][1], G[j][1]
        if _m_lcm(lmi, lmj) != lcm:
            continue
        # product criterion
        if _m_mul(lmi, lmj) == lcm:
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if _m_divides(G[k][1], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in inheap and b not in inheap:
                    skip = True
                    break
        if skip:
            continue
        # s-polynomial
        pi, _, ci = G[i]
        pj, _, cj = G[j]
        qi, qj = _m_div(lcm, lmi), _m_div(lcm, lmj)
        s = {}
        for m, c in pi.items():
            s[_m_mul(m, qi)] = c / ci
        for m, c in pj.items():
            mm = _m_mul(m, qj)
            v = s.get(mm, _F0) - c / cj
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)
        r = _normal_form(s, G, key)
        if r:
            lm = max(r, key=key)
            G.append((r, lm, r[lm]))
            new = len(G) - 1
            for t in range(new):
                push(t, new)
    return _interreduce(G, key)


def _interreduce(G, key):
    # minimal: drop polys whose lm is divisible by another lm
    keep = []
    lms = [g[1] for g in G]
    for i, (p, lm, lc) in enumerate(G):
        if any(j != i and _m_divides(lms[j], lm) and (lms[j] != lm or j < i)
               for j in range(len(G))):
            continue
        keep.append((p, lm, lc))
    # fully reduce each against the others, make monic
    out = []
    for i, (p, lm, lc) in enumerate(keep):
        rest = [keep[j] for j in range(len(keep)) if j != i]
        r = _normal_form(p, rest, key)
        if not r:
            continue
        lm2 = max(r, key=key)
        lc2 = r[lm2]
        out.append(({m: c / lc2 for m, c in r.items()}, lm2, Fraction(1)))
    out.sort(key=lambda g: key(g[1]))
    return out


class GroebnerBasis:
    """Reduced Groebner basis with a fixed variable order."""

    def __init__(self, system, variables, order="lex"):
        if order not in _KEYS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.variables = list(variables)
        self.order = order
        self._key = _KEYS[order]
        index = {v: i for i, v in enumerate(self.variables)}
        for p in system:
            extra = p.variables() - set(self.variables)
            if extra:
                raise ValueError(f"system mentions variables outside the order: {sorted(extra)}")
        polys = [_to_exps(p, index) for p in system]
        self._G = _buchberger(polys, len(self.variables), self._key)
        self._index = index

    @property
    def basis(self):
        return [_from_exps(g[0], self.variables) for g in self._G]

    def reduce(self, p: MultiPoly) -> MultiPoly:
        """Normal form of p modulo the basis."""
        d = _to_exps(p, self._index)
        return _from_exps(_normal_form(d, self._G, self._key), self.variables)

    def contains(self, p: MultiPoly) -> bool:
        return self.reduce(p).is_zero()

    def is_trivial(self):
        """True when 1 is in the ideal (empty variety)."""
        return any(g[1] == (0,) * len(self.variables) for g in self._G)

    def univariate_in(self, v: PairVar):
        """The eliminant in v, if the basis contains one."""
        iv = self._index[v]
        best = None
        for g, lm, _ in self._G:
            if all(all(e == 0 for k, e in enumerate(m) if k != iv) for m in g):
                deg = max(m[iv] for m in g)
                if best is None or deg < best[0]:
                    best = (deg, g)
        if best is None:
            return None
        deg, g = best
        coeffs = [Fraction(0)] * (deg + 1)
        for m, c in g.items():
            coeffs[m[iv]] = c
        den = 1
        for c in coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        return primitive(tuple(int(c * den) for c in coeffs))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def groebner(system, variables, order="lex"):
    return GroebnerBasis(system, variables, order=order)


def groebner_lex(system, variables):
    """Reduced lexicographic Groebner basis (Buchberger)."""
    return GroebnerBasis(system, variables, order="lex").basis


# ---------------------------------------------------------------------------
# zero-dimensional solving
# ---------------------------------------------------------------------------

class SolutionPoint:
    """Solution coordinates: PairVar -> AlgebraicNumber."""

    def __init__(self, coordinates):
        self.coordinates = dict(coordinates)

    def __getitem__(self, v):
        return self.coordinates[v]

    def variables(self):
        return sorted(self.coordinates)

    def is_rational(self):
        return all(a.is_rational() for a in self.coordinates.values())

    def sort_key(self):
        return tuple(self.coordinates[v].sort_key() for v in sorted(self.coordinates))

    def __repr__(self):
        inner = ", ".join(f"{v}={a!r}" for v, a in sorted(self.coordinates.items(),
                                                          key=lambda kv: kv[0]))
        return f"SolutionPoint({inner})"

    def to_json(self):
        return {f"{v.i},{v.j}": a.to_json() for v, a in sorted(self.coordinates.items(),
                                                               key=lambda kv: kv[0])}


def solve_zero_dim(system, variables, prec_bits=DEFAULT_PREC_BITS):
    """All complex solutions of a zero-dimensional system.

    Coordinates of each solution are AlgebraicNumbers; the solution set is
    returned without multiplicities, sorted by coordinate approximations.
    Raises PositiveDimensionalError when some variable has no eliminant.
    """
    variables = list(variables)
    system = [p for p in system if not p.is_zero()]
    for p in system:
        if p.is_constant() and not p.is_zero():
            return []
    if not variables:
        return [SolutionPoint({})]

    roots_per_var = {}
    for v in variables:
        others = [w for w in variables if w != v]
        gb = GroebnerBasis(system, others + [v], order="lex")
        if gb.is_trivial():
            return []
        elim = gb.univariate_in(v)
        if elim is None or len(elim) <= 1:
            raise PositiveDimensionalError(f"no univariate eliminant for {v}")
        roots_per_var[v] = roots_of_intpoly(elim, prec_bits)

    total = 1
    for v in variables:
        total *= max(1, len(roots_per_var[v]))
    if total > 200000:
        raise TooManyCandidatesError(f"{total} candidate points")

    sols = []
    for combo in itertools.product(*(roots_per_var[v] for v in variables)):
        point = dict(zip(variables, combo))
        if _satisfies(system, point, prec_bits):
            sols.append(SolutionPoint(point))
    sols.sort(key=SolutionPoint.sort_key)
    return sols


def _satisfies(system, point, prec_bits):
    mode, assign, one = assignment_domain(point, prec_bits)
    if mode == "rational":
        return all(p.evaluate(assign, one=one) == 0 for p in system)
    if mode == "quadratic":
        return all(p.evaluate(assign, one=one).is_zero() for p in system)
    with mpmath.mp.workprec(prec_bits):
        return all(abs(p.evaluate(assign, one=one)) < ZERO_TOL for p in system)
