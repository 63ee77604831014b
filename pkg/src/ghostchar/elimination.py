"""Fundamental relations, braid-position elimination, and symmetry reduction.

The fundamental relation attached to a crossing with triple (i, j, k)
reads x[a,k] = x[i,j]*x[a,i] - x[a,j] for every spectator arc a, with the
convention x[a,a] = 2.  For a braid closure, eliminating the relations
whose target is a new arc (in descending target order) rewrites every
pair variable as a polynomial in the base pairs x[i,j], 1 <= i < j <= m;
the closure-crossing relations instantiated at base spectators (and at
the diagonal) then cut out the image of the pair-trace algebraic set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import mpmath

from .algnum import assignment_domain, DEFAULT_PREC_BITS
from .braid import Diagram
from .groebner import GroebnerBasis, SolutionPoint, ZERO_TOL
from .poly import MultiPoly, PairVar

__all__ = ["EliminationError", "RewriteRule", "F2Presentation", "FullPoint",
           "fundamental_rules", "eliminate", "symmetry_reduce", "extend_point"]


class EliminationError(RuntimeError):
    """The substitution system does not terminate (malformed diagram)."""


@dataclass(frozen=True)
class RewriteRule:
    """x[a,target] = x[over,under_in] * x[a,over] - x[a,under_in]."""
    target: int
    over: int
    under_in: int
    crossing: int    # position in the braid word

    def is_closure(self, m):
        return self.target <= m


def fundamental_rules(diagram: Diagram):
    """One rule per crossing: new-arc targets in descending order, then the
    closure targets in descending order (the order the elimination uses)."""
    new, closure = [], []
    for c in diagram.crossings:
        r = RewriteRule(c.under_out, c.over, c.under_in, c.position)
        (new if c.under_out > diagram.strand_count else closure).append(r)
    new.sort(key=lambda r: -r.target)
    closure.sort(key=lambda r: -r.target)
    return new + closure


class F2Presentation:
    """Base variables, defining equations, and the full rewrite table."""

    def __init__(self, strand_count, arc_count, base_vars, equations,
                 equation_labels, rewrite_table, closure_rules, var_map=None,
                 notes=None):
        self.strand_count = strand_count
        self.arc_count = arc_count
        self.base_vars = list(base_vars)
        self.equations = list(equations)
        self.equation_labels = list(equation_labels)
        self.rewrite_table = dict(rewrite_table)
        self.closure_rules = list(closure_rules)
        self.var_map = dict(var_map) if var_map else {}
        self.notes = list(notes) if notes else []

    @property
    def reduced(self):
        return any(v != w for v, w in self.var_map.items())

    def rewrite(self, i, j):
        """Base-variable polynomial for the pair (i, j); x[i,i] is 2."""
        if i == j:
            return MultiPoly.constant(2)
        return self.rewrite_table[PairVar(i, j)]

    def __repr__(self):
        return (f"F2Presentation(m={self.strand_count}, n={self.arc_count}, "
                f"{len(self.base_vars)} vars, {len(self.equations)} equations)")

    def to_json(self):
        from .poly import poly_to_json
        return {
            "m": self.strand_count,
            "arcs": self.arc_count,
            "base_vars": [f"{v.i},{v.j}" for v in self.base_vars],
            "equations": [poly_to_json(e) for e in self.equations],
            "rewrite_table": {f"{v.i},{v.j}": poly_to_json(p)
                              for v, p in sorted(self.rewrite_table.items(),
                                                 key=lambda kv: kv[0])},
        }


def eliminate(diagram: Diagram) -> F2Presentation:
    """Rewrite all pair variables into base pairs and emit the equations."""
    m, n = diagram.strand_count, diagram.arc_count
    rules = fundamental_rules(diagram)
    by_target = {}
    for r in rules:
        if r.target > m:
            if r.over >= r.target or r.under_in >= r.target:
                raise EliminationError(
                    f"rule for arc {r.target} references arcs "
                    f"({r.over},{r.under_in}) that are not earlier")
            by_target[r.target] = r

    table = {}

    def entry(p, q):
        if p == q:
            return MultiPoly.constant(2)
        key = PairVar(p, q)
        got = table.get(key)
        if got is not None:
            return got
        hi = key.j
        if hi <= m:
            val = MultiPoly.var(key)
        else:
            r = by_target.get(hi)
            if r is None:
                raise EliminationError(f"no defining crossing for arc {hi}")
            lo = key.i
            val = entry(r.over, r.under_in) * entry(lo, r.over) - entry(lo, r.under_in)
        table[key] = val
        return val

    for i, j in combinations(range(1, n + 1), 2):
        entry(i, j)

    closure = [r for r in rules if r.is_closure(m)]
    equations, labels = [], []
    seen = {}
    for r in closure:
        for a in range(1, m + 1):
            lhs = MultiPoly.constant(2) if a == r.target else entry(a, r.target)
            rhs = entry(r.over, r.under_in) * entry(a, r.over) - entry(a, r.under_in)
            eq = (lhs - rhs).canonical()
            if eq.is_zero():
                continue
            if eq in seen:
                labels[seen[eq]].append((r.target, a))
            else:
                seen[eq] = len(equations)
                equations.append(eq)
                labels.append([(r.target, a)])

    base = [PairVar(i, j) for i, j in combinations(range(1, m + 1), 2)]
    return F2Presentation(m, n, base, equations, labels, table, closure)


def _pair_orbit_map(m, perm):
    """Representative (lex-min) of each pair orbit under the permutation."""
    sig = {p: perm[p - 1] for p in range(1, m + 1)}
    rep = {}
    for i, j in combinations(range(1, m + 1), 2):
        orbit = [(i, j)]
        cur = (i, j)
        while True:
            cur = tuple(sorted((sig[cur[0]], sig[cur[1]])))
            if cur == (i, j):
                break
            orbit.append(cur)
        rep[(i, j)] = min(orbit)
    return rep


def symmetry_reduce(pres: F2Presentation, perm) -> F2Presentation:
    """Quotient base variables by the closure-permutation orbits.

    The degree-1 identities x[i,j] = x[perm(i),perm(j)] are first verified
    by ideal membership (Groebner reduction of each identity modulo the
    equations); if any identity is not derivable the input presentation is
    returned unchanged apart from a diagnostic note.
    """
    m = pres.strand_count
    if len(perm) != m:
        raise ValueError("permutation length does not match strand count")
    rep = _pair_orbit_map(m, perm)
    idents = [(PairVar(*p), PairVar(*r)) for p, r in rep.items() if p != r]
    if not idents:
        out = _copy_pres(pres)
        out.notes.append("symmetry reduction: permutation acts trivially on pairs")
        return out

    gb = GroebnerBasis(pres.equations, pres.base_vars, order="grevlex")
    for v, w in idents:
        ident = MultiPoly.var(v) - MultiPoly.var(w)
        if not gb.contains(ident):
            out = _copy_pres(pres)
            out.notes.append(
                f"symmetry reduction skipped: identity {v} = {w} is not "
                f"derivable from the equations")
            return out

    sub = {v: MultiPoly.var(w) for v, w in idents}
    equations, labels = [], []
    seen = {}
    for eq, lab in zip(pres.equations, pres.equation_labels):
        e2 = eq.substitute(sub).canonical()
        if e2.is_zero():
            continue
        if e2 in seen:
            labels[seen[e2]].extend(lab)
        else:
            seen[e2] = len(equations)
            equations.append(e2)
            labels.append(list(lab))

    table = {v: p.substitute(sub) for v, p in pres.rewrite_table.items()}
    new_base = sorted({PairVar(*rep[(v.i, v.j)]) for v in pres.base_vars})
    var_map = dict(pres.var_map)
    for v in pres.base_vars:
        var_map[v] = PairVar(*rep[(v.i, v.j)])
    out = F2Presentation(m, pres.arc_count, new_base, equations, labels,
                         table, pres.closure_rules, var_map,
                         pres.notes + [f"symmetry-reduced by orbits of {tuple(perm)}"])
    return out


def _copy_pres(pres):
    return F2Presentation(pres.strand_count, pres.arc_count, pres.base_vars,
                          pres.equations, pres.equation_labels,
                          pres.rewrite_table, pres.closure_rules,
                          pres.var_map, pres.notes)


class FullPoint:
    """Coordinates for every pair of arcs, in one arithmetic domain.

    mode is "rational" (Fraction values), "quadratic" (QuadExt) or
    "numeric" (mpmath.mpc at the working precision).
    """

    def __init__(self, arc_count, values, mode, one, prec_bits=DEFAULT_PREC_BITS):
        self.arc_count = arc_count
        self.values = values
        self.mode = mode
        self.one = one
        self.prec_bits = prec_bits

    def entry(self, i, j):
        if i == j:
            return self.one * 2
        return self.values[PairVar(i, j)]

    def is_zero(self, value):
        if self.mode == "numeric":
            return abs(value) < ZERO_TOL
        if self.mode == "quadratic":
            return value.is_zero()
        return value == 0

    def approx(self, i, j):
        v = self.entry(i, j)
        if self.mode == "rational":
            return complex(v)
        if self.mode == "quadratic":
            return complex(v)
        return complex(v.real, v.imag) if hasattr(v, "real") else complex(v)

    def restrict(self, arcs):
        """Coordinate tuple over the given arcs, in arc order."""
        return tuple(self.entry(i, j) for i, j in combinations(arcs, 2))

    def to_json(self):
        out = {}
        for (i, j) in combinations(range(1, self.arc_count + 1), 2):
            z = self.approx(i, j)
            out[f"{i},{j}"] = [z.real, z.imag]
        return out


def extend_point(pres: F2Presentation, base: SolutionPoint,
                 prec_bits=DEFAULT_PREC_BITS) -> FullPoint:
    """Evaluate the rewrite table at a base solution.

    The base point must satisfy every equation of the presentation;
    otherwise it is rejected.
    """
    coords = {v: base[v] for v in pres.base_vars}
    mode, assign, one = assignment_domain(coords, prec_bits)
    for eq, lab in zip(pres.equations, pres.equation_labels):
        val = eq.evaluate(assign, one=one)
        bad = (abs(val) >= ZERO_TOL) if mode == "numeric" else \
              (not val.is_zero() if mode == "quadratic" else val != 0)
        if bad:
            raise ValueError(f"base point fails equation {lab[0]}")
    values = {}
    for i, j in combinations(range(1, pres.arc_count + 1), 2):
        values[PairVar(i, j)] = pres.rewrite(i, j).evaluate(assign, one=one)
    return FullPoint(pres.arc_count, values, mode, one, prec_bits)
