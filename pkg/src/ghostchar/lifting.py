"""Lift feasibility: hexagon and rectangle relation data at a point.

A base solution of the fundamental-relation equations lifts to the
trace-free slice exactly when the rectangle determinants all vanish and
the hexagon products admit a consistent assignment of triple coordinates.
A point failing either family is a ghost character.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import mpmath

from .algnum import DEFAULT_PREC_BITS
from .braid import BraidWord, build_diagram
from .elimination import FullPoint, eliminate, extend_point, symmetry_reduce
from .groebner import SolutionPoint, solve_zero_dim

__all__ = ["DMatrix", "hexagon_data", "rectangle_values", "hexagon_consistent",
           "LiftCertificate", "classify_point", "find_ghosts", "GhostReport"]


class DMatrix:
    """Half-determinant data D[I][J] over all arc triples I, J.

    Entries are interned: `values` is the list of distinct entry values and
    `index[(p, q)]` (p <= q, triple positions) points into it.
    """

    def __init__(self, triples, values, index, mode):
        self.triples = triples
        self.values = values
        self.index = index
        self.mode = mode

    def value(self, p, q):
        if p > q:
            p, q = q, p
        return self.values[self.index[(p, q)]]

    def __len__(self):
        return len(self.triples)


def _det3(e):
    """Determinant of a 3x3 matrix given as a 9-tuple, row major."""
    a, b, c, d, ee, f, g, h, i = e
    return a * (ee * i - f * h) - b * (d * i - f * g) + c * (d * h - ee * g)


def hexagon_data(point: FullPoint) -> DMatrix:
    """D[I][J] = det(x[i_a, j_b]) / 2 for all triples I <= J."""
    n = point.arc_count
    triples = list(combinations(range(1, n + 1), 2 + 1))
    # interned pair values: pv[i][j] = id of x[i,j]
    vals = []
    vid = {}

    def intern(v):
        k = vid.get(v)
        if k is None:
            k = len(vals)
            vals.append(v)
            vid[v] = k
        return k

    pv = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            k = intern(point.entry(i, j))
            pv[i][j] = k
            pv[j][i] = k

    det_memo = {}
    index = {}
    out_vals = []
    out_id = {}
    tcount = len(triples)
    for p in range(tcount):
        i1, i2, i3 = triples[p]
        r1, r2, r3 = pv[i1], pv[i2], pv[i3]
        for q in range(p, tcount):
            j1, j2, j3 = triples[q]
            key = (r1[j1], r1[j2], r1[j3], r2[j1], r2[j2], r2[j3],
                   r3[j1], r3[j2], r3[j3])
            kid = det_memo.get(key)
            if kid is None:
                d = _det3(tuple(vals[t] for t in key)) / 2
                kid = out_id.get(d)
                if kid is None:
                    kid = len(out_vals)
                    out_vals.append(d)
                    out_id[d] = kid
                det_memo[key] = kid
            index[(p, q)] = kid
    return DMatrix(triples, out_vals, index, point.mode)


def rectangle_values(point: FullPoint, all_quadruples=False):
    """4x4 determinants with diagonal 2 over rows/columns (1, 2, a, b),
    3 <= a < b <= n; with all_quadruples, every 4-subset (i<j<k<l) instead."""
    n = point.arc_count
    if all_quadruples:
        quads = list(combinations(range(1, n + 1), 4))
    else:
        quads = [(1, 2, a, b) for a, b in combinations(range(3, n + 1), 2)]
    memo = {}
    out = {}
    for quad in quads:
        entries = tuple(point.entry(i, j) for i in quad for j in quad)
        v = memo.get(entries)
        if v is None:
            v = _det4(entries)
            memo[entries] = v
        out[quad if all_quadruples else quad[2:]] = v
    return out


def _det4(e):
    """Determinant of a 4x4 matrix given as a 16-tuple, row major."""
    out = None
    rows = (e[0:4], e[4:8], e[8:12], e[12:16])
    for col, sign in ((0, 1), (1, -1), (2, 1), (3, -1)):
        minor = tuple(rows[r][c] for r in range(1, 4) for c in range(4) if c != col)
        term = rows[0][col] * _det3(minor)
        if sign < 0:
            term = -term
        out = term if out is None else out + term
    return out


def hexagon_consistent(D: DMatrix, point: FullPoint, prec_bits=DEFAULT_PREC_BITS):
    """Decide whether some assignment x_I of triple coordinates satisfies
    x_I * x_J = D[I][J] for all triples.

    Returns (witness, failure): witness is a dict triple -> complex value
    when consistent (None otherwise); failure is the offending pair of
    triples (None when consistent).  With a nonzero diagonal entry D[I0][I0]
    the product equations are verified exactly in cross-multiplied form
    D[I0][I] * D[I0][J] = D[I][J] * D[I0][I0].
    """
    tcount = len(D.triples)
    zero = point.is_zero
    p0 = None
    for p in range(tcount):
        if not zero(D.value(p, p)):
            p0 = p
            break
    if p0 is None:
        for (p, q), kid in D.index.items():
            if not zero(D.values[kid]):
                return None, (D.triples[p], D.triples[q])
        return {t: 0j for t in D.triples}, None

    d00 = D.value(p0, p0)
    row0 = [D.value(min(p0, p), max(p0, p)) for p in range(tcount)]
    checked = {}
    for (p, q), kid in D.index.items():
        key = (D.index[(min(p0, p), max(p0, p))],
               D.index[(min(p0, q), max(p0, q))], kid)
        ok = checked.get(key)
        if ok is None:
            lhs = row0[p] * row0[q]
            rhs = D.values[kid] * d00
            ok = zero(lhs - rhs)
            checked[key] = ok
        if not ok:
            return None, (D.triples[p], D.triples[q])

    with mpmath.mp.workprec(prec_bits):
        root = mpmath.sqrt(mpmath.mpc(_approx(d00)))
        witness = {}
        for p, t in enumerate(D.triples):
            witness[t] = complex(mpmath.mpc(_approx(row0[p])) / root)
    return witness, None


def _approx(v):
    try:
        return complex(v)
    except TypeError:
        return complex(float(v), 0.0)


@dataclass
class LiftCertificate:
    """Outcome of the (H)/(R) checks at one base point."""
    verdict: str                                  # "lifts" or "ghost"
    failing_rectangles: list = field(default_factory=list)   # [(key, value)]
    hexagon_witness: dict | None = None           # triple -> complex
    hexagon_failure: tuple | None = None          # (I, J) triple pair
    arithmetic_mode: str = "rational"

    def is_ghost(self):
        return self.verdict == "ghost"

    def to_json(self):
        out = {
            "verdict": self.verdict,
            "arithmetic_mode": self.arithmetic_mode,
            "failing_rectangles": [
                {"rows": list(key), "value": list(_json_value(v))}
                for key, v in self.failing_rectangles
            ],
        }
        if self.hexagon_failure is not None:
            out["hexagon_failure"] = [list(t) for t in self.hexagon_failure]
        if self.hexagon_witness is not None:
            out["witness"] = {",".join(map(str, t)): [z.real, z.imag]
                              for t, z in sorted(self.hexagon_witness.items())}
        return out


def _json_value(v):
    z = _approx(v)
    return (z.real, z.imag)


def classify_point(pres, base: SolutionPoint, prec_bits=DEFAULT_PREC_BITS,
                   all_rectangles=False) -> LiftCertificate:
    """Extend a base solution to all arcs and decide lift vs ghost."""
    fp = extend_point(pres, base, prec_bits)
    rect = rectangle_values(fp, all_quadruples=all_rectangles)
    failing = sorted((key, v) for key, v in rect.items() if not fp.is_zero(v))
    D = hexagon_data(fp)
    witness, failure = hexagon_consistent(D, fp, prec_bits)
    verdict = "ghost" if (failing or failure is not None) else "lifts"
    return LiftCertificate(
        verdict=verdict,
        failing_rectangles=failing,
        hexagon_witness=witness,
        hexagon_failure=failure,
        arithmetic_mode=fp.mode,
    )


@dataclass
class GhostReport:
    """Everything the braid-to-ghost pipeline produced."""
    braid: BraidWord
    presentation: object
    points: list            # [(SolutionPoint, LiftCertificate)]

    def ghosts(self):
        return [(p, c) for p, c in self.points if c.is_ghost()]


def find_ghosts(braid: BraidWord, symmetry=True, all_rectangles=False,
                prec_bits=DEFAULT_PREC_BITS) -> GhostReport:
    """Eliminate, optionally symmetry-reduce, solve, and classify."""
    diagram = build_diagram(braid)
    pres = eliminate(diagram)
    if symmetry:
        pres = symmetry_reduce(pres, braid.closure_permutation())
    sols = solve_zero_dim(pres.equations, pres.base_vars, prec_bits)
    points = [(s, classify_point(pres, s, prec_bits, all_rectangles)) for s in sols]
    return GhostReport(braid, pres, points)
