"""Braid words, braid-closure knot diagrams, and Wirtinger presentations.

Input is restricted to braid position: the text format is
``m: s1 s2 ...`` (strand count, then signed generator letters) plus the
macro ``torus p q`` for the (p,q)-torus braid (s1 ... s_{p-1})^q.

Arc numbering follows the braid-closure convention: left-edge arcs are
1..m top to bottom; each crossing breaks its under-strand and the new
under-out arc takes the next free integer in braid-word order; arcs that
run off the right edge are identified with the left-edge arc at the same
position, so they never consume a number.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import GroupWord, GroupPresentation

__all__ = ["BraidError", "BraidWord", "Crossing", "Diagram",
           "parse_braid", "build_diagram", "wirtinger_presentation"]


class BraidError(ValueError):
    """Malformed braid text or a closure that is not a knot."""


class BraidWord:
    """strand_count m and signed generator letters (+-s, 1 <= s < m)."""

    def __init__(self, strand_count, letters):
        m = int(strand_count)
        if m < 1:
            raise BraidError(f"strand count must be positive, got {m}")
        letters = tuple(int(s) for s in letters)
        for s in letters:
            if s == 0 or abs(s) >= m:
                raise BraidError(f"letter {s} out of range for {m} strands")
        self.strand_count = m
        self.letters = letters
        perm = self.closure_permutation()
        if _cycle_length(perm, 1) != m:
            raise BraidError(
                f"closure of this braid is a link with "
                f"{_cycle_count(perm)} components, not a knot")

    def closure_permutation(self):
        """perm[p-1] = final position of the strand entering at position p."""
        perm = list(range(1, self.strand_count + 1))
        for s in self.letters:
            i = abs(s)
            for idx, q in enumerate(perm):
                if q == i:
                    perm[idx] = i + 1
                elif q == i + 1:
                    perm[idx] = i
        return tuple(perm)

    def __repr__(self):
        return f"BraidWord({self.strand_count}: {' '.join(map(str, self.letters))})"


def _cycle_length(perm, start):
    k, p = 0, start
    while True:
        p = perm[p - 1]
        k += 1
        if p == start:
            return k


def _cycle_count(perm):
    seen, cnt = set(), 0
    for p in range(1, len(perm) + 1):
        if p in seen:
            continue
        cnt += 1
        q = p
        while q not in seen:
            seen.add(q)
            q = perm[q - 1]
    return cnt


def parse_braid(text: str) -> BraidWord:
    """Parse ``m: s1 s2 ...`` or ``torus p q``."""
    toks = text.replace(":", " : ").split()
    if not toks:
        raise BraidError("empty braid text")
    if toks[0].lower() == "torus":
        if len(toks) != 3:
            raise BraidError("torus macro needs exactly two integers: torus p q")
        try:
            p, q = int(toks[1]), int(toks[2])
        except ValueError as exc:
            raise BraidError(f"malformed torus parameters {toks[1:]!r}") from exc
        if p < 2 or q < 1:
            raise BraidError(f"torus braid needs p >= 2, q >= 1, got ({p},{q})")
        letters = [s for _ in range(q) for s in range(1, p)]
        return BraidWord(p, letters)
    if len(toks) < 2 or toks[1] != ":":
        raise BraidError("expected 'm: s1 s2 ...' or 'torus p q'")
    try:
        m = int(toks[0])
        letters = [int(t) for t in toks[2:]]
    except ValueError as exc:
        raise BraidError(f"malformed braid token in {text!r}") from exc
    return BraidWord(m, letters)


@dataclass(frozen=True)
class Crossing:
    """Wirtinger data at one crossing: the over arc, the incoming and
    outgoing under arcs, the sign, and the position in the braid word."""
    over: int
    under_in: int
    under_out: int
    sign: int
    position: int

    def triple(self):
        return (self.over, self.under_in, self.under_out)


class Diagram:
    """Braid-closure diagram with the final arc numbering applied."""

    def __init__(self, strand_count, arc_count, crossings, closure_permutation):
        self.strand_count = strand_count
        self.arc_count = arc_count
        self.crossings = list(crossings)
        self.closure_permutation = tuple(closure_permutation)
        outs = [c.under_out for c in self.crossings]
        if len(set(outs)) != len(outs):
            raise BraidError("an arc is the under-out of two crossings")

    def wirtinger_triples(self):
        return [c.triple() for c in self.crossings]

    def new_arc_crossings(self):
        """Crossings creating a new arc (under_out > strand_count), by out-arc."""
        return sorted((c for c in self.crossings if c.under_out > self.strand_count),
                      key=lambda c: c.under_out)

    def closure_crossings(self):
        """Crossings whose under-out arc is a left-edge arc, by out-arc."""
        return sorted((c for c in self.crossings if c.under_out <= self.strand_count),
                      key=lambda c: c.under_out)

    def __repr__(self):
        return (f"Diagram({self.arc_count} arcs, {len(self.crossings)} crossings, "
                f"closure {self.closure_permutation})")

    def to_json(self):
        return {
            "arcs": self.arc_count,
            "strands": self.strand_count,
            "closure_permutation": list(self.closure_permutation),
            "crossings": [
                {"over": c.over, "in": c.under_in, "out": c.under_out, "sign": c.sign}
                for c in self.crossings
            ],
        }


def build_diagram(braid: BraidWord) -> Diagram:
    """Trace the braid, then identify right-edge arcs with left-edge arcs."""
    m = braid.strand_count
    pos = list(range(1, m + 1))     # provisional arc id at each position
    nxt = m + 1
    prov = []                       # (over, under_in, under_out, sign)
    for s in braid.letters:
        i = abs(s)
        u, v = pos[i - 1], pos[i]
        w = nxt
        nxt += 1
        if s > 0:
            prov.append((u, v, w, 1))
            pos[i - 1], pos[i] = w, u
        else:
            prov.append((v, u, w, -1))
            pos[i - 1], pos[i] = v, w

    parent = {}

    def find(x):
        r = x
        while parent.get(r, r) != r:
            r = parent[r]
        while parent.get(x, x) != x:
            parent[x], x = r, parent[x]
        return r

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if rb <= m and (ra > m or rb < ra):
            ra, rb = rb, ra
        parent[rb] = ra

    for p in range(1, m + 1):       # closure: right edge position p wraps to arc p
        union(p, pos[p - 1])

    roots = sorted({find(x) for x in range(1, nxt)})
    newid = {}
    k = 0
    for r in roots:
        if r <= m:
            newid[r] = r
            k = max(k, r)
    for r in roots:
        if r > m:
            k += 1
            newid[r] = k

    crossings = [
        Crossing(newid[find(o)], newid[find(i)], newid[find(w)], s, idx)
        for idx, (o, i, w, s) in enumerate(prov)
    ]
    return Diagram(m, len(roots), crossings, braid.closure_permutation())


def wirtinger_presentation(diagram: Diagram, drop_last_relator=False) -> GroupPresentation:
    """One meridian generator per arc; per crossing the relator
    (m_i^s m_j m_i^-s) m_k^-1 for triple (i, j, k) with sign s.

    Relators are ordered with the new-arc defining relators first
    (ascending by out-arc) and the closure relators last (ascending by
    out-arc); the optional flag drops the final relator, which is a
    consequence of the others.
    """
    rels = []
    for c in diagram.new_arc_crossings() + diagram.closure_crossings():
        conj = GroupWord(((c.under_in, 1),)).conjugate_by(c.over, c.sign)
        rels.append(conj * GroupWord(((c.under_out, -1),)))
    if drop_last_relator and rels:
        rels = rels[:-1]
    return GroupPresentation(diagram.arc_count, rels)
