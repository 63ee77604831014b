"""Freely reduced words and finite presentations."""

from __future__ import annotations

__all__ = ["GroupWord", "GroupPresentation"]


class GroupWord:
    """Word in numbered generators, stored freely reduced.

    letters: tuple of (generator id, exponent) with exponent +-1.
    """

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out = []
        for g, e in letters:
            if e not in (1, -1):
                raise ValueError("letter exponents must be +1 or -1")
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        object.__setattr__(self, "letters", tuple(out))

    def __setattr__(self, *_):
        raise AttributeError("GroupWord is immutable")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other):
        return GroupWord(self.letters + other.letters)

    def inverse(self):
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def conjugate_by(self, g, e=1):
        """Returns (g^e) w (g^-e)."""
        return GroupWord(((g, e),) + self.letters + ((g, -e),))

    def cyclically_reduced(self):
        w = list(self.letters)
        while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
            w = w[1:-1]
        return GroupWord(tuple(w))

    def exponent_sum(self, g=None):
        return sum(e for h, e in self.letters if g is None or h == g)

    def generators(self):
        return {g for g, _ in self.letters}

    def substitute(self, g, replacement: "GroupWord"):
        """Replace every occurrence of generator g by the given word."""
        inv = replacement.inverse()
        out = []
        for h, e in self.letters:
            if h == g:
                out.extend(replacement.letters if e > 0 else inv.letters)
            else:
                out.append((h, e))
        return GroupWord(tuple(out))

    def display(self, names=None):
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            name = names[g] if names else f"m{g}"
            parts.append(name if e > 0 else name + "^-1")
        return " ".join(parts)

    def __repr__(self):
        return f"GroupWord({self.display()})"

    def to_json(self):
        return [[g, e] for g, e in self.letters]

    @classmethod
    def from_json(cls, data):
        return cls(tuple((int(g), int(e)) for g, e in data))


class GroupPresentation:
    """Finitely presented group on generators 1..generator_count."""

    def __init__(self, generator_count, relators):
        self.generator_count = int(generator_count)
        self.relators = [r if isinstance(r, GroupWord) else GroupWord(r) for r in relators]
        for r in self.relators:
            bad = [g for g in r.generators() if not 1 <= g <= self.generator_count]
            if bad:
                raise ValueError(f"relator references unknown generators {bad}")

    def __repr__(self):
        return (f"GroupPresentation({self.generator_count} generators, "
                f"{len(self.relators)} relators)")

    def to_json(self):
        return {
            "generators": self.generator_count,
            "relators": [r.to_json() for r in self.relators],
        }
