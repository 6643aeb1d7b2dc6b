"""Small permutation groups: parsing, element orders, and full enumeration.

The groups handled here have at most a few hundred thousand elements, so the
element set is built by plain breadth-first closure rather than by
Schreier-Sims.  The result is only used to cross-check the element orders
recorded in the character-table fixtures.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable


class PermutationError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..degree}; ``images[i-1]`` is the image of point i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise PermutationError(f"images are not a bijection: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], degree: int) -> "Permutation":
        img = list(range(1, degree + 1))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = list(cyc)
            for a in cyc:
                if a < 1 or a > degree or a in seen:
                    raise PermutationError(f"bad or repeated point {a} in cycle {tuple(cyc)}")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        return cls(tuple(img))

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Left-to-right product: apply self, then other."""
        o = other.images
        return Permutation(tuple(o[i - 1] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Permutation.identity(self.degree), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def __str__(self) -> str:
        cs = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cs) or "()"


def element_order(g: Permutation) -> int:
    return lcm(1, *(len(c) for c in g.cycles()))


@dataclass
class PermutationGroup:
    name: str
    generators: list[Permutation]
    declared_order: int | None = None

    def __post_init__(self):
        degrees = {g.degree for g in self.generators}
        if len(degrees) > 1:
            raise PermutationError(f"generators have different degrees {sorted(degrees)}")

    @property
    def degree(self) -> int:
        return self.generators[0].degree if self.generators else 1


_CYCLE = re.compile(r"\(\s*\d+(?:\s*,\s*\d+)*\s*\)|\(\s*\)")


def _parse_cycles(text: str) -> list[list[int]]:
    s = text.replace(" ", "").replace("\t", "")
    pos, cycles = 0, []
    while pos < len(s):
        m = _CYCLE.match(s, pos)
        if not m:
            raise PermutationError(f"malformed cycle syntax near {s[pos:pos + 20]!r}")
        body = m.group()[1:-1]
        if body:
            cycles.append([int(x) for x in body.split(",")])
        pos = m.end()
    return cycles


def parse_generators(text: str, name: str = "") -> PermutationGroup:
    """Parse a generator file: cycle-notation permutations separated by ';' or newlines.

    '#' starts a comment; a line 'order=N' declares the group order.  The degree
    is the largest point mentioned.
    """
    declared = None
    chunks: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"order\s*=\s*(\d+)", line)
        if m:
            declared = int(m.group(1))
            continue
        chunks.extend(c.strip() for c in line.split(";"))
    parsed = [_parse_cycles(c) for c in chunks if c]
    degree = max((a for cyc in parsed for c in cyc for a in c), default=1)
    gens = [Permutation.from_cycles(c, degree) for c in parsed]
    return PermutationGroup(name, gens, declared)


class CapExceeded(RuntimeError):
    pass


def enumerate_elements(G: PermutationGroup, cap: int = 10**6) -> set[Permutation]:
    """All elements of G, by closure of the identity under right multiplication."""
    if cap < 1:
        raise ValueError("cap must be positive")
    ident = Permutation.identity(G.degree)
    seen = {ident}
    frontier = [ident]
    gens = [g.images for g in G.generators]
    while frontier:
        nxt = []
        for x in frontier:
            xi = x.images
            for g in gens:
                y = Permutation(tuple(g[i - 1] for i in xi))
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"group {G.name or ''} has more than {cap} elements")
                    nxt.append(y)
        frontier = nxt
    if G.declared_order is not None and len(seen) != G.declared_order:
        raise PermutationError(f"declared order {G.declared_order} but enumerated {len(seen)}")
    return seen


@dataclass
class Spectrum:
    orders: set[int] = field(default_factory=set)
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def group_order(self) -> int:
        return sum(self.counts.values())


def spectrum(G: PermutationGroup, cap: int = 10**6) -> Spectrum:
    counts = Counter(_fast_order(g.images) for g in enumerate_elements(G, cap))
    return Spectrum(set(counts), dict(sorted(counts.items())))


def _fast_order(images: tuple[int, ...]) -> int:
    seen = bytearray(len(images) + 1)
    order = 1
    for start in range(1, len(images) + 1):
        if seen[start]:
            continue
        n, x = 0, start
        while not seen[x]:
            seen[x] = 1
            x = images[x - 1]
            n += 1
        order = lcm(order, n)
    return order


def load_group(slug: str) -> PermutationGroup:
    """Generators shipped with the package for a fixture group."""
    from .chartables import data_dir

    text = (data_dir() / "groups" / f"{slug}.gens").read_text()
    return parse_generators(text, name=slug)
