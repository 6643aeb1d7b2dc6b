"""Prime graphs and forward-chaining reduction rules.

The prime graph of a group has the primes dividing element orders as
vertices, with p and q joined when some element has order divisible by p*q.
The reduction engine derives ``pq_verified`` verdicts for groups from
declared structural facts; it never computes group structure itself.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .chartables import CharacterTable, prime_divisors


@dataclass(frozen=True)
class PrimeGraph:
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        edges = set()
        for p, q in self.edges:
            if p == q:
                raise ValueError(f"loop at {p}")
            if p not in self.vertices or q not in self.vertices:
                raise ValueError(f"edge {{{p},{q}}} leaves the vertex set")
            edges.add((min(p, q), max(p, q)))
        object.__setattr__(self, "edges", frozenset(edges))

    def has_edge(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges

    def non_edges(self) -> list[tuple[int, int]]:
        return [pq for pq in itertools.combinations(sorted(self.vertices), 2) if pq not in self.edges]

    def is_complete(self) -> bool:
        return not self.non_edges()

    def to_json(self) -> dict:
        return {"vertices": sorted(self.vertices), "edges": [list(e) for e in sorted(self.edges)]}


def graph_from_orders(orders: Iterable[int]) -> PrimeGraph:
    orders = set(orders)
    vertices = {p for n in orders for p in prime_divisors(n)}
    edges = {(p, q) for p, q in itertools.combinations(sorted(vertices), 2) if any(n % (p * q) == 0 for n in orders)}
    return PrimeGraph(frozenset(vertices), frozenset(edges))


def graph_from_spectrum(s) -> PrimeGraph:
    """Prime graph of a group from its set of element orders (a ``Spectrum`` or any iterable)."""
    return graph_from_orders(getattr(s, "orders", s))


def graph_from_table(t: CharacterTable) -> PrimeGraph:
    if t.is_brauer:
        raise ValueError(f"{t.name} is a Brauer table; p-singular classes are missing")
    return graph_from_orders(c.element_order for c in t.classes)


class MissingPairError(ValueError):
    pass


@dataclass(frozen=True)
class GraphVerdict:
    verified: bool
    open_pairs: tuple[tuple[int, int], ...]

    @property
    def label(self) -> str:
        return "verified" if self.verified else "undecided"


def gamma_verdict(pi: PrimeGraph, eliminations: Mapping[int, bool]) -> GraphVerdict:
    """Compare the unit-group prime graph with ``pi``.

    ``eliminations`` maps each product p*q of a non-adjacent pair to whether
    units of that order were ruled out.  Survivors never prove an edge, so a
    pair that was not eliminated stays open.
    """
    open_pairs = []
    for p, q in pi.non_edges():
        if p * q not in eliminations:
            raise MissingPairError(f"no verdict for order {p * q}")
        if not eliminations[p * q]:
            open_pairs.append((p, q))
    return GraphVerdict(not open_pairs, tuple(open_pairs))


# ------------------------------------------------------------ reduction engine

FACT_KINDS = ("group", "pq_verified", "quotient", "pi_complete", "almost_simple_images", "direct_product_quotient")


class FactError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionFact:
    """A declared structural fact.

    Payloads by kind:
      group: ``group`` is declared, ``primes`` optionally lists the primes dividing its order
      pq_verified: the prime graph question holds for ``group``
      quotient: ``group`` has normal subgroup ``normal`` with quotient ``image``
      pi_complete: the prime graph of ``group`` is complete
      almost_simple_images: ``images`` are all the almost simple images of ``group``
      direct_product_quotient: ``group`` maps onto the direct product of the almost simple ``images``
    """

    kind: str
    group: str
    normal: str | None = None
    image: str | None = None
    images: tuple[str, ...] = ()
    primes: tuple[int, ...] = ()

    def referenced(self) -> list[str]:
        refs = [self.group]
        if self.normal is not None:
            refs.append(self.normal)
        if self.image is not None:
            refs.append(self.image)
        return refs + list(self.images)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "group": self.group}
        if self.normal is not None:
            out["normal"] = self.normal
        if self.image is not None:
            out["image"] = self.image
        if self.kind in ("almost_simple_images", "direct_product_quotient"):
            out["images"] = list(self.images)
        if self.primes:
            out["primes"] = list(self.primes)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ReductionFact":
        if not isinstance(obj, dict) or "kind" not in obj or "group" not in obj:
            raise FactError(f"fact needs 'kind' and 'group': {obj!r}")
        fact = cls(
            kind=obj["kind"],
            group=str(obj["group"]),
            normal=obj.get("normal"),
            image=obj.get("image"),
            images=tuple(obj.get("images", ())),
            primes=tuple(int(p) for p in obj.get("primes", ())),
        )
        fact.check_shape()
        return fact

    def check_shape(self) -> None:
        if self.kind not in FACT_KINDS:
            raise FactError(f"unknown fact kind {self.kind!r}")
        if not self.group:
            raise FactError("empty group id")
        if self.kind == "quotient" and (not self.normal or not self.image):
            raise FactError(f"quotient fact for {self.group} needs 'normal' and 'image'")
        if self.kind == "direct_product_quotient" and len(self.images) != 2:
            raise FactError(f"direct_product_quotient for {self.group} needs exactly two images")


def load_facts(text: str) -> list[ReductionFact]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise FactError("facts file must hold a JSON list")
    return [ReductionFact.from_json(obj) for obj in data]


@dataclass(frozen=True)
class Derivation:
    """A derived verdict: ``pq_verified`` for a group, or ``pair_verified`` for one prime pair."""

    kind: str
    group: str
    rule: str
    premises: tuple[str, ...]
    pair: tuple[int, int] | None = None

    @property
    def key(self) -> tuple:
        return (self.kind, self.group, self.pair or (0, 0), self.rule, self.premises)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "group": self.group, "rule": self.rule, "premises": list(self.premises)}
        if self.pair is not None:
            out["pair"] = list(self.pair)
        return out


def _describe(f: ReductionFact) -> str:
    if f.kind == "quotient":
        return f"quotient({f.group},{f.normal},{f.image})"
    if f.kind in ("almost_simple_images", "direct_product_quotient"):
        return f"{f.kind}({f.group},[{','.join(f.images)}])"
    return f"{f.kind}({f.group})"


def _check_references(facts: Sequence[ReductionFact]) -> None:
    declared = {f.group for f in facts if f.kind == "group"}
    if not declared:
        return
    for f in facts:
        for ref in f.referenced():
            if ref not in declared:
                raise FactError(f"{_describe(f)} refers to undeclared group {ref!r}")


@dataclass
class _State:
    verified: set[str] = field(default_factory=set)
    pairs: set[tuple[str, tuple[int, int]]] = field(default_factory=set)
    derived: dict[tuple, Derivation] = field(default_factory=dict)

    def add(self, d: Derivation) -> bool:
        if d.key in self.derived:
            return False
        self.derived[d.key] = d
        if d.kind == "pq_verified":
            self.verified.add(d.group)
        else:
            self.pairs.add((d.group, d.pair))
        return True


def reduction_infer(facts: Sequence[ReductionFact]) -> list[Derivation]:
    """Forward-chain the reduction rules to a fixpoint.

    R1: pq_verified for every declared almost simple image gives pq_verified.
    R2: quotient(G,N,Q), pi_complete(N) and pq_verified(Q) give pq_verified(G).
    R2p: quotient(G,N,Q), pq_verified(Q) and the primes of G and N give
         pair_verified(G,{p,q}) whenever q does not divide |N|.
    R2c: pair_verified for every pair of primes of G gives pq_verified(G).
    R3: a quotient that is a direct product of two almost simple groups gives pq_verified.

    Every applicable derivation is kept, so a group may be verified by
    several rules.  The result is sorted and does not depend on the order of
    ``facts``.
    """
    for f in facts:
        f.check_shape()
    _check_references(facts)
    st = _State({f.group for f in facts if f.kind == "pq_verified"})
    primes: dict[str, set[int]] = {}
    for f in facts:
        if f.kind == "group" and f.primes:
            primes.setdefault(f.group, set()).update(f.primes)
    complete = {f.group for f in facts if f.kind == "pi_complete"}

    changed = True
    while changed:
        changed = False
        for f in facts:
            if f.kind == "almost_simple_images" and all(x in st.verified for x in f.images):
                prem = (_describe(f),) + tuple(f"pq_verified({x})" for x in f.images)
                changed |= st.add(Derivation("pq_verified", f.group, "R1", prem))
            elif f.kind == "direct_product_quotient":
                changed |= st.add(Derivation("pq_verified", f.group, "R3", (_describe(f),)))
            elif f.kind == "quotient" and f.image in st.verified:
                if f.normal in complete:
                    prem = (_describe(f), f"pi_complete({f.normal})", f"pq_verified({f.image})")
                    changed |= st.add(Derivation("pq_verified", f.group, "R2", prem))
                if f.group in primes and f.normal in primes:
                    for p, q in itertools.permutations(sorted(primes[f.group]), 2):
                        if q in primes[f.normal]:
                            continue
                        pair = (min(p, q), max(p, q))
                        prem = (_describe(f), f"pq_verified({f.image})", f"primes({f.group})", f"primes({f.normal})")
                        changed |= st.add(Derivation("pair_verified", f.group, "R2p", prem, pair))
        for g, ps in primes.items():
            pairs = list(itertools.combinations(sorted(ps), 2))
            if pairs and all((g, pq) in st.pairs for pq in pairs):
                prem = tuple(f"pair_verified({g},{p},{q})" for p, q in pairs)
                changed |= st.add(Derivation("pq_verified", g, "R2c", prem))
    return sorted(st.derived.values(), key=lambda d: d.key)
