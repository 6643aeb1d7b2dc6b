"""Elimination filters applied on top of the HeLP constraints.

* The Wagner test: for a unit u of order n, a prime power p^j dividing n and
  any class D, the partial augmentations of u over the classes powering into D
  sum to eps_D(u^{p^j}) modulo p.
* (p,q)-constant characters: a virtual character that is constant on the
  classes of order p and on those of order q collapses the system for a unit
  of order pq to a single integer unknown.
* The case sweep: every combination of admissible partial augmentations of
  the proper powers is tried independently for a composite order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .chartables import CharacterTable, eligible_classes, prime_divisors
from .cyclotomic import Cyclotomic, _reduce_dense, embed
from .help import HelpSolver, PowerTower, SolutionSet, _trace_row
from .intsolve import ConstraintSystem, UnboundedSystem, enumerate_integer_points, prepare

WAGNER_MODES = ("off", "prime-power", "all")


@dataclass(frozen=True)
class WagnerFailure:
    prime: int
    exponent: int
    target_class: str
    lhs: int
    rhs: int


def _prime_powers(n: int):
    for p in prime_divisors(n):
        j, pj = 1, p
        while n % pj == 0:
            yield p, j, pj
            j += 1
            pj *= p


def wagner_check(tower: PowerTower, t: CharacterTable, p: int, j: int) -> WagnerFailure | None:
    """Check the congruence for the prime power p^j; return the first violated class."""
    n = tower.unit_order
    pj = p**j
    if n % pj:
        raise ValueError(f"{p}^{j} does not divide the unit order {n}")
    lhs = [0] * len(t.classes)
    for i, e in zip(eligible_classes(t, n), tower.unit):
        if e:
            lhs[t.power_class(i, pj)] += e
    rhs = [0] * len(t.classes)
    if pj == n:
        rhs[0] = 1
    else:
        for i, e in zip(eligible_classes(t, n // pj), tower[pj]):
            rhs[i] = e
    for k, (a, b) in enumerate(zip(lhs, rhs)):
        if (a - b) % p:
            return WagnerFailure(p, j, t.classes[k].name, a, b)
    return None


def wagner_filter(tower: PowerTower, t: CharacterTable, p: int | None = None, j: int | None = None) -> bool:
    """True iff the tower passes the Wagner congruences.

    With p and j given only that prime power is tested, otherwise every prime
    power dividing the unit order.
    """
    if p is not None:
        return wagner_check(tower, t, p, j or 1) is None
    return all(wagner_check(tower, t, q, i) is None for q, i, _ in _prime_powers(tower.unit_order))


def wagner_tower_filter(t: CharacterTable, mode: str = "prime-power"):
    """A tower filter for HelpSolver.

    ``prime-power`` applies the test only to units of prime-power order,
    ``all`` to every unit order, ``off`` never.
    """
    if mode not in WAGNER_MODES:
        raise ValueError(f"unknown Wagner mode {mode!r}")
    if mode == "off":
        return None

    def check(tower: PowerTower) -> bool:
        if mode == "prime-power" and len(prime_divisors(tower.unit_order)) > 1:
            return True
        return wagner_filter(tower, t)

    return check


def make_solver(tables: Sequence[CharacterTable], wagner: str = "prime-power") -> HelpSolver:
    tables = tuple(tables)
    base = next((t for t in tables if not t.is_brauer), tables[0])
    names = () if wagner == "off" else (f"wagner:{wagner}",)
    return HelpSolver(tables, wagner_tower_filter(base, wagner), names)


def wagner_comparison(tables: Sequence[CharacterTable], n: int, wagner: str = "all") -> tuple[SolutionSet, SolutionSet]:
    """Solutions for order ``n`` without and with the Wagner test at order ``n``.

    Lower orders are filtered in both runs, so the two sets differ only by
    what the test removes at ``n`` itself.
    """
    tables = tuple(tables)
    base = next((t for t in tables if not t.is_brauer), tables[0])
    check = wagner_tower_filter(base, wagner)
    if check is None:
        raise ValueError("wagner_comparison needs an active Wagner mode")
    lower = HelpSolver(tables, lambda tw: tw.unit_order == n or check(tw), (f"wagner:{wagner} below {n}",))
    return lower.solve(n), make_solver(tables, wagner).solve(n)


# ------------------------------------------------------------ (p,q)-constant characters


@dataclass(frozen=True)
class PQConstantCharacter:
    """A virtual character sum c_i chi_i constant on p-classes and on q-classes."""

    table: str
    characteristic: int
    p: int
    q: int
    coefficients: tuple[tuple[int, int], ...]  # (irreducible index, coefficient), 0-based
    degree: int
    value_on_p: Cyclotomic
    value_on_q: Cyclotomic

    @property
    def source(self) -> str:
        terms = ",".join(str(i + 1) if c == 1 else f"{c}*{i + 1}" for i, c in self.coefficients)
        where = f"mod {self.characteristic}" if self.characteristic else "ordinary"
        return f"({terms}) {where}"

    @property
    def is_character(self) -> bool:
        return all(c > 0 for _, c in self.coefficients)

    def to_json(self) -> dict:
        from .cyclotomic import to_json

        return {
            "table": self.table,
            "characteristic": self.characteristic,
            "p": self.p,
            "q": self.q,
            "source": self.source,
            "coefficients": [[i, c] for i, c in self.coefficients],
            "degree": self.degree,
            "value_on_p": to_json(self.value_on_p),
            "value_on_q": to_json(self.value_on_q),
        }


def _classes_of_order(t: CharacterTable, k: int) -> list[int]:
    return [i for i, c in enumerate(t.classes) if c.element_order == k]


def find_pq_constant(
    t: CharacterTable, p: int, q: int, max_terms: int = 4, max_coeff: int = 2
) -> list[PQConstantCharacter]:
    """All small integer combinations of irreducibles that are (p,q)-constant.

    Combinations use at most ``max_terms`` irreducibles with coefficients in
    ``[-max_coeff, max_coeff]``; of ``xi`` and ``-xi`` only the one with a
    positive leading coefficient is listed.
    """
    return list(iter_pq_constant(t, p, q, max_terms, max_coeff))


def iter_pq_constant(t: CharacterTable, p: int, q: int, max_terms: int = 4, max_coeff: int = 2):
    """Lazy version of ``find_pq_constant``, in the same order."""
    if p == q:
        raise ValueError("p and q must differ")
    pc, qc = _classes_of_order(t, p), _classes_of_order(t, q)
    if not pc or not qc:
        raise ValueError(f"{t.name} has no classes of order {p} or {q}")
    cols = pc + qc
    N = lcm(1, *(chi.values[i].conductor for chi in t.irreducibles for i in cols))

    def coords(v: Cyclotomic) -> tuple[Fraction, ...]:
        return _reduce_dense(N, embed(v, N))

    # difference vectors: constancy means sum c_i * diff_i == 0
    diffs = []
    for chi in t.irreducibles:
        vec = []
        for group in (pc, qc):
            ref = coords(chi.values[group[0]])
            for i in group[1:]:
                vec.extend(a - b for a, b in zip(coords(chi.values[i]), ref))
        diffs.append(tuple(vec))
    zero = tuple(Fraction(0) for _ in diffs[0]) if diffs else ()
    coeff_range = [c for c in range(-max_coeff, max_coeff + 1) if c]
    k = len(t.irreducibles)
    for size in range(1, max_terms + 1):
        for idx in itertools.combinations(range(k), size):
            for cs in itertools.product(coeff_range, repeat=size):
                if cs[0] < 0:
                    continue
                total = zero
                for i, c in zip(idx, cs):
                    total = tuple(a + c * b for a, b in zip(total, diffs[i]))
                if any(total):
                    continue
                if size > 1 and _gcd_all(cs) > 1:
                    continue
                yield _make_pq(t, p, q, tuple(zip(idx, cs)), pc[0], qc[0])


def _gcd_all(cs) -> int:
    from math import gcd

    g = 0
    for c in cs:
        g = gcd(g, c)
    return g


def _make_pq(t, p, q, coefficients, ip, iq) -> PQConstantCharacter:
    degree = 0
    a = b = Cyclotomic.rational(0)
    for i, c in coefficients:
        chi = t.irreducibles[i]
        degree += c * chi.degree
        a = a + chi.values[ip] * c
        b = b + chi.values[iq] * c
    return PQConstantCharacter(t.name, t.characteristic, p, q, coefficients, degree, a, b)


@dataclass
class PQVerdict:
    character: PQConstantCharacter
    infeasible: bool
    solutions: list[tuple[int, int]] = field(default_factory=list)
    note: str = ""


def pq_system(xi: PQConstantCharacter) -> ConstraintSystem:
    """The two-variable system in (eps_p, eps_q) for a unit of order p*q."""
    p, q = xi.p, xi.q
    n = p * q
    a, b = xi.value_on_p, xi.value_on_q
    # xi(u) = a eps_p + b eps_q ; xi(u^p) = b (order q) ; xi(u^q) = a (order p)
    ta, tb = _trace_row(a, n, n), _trace_row(b, n, n)
    tail_q = _trace_row(b, q, n)
    tail_p = _trace_row(a, p, n)
    S = ConstraintSystem(["eps_p", "eps_q"])
    nonneg = xi.is_character
    for l in range(n):
        const = (tail_q[l] + tail_p[l] + xi.degree) / n
        S.add_form((ta[l] / n, tb[l] / n), const, nonneg=nonneg,
                   upper=xi.degree if nonneg else None, label=f"l={l}")
    S.add_equality((1, 1), 1)
    return S


def pq_eliminate(xi: PQConstantCharacter, t: CharacterTable | None = None) -> PQVerdict:
    """Decide whether a unit of order p*q can satisfy the collapsed constraints.

    For a virtual character only integrality is imposed; for a genuine
    character the multiplicities must also lie in [0, xi(1)].
    """
    n = xi.p * xi.q
    if t is not None and any(c.element_order == n for c in t.classes):
        raise ValueError(f"{t.name} has elements of order {n}; the method does not apply")
    S = pq_system(xi)
    P = prepare(S)
    if P.lattice is None:
        return PQVerdict(xi, True, [], "integrality fails")
    if not xi.is_character:
        return PQVerdict(xi, False, [], "integral points exist")
    try:
        pts = enumerate_integer_points(S)
    except UnboundedSystem:
        return PQVerdict(xi, False, [], "unbounded")
    return PQVerdict(xi, not pts, [tuple(x) for x in pts], "bounds checked")


# ------------------------------------------------------------ case sweep


@dataclass
class SweepResult:
    group: str
    unit_order: int
    per_order_counts: dict[int, int]
    case_count: int
    screened_out: int
    feasible_cases: list[dict[int, tuple[int, ...]]]
    solutions: list[PowerTower]

    @property
    def eliminated(self) -> bool:
        return not self.solutions

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "order": self.unit_order,
            "per_order_counts": {str(k): v for k, v in sorted(self.per_order_counts.items())},
            "cases": self.case_count,
            "rejected_by_integrality": self.screened_out,
            "cases_with_solutions": len(self.feasible_cases),
            "eliminated": self.eliminated,
        }


def case_sweep(solver: HelpSolver, n: int) -> SweepResult:
    """Try every combination of admissible partial augmentations of the proper powers.

    Unlike ``HelpSolver.solve`` the powers are chosen independently per order,
    without insisting that the choices form a coherent tower; this matches the
    case count obtained by multiplying the per-order solution counts.
    """
    model = solver.model(n)
    divs = model.tail_divisors
    options = {d: solver.solve(n // d).unit_vectors() for d in divs}
    counts = {n // d: len(options[d]) for d in divs}
    total = 1
    for d in divs:
        total *= len(options[d])
    screen = model.screen
    contrib = {d: [screen.residues(d, v) for v in options[d]] for d in divs}
    moduli = screen.moduli
    passing: list[dict[int, tuple[int, ...]]] = []

    def walk(level: int, acc: list[int], chosen: dict):
        if level == len(divs):
            if all(a % g == 0 for a, g in zip(acc, moduli)):
                passing.append(dict(chosen))
            return
        d = divs[level]
        for v, r in zip(options[d], contrib[d]):
            chosen[d] = v
            walk(level + 1, [a + b for a, b in zip(acc, r)], chosen)
        chosen.pop(d, None)

    if total:
        walk(0, list(screen.alpha), {})
    feasible, sols = [], []
    for tail in passing:
        pts = model.points(tail)
        towers = [PowerTower(n, ((1, x),) + tuple(sorted(tail.items()))) for x in pts]
        if solver.tower_filter is not None:
            towers = [tw for tw in towers if solver.tower_filter(tw)]
        if towers:
            feasible.append(tail)
            sols.extend(towers)
    return SweepResult(solver.base.name, n, counts, total, total - len(passing), feasible, sorted(sols, key=PowerTower.sort_key))


# ------------------------------------------------------------ order elimination

PQ_MODES = ("off", "fallback", "always")


@dataclass(frozen=True)
class FilterConfig:
    """Which filters ``eliminate_order`` applies.

    ``pq_method``: ``fallback`` tries (p,q)-constant characters only when HeLP
    leaves survivors for an order p*q, ``always`` also records a witness for
    orders HeLP already eliminates.
    """

    wagner: str = "prime-power"
    pq_method: str = "fallback"
    pq_max_terms: int = 4
    pq_max_coeff: int = 2

    def __post_init__(self):
        if self.wagner not in WAGNER_MODES:
            raise ValueError(f"unknown Wagner mode {self.wagner!r}")
        if self.pq_method not in PQ_MODES:
            raise ValueError(f"unknown pq mode {self.pq_method!r}")


@dataclass
class OrderVerdict:
    group: str
    unit_order: int
    eliminated: bool
    occurs_in_group: bool
    help_only: SolutionSet
    filtered: SolutionSet
    method: str
    pq_witness: PQConstantCharacter | None = None

    @property
    def survivors(self) -> SolutionSet | None:
        return None if self.eliminated else self.filtered

    def to_json(self) -> dict:
        return {
            "order": self.unit_order,
            "eliminated": self.eliminated,
            "occurs_in_group": self.occurs_in_group,
            "method": self.method,
            "help_solutions": len(self.help_only.towers),
            "filtered_solutions": len(self.filtered.towers),
            "distinct_unit_vectors": len(self.filtered.unit_vectors()),
            "nontrivial": self.filtered.nontrivial_count,
            "class_functions_used": list(self.filtered.class_functions),
            "filters": list(self.filtered.filters),
            "pq_witness": self.pq_witness.to_json() if self.pq_witness else None,
        }


def pq_search(tables: Sequence[CharacterTable], p: int, q: int, config: FilterConfig) -> PQConstantCharacter | None:
    """First (p,q)-constant character, over any usable table, whose system is infeasible."""
    for t in tables:
        if t.is_brauer and t.characteristic in (p, q):
            continue
        if not _classes_of_order(t, p) or not _classes_of_order(t, q):
            continue
        for xi in iter_pq_constant(t, p, q, config.pq_max_terms, config.pq_max_coeff):
            if pq_eliminate(xi).infeasible:
                return xi
    return None


def eliminate_order(
    tables: Sequence[CharacterTable],
    n: int,
    config: FilterConfig = FilterConfig(),
    solvers: tuple[HelpSolver, HelpSolver] | None = None,
) -> OrderVerdict:
    """Decide whether units of order n are ruled out.

    The order is eliminated when no tower survives the configured filters and
    the group itself has no element of order n.  ``solvers`` may pass a
    (plain, filtered) pair to share memoized results across orders.
    """
    plain, filtered = solvers or (HelpSolver(tuple(tables)), make_solver(tables, config.wagner))
    base = filtered.base
    occurs = any(c.element_order == n for c in base.classes)
    raw = plain.solve(n)
    sol = filtered.solve(n)
    method = "occurs in group" if occurs else ("HeLP" if not sol.towers else "none")
    witness = None
    primes = prime_divisors(n)
    if not occurs and config.pq_method != "off" and len(primes) == 2 and primes[0] * primes[1] == n:
        if sol.towers or config.pq_method == "always":
            # Brauer tables first: they are smaller and carry the known witnesses
            ordered = sorted(tables, key=lambda t: (not t.is_brauer, t.characteristic))
            witness = pq_search(ordered, primes[0], primes[1], config)
            if witness is not None and sol.towers:
                method = "pq-constant"
    eliminated = not occurs and (not sol.towers or witness is not None)
    return OrderVerdict(base.name, n, eliminated, occurs, raw, sol, method, witness)
