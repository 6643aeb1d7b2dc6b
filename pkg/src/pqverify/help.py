"""HeLP constraints for torsion units and their exact solution.

For a normalized unit ``u`` of order ``n`` and a class function ``chi`` the
multiplicity of ``zeta_n^l`` as an eigenvalue of ``u`` under ``chi`` is

    mu_l(u, chi) = 1/n * sum_{d | n} Tr_{Q(zeta_{n/d})/Q}( chi(u^d) zeta_{n/d}^{-l} )

where ``chi(u^d) = sum_C eps_C(u^d) chi(C)``.  Only the ``d = 1`` term involves
the unknown partial augmentations of ``u`` itself; the others are fixed once
the partial augmentations of all proper powers (the *tower tail*) are chosen.
Every ``mu_l`` must be a nonnegative integer.

The solver works recursively: the admissible towers of every proper divisor
order are computed first and combined coherently into tails.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .chartables import CharacterTable, ClassFunction, eligible_classes, prime_divisors
from .cyclotomic import Cyclotomic, embed, ramanujan_sum
from .intsolve import CongruenceScreen, ConstraintSystem, enumerate_integer_points, homogeneous_basis


class HelpInputError(ValueError):
    pass


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class PartialAugmentationVector:
    """Partial augmentations of a unit of order ``unit_order`` on the named classes."""

    unit_order: int
    classes: tuple[str, ...]
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.classes) != len(self.entries):
            raise HelpInputError("one entry per class expected")
        if sum(self.entries) != 1:
            raise HelpInputError(f"partial augmentations must sum to 1, got {self.entries}")
        if any(c == "1a" for c in self.classes):
            raise HelpInputError("the identity class never carries a partial augmentation")

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.classes, self.entries))


@dataclass(frozen=True, order=True)
class PowerTower:
    """Partial augmentations of ``u^d`` for every divisor ``d < unit_order``.

    ``pa`` is a tuple of ``(d, entries)`` sorted by ``d``; the entries of
    ``u^d`` are indexed by ``eligible_classes(table, unit_order // d)``.
    """

    unit_order: int
    pa: tuple[tuple[int, tuple[int, ...]], ...]

    def __getitem__(self, d: int) -> tuple[int, ...]:
        for e, v in self.pa:
            if e == d:
                return v
        raise KeyError(d)

    @property
    def unit(self) -> tuple[int, ...]:
        return self.pa[0][1]

    def sort_key(self):
        return tuple(v for _, v in self.pa)

    def to_json(self) -> dict[str, list[int]]:
        return {str(d): list(v) for d, v in self.pa}


def group_element_tower(t: CharacterTable, class_index: int) -> PowerTower:
    """The tower of an actual group element of the given class."""
    n = t.classes[class_index].element_order
    pa = []
    for d in divisors(n)[:-1]:
        target = t.power_class(class_index, d)
        elig = eligible_classes(t, n // d)
        pa.append((d, tuple(int(i == target) for i in elig)))
    return PowerTower(n, tuple(pa))


def is_trivial_tower(tower: PowerTower, t: CharacterTable) -> bool:
    elig = eligible_classes(t, tower.unit_order)
    u = tower.unit
    if sorted(u) != [0] * (len(u) - 1) + [1]:
        return False
    return t.classes[elig[u.index(1)]].element_order == tower.unit_order


def unit_character_value(t: CharacterTable, chi: ClassFunction, v: PartialAugmentationVector | Sequence[str]):
    """chi(u) = sum_C eps_C(u) chi(C).

    With a concrete vector the value is returned as a Cyclotomic; with a list of
    class names the symbolic linear form ``{class: chi(C)}`` is returned.
    """
    names = v.classes if isinstance(v, PartialAugmentationVector) else tuple(v)
    try:
        vals = {c: chi.values[t.class_index(c)] for c in names}
    except KeyError as e:
        raise HelpInputError(f"class {e} is not a class of {t.name}") from None
    if not isinstance(v, PartialAugmentationVector):
        return vals
    total = Cyclotomic.rational(0)
    for c, e in zip(v.classes, v.entries):
        if e:
            total = total + vals[c] * e
    return total


@lru_cache(maxsize=None)
def _ramanujan_row(m: int) -> tuple[int, ...]:
    return tuple(ramanujan_sum(m, j) for j in range(m))


def _trace_row(value: Cyclotomic, m: int, n: int) -> tuple[Fraction, ...]:
    """Tr_{Q(zeta_m)/Q}(value * zeta_m^{-l}) for l = 0..n-1 (m | n)."""
    dense = embed(value, m)
    c = _ramanujan_row(m)
    out = []
    for l in range(n):
        out.append(sum((a * c[(k - l) % m] for k, a in dense.items() if a), Fraction(0)))
    return tuple(out)


def _class_functions(tables: Sequence[CharacterTable], n: int):
    """(label, table, character) triples usable for units of order n."""
    out = []
    for t in tables:
        if t.is_brauer and n % t.characteristic == 0:
            raise HelpInputError(f"{t.name} mod {t.characteristic} cannot be used for order {n}")
        tag = f"mod{t.characteristic}" if t.is_brauer else "ord"
        for chi in t.irreducibles:
            out.append((f"{tag}:{chi.name}", t, chi))
    return out


class HelpModel:
    """The mu-forms of all class functions for units of a fixed order ``n``.

    Coefficients are precomputed so a concrete tower tail only requires a
    matrix-vector product to fix the constants.
    """

    def __init__(self, tables: Sequence[CharacterTable], n: int):
        if n < 2:
            raise HelpInputError("unit order must be at least 2")
        if not tables:
            raise HelpInputError("at least one character table is required")
        ordinary = [t for t in tables if not t.is_brauer]
        self.base = ordinary[0] if ordinary else tables[0]
        for p in prime_divisors(n):
            if self.base.group_order % p:
                raise HelpInputError(f"prime {p} does not divide |{self.base.name}|")
        self.tables = tuple(tables)
        self.n = n
        self.variables = eligible_classes(self.base, n)
        self.variable_names = tuple(self.base.classes[i].name for i in self.variables)
        self.tail_divisors = divisors(n)[1:-1]
        self.tail_classes = {d: eligible_classes(self.base, n // d) for d in self.tail_divisors}
        self.labels: list[tuple[str, int]] = []
        self.coeffs: list[tuple[Fraction, ...]] = []
        self.degrees: list[int] = []
        self.base_const: list[Fraction] = []
        # tail_terms[d][form] = row over tail_classes[d]
        self.tail_terms: dict[int, list[tuple[Fraction, ...]]] = {d: [] for d in self.tail_divisors}
        for label, t, chi in _class_functions(tables, n):
            var_rows = [_trace_row(chi.values[self._index(t, i)], n, n) for i in self.variables]
            tail_rows = {
                d: [_trace_row(chi.values[self._index(t, i)], n // d, n) for i in self.tail_classes[d]]
                for d in self.tail_divisors
            }
            for l in range(n):
                self.labels.append((label, l))
                self.coeffs.append(tuple(r[l] / n for r in var_rows))
                self.degrees.append(chi.degree)
                self.base_const.append(Fraction(chi.degree, n))
                for d in self.tail_divisors:
                    self.tail_terms[d].append(tuple(r[l] / n for r in tail_rows[d]))

    def _index(self, t: CharacterTable, i: int) -> int:
        if t is self.base:
            return i
        try:
            return t.class_index(self.base.classes[i].name)
        except KeyError:
            raise HelpInputError(f"class {self.base.classes[i].name} missing from {t.name}") from None

    def constants(self, tail: dict[int, Sequence[int]]) -> list[Fraction]:
        missing = [d for d in self.tail_divisors if d not in tail]
        if missing:
            raise HelpInputError(f"tower tail lacks the powers u^{missing}")
        consts = list(self.base_const)
        for d in self.tail_divisors:
            v = tail[d]
            for k, row in enumerate(self.tail_terms[d]):
                s = sum((a * e for a, e in zip(row, v) if e and a), Fraction(0))
                if s:
                    consts[k] += s
        return consts

    @property
    def screen(self) -> "TailScreen":
        if not hasattr(self, "_screen"):
            self._screen = TailScreen(self)
        return self._screen

    def tail_feasible(self, tail: dict[int, Sequence[int]]) -> bool:
        """Cheap necessary condition: the integrality congruences are solvable."""
        return self.screen.feasible(tail)

    def system(self, tail: dict[int, Sequence[int]] | None = None) -> ConstraintSystem:
        consts = self.constants(tail or {})
        S = ConstraintSystem(list(self.variable_names))
        seen = set()
        for lab, a, b, deg in zip(self.labels, self.coeffs, consts, self.degrees):
            key = (a, b, deg)
            if key in seen:
                continue
            seen.add(key)
            S.add_form(a, b, upper=deg, label=f"{lab[0]}/l={lab[1]}")
        S.add_equality([1] * len(self.variables), 1)
        return S

    def points(self, tail: dict[int, Sequence[int]] | None = None) -> list[tuple[int, ...]]:
        """All integral partial-augmentation vectors of u for this tail."""
        S = self.system(tail)
        if not hasattr(self, "_basis"):
            basis = homogeneous_basis(S)
            if basis is None:
                return []
            self._basis = basis
        return enumerate_integer_points(S, self._basis)

    def multiplicities(self, unit: Sequence[int], tail: dict[int, Sequence[int]]) -> dict[tuple[str, int], Fraction]:
        consts = self.constants(tail)
        return {
            lab: b + sum((a * e for a, e in zip(row, unit)), Fraction(0))
            for lab, row, b in zip(self.labels, self.coeffs, consts)
        }


class TailScreen:
    """Integrality of all mu-forms as congruences mod n, parametrized by the tail.

    Scaling by n turns every form into ``A x + c(tail) = 0 (mod n)`` with
    integer data.  Substituting the augmentation equality and diagonalizing
    once gives a short list of checks, each an affine function of the tail
    vectors modulo a divisor of n.
    """

    def __init__(self, model: HelpModel):
        n = model.n
        k = len(model.variables)
        divs = model.tail_divisors
        rows = set()
        for idx, a in enumerate(model.coeffs):
            ints = tuple(int(v * n) for v in a)
            base = int(model.base_const[idx] * n)
            tails = tuple(tuple(int(v * n) for v in model.tail_terms[d][idx]) for d in divs)
            rows.add((ints, base, tails))
        rows = sorted(rows)
        last = k - 1
        A = [[r[0][j] - r[0][last] for j in range(last)] for r in rows]
        self.core = CongruenceScreen(A, n)
        const = [[r[1] + r[0][last]] for r in rows]
        self.alpha = [v[0] for v in self.core.project(const)]
        self.beta = {d: self.core.project([r[2][i] for r in rows]) for i, d in enumerate(divs)}
        self.moduli = [g for _, g in self.core.checks]
        self.divisors = divs

    def residues(self, d: int, v: Sequence[int]) -> tuple[int, ...]:
        """Contribution of u^d having partial augmentations v, per check."""
        return tuple(sum(b * e for b, e in zip(row, v) if e) for row in self.beta[d])

    def feasible(self, tail: dict[int, Sequence[int]]) -> bool:
        acc = list(self.alpha)
        for d in self.divisors:
            for i, r in enumerate(self.residues(d, tail[d])):
                acc[i] += r
        return all(a % g == 0 for a, g in zip(acc, self.moduli))


def build_constraints(tables: Sequence[CharacterTable], n: int, tower_tail: dict[int, Sequence[int]] | None = None) -> ConstraintSystem:
    """The HeLP system for the partial augmentations of a unit of order n.

    ``tower_tail`` maps each divisor ``1 < d < n`` to the partial augmentations
    of ``u^d`` (indexed by ``eligible_classes(table, n // d)``).
    """
    return _model(tuple(tables), n).system(tower_tail)


@lru_cache(maxsize=256)
def _model(tables: tuple[CharacterTable, ...], n: int) -> HelpModel:
    return HelpModel(tables, n)


@dataclass
class SolutionSet:
    group: str
    unit_order: int
    variables: tuple[str, ...]
    towers: list[PowerTower]
    trivial_count: int = 0
    nontrivial_count: int = 0
    class_functions: tuple[str, ...] = ()
    filters: tuple[str, ...] = ()

    def __len__(self):
        return len(self.towers)

    def unit_vectors(self) -> list[tuple[int, ...]]:
        """Distinct partial-augmentation vectors of u itself, sorted."""
        return sorted({tw.unit for tw in self.towers})

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "order": self.unit_order,
            "class_functions_used": list(self.class_functions),
            "filters": list(self.filters),
            "variables": list(self.variables),
            "towers": [tw.to_json() for tw in self.towers],
            "trivial": self.trivial_count,
            "nontrivial": self.nontrivial_count,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


TowerFilter = Callable[[PowerTower], bool]


@dataclass
class HelpSolver:
    """Memoized recursive HeLP solver over the divisor lattice of the unit order.

    ``tower_filter`` (for instance the Wagner test) is applied at every level,
    so filtered-out towers are not used as tails of higher orders either.
    """

    tables: tuple[CharacterTable, ...]
    tower_filter: TowerFilter | None = None
    filter_names: tuple[str, ...] = ()
    brauer_for: Callable[[int], bool] | None = None
    memo: dict[int, SolutionSet] = field(default_factory=dict)

    def __post_init__(self):
        self.tables = tuple(self.tables)

    @property
    def base(self) -> CharacterTable:
        ordinary = [t for t in self.tables if not t.is_brauer]
        return ordinary[0] if ordinary else self.tables[0]

    def tables_for(self, n: int) -> tuple[CharacterTable, ...]:
        """Tables usable for order n: Brauer tables are dropped when p | n."""
        return tuple(t for t in self.tables if not (t.is_brauer and n % t.characteristic == 0))

    def model(self, n: int) -> HelpModel:
        return _model(self.tables_for(n), n)

    def tails(self, n: int) -> list[dict[int, tuple[int, ...]]]:
        """All coherent tower tails for a unit of order n."""
        primes = prime_divisors(n)
        if n in primes:
            return [{}]
        options = []
        for p in primes:
            sub = self.solve(n // p)
            if not sub.towers:
                return []
            options.append(sub.towers)
        out = []
        tail_divs = divisors(n)[1:-1]
        for choice in itertools.product(*options):
            tail = {}
            ok = True
            for d in tail_divs:
                vals = {choice[i][d // p] for i, p in enumerate(primes) if d % p == 0}
                if len(vals) != 1:
                    ok = False
                    break
                tail[d] = vals.pop()
            if ok:
                out.append(tail)
        return out

    def solve(self, n: int) -> SolutionSet:
        if n < 2:
            raise HelpInputError("unit order must be at least 2")
        if n in self.memo:
            return self.memo[n]
        model = self.model(n)
        towers = []
        for tail in self.tails(n):
            if not model.tail_feasible(tail):
                continue
            for x in model.points(tail):
                tw = PowerTower(n, ((1, x),) + tuple(sorted(tail.items())))
                if self.tower_filter is None or self.tower_filter(tw):
                    towers.append(tw)
        towers.sort(key=PowerTower.sort_key)
        base = self.base
        triv = sum(is_trivial_tower(tw, base) for tw in towers)
        used = tuple(t.name for t in self.tables_for(n))
        sol = SolutionSet(base.name, n, model.variable_names, towers, triv, len(towers) - triv, used, self.filter_names)
        self.memo[n] = sol
        return sol


def help_solve(tables: Sequence[CharacterTable], n: int, tower_filter: TowerFilter | None = None) -> SolutionSet:
    """All admissible towers of partial augmentations for units of order n."""
    return HelpSolver(tuple(tables), tower_filter).solve(n)


def classify_solutions(s: SolutionSet, t: CharacterTable) -> tuple[list[PowerTower], list[PowerTower]]:
    triv = [tw for tw in s.towers if is_trivial_tower(tw, t)]
    non = [tw for tw in s.towers if not is_trivial_tower(tw, t)]
    return triv, non
