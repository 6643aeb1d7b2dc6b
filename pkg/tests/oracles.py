"""Independent reference computations used only by the tests.

The HeLP multiplicities here are evaluated straight from the definition with
explicit Galois conjugates, without the Ramanujan-sum rows the solver uses.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from pqverify.chartables import CharacterTable, eligible_classes
from pqverify.cyclotomic import Cyclotomic, galois, zeta


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _full_trace(a: Cyclotomic, m: int) -> Fraction:
    """Tr_{Q(zeta_m)/Q}(a) as the sum of all conjugates."""
    total = Cyclotomic.rational(0)
    for k in range(1, m + 1):
        if gcd(k, m) == 1:
            total = total + galois(a, k % a.conductor if a.conductor > 1 else 1)
    assert total.is_rational()
    return total.coeffs[0]


def power_value(base: CharacterTable, t: CharacterTable, values, n: int, d: int, tower) -> Cyclotomic:
    """chi(u^d) for the class function with ``values`` on table ``t``."""
    if d == n:
        return values[t.class_index("1a")]
    entries = tower[d] if d > 1 else tower.unit
    total = Cyclotomic.rational(0)
    for i, e in zip(eligible_classes(base, n // d), entries):
        if e:
            total = total + values[t.class_index(base.classes[i].name)] * e
    return total


def mu_direct(base: CharacterTable, t: CharacterTable, chi, tower, ell: int) -> Fraction:
    n = tower.unit_order
    total = Fraction(0)
    for d in _divisors(n):
        m = n // d
        val = power_value(base, t, chi.values, n, d, tower)
        total += _full_trace(val * zeta(m, -ell), m)
    return total / n


def admissible_direct(base: CharacterTable, tables, tower) -> bool:
    for t in tables:
        for chi in t.irreducibles:
            for ell in range(tower.unit_order):
                mu = mu_direct(base, t, chi, tower, ell)
                if mu.denominator != 1 or mu < 0:
                    return False
    return True


def box_points(bounds: list[tuple[int, int]]):
    return itertools.product(*(range(lo, hi + 1) for lo, hi in bounds))


def cyclic_table_dict(n: int) -> dict:
    """Ordinary character table of the cyclic group of order n, written from the definition."""
    names, seen = [], {}
    for k in range(n):
        o = n // gcd(k, n)
        seen[o] = seen.get(o, 0) + 1
        names.append(f"{o}{chr(96 + seen[o])}")
    return {
        "name": f"C{n}",
        "group_order": n,
        "characteristic": 0,
        "classes": [{"name": names[k], "element_order": n // gcd(k, n), "size": 1} for k in range(n)],
        "power_maps": {str(p): [(p * k) % n for k in range(n)] for p in range(2, n + 1) if n % p == 0 and all(p % r for r in range(2, p))},
        "irreducibles": [
            {"name": f"X{j + 1}", "degree": 1, "values": [{"n": n, "terms": [[(j * k) % n, "1"]]} for k in range(n)]}
            for j in range(n)
        ],
    }


def scan_with_unit_sum(S, bound: int) -> list[tuple[int, ...]]:
    """Points of S in [-bound, bound]^k, solving the augmentation sum for the last entry."""
    k = len(S.variables)
    out = []
    for head in itertools.product(range(-bound, bound + 1), repeat=k - 1):
        x = head + (1 - sum(head),)
        if S.satisfied_by(x):
            out.append(x)
    return sorted(out)
