"""Character tables: data model, JSON fixtures, validation, PSL(2,p)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from math import gcd
from pathlib import Path

from .cyclotomic import (
    Cyclotomic,
    complex_conjugate,
    from_json,
    to_json,
    zeta,
)


class TableError(ValueError):
    """Raised for table files that violate the schema."""


@dataclass(frozen=True)
class ConjugacyClassInfo:
    name: str
    element_order: int
    size: int


@dataclass(frozen=True)
class ClassFunction:
    name: str
    degree: int
    values: tuple[Cyclotomic, ...]


@dataclass(frozen=True)
class CharacterTable:
    name: str
    group_order: int
    characteristic: int
    classes: tuple[ConjugacyClassInfo, ...]
    power_maps: dict[int, tuple[int, ...]]
    irreducibles: tuple[ClassFunction, ...]
    source: str = ""

    @property
    def is_brauer(self) -> bool:
        return self.characteristic != 0

    @property
    def class_names(self) -> list[str]:
        return [c.name for c in self.classes]

    @property
    def element_orders(self) -> list[int]:
        return [c.element_order for c in self.classes]

    def class_index(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name == name:
                return i
        raise KeyError(f"{self.name} has no class {name!r}")

    def power_class(self, i: int, k: int) -> int:
        """Index of the class containing x**k for x in class i."""
        out = i
        for p, e in _factor_exponents(k).items():
            if p not in self.power_maps:
                if self.classes[out].element_order % p == 0:
                    raise TableError(f"no {p}-power map in {self.name}")
                raise TableError(f"{p} does not divide |G|; powering by it is not supported")
            for _ in range(e):
                out = self.power_maps[p][out]
        return out

    def __hash__(self):
        return hash((self.name, self.group_order, self.characteristic))


def _factor_exponents(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------- loading


def _canonical_order(classes) -> list[int]:
    idx = list(range(len(classes)))
    idx.sort(key=lambda i: (classes[i]["element_order"], classes[i]["size"], classes[i]["name"]))
    return idx


def table_from_dict(data: dict, canonical: bool = True) -> CharacterTable:
    try:
        name = str(data["name"])
        order = int(data["group_order"])
        charp = int(data.get("characteristic", 0))
        raw_classes = list(data["classes"])
        raw_pm = dict(data["power_maps"])
        raw_irr = list(data["irreducibles"])
    except (KeyError, TypeError, ValueError) as exc:
        raise TableError(f"schema violation: {exc}") from exc
    for c in raw_classes:
        if not {"name", "element_order", "size"} <= set(c):
            raise TableError(f"class entry missing fields: {c!r}")
    if order < 1 or charp < 0:
        raise TableError("group_order must be positive and characteristic nonnegative")
    nc = len(raw_classes)
    perm = _canonical_order(raw_classes) if canonical else list(range(nc))
    inv = {old: new for new, old in enumerate(perm)}
    classes = tuple(
        ConjugacyClassInfo(str(raw_classes[i]["name"]), int(raw_classes[i]["element_order"]),
                           int(raw_classes[i]["size"]))
        for i in perm
    )
    if not classes or classes[0].element_order != 1 or classes[0].size != 1:
        raise TableError("first class must be the identity class")
    for c in classes:
        if order % c.element_order or order % c.size:
            raise TableError(f"class {c.name}: order/size must divide |G|")
    power_maps: dict[int, tuple[int, ...]] = {}
    for key, arr in raw_pm.items():
        p = int(key)
        if len(arr) != nc:
            raise TableError(f"power map {p} has length {len(arr)}, expected {nc}")
        if any(not 0 <= int(x) < nc for x in arr):
            raise TableError(f"power map {p} has out-of-range entries")
        power_maps[p] = tuple(inv[int(arr[i])] for i in perm)
    for p in prime_divisors(order):
        if p not in power_maps:
            raise TableError(f"missing power map for prime {p}")
    irr = []
    for row in raw_irr:
        try:
            vals = [from_json(v) for v in row["values"]]
            deg = int(row["degree"])
        except (KeyError, TypeError) as exc:
            raise TableError(f"malformed irreducible {row!r}") from exc
        if len(vals) != nc:
            raise TableError(f"character {row.get('name')} has {len(vals)} values, expected {nc}")
        vals = tuple(vals[i] for i in perm)
        if vals[0] != deg or deg < 1:
            raise TableError(f"character {row.get('name')}: value at identity must equal degree")
        irr.append(ClassFunction(str(row.get("name", f"X{len(irr) + 1}")), deg, vals))
    return CharacterTable(name, order, charp, classes, power_maps, tuple(irr),
                          source=str(data.get("ctbllib_name", "")))


def load_table(text: str) -> CharacterTable:
    """Parse a table file (JSON text)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise TableError("table file must hold a JSON object")
    return table_from_dict(data)


def table_to_dict(t: CharacterTable) -> dict:
    return {
        "name": t.name,
        "group_order": t.group_order,
        "characteristic": t.characteristic,
        "classes": [{"name": c.name, "element_order": c.element_order, "size": c.size} for c in t.classes],
        "power_maps": {str(p): list(m) for p, m in sorted(t.power_maps.items())},
        "irreducibles": [
            {"name": x.name, "degree": x.degree, "values": [to_json(v) for v in x.values]}
            for x in t.irreducibles
        ],
    }


def data_dir() -> Path:
    return Path(str(resources.files("pqverify") / "data"))


FIXTURES = {
    # slug: name of the table in CTblLib
    "A5": "A5",
    "L2_7": "L3(2)",
    "L2_8": "L2(8)",
    "A6": "A6",
    "L2_17": "L2(17)",
    "L3_3": "L3(3)",
    "U4_2": "U4(2)",
    "U3_3": "U3(3)",
    "S5": "A5.2",
    "L2_7.2": "L3(2).2",
    "L2_8.3": "L2(8).3",
    "A6.2^2": "A6.2^2",
    "L2_17.2": "L2(17).2",
    "L3_3.2": "L3(3).2",
    "U4_2.2": "U4(2).2",
    "U3_3.2": "U3(3).2",
    "S6": "A6.2_1",
    "A6.2_2": "A6.2_2",
    "M10": "A6.2_3",
}

_cache: dict[tuple[str, int], CharacterTable] = {}


def load_fixture(slug: str, p: int = 0) -> CharacterTable:
    """Shipped ordinary table (p=0) or p-Brauer table for a fixture slug."""
    key = (slug, p)
    if key not in _cache:
        fname = f"{slug}.json" if p == 0 else f"{slug}.mod{p}.json"
        path = data_dir() / "tables" / fname
        if not path.exists():
            raise FileNotFoundError(f"no fixture {fname}")
        _cache[key] = load_table(path.read_text())
    return _cache[key]


def load_table_file(path) -> CharacterTable:
    """Load a table from a path, or from a fixture name like ``L3_3`` / ``L3_3.mod3``."""
    p = Path(path)
    if p.exists():
        return load_table(p.read_text())
    name = str(path)
    if ".mod" in name:
        slug, _, prime = name.rpartition(".mod")
        if prime.isdigit():
            return load_fixture(slug, int(prime))
    return load_fixture(name)


# ---------------------------------------------------------------- checks


@dataclass
class ValidationReport:
    table: str
    failures: list[str] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _inner(t: CharacterTable, a, b) -> Cyclotomic:
    tot = Cyclotomic.rational(0)
    for c, x, y in zip(t.classes, a, b):
        tot = tot + c.size * x * complex_conjugate(y)
    return tot


def validate_table(t: CharacterTable) -> ValidationReport:
    """Run every structural and orthogonality check; failures are collected, not raised."""
    rep = ValidationReport(t.name)
    nc = len(t.classes)
    if t.classes[0].element_order != 1 or t.classes[0].size != 1:
        rep.failures.append("class 0 is not the identity class")
    for c in t.classes:
        if t.group_order % c.element_order:
            rep.failures.append(f"order of {c.name} does not divide |G|")
        if t.group_order % c.size:
            rep.failures.append(f"size of {c.name} does not divide |G|")
        if t.is_brauer and c.element_order % t.characteristic == 0:
            rep.failures.append(f"Brauer table has {t.characteristic}-singular class {c.name}")
    for p in prime_divisors(t.group_order):
        if p not in t.power_maps:
            rep.failures.append(f"missing {p}-power map")
            continue
        pm = t.power_maps[p]
        for i, c in enumerate(t.classes):
            want = c.element_order // gcd(c.element_order, p)
            got = t.classes[pm[i]].element_order
            if got != want:
                rep.failures.append(f"{p}-power map: {c.name} -> {t.classes[pm[i]].name} has order {got}, expected {want}")
    for x in t.irreducibles:
        if len(x.values) != nc:
            rep.failures.append(f"{x.name} has wrong length")
        elif x.values[0] != x.degree:
            rep.failures.append(f"{x.name}: value at identity differs from degree")
    if rep.failures:
        return rep
    if t.is_brauer:
        rep.notices.append("orthogonality checks skipped for a Brauer table")
        return rep
    if sum(c.size for c in t.classes) != t.group_order:
        rep.failures.append("class sizes do not sum to |G|")
    if sum(x.degree ** 2 for x in t.irreducibles) != t.group_order:
        rep.failures.append("squared degrees do not sum to |G|")
    if len(t.irreducibles) != nc:
        rep.failures.append("number of irreducibles differs from number of classes")
    for i, x in enumerate(t.irreducibles):
        for j in range(i, len(t.irreducibles)):
            y = t.irreducibles[j]
            want = t.group_order if i == j else 0
            if _inner(t, x.values, y.values) != want:
                rep.failures.append(f"row orthogonality fails for ({x.name}, {y.name})")
    for i in range(nc):
        for j in range(i, nc):
            tot = Cyclotomic.rational(0)
            for x in t.irreducibles:
                tot = tot + x.values[i] * complex_conjugate(x.values[j])
            want = t.group_order // t.classes[i].size if i == j else 0
            if tot != want:
                rep.failures.append(
                    f"column orthogonality fails for ({t.classes[i].name}, {t.classes[j].name})")
    for x in t.irreducibles:
        for c, v in zip(t.classes, x.values):
            w = v * c.size / x.degree
            # power basis of Z[zeta_N] is an integral basis
            if any(q.denominator != 1 for q in w.coeffs):
                rep.failures.append(f"central character of {x.name} not integral at {c.name}")
    return rep


def eligible_classes(t: CharacterTable, n: int) -> list[int]:
    """Non-identity classes whose element order divides n."""
    return [i for i, c in enumerate(t.classes) if i != 0 and n % c.element_order == 0]


def prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_divisors(n) == [n]


# ---------------------------------------------------------------- PSL(2,p)


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _class_names(orders: list[int]) -> list[str]:
    seen: dict[int, int] = {}
    names = []
    for o in orders:
        k = seen.get(o, 0)
        seen[o] = k + 1
        names.append(f"{o}{_letters(k)}")
    return names


def _letters(k: int) -> str:
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(97 + r) + s
    return s


def psl2_generic_table(p: int) -> CharacterTable:
    """Ordinary character table of PSL(2,p), p >= 5 prime, from the classical parametrization.

    Classes: 1, the two unipotent classes u1 = [[1,1],[0,1]] and u2 = [[1,v],[0,1]]
    (v a non-square), split-torus classes a^l (1 <= l <= (p-1)/4) and non-split
    classes b^m (1 <= m <= (p+1)/4), where a, b have orders (p-1)/2 and (p+1)/2.
    """
    if not is_prime(p) or p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    q = p
    half_s, half_n = (q - 1) // 2, (q + 1) // 2
    eps = 1 if q % 4 == 1 else -1
    gauss = Cyclotomic(q, {k: _legendre(k, q) for k in range(1, q)})  # sqrt(eps*q)

    kinds: list[tuple[str, int]] = [("1", 0), ("u", 1), ("u", 2)]
    kinds += [("a", l) for l in range(1, half_s // 2 + 1)]
    kinds += [("b", m) for m in range(1, half_n // 2 + 1)]

    def order_of(kind, k):
        if kind == "1":
            return 1
        if kind == "u":
            return q
        m = half_s if kind == "a" else half_n
        return m // gcd(k, m)

    def size_of(kind, k):
        if kind == "1":
            return 1
        if kind == "u":
            return (q * q - 1) // 2
        m = half_s if kind == "a" else half_n
        base = q * (q + 1) if kind == "a" else q * (q - 1)
        return base // 2 if 2 * k == m else base

    orders = [order_of(*k) for k in kinds]
    sizes = [size_of(*k) for k in kinds]
    names = _class_names(orders)

    def locate(kind, k):
        if kind in ("a", "b"):
            m = half_s if kind == "a" else half_n
            k %= m
            k = min(k, m - k)
            if k == 0:
                return 0
        return kinds.index((kind, k))

    power_maps = {}
    for r in prime_divisors(q * (q * q - 1) // 2):
        pm = []
        for kind, k in kinds:
            if kind == "1":
                pm.append(0)
            elif kind == "u":
                if r == q:
                    pm.append(0)
                else:
                    sq = _legendre(r, q) == 1
                    pm.append(locate("u", k if sq else 3 - k))
            else:
                pm.append(locate(kind, r * k))
        power_maps[r] = tuple(pm)

    def row(fn):
        return tuple(Cyclotomic.coerce(fn(kind, k)) for kind, k in kinds)

    chars: list[tuple[str, tuple]] = []
    chars.append(("1", row(lambda kind, k: 1)))
    chars.append(("St", row(lambda kind, k: {"1": q, "u": 0, "a": 1, "b": -1}[kind])))

    def chi(i):
        def f(kind, k):
            if kind == "1":
                return q + 1
            if kind == "u":
                return 1
            if kind == "a":
                return zeta(q - 1, i * k) + zeta(q - 1, -i * k)
            return 0
        return f

    def theta(j):
        def f(kind, k):
            if kind == "1":
                return q - 1
            if kind == "u":
                return -1
            if kind == "b":
                return -(zeta(q + 1, j * k) + zeta(q + 1, -j * k))
            return 0
        return f

    for i in range(2, (q - 3) // 2 + 1, 2):
        chars.append((f"chi{i}", row(chi(i))))
    for j in range(2, (q - 1) // 2 + 1, 2):
        chars.append((f"theta{j}", row(theta(j))))
    for s in (1, 2):
        sign = 1 if s == 1 else -1

        def half(kind, k, sign=sign):
            if kind == "1":
                return (q + eps) // 2
            if kind == "u":
                g = gauss if k == 1 else -gauss
                return (eps + sign * g) / 2
            if eps == 1:
                return (-1) ** k if kind == "a" else 0
            return 0 if kind == "a" else -((-1) ** k)

        chars.append((f"half{s}", row(half)))

    irr = tuple(ClassFunction(nm, int(vals[0].coeffs[0]), vals) for nm, vals in chars)
    classes = tuple(ConjugacyClassInfo(nm, o, s) for nm, o, s in zip(names, orders, sizes))
    t = CharacterTable(f"PSL(2,{q})", q * (q * q - 1) // 2, 0, classes, power_maps, irr,
                       source="generic")
    return _canonicalize(t)


def _canonicalize(t: CharacterTable) -> CharacterTable:
    return table_from_dict(table_to_dict(t))


# ---------------------------------------------------------------- comparison


def tables_equivalent(a: CharacterTable, b: CharacterTable) -> bool:
    """True if the tables agree up to a permutation of classes and of characters.

    Classes are only permuted within blocks of equal (element order, size);
    power maps must correspond under the same permutation.
    """
    if (a.group_order, a.characteristic, len(a.classes), len(a.irreducibles)) != (
        b.group_order, b.characteristic, len(b.classes), len(b.irreducibles)
    ):
        return False
    key = lambda c: (c.element_order, c.size)
    if sorted(map(key, a.classes)) != sorted(map(key, b.classes)):
        return False
    blocks: dict[tuple, list[int]] = {}
    for i, c in enumerate(b.classes):
        blocks.setdefault(key(c), []).append(i)
    slots = [blocks[key(c)] for c in a.classes]
    rows_b = sorted(tuple(map(_sort_key, x.values)) for x in b.irreducibles)
    for images in _injective_choices(slots):
        pi = list(images)  # class i of a corresponds to class pi[i] of b
        ok = all(
            pi[m[i]] == b.power_maps[p][pi[i]]
            for p, m in a.power_maps.items() if p in b.power_maps
            for i in range(len(pi))
        )
        if not ok:
            continue
        inv = [0] * len(pi)
        for i, j in enumerate(pi):
            inv[j] = i
        rows_a = sorted(tuple(_sort_key(x.values[inv[j]]) for j in range(len(pi))) for x in a.irreducibles)
        if rows_a == rows_b:
            return True
    return False


def _sort_key(v: Cyclotomic):
    return (v.conductor, v.coeffs)


def _injective_choices(slots):
    used: set[int] = set()
    out: list[int] = []

    def rec(i):
        if i == len(slots):
            yield tuple(out)
            return
        for j in slots[i]:
            if j not in used:
                used.add(j)
                out.append(j)
                yield from rec(i + 1)
                out.pop()
                used.discard(j)

    yield from rec(0)


__all__ = [
    "TableError",
    "ConjugacyClassInfo",
    "ClassFunction",
    "CharacterTable",
    "ValidationReport",
    "load_table",
    "load_fixture",
    "load_table_file",
    "table_from_dict",
    "table_to_dict",
    "validate_table",
    "psl2_generic_table",
    "eligible_classes",
    "tables_equivalent",
    "prime_divisors",
    "is_prime",
    "FIXTURES",
]
