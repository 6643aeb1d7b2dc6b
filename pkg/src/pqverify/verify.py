"""End-to-end prime graph verification for one group, plus reports and cross-checks."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .chartables import FIXTURES, CharacterTable, data_dir, load_fixture, prime_divisors, validate_table
from .filters import FilterConfig, OrderVerdict, eliminate_order, make_solver
from .graphs import PrimeGraph, gamma_verdict, graph_from_spectrum, graph_from_table
from .help import HelpSolver
from .perm import PermutationGroup, spectrum

log = logging.getLogger(__name__)


class VerificationInputError(ValueError):
    pass


@dataclass(frozen=True)
class ExternalFact:
    """A published elimination that HeLP does not reproduce, used with attribution."""

    table: str
    unit_order: int
    statement: str


EXTERNAL_FACTS = (
    ExternalFact("A6", 6, "V(ZA6) has no units of order 6 (published proof beyond HeLP)"),
    ExternalFact("PGL(2,9)", 6, "V(ZPGL(2,9)) has no units of order 6 (published proof beyond HeLP)"),
    ExternalFact("M10", 6, "V(ZM10) has no units of order 6 (published proof beyond HeLP)"),
)


def external_fact(table_name: str, n: int) -> ExternalFact | None:
    return next((f for f in EXTERNAL_FACTS if f.table == table_name and f.unit_order == n), None)


@dataclass(frozen=True)
class VerifyConfig:
    """Run configuration for ``verify_pq``.

    ``element_orders`` restricts the trivial/non-trivial analysis of element
    orders (None means all of them); ``extra_orders`` are further orders absent
    from the group that are attempted as well.  ``skip_orders`` and
    ``skip_unit_orders`` are omitted orders, only reported.
    """

    brauer: bool = True
    wagner: str = "prime-power"
    order_wagner: dict[int, str] = field(default_factory=dict)
    pq_method: str = "fallback"
    pq_max_terms: int = 4
    pq_max_coeff: int = 2
    element_orders: tuple[int, ...] | None = None
    extra_orders: tuple[int, ...] = ()
    skip_orders: tuple[int, ...] = ()
    skip_unit_orders: tuple[int, ...] = ()
    use_external_facts: bool = True
    workers: int = 1

    @property
    def filters(self) -> FilterConfig:
        return FilterConfig(self.wagner, self.pq_method, self.pq_max_terms, self.pq_max_coeff)

    def wagner_for(self, n: int) -> str:
        return self.order_wagner.get(n, self.wagner)

    @classmethod
    def from_dict(cls, data: dict) -> "VerifyConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise VerificationInputError(f"unknown config keys {sorted(unknown)}")
        kw = dict(data)
        for key in ("extra_orders", "skip_orders", "skip_unit_orders"):
            if key in kw:
                kw[key] = tuple(int(n) for n in kw[key])
        if kw.get("element_orders") is not None:
            kw["element_orders"] = tuple(int(n) for n in kw["element_orders"])
        if "order_wagner" in kw:
            kw["order_wagner"] = {int(n): m for n, m in kw["order_wagner"].items()}
        cfg = cls(**kw)
        cfg.filters  # validates the modes
        for m in cfg.order_wagner.values():
            FilterConfig(wagner=m)
        return cfg

    def to_json(self) -> dict:
        out = asdict(self)
        out["order_wagner"] = {str(k): v for k, v in sorted(self.order_wagner.items())}
        return out


def group_config(slug: str) -> VerifyConfig:
    """The shipped per-group run configuration for a fixture."""
    configs = json.loads((data_dir() / "configs.json").read_text())
    return VerifyConfig.from_dict(configs.get(slug, {}))


def fixture_tables(slug: str, brauer: bool = True) -> tuple[CharacterTable, ...]:
    t = load_fixture(slug)
    if not brauer:
        return (t,)
    out = [t]
    for p in prime_divisors(t.group_order):
        try:
            out.append(load_fixture(slug, p))
        except FileNotFoundError:
            continue
    return tuple(out)


@dataclass
class OrderEntry:
    kind: str  # "pq", "element" or "extra"
    verdict: OrderVerdict
    seconds: float = 0.0
    external: ExternalFact | None = None

    @property
    def count(self) -> int:
        """Number of admissible partial-augmentation vectors of u."""
        return len(self.verdict.filtered.unit_vectors())

    @property
    def trivial_only(self) -> bool:
        return bool(self.verdict.filtered.towers) and self.verdict.filtered.nontrivial_count == 0

    @property
    def eliminated(self) -> bool:
        return self.verdict.eliminated or self.external is not None

    def to_json(self, timings: bool = False) -> dict:
        out = {"kind": self.kind, **self.verdict.to_json()}
        out["eliminated"] = self.eliminated
        out["help_eliminated"] = self.verdict.eliminated
        out["count"] = self.count
        out["trivial_only"] = self.trivial_only
        out["external_fact"] = self.external.statement if self.external else None
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class VerificationReport:
    group: str
    pi: PrimeGraph
    per_order: dict[int, OrderEntry]
    external_facts_used: list[ExternalFact]
    final: str
    open_pairs: tuple[tuple[int, int], ...]
    config: VerifyConfig
    tables: tuple[str, ...]

    def pq_orders(self) -> list[int]:
        return sorted(n for n, e in self.per_order.items() if e.kind == "pq")

    def to_json(self, timings: bool = False) -> dict:
        return {
            "group": self.group,
            "prime_graph": self.pi.to_json(),
            "final": self.final,
            "open_pairs": [list(p) for p in self.open_pairs],
            "external_facts_used": [asdict(f) for f in self.external_facts_used],
            "tables": list(self.tables),
            "config": self.config.to_json(),
            "per_order": {str(n): self.per_order[n].to_json(timings) for n in sorted(self.per_order)},
        }

    def landscape_row(self) -> dict[str, list]:
        """The report condensed into the columns of the landscape table."""
        trivial, counted, absent, open_units = [], [], [], []
        for n in sorted(self.per_order):
            e = self.per_order[n]
            if e.verdict.occurs_in_group:
                if e.trivial_only:
                    trivial.append(n)
                else:
                    counted.append((n, e.count))
            elif e.eliminated:
                absent.append(n)
            else:
                open_units.append((n, e.count))
        return {
            "trivial": trivial,
            "counts": counted,
            "skipped": sorted(self.config.skip_orders),
            "absent": absent,
            "open": open_units,
            "skipped_units": sorted(self.config.skip_unit_orders),
        }


def _run_order(args) -> tuple[int, OrderVerdict, float]:
    tables, n, filters = args
    t0 = time.perf_counter()
    v = eliminate_order(tables, n, filters)
    return n, v, time.perf_counter() - t0


def verify_pq(
    table: CharacterTable,
    config: VerifyConfig = VerifyConfig(),
    brauer_tables: Sequence[CharacterTable] = (),
) -> VerificationReport:
    """Decide the prime graph question for the group of ``table`` as far as HeLP allows."""
    if table.is_brauer:
        raise VerificationInputError("verify_pq needs the ordinary table")
    rep = validate_table(table)
    if not rep.ok:
        raise VerificationInputError(f"{table.name} fails validation: {rep.failures[:3]}")
    tables = (table,) + (tuple(brauer_tables) if config.brauer else ())
    pi = graph_from_table(table)
    kinds: dict[int, str] = {p * q: "pq" for p, q in pi.non_edges()}
    element = sorted(set(table.element_orders) - {1})
    if config.element_orders is not None:
        element = [n for n in element if n in config.element_orders]
    for n in element:
        kinds.setdefault(n, "element")
    for n in config.extra_orders:
        kinds.setdefault(n, "extra")

    jobs = []
    for n in sorted(kinds):
        filters = FilterConfig(config.wagner_for(n), config.pq_method, config.pq_max_terms, config.pq_max_coeff)
        jobs.append((tables, n, filters))
    results: dict[int, tuple[OrderVerdict, float]] = {}
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for n, v, dt in pool.map(_run_order, jobs):
                results[n] = (v, dt)
    else:
        solvers: dict[str, tuple[HelpSolver, HelpSolver]] = {}
        for tabs, n, filters in jobs:
            if filters.wagner not in solvers:
                solvers[filters.wagner] = (HelpSolver(tabs), make_solver(tabs, filters.wagner))
            t0 = time.perf_counter()
            results[n] = (eliminate_order(tabs, n, filters, solvers[filters.wagner]), time.perf_counter() - t0)

    per_order: dict[int, OrderEntry] = {}
    used: list[ExternalFact] = []
    for n in sorted(kinds):
        v, dt = results[n]
        entry = OrderEntry(kinds[n], v, dt)
        if not v.eliminated and not v.occurs_in_group and config.use_external_facts:
            fact = external_fact(table.name, n)
            if fact is not None:
                entry.external = fact
                used.append(fact)
        per_order[n] = entry
        log.info("%s order %d: %s (%d vectors, %.2fs)", table.name, n, v.method, entry.count, dt)

    verdict = gamma_verdict(pi, {n: per_order[n].eliminated for n in kinds if kinds[n] == "pq"})
    pq_external = [f for f in used if kinds[f.unit_order] == "pq"]
    if not verdict.verified:
        final = "undecided"
    elif pq_external:
        final = "verified-with-external-facts"
    else:
        final = "verified"
    return VerificationReport(
        table.name, pi, per_order, used, final, verdict.open_pairs, config, tuple(t.name for t in tables)
    )


def verify_fixture(slug: str, config: VerifyConfig | None = None) -> VerificationReport:
    config = config if config is not None else group_config(slug)
    tables = fixture_tables(slug, config.brauer)
    return verify_pq(tables[0], config, tables[1:])


# ------------------------------------------------------------ reports


def _orders(xs) -> str:
    return ", ".join(str(x) for x in xs) or "---"


def _counted(xs) -> str:
    return ", ".join(f"{n}({c})" for n, c in xs) or "---"


LANDSCAPE_HEADER = (
    "| G | table | rational conjugacy | order(#) in G | not considered in G "
    "| no orders in V(ZG) | order(#) in V(ZG) | not considered in V(ZG) | verdict |"
)


def emit_report(r: VerificationReport, fmt: str = "json", timings: bool = False) -> str:
    """Deterministic JSON, or a markdown table in the landscape layout."""
    if fmt == "json":
        return json.dumps(r.to_json(timings), indent=1, sort_keys=True) + "\n"
    if fmt != "markdown":
        raise ValueError(f"unknown report format {fmt!r}")
    row = r.landscape_row()
    cells = [
        r.group,
        ", ".join(r.tables),
        _orders(row["trivial"]),
        _counted(row["counts"]),
        _orders(row["skipped"]),
        _orders(row["absent"]),
        _counted(row["open"]),
        _orders(row["skipped_units"]),
        r.final,
    ]
    lines = [LANDSCAPE_HEADER, "|" + "---|" * len(cells), "| " + " | ".join(cells) + " |"]
    if r.external_facts_used:
        lines.append("")
        lines.extend(f"- external fact, order {f.unit_order}: {f.statement}" for f in r.external_facts_used)
    if r.open_pairs:
        lines.append("")
        lines.append("- open prime pairs: " + ", ".join(f"{{{p},{q}}}" for p, q in r.open_pairs))
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ cross-check


@dataclass
class CrossCheckReport:
    group: str
    consistent: bool
    discrepancies: list[str]

    def to_json(self) -> dict:
        return {"group": self.group, "consistent": self.consistent, "discrepancies": self.discrepancies}


def cross_check(group: PermutationGroup, table: CharacterTable) -> CrossCheckReport:
    """Compare a permutation representation against an ordinary character table."""
    problems = []
    if table.is_brauer:
        problems.append("table is a Brauer table")
        return CrossCheckReport(table.name, False, problems)
    spec_counts = spectrum(group)
    if spec_counts.group_order != table.group_order:
        problems.append(f"group order: enumerated {spec_counts.group_order}, table {table.group_order}")
    size_sum = sum(c.size for c in table.classes)
    if size_sum != table.group_order:
        problems.append(f"class sizes sum to {size_sum}, table order {table.group_order}")
    table_counts: dict[int, int] = {}
    for c in table.classes:
        table_counts[c.element_order] = table_counts.get(c.element_order, 0) + c.size
    if set(spec_counts.counts) != set(table_counts):
        problems.append(f"element orders: enumerated {sorted(spec_counts.counts)}, table {sorted(table_counts)}")
    for n in sorted(set(spec_counts.counts) & set(table_counts)):
        if spec_counts.counts[n] != table_counts[n]:
            problems.append(f"elements of order {n}: enumerated {spec_counts.counts[n]}, table {table_counts[n]}")
    if graph_from_spectrum(spec_counts) != graph_from_table(table):
        problems.append("prime graphs differ")
    return CrossCheckReport(table.name, not problems, problems)


def expected_landscape() -> dict[str, dict]:
    """Per-fixture expected rows shipped with the package."""
    return json.loads((data_dir() / "landscape.json").read_text())


def landscape_mismatches(row: dict, expected: dict) -> list[str]:
    """Differences between a ``landscape_row`` and an expected row."""
    problems = []
    counts = dict(row["counts"])
    for n in expected.get("trivial", []):
        if n not in row["trivial"]:
            problems.append(f"{n} not trivial-only" + (f" ({counts[n]} vectors)" if n in counts else ""))
    for n, c in expected.get("counts", {}).items():
        if counts.get(int(n)) != c:
            problems.append(f"order {n}: {counts.get(int(n))} vectors, expected {c}")
    for n in expected.get("absent", []):
        if n not in row["absent"]:
            problems.append(f"order {n} not eliminated")
    got_open = dict(row["open"])
    for n, c in expected.get("open", {}).items():
        if got_open.get(int(n)) != c:
            problems.append(f"unit order {n}: {got_open.get(int(n))} vectors, expected {c}")
    return problems


def fixture_slugs() -> list[str]:
    return list(FIXTURES)
