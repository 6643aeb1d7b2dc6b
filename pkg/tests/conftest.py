import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from pqverify.chartables import FIXTURES, data_dir, load_fixture  # noqa: E402


def fixture_keys() -> list[tuple[str, int]]:
    """(slug, p) for every shipped table, p = 0 for the ordinary one."""
    keys = []
    for path in sorted((data_dir() / "tables").glob("*.json")):
        stem = path.name[: -len(".json")]
        if ".mod" in stem:
            slug, _, p = stem.rpartition(".mod")
            keys.append((slug, int(p)))
        else:
            keys.append((stem, 0))
    return keys


def tables_for(slug: str) -> tuple:
    """Ordinary table followed by every shipped Brauer table of the group."""
    return tuple(load_fixture(s, p) for s, p in sorted(fixture_keys(), key=lambda k: k[1]) if s == slug)


SLUGS = list(FIXTURES)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
