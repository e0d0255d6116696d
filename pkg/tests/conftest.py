import sys

import pytest

from quantales.instances import family_specs


def _small_family():
    specs = []
    for kind in ("zn", "chain", "downset", "f5"):
        specs.extend(family_specs(kind))
    specs.extend(family_specs("random", seeds=60))
    return specs


SMALL_FAMILY = _small_family()


@pytest.fixture(scope="session")
def small_family():
    """(label, quantale) pairs; random seeds that find nothing are dropped."""
    out = []
    for spec in SMALL_FAMILY:
        try:
            out.append((str(spec), spec.build()))
        except LookupError:
            continue
    return out


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance criterion lines after the run."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
