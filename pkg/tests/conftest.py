from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def load_payoff_tables() -> dict[str, tuple[list[str], list[list[str]]]]:
    """Symbolic appendix tables keyed by scheme name: (row labels, cells)."""
    tables = {}
    current = None
    for line in (FIXTURES / "payoff_tables.txt").read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            current = line.strip("[]")
            tables[current] = ([], [])
            continue
        label, *cells = line.split()
        tables[current][0].append(label)
        tables[current][1].append(cells)
    return tables


def evaluate_symbol(symbol: str, *, sigma, epsilon, u, R=1.0, S=-1.0, T=2.0, P=0.0) -> float:
    base = {"R": R, "S": S, "T": T, "P": P, "sigma": sigma}
    value = 0.0
    if symbol.endswith("+u"):
        value += u
        symbol = symbol[:-2]
    if symbol.endswith("'"):
        value -= epsilon
        symbol = symbol[:-1]
    return base[symbol] + value


def table_matrix(name: str, **params) -> tuple[list[str], np.ndarray]:
    labels, cells = load_payoff_tables()[name]
    return labels, np.array([[evaluate_symbol(c, **params) for c in row] for row in cells])


@pytest.fixture(scope="session")
def payoff_tables():
    return load_payoff_tables()


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid or getattr(rep, "when", "call") != "call" and outcome == "passed":
                continue
            name = nodeid.split("::")[-1]
            if not name.startswith("test_c"):
                continue
            number, _, label = name[len("test_c"):].partition("_")
            lines.append((int(number), f"criterion {int(number):2d} {label:32s} {'PASS' if outcome == 'passed' else 'FAIL'}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(set(lines)):
            terminalreporter.write_line(line)
