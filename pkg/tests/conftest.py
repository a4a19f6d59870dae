import random

import networkx as nx
import pytest

from mcover.corpus import corpus
from mcover.graph import CubicGraph
from mcover.matchings import enumerate_pms

_criteria: list[tuple[str, str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "PASS" if rep.passed else "FAIL"
        _criteria.append((str(mark.args[0]), mark.args[1], status))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, status in sorted(_criteria, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"[{status}] criterion {num}: {title}")


@pytest.fixture(scope="session")
def named_graphs():
    return {g.name: g.graph for g in corpus()}


@pytest.fixture(scope="session")
def named_pms(named_graphs):
    return {name: enumerate_pms(G) for name, G in named_graphs.items()}


def random_cubic(n: int, seed: int) -> CubicGraph:
    H = nx.random_regular_graph(3, n, seed=seed)
    return CubicGraph(n, list(H.edges()))


def random_cubic_graphs(count: int, sizes=(4, 6, 8, 10, 12), seed: int = 1) -> list[CubicGraph]:
    rng = random.Random(seed)
    return [random_cubic(rng.choice(sizes), rng.randrange(10**9)) for _ in range(count)]
