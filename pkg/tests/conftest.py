import pytest
from fractions import Fraction

from maex.partitions import brute_force_table, stat_table


def count_partitions(n, largest=None):
    """Independent oracle: p(n) by the largest-part recursion."""
    if largest is None:
        largest = n
    if n == 0:
        return 1
    return sum(count_partitions(n - k, k) for k in range(1, min(n, largest) + 1))


def all_partitions(n, largest=None):
    """Independent oracle enumerator (recursive, descending parts)."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in all_partitions(n - k, k):
            yield (k,) + rest


def maex_by_definition(parts):
    s = set(parts)
    return max(k for k in range(parts[0]) if k not in s)


def mex_by_definition(parts):
    s = set(parts)
    k = 1
    while k in s:
        k += 1
    return k


@pytest.fixture(scope="session")
def brute60():
    return brute_force_table(60)


@pytest.fixture(scope="session")
def stats2000():
    return stat_table(2000)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
