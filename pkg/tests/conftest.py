import random
from fractions import Fraction

import pytest

from padic_ramlab.ramify import BreakData


def random_break_data(rng):
    """A random valid filtration: divisor-chain orders, increasing breaks."""
    total = rng.choice([2, 4, 6, 8, 12, 16, 20, 24, 48, 60, 96])
    divisors = sorted({d for d in range(1, total) if total % d == 0}, reverse=True)
    length = rng.randint(1, min(4, len(divisors)))
    chain = []
    prev = total
    for d in divisors:
        if d < prev:
            if rng.random() < 0.6:
                chain.append(d)
                prev = d
        if len(chain) == length:
            break
    if not chain or chain[-1] != 1:
        chain.append(1)
    lam = Fraction(0)
    pairs = []
    for order in chain:
        lam += Fraction(rng.randint(1, 24), rng.randint(1, 12))
        pairs.append((lam, order))
    return BreakData(total_order=total, breaks=tuple(pairs))


@pytest.fixture
def rng():
    return random.Random(20240811)


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        print(f"\n[{status}] {name}", flush=True)
