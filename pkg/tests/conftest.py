import numpy as np
import pytest

from classsplom.data import generate_gaussian_blobs

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def record_criterion():
    """Register one acceptance line; the summary is printed at session end."""

    def record(name: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_RESULTS.append((name, bool(ok), detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}  {detail}")


@pytest.fixture
def five_class():
    rng = np.random.default_rng(7)
    means = 1.5 * rng.standard_normal((5, 20))
    return generate_gaussian_blobs(means, [1.0] * 5, 100, seed=3,
                                   class_names=["EGY", "GLF", "LAV", "MSA", "NOR"])


@pytest.fixture
def three_class():
    means = np.zeros((3, 5))
    means[0, 0] = 12
    means[1, 1] = 12
    means[2, 2] = 12
    return generate_gaussian_blobs(means, [1.0, 1.0, 1.0], 40, seed=11)
