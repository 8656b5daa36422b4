from __future__ import annotations

import hypothesis
import pytest

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=500)
hypothesis.settings.load_profile("default")

# (criterion number, description, passed, seconds), filled by test_acceptance
ACCEPTANCE_LINES: list = []


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=None, help="fix the seed of every randomized property test")


def pytest_collection_modifyitems(config, items):
    seed = config.getoption("--seed")
    if seed is None:
        return
    for item in items:
        fn = getattr(item, "obj", None)
        if fn is not None and getattr(fn, "is_hypothesis_test", False):
            hypothesis.seed(seed)(fn)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, passed, seconds in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'} ({seconds:.1f}s) {text}")


@pytest.fixture(scope="session")
def machines():
    """Minimized machines shared across the automaton tests."""
    from apery.automata import sequence_automaton

    return {
        (seq, alpha): sequence_automaton(seq, alpha)
        for seq, alphas in (("a", (2, 3, 4)), ("beta", (1, 2, 3)), ("l2", (2, 3)))
        for alpha in alphas
    }
