from hypothesis import strategies as st

from planar_lagrange.trees import X, PlanarTree

ACCEPTANCE_RESULTS = []
ACCEPTANCE_NOTES = []


def planar_trees(max_leaves=6, reduced=False):
    """Hypothesis strategy for nonempty planar trees."""
    min_kids = 2 if reduced else 1
    return st.recursive(
        st.just(X),
        lambda kids: st.lists(kids, min_size=min_kids, max_size=3).map(PlanarTree),
        max_leaves=max_leaves,
    )


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, text in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {text}")
    for number, text in ACCEPTANCE_NOTES:
        terminalreporter.write_line(f"[NOTE] criterion {number}: {text}")
