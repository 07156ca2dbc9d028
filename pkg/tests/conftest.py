import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def lwc_st(draw, max_size=4, max_len=4):
    """Random left weak composition of bounded size and length."""
    k = draw(st.integers(0, max_len))
    if k == 0:
        return ()
    head = draw(st.lists(st.integers(0, max_size), min_size=k - 1, max_size=k - 1))
    last = draw(st.integers(1, max(1, max_size)))
    alpha = tuple(head) + (last,)
    if sum(alpha) > max_size:
        alpha = tuple(min(p, 1) for p in head) + (1,)
    return alpha


@st.composite
def mbar_st(draw, max_size=3, max_len=3):
    head = draw(st.integers(0, max_size))
    return (head,) + draw(lwc_st(max_size, max_len))


@st.composite
def word_st(draw, max_len=4):
    """Admissible word over r, y ending in y."""
    n = draw(st.integers(2, max_len))
    middle = draw(st.text(alphabet="ry", min_size=n - 2, max_size=n - 2))
    return "r" + middle + "y"


def pytest_terminal_summary(terminalreporter):
    """Print the one-line-per-criterion acceptance report, if it ran."""
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
