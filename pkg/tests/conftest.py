from hypothesis import settings
from hypothesis import strategies as st

from mfquiver.mfcore import direct_sum, indecomposable, trivial_pair

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")

hs = st.integers(2, 7)


def labels(h, tag_bound=3):
    return st.tuples(st.integers(1, h - 1), st.integers(-tag_bound, tag_bound))


@st.composite
def objects(draw, h=None, max_summands=3, trivial=True):
    """A direct sum of indecomposables and (optionally) contractible pairs."""
    h = draw(hs) if h is None else h
    parts = [indecomposable(l, i, h) for l, i in draw(st.lists(labels(h), min_size=1, max_size=max_summands))]
    if trivial and draw(st.booleans()):
        parts.append(trivial_pair(draw(st.sampled_from(["unit", "f-unit"])), draw(st.integers(-3, 3)), h))
    return direct_sum(parts)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
