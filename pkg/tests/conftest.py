import itertools

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from jumpfree.graph import SeededRandomEdges, build_induced
from jumpfree.labelers import MinIndex, SeededChoice
from jumpfree.lattice import Domain

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def points(k=2, hi=6):
    return st.tuples(*[st.integers(0, hi)] * k)


@st.composite
def domains(draw, k=2, hi=6, min_size=1, max_size=14):
    pts = draw(st.sets(points(k, hi), min_size=min_size, max_size=max_size))
    return Domain(pts, k)


@st.composite
def graph_instances(draw, k=2, hi=6, max_size=14, r_max=2):
    D = draw(domains(k, hi, max_size=max_size))
    rule = SeededRandomEdges(draw(st.sampled_from([0.2, 0.4, 0.7])), draw(st.integers(0, 2**32)))
    r = draw(st.integers(1, r_max))
    if draw(st.booleans()):
        F = SeededChoice(r, draw(st.sampled_from([0.3, 0.7, 1.0])), draw(st.integers(0, 2**32)))
    else:
        F = MinIndex(r)
    return build_induced(rule, D), rule, F


def all_points(k, hi):
    return list(itertools.product(range(hi + 1), repeat=k))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
