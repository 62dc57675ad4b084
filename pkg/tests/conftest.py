import random

import pytest
from hypothesis import strategies as st

from gentlequiver import BoundQuiver, linear_quiver, make_normal_form, NormalFormSpec
from gentlequiver.generators import random_m_branched
from gentlequiver.quiver import Arrow, Relation


def quiver(arrows, relations=(), vertices=None, name=""):
    """Small helper: arrows as 'a:x->y' strings, relations as 'a b' strings."""
    parsed = []
    for spec in arrows:
        n, rest = spec.split(":")
        s, t = rest.split("->")
        parsed.append(Arrow(n.strip(), s.strip(), t.strip()))
    vs = set(vertices or ())
    for a in parsed:
        vs |= {a.source, a.target}
    rels = [Relation(*r.split()) for r in relations]
    return BoundQuiver(tuple(sorted(vs)), tuple(parsed), tuple(rels), name)


def normal_form(m, r, s):
    return make_normal_form(NormalFormSpec(m, r, s))


@st.composite
def branched_quivers(draw, max_m=3, max_vertices=12):
    m = draw(st.integers(1, max_m))
    seed = draw(st.integers(0, 2**32 - 1))
    return m, random_m_branched(random.Random(seed), m, max_vertices)


@pytest.fixture
def A3():
    return linear_quiver(3)


# -- acceptance report --------------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
