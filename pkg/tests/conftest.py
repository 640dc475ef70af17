from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from shapoval.bicharacter import Bicharacter
from shapoval.exactfield import UnitValue
from shapoval.weylgroupoid import roots_of

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]
INPUTS = ROOT / "inputs"

A2 = ((2, -1), (-1, 2))


def zunit(a: int, n: int = 2) -> UnitValue:
    return UnitValue(1, 0, a, n)


def rank1(n: int, e: int) -> Bicharacter:
    return Bicharacter(((UnitValue.zeta(n, e),),))


def a2_zeta3() -> Bicharacter:
    return Bicharacter.cartan_type(A2, (1, 1), UnitValue.zeta(6, 2))


def a2_generic() -> Bicharacter:
    return Bicharacter.cartan_type(A2, (1, 1), UnitValue.zvar(2))


def super_example() -> Bicharacter:
    return Bicharacter(((zunit(2), zunit(-1)), (zunit(-1), UnitValue.minus_one(2))))


EXAMPLES = {
    "rank1_zeta4": lambda: rank1(4, 1),
    "a2_zeta3": a2_zeta3,
    "a2_generic": a2_generic,
    "super": super_example,
}


@pytest.fixture(params=sorted(EXAMPLES))
def example(request):
    chi = EXAMPLES[request.param]()
    scheme, rec = roots_of(chi)
    return request.param, chi, scheme, rec


def units(n: int = 12, zrange: int = 3):
    return st.builds(
        lambda r, e, a: UnitValue(r, e, a, n),
        st.sampled_from([1, 2, 3]),
        st.integers(0, n - 1),
        st.integers(-zrange, zrange),
    )


def bicharacters(rank: int = 2, n: int = 12, zrange: int = 2):
    return st.lists(st.lists(units(n, zrange), min_size=rank, max_size=rank),
                    min_size=rank, max_size=rank).map(lambda rows: Bicharacter(tuple(tuple(r) for r in rows)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
