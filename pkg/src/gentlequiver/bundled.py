"""Bundled example quivers, shipped as text files and read with the normal parser."""

from __future__ import annotations

from importlib import resources

from .io import parse
from .quiver import BoundQuiver

FIXTURE_NAMES = ("ex3_2_I1", "ex3_2_I2", "ex6_4_left", "ex6_4_right",
                 "ex6_6", "ex7_8_A", "ex7_8_Aprime")


class UnknownFixtureError(KeyError):
    pass


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise UnknownFixtureError(
            f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return (resources.files("gentlequiver") / "fixtures" / f"{name}.quiver").read_text("utf-8")


def fixture(name: str) -> BoundQuiver:
    A = parse(fixture_text(name), source=f"fixture:{name}")
    return A if A.name else A.with_name(name)
