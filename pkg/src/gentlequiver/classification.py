"""Branched and A-branched predicates, the invariant pair, and the derived
equivalence decision for connected m-branched algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .ag_invariant import phi, phi_equal
from .canonical import digest
from .bundled import FIXTURE_NAMES, fixture
from .hochschild import hh_dims
from .normal_forms import NormalFormSpec, make_normal_form
from .quiver import (BoundQuiver, QuiverError, connected_components, euler_characteristic,
                     full_relation_cycles, is_connected, is_finite_dimensional,
                     is_full_relation_cycle, simple_oriented_cycles, validate_gentle)

__all__ = [
    "ALL_M", "AllM", "ClassificationError", "ClassificationReport", "DisconnectedInputError",
    "EquivalenceVerdict", "FIXTURE_NAMES", "InconsistentInvariantsError", "InvariantPair",
    "NormalFormSpec", "classify", "classify_components", "derived_equivalent",
    "fixture", "hh_comparison_degree", "infer_m", "invariant_pair", "is_A_branched",
    "is_m_branched", "make_normal_form", "on_cycle_relations",
]


class ClassificationError(QuiverError):
    pass


class DisconnectedInputError(ClassificationError):
    pass


class InconsistentInvariantsError(RuntimeError):
    """The invariant pair, phi and Hochschild data disagree; indicates a bug."""


class AllM:
    """Every positive m at once (acyclic gentle quivers are branched for any m)."""

    def __contains__(self, m) -> bool:
        return isinstance(m, int) and m >= 1

    def __bool__(self):
        return True

    def __repr__(self):
        return "ALL_M"

    def __str__(self):
        return "all m"


ALL_M = AllM()


class InvariantPair(NamedTuple):
    r: int
    s: int


def is_m_branched(A: BoundQuiver, m: int) -> bool:
    if m < 1 or not validate_gentle(A).is_gentle or not is_finite_dimensional(A):
        return False
    cycles = simple_oriented_cycles(A)
    if cycles.overflow or len(cycles) != euler_characteristic(A):
        return False
    return all(len(c) == m + 2 and is_full_relation_cycle(A, c) for c in cycles)


def on_cycle_relations(A: BoundQuiver) -> set:
    out = set()
    for c in full_relation_cycles(A):
        out |= {(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}
    return out


def is_A_branched(A: BoundQuiver, m: int) -> bool:
    if not is_m_branched(A, m):
        return False
    on_cycle = on_cycle_relations(A)
    return all(tuple(r) in on_cycle for r in A.relations)


def infer_m(A: BoundQuiver):
    """The m for which A is m-branched: a one-element set, ALL_M, or empty."""
    cycles = simple_oriented_cycles(A)
    if not cycles:
        ok = validate_gentle(A).is_gentle and euler_characteristic(A) == 0
        return ALL_M if ok else frozenset()
    lengths = {len(c) for c in cycles}
    if len(lengths) == 1:
        m = lengths.pop() - 2
        if m >= 1 and is_m_branched(A, m):
            return frozenset({m})
    return frozenset()


def invariant_pair(A: BoundQuiver, m: int) -> InvariantPair:
    if not is_connected(A):
        raise DisconnectedInputError("the invariant pair is defined for connected quivers only")
    if not is_m_branched(A, m):
        raise ClassificationError(f"{A.name or 'input'} is not {m}-branched")
    return InvariantPair(euler_characteristic(A), A.num_vertices)


@dataclass(frozen=True)
class ClassificationReport:
    name: str
    gentle: bool
    connected: bool
    finite_dimensional: bool
    chi: int
    cycles: tuple[tuple[int, bool], ...]
    m_candidates: object
    a_branched: bool
    invariant_pair: InvariantPair | None
    violations: tuple = field(default=())

    @property
    def simply_connected(self) -> bool:
        return self.chi == 0

    @property
    def pi1_rank(self) -> int:
        return self.chi

    @property
    def branched(self) -> bool:
        return bool(self.m_candidates)

    def to_json(self) -> dict:
        mc = self.m_candidates
        return {
            "name": self.name,
            "gentle": self.gentle,
            "connected": self.connected,
            "finite_dimensional": self.finite_dimensional,
            "chi": self.chi,
            "cycles": [{"length": n, "full_relations": f} for n, f in self.cycles],
            "m_candidates": "all" if mc is ALL_M else sorted(mc),
            "a_branched": self.a_branched,
            "invariant_pair": list(self.invariant_pair) if self.invariant_pair else None,
            "simply_connected": self.simply_connected,
            "pi1_rank": self.pi1_rank,
            "violations": [{"rule": v.rule, "witness": list(v.witness), "detail": v.detail}
                           for v in self.violations],
        }


def classify(A: BoundQuiver, m: int | None = None) -> ClassificationReport:
    report = validate_gentle(A)
    fd = is_finite_dimensional(A)
    cycles = simple_oriented_cycles(A)
    cyc = tuple(sorted((len(c), is_full_relation_cycle(A, c)) for c in cycles))
    candidates = infer_m(A) if report.is_gentle and fd else frozenset()
    if m is not None:
        candidates = frozenset({m}) if m in candidates else frozenset()
    probe = 1 if candidates is ALL_M else (min(candidates) if candidates else None)
    a_branched = probe is not None and is_A_branched(A, probe)
    connected = is_connected(A)
    pair = None
    if candidates and connected:
        pair = InvariantPair(euler_characteristic(A), A.num_vertices)
    return ClassificationReport(A.name, report.is_gentle, connected, fd,
                                euler_characteristic(A), cyc, candidates, a_branched,
                                pair, tuple(report.violations))


def classify_components(A: BoundQuiver, m: int | None = None) -> list[ClassificationReport]:
    return [classify(C, m) for C in connected_components(A)]


def hh_comparison_degree(m: int) -> int:
    """Top degree compared in equivalence evidence: two full periods plus one."""
    return 2 * (m + 2) + 1


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    evidence: dict

    def __bool__(self):
        return self.equivalent


_DISCONNECTED = (
    "derived equivalence is only decided here for connected algebras: two "
    "disconnected m-branched algebras can have the same total invariant pair, "
    "the same chi and the same number of vertices, and still fail to be derived "
    "equivalent, because derived equivalences match components one to one and "
    "the vertices may be distributed differently among the components")


def derived_equivalent(A: BoundQuiver, B: BoundQuiver, m: int,
                       characteristic: int = 0) -> EquivalenceVerdict:
    """Decide derived equivalence by the invariant pair, with phi and
    Hochschild dimensions as cross-checks.

    Hochschild dimensions do not see the length of the linear tail, so the
    Hochschild cross-check compares them together with the number of
    vertices (the rank of the Grothendieck group).
    """
    for X in (A, B):
        if not is_connected(X):
            raise DisconnectedInputError(f"{X.name or 'input'} is disconnected; {_DISCONNECTED}")
    pa, pb = invariant_pair(A, m), invariant_pair(B, m)
    fa, fb = phi(A), phi(B)
    top = hh_comparison_degree(m)
    ha = hh_dims(A, top, characteristic).dims
    hb = hh_dims(B, top, characteristic).dims
    pair_eq = pa == pb
    phi_eq = phi_equal(fa, fb)
    hh_eq = ha == hb
    hh_k0_eq = hh_eq and A.num_vertices == B.num_vertices
    evidence = {
        "digests": [digest(A), digest(B)],
        "invariant_pairs": [list(pa), list(pb)],
        "invariant_pairs_equal": pair_eq,
        "phi": [fa.formal_sum(), fb.formal_sum()],
        "phi_equal": phi_eq,
        "hh_characteristic": characteristic,
        "hh_dims": [list(ha), list(hb)],
        "hh_equal": hh_eq,
        "hh_and_k0_rank_equal": hh_k0_eq,
    }
    if not pair_eq == phi_eq == hh_k0_eq:
        raise InconsistentInvariantsError(f"invariants disagree: {evidence}")
    return EquivalenceVerdict(pair_eq, evidence)
