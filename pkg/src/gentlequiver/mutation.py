"""Mutation of gentle bound quivers and reduction to A-branched form.

``mutate(A, x)`` rewrites the bound quiver into the quiver with relations of
the endomorphism algebra of the tilting module obtained by replacing the
projective at x.  For an admissible x with in-arrows b_j -> x and out-arrows
x -> a_i:

* every in-arrow beta_j is reversed to x -> b_j;
* every out-arrow alpha_i is re-sourced at b_p, where beta_p is the in-arrow
  with beta_p alpha_i nonzero;
* every arrow gamma with gamma beta_j a relation is re-targeted at x.

The relations beta alpha and gamma beta are dropped.  New relations are
beta'_p alpha'_i, and gamma'^(j) beta'_k for each in-arrow k other than j.
Relations at the unchanged end of a moved arrow carry over.

``comutate`` is the dual rewrite, computed through the opposite quiver.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .ag_invariant import phi, phi_equal
from .canonical import digest
from .classification import (ALL_M, infer_m, is_A_branched, is_m_branched,
                             on_cycle_relations)
from .quiver import (Arrow, BoundQuiver, QuiverError, Relation, connected_components,
                     is_connected, is_finite_dimensional, opposite, validate_gentle)

TILT, COTILT = "tilt", "cotilt"
MINUS, PLUS, NEITHER, BOTH = "minus_extremal", "plus_extremal", "neither", "both"


class MutationError(QuiverError):
    pass


class InadmissibleVertexError(MutationError):
    pass


# -- single steps -------------------------------------------------------------------


def _nonzero_partner(A: BoundQuiver, alpha: str) -> str | None:
    for b in A.path_predecessors(alpha):
        return b
    return None


def is_admissible(A: BoundQuiver, x: str) -> bool:
    if x not in A.vertices:
        raise MutationError(f"unknown vertex {x!r}")
    if any(a.source == a.target for a in A.in_arrows(x)):
        return False
    return all(_nonzero_partner(A, a.name) is not None for a in A.out_arrows(x))


def admissible_vertices(A: BoundQuiver) -> list[str]:
    return [v for v in A.vertices if is_admissible(A, v)]


def co_admissible_vertices(A: BoundQuiver) -> list[str]:
    return admissible_vertices(opposite(A))


@dataclass(frozen=True)
class MutationStep:
    kind: str
    vertex: str
    before_hash: str
    after_hash: str

    def apply(self, A: BoundQuiver) -> BoundQuiver:
        fn = mutate if self.kind == TILT else comutate
        return fn(A, self.vertex)[0]

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertex": self.vertex,
                "before": self.before_hash, "after": self.after_hash}

    @classmethod
    def from_json(cls, data: dict) -> "MutationStep":
        return cls(data["kind"], data["vertex"], data["before"], data["after"])


def _rewrite(A: BoundQuiver, x: str) -> BoundQuiver:
    if not is_admissible(A, x):
        raise InadmissibleVertexError(
            f"vertex {x!r} is not admissible: some arrow leaving it has no "
            f"arrow entering it with a nonzero composite")
    ins = [a.name for a in A.in_arrows(x)]
    outs = [a.name for a in A.out_arrows(x)]
    partner = {a: _nonzero_partner(A, a) for a in outs}
    gammas: dict[str, str] = {}  # gamma -> the in-arrow it is related to
    for b in ins:
        for g in A.relation_predecessors(b):
            gammas[g] = b
    roles = [set(ins), set(outs), set(gammas)]
    for i in range(3):
        for j in range(i + 1, 3):
            if roles[i] & roles[j]:
                raise MutationError(
                    f"mutation at {x!r}: arrow {sorted(roles[i] & roles[j])[0]!r} plays two roles")

    new_arrows = []
    for a in A.arrows:
        if a.name in ins:
            new_arrows.append(Arrow(a.name, x, a.source))
        elif a.name in partner:
            new_arrows.append(Arrow(a.name, A.source(partner[a.name]), a.target))
        elif a.name in gammas:
            new_arrows.append(Arrow(a.name, a.source, x))
        else:
            new_arrows.append(a)

    relations = set()
    for r in A.relations:
        if r.first in ins or r.second in ins:
            continue  # beta alpha and gamma beta are dropped
        relations.add(r)  # includes (alpha, z) and (z, gamma), whose kept ends are unchanged
    for a in outs:
        relations.add(Relation(partner[a], a))
    for g, b in gammas.items():
        for k in ins:
            if k != b:
                relations.add(Relation(g, k))
    try:
        B = BoundQuiver(A.vertices, tuple(new_arrows), tuple(relations), A.name)
    except QuiverError as e:
        raise MutationError(f"mutation at {x!r} produced an invalid quiver: {e}") from e
    report = validate_gentle(B)
    if not report.is_gentle:
        v = report.violations[0]
        raise MutationError(f"mutation at {x!r} is not gentle: {v.rule} {v.detail}")
    if not is_finite_dimensional(B):
        raise MutationError(f"mutation at {x!r} is infinite dimensional")
    return B


def mutate(A: BoundQuiver, x: str) -> tuple[BoundQuiver, MutationStep]:
    B = _rewrite(A, x)
    return B, MutationStep(TILT, x, digest(A), digest(B))


def comutate(A: BoundQuiver, y: str) -> tuple[BoundQuiver, MutationStep]:
    try:
        B = opposite(_rewrite(opposite(A), y))
    except InadmissibleVertexError:
        raise InadmissibleVertexError(
            f"vertex {y!r} is not co-admissible: some arrow entering it has no "
            f"arrow leaving it with a nonzero composite") from None
    return B, MutationStep(COTILT, y, digest(A), digest(B))


def moves(A: BoundQuiver) -> list[tuple[str, str]]:
    """All (kind, vertex) steps that apply to A, in deterministic order."""
    out = [(TILT, v) for v in admissible_vertices(A)]
    out += [(COTILT, v) for v in co_admissible_vertices(A)]
    return out


def try_step(A: BoundQuiver, kind: str, vertex: str) -> BoundQuiver | None:
    try:
        return (_rewrite(A, vertex) if kind == TILT
                else opposite(_rewrite(opposite(A), vertex)))
    except MutationError:
        return None


# -- witness logs --------------------------------------------------------------------


class ReplayError(MutationError):
    pass


@dataclass(frozen=True)
class MutationLog:
    steps: tuple[MutationStep, ...]
    start: BoundQuiver
    end: BoundQuiver

    def replay(self, start: BoundQuiver | None = None) -> BoundQuiver:
        A = self.start if start is None else start
        for i, s in enumerate(self.steps):
            if digest(A) != s.before_hash:
                raise ReplayError(f"step {i}: digest mismatch before {s.kind} at {s.vertex}")
            A = s.apply(A)
            if digest(A) != s.after_hash:
                raise ReplayError(f"step {i}: digest mismatch after {s.kind} at {s.vertex}")
        return A

    def verify(self) -> bool:
        return digest(self.replay()) == digest(self.end)

    def to_json(self) -> dict:
        return {"start": digest(self.start), "end": digest(self.end),
                "steps": [s.to_json() for s in self.steps]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict, start: BoundQuiver) -> "MutationLog":
        steps = tuple(MutationStep.from_json(s) for s in data["steps"])
        log = cls(steps, start, start)
        end = log.replay()
        if digest(end) != data["end"]:
            raise ReplayError("replayed log does not reach the recorded end")
        return cls(steps, start, end)


def run_steps(A: BoundQuiver, steps) -> MutationLog:
    """Apply (kind, vertex) pairs in order and record the witness."""
    B, recorded = A, []
    for kind, v in steps:
        B, step = (mutate if kind == TILT else comutate)(B, v)
        recorded.append(step)
    return MutationLog(tuple(recorded), A, B)


# -- relations off the cycles ---------------------------------------------------------


def off_cycle_relations(A: BoundQuiver) -> list[Relation]:
    on = on_cycle_relations(A)
    return [r for r in A.relations if tuple(r) not in on]


class RelationSplitError(MutationError):
    pass


class RelationSplit(NamedTuple):
    rho: Relation
    y: str
    minus: frozenset
    plus: frozenset
    perp: frozenset


def split_at_relation(A: BoundQuiver, rho: Relation) -> RelationSplit:
    rho = Relation(*rho)
    if rho not in A.relations:
        raise RelationSplitError(f"{rho} is not a relation of the quiver")
    y = A.target(rho.first)
    rest = A.restrict([v for v in A.vertices if v != y])
    parts = [frozenset(C.vertices) for C in connected_components(rest)]
    src, tgt = A.source(rho.first), A.target(rho.second)
    minus = next(p for p in parts if src in p)
    plus = next(p for p in parts if tgt in p)
    if minus == plus:
        raise RelationSplitError(
            f"removing {y!r} does not separate the ends of {rho.first} {rho.second}; "
            f"the quiver is not branched")
    perp = frozenset().union(*[p for p in parts if p not in (minus, plus)])
    return RelationSplit(rho, y, minus, plus, perp)


def _branch_m(A: BoundQuiver, m: int | None) -> int:
    if m is not None:
        return m
    found = infer_m(A)
    return 1 if found is ALL_M or not found else min(found)


def extremal_kind(A: BoundQuiver, split: RelationSplit, m: int | None = None) -> str:
    m = _branch_m(A, m)
    lo = is_A_branched(A.restrict(split.minus), m)
    hi = is_A_branched(A.restrict(split.plus), m)
    return {(True, True): BOTH, (True, False): MINUS,
            (False, True): PLUS, (False, False): NEITHER}[(lo, hi)]


def extremal_relations(A: BoundQuiver, m: int | None = None) -> list[tuple[RelationSplit, str]]:
    out = []
    for r in off_cycle_relations(A):
        split = split_at_relation(A, r)
        kind = extremal_kind(A, split, m)
        if kind != NEITHER:
            out.append((split, kind))
    return out


# -- reduction ------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionResult:
    quiver: BoundQuiver
    log: MutationLog
    complete: bool
    expanded: int
    off_cycle_remaining: int = field(default=0)


class BudgetExhausted(MutationError):
    pass


def _score(A: BoundQuiver) -> tuple[int, int]:
    off = off_cycle_relations(A)
    return (len(off), len(A.relations))


def reduce_to_A_branched(A: BoundQuiver, m: int, budget: int = 20_000,
                         check_phi: bool = True) -> ReductionResult:
    """Mutate A until every relation lies on a cycle.

    Runs a best-first search over tilts and cotilts ordered by the number
    of relations off the cycles, deduplicating by canonical digest.  Every
    step keeps the quiver m-branched, so the search stays inside the
    derived equivalence class.  When ``budget`` expansions pass without
    success, the best quiver reached is returned with ``complete`` unset.
    """
    if not is_connected(A):
        raise MutationError("reduction needs a connected quiver")
    if not is_m_branched(A, m):
        raise MutationError(f"{A.name or 'input'} is not {m}-branched")
    start_digest = digest(A)
    parents: dict[str, tuple[str, str, str] | None] = {start_digest: None}
    quivers = {start_digest: A}
    frontier = [(_score(A), 0, start_digest)]
    best = (_score(A), start_digest)
    expanded = 0
    goal = start_digest if is_A_branched(A, m) else None
    while frontier and goal is None and expanded < budget:
        score, depth, key = heapq.heappop(frontier)
        expanded += 1
        Q = quivers[key]
        for kind, v in moves(Q):
            R = try_step(Q, kind, v)
            if R is None:
                continue
            k = digest(R)
            if k in parents:
                continue
            parents[k] = (key, kind, v)
            quivers[k] = R
            sc = _score(R)
            if sc < best[0]:
                best = (sc, k)
            if sc[0] == 0 and is_A_branched(R, m):
                goal = k
                break
            heapq.heappush(frontier, (sc, depth + 1, k))
    end_key = goal if goal is not None else best[1]
    path = []
    k = end_key
    while parents[k] is not None:
        prev, kind, v = parents[k]
        path.append((kind, v))
        k = prev
    path.reverse()
    log = run_steps(A, path)
    if check_phi and not phi_equal(phi(A), phi(log.end)):
        raise MutationError("phi changed along the reduction; mutation rule is inconsistent")
    return ReductionResult(log.end, log, goal is not None, expanded,
                           len(off_cycle_relations(log.end)))
