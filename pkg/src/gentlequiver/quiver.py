"""Bound quivers with quadratic monomial relations.

A path is read left to right: ``(a, b)`` is "a then b" and requires
``target(a) == source(b)``.  All name-keyed iteration is in plain string
order so that every derived output is reproducible byte for byte.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple


class QuiverError(ValueError):
    """Malformed quiver data (dangling endpoints, duplicates, bad relations)."""


class InfiniteDimensionalError(QuiverError):
    """The bound quiver admits arbitrarily long nonzero paths."""


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class Relation(NamedTuple):
    first: str
    second: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        vertices = tuple(sorted(self.vertices))
        if len(set(vertices)) != len(vertices):
            dup = [v for v, c in Counter(vertices).items() if c > 1]
            raise QuiverError(f"duplicate vertex names: {dup}")
        arrows = tuple(sorted((Arrow(*a) for a in self.arrows), key=lambda a: a.name))
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            dup = [n for n, c in Counter(names).items() if c > 1]
            raise QuiverError(f"duplicate arrow names: {dup}")
        known = set(vertices)
        for a in arrows:
            for end in (a.source, a.target):
                if end not in known:
                    raise QuiverError(f"arrow {a.name!r} uses undeclared vertex {end!r}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", arrows)


@dataclass(frozen=True)
class BoundQuiver:
    """A quiver together with a set of length-two zero relations.

    Instances are immutable; every operation in this package returns a new
    value.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        q = Quiver(self.vertices, self.arrows)
        object.__setattr__(self, "vertices", q.vertices)
        object.__setattr__(self, "arrows", q.arrows)
        by_name = {a.name: a for a in q.arrows}
        rels = []
        for r in self.relations:
            r = Relation(*r)
            for n in r:
                if n not in by_name:
                    raise QuiverError(f"relation {r.first} {r.second}: unknown arrow {n!r}")
            if by_name[r.first].target != by_name[r.second].source:
                raise QuiverError(
                    f"relation {r.first} {r.second} is not composable: "
                    f"target({r.first}) = {by_name[r.first].target!r} but "
                    f"source({r.second}) = {by_name[r.second].source!r}"
                )
            rels.append(r)
        if len(set(rels)) != len(rels):
            dup = [r for r, c in Counter(rels).items() if c > 1]
            raise QuiverError(f"duplicate relations: {dup}")
        object.__setattr__(self, "relations", tuple(sorted(rels)))

    @classmethod
    def from_data(cls, vertices: Iterable[str], arrows: Iterable, relations: Iterable = (),
                  name: str = "") -> "BoundQuiver":
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows),
                   tuple(Relation(*r) for r in relations), name)

    # -- lookups ---------------------------------------------------------

    @property
    def quiver(self) -> Quiver:
        return Quiver(self.vertices, self.arrows)

    @cached_property
    def _arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def _relation_set(self) -> frozenset[Relation]:
        return frozenset(self.relations)

    @cached_property
    def _incidence(self):
        outs, ins = defaultdict(list), defaultdict(list)
        for a in self.arrows:
            outs[a.source].append(a)
            ins[a.target].append(a)
        return outs, ins

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrow_map[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def source(self, name: str) -> str:
        return self.arrow(name).source

    def target(self, name: str) -> str:
        return self.arrow(name).target

    def out_arrows(self, v: str) -> tuple[Arrow, ...]:
        return tuple(self._incidence[0].get(v, ()))

    def in_arrows(self, v: str) -> tuple[Arrow, ...]:
        return tuple(self._incidence[1].get(v, ()))

    def is_relation(self, first: str, second: str) -> bool:
        return Relation(first, second) in self._relation_set

    def relation_successors(self, a: str) -> list[str]:
        """Arrows b with ab a relation."""
        return [b.name for b in self.out_arrows(self.target(a)) if self.is_relation(a, b.name)]

    def relation_predecessors(self, a: str) -> list[str]:
        return [b.name for b in self.in_arrows(self.source(a)) if self.is_relation(b.name, a)]

    def path_successors(self, a: str) -> list[str]:
        """Arrows b with ab a nonzero path."""
        return [b.name for b in self.out_arrows(self.target(a)) if not self.is_relation(a, b.name)]

    def path_predecessors(self, a: str) -> list[str]:
        return [b.name for b in self.in_arrows(self.source(a)) if not self.is_relation(b.name, a)]

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    def with_name(self, name: str) -> "BoundQuiver":
        return BoundQuiver(self.vertices, self.arrows, self.relations, name)

    def restrict(self, vertices: Iterable[str]) -> "BoundQuiver":
        """Full bound subquiver on ``vertices``."""
        keep = set(vertices)
        arrows = [a for a in self.arrows if a.source in keep and a.target in keep]
        names = {a.name for a in arrows}
        rels = [r for r in self.relations if r.first in names and r.second in names]
        return BoundQuiver(tuple(keep), tuple(arrows), tuple(rels))


# -- gentleness -------------------------------------------------------------

G1, G2, G3 = "G1", "G2", "G3"
LOOP = "loop-anomaly"
NON_QUADRATIC = "non-quadratic"


class Violation(NamedTuple):
    rule: str
    witness: tuple[str, ...]
    detail: str


@dataclass(frozen=True)
class GentleReport:
    violations: tuple[Violation, ...]
    multiple_arrows: tuple[tuple[str, ...], ...] = ()

    @property
    def is_gentle(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.is_gentle


def validate_gentle(A: BoundQuiver) -> GentleReport:
    """Check conditions G1-G3 and reject loops.

    Parallel arrows are reported in ``multiple_arrows`` but are not a
    violation.
    """
    out: list[Violation] = []
    for a in A.arrows:
        if a.source == a.target:
            out.append(Violation(LOOP, (a.name,), f"loop {a.name} at {a.source}"))
    for v in A.vertices:
        n_out, n_in = len(A.out_arrows(v)), len(A.in_arrows(v))
        if n_out > 2:
            out.append(Violation(G1, (v,), f"{n_out} arrows start at {v}"))
        if n_in > 2:
            out.append(Violation(G1, (v,), f"{n_in} arrows end at {v}"))
    for a in A.arrows:
        succ, pred = A.path_successors(a.name), A.path_predecessors(a.name)
        if len(succ) > 1:
            out.append(Violation(G2, (a.name, *succ), f"{a.name} continues outside I along {succ}"))
        if len(pred) > 1:
            out.append(Violation(G2, (a.name, *pred), f"{a.name} is preceded outside I by {pred}"))
        rsucc, rpred = A.relation_successors(a.name), A.relation_predecessors(a.name)
        if len(rsucc) > 1:
            out.append(Violation(G3, (a.name, *rsucc), f"{a.name} has relations with {rsucc}"))
        if len(rpred) > 1:
            out.append(Violation(G3, (a.name, *rpred), f"{a.name} is related from {rpred}"))
    parallel = defaultdict(list)
    for a in A.arrows:
        parallel[(a.source, a.target)].append(a.name)
    multiple = tuple(tuple(ns) for _, ns in sorted(parallel.items()) if len(ns) > 1)
    return GentleReport(tuple(out), multiple)


def is_gentle(A: BoundQuiver) -> bool:
    return validate_gentle(A).is_gentle


# -- graph invariants ---------------------------------------------------------

def _component_vertex_sets(A: BoundQuiver) -> list[list[str]]:
    parent = {v: v for v in A.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a in A.arrows:
        ra, rb = find(a.source), find(a.target)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups = defaultdict(list)
    for v in A.vertices:
        groups[find(v)].append(v)
    return sorted(groups.values())


def connected_components(A: BoundQuiver) -> list[BoundQuiver]:
    comps = _component_vertex_sets(A)
    if len(comps) == 1:
        return [A]
    return [A.restrict(c) for c in comps]


def is_connected(A: BoundQuiver) -> bool:
    return len(_component_vertex_sets(A)) <= 1


def euler_characteristic(A: BoundQuiver) -> int:
    """Cycle rank of the underlying graph, |Q1| - |Q0| + #components."""
    return A.num_arrows - A.num_vertices + len(_component_vertex_sets(A))


class CycleList(list):
    """List of cycles; ``overflow`` is set when enumeration stopped early."""

    overflow: bool = False


def _rotate(cycle: list[str]) -> tuple[str, ...]:
    i = cycle.index(min(cycle))
    return tuple(cycle[i:] + cycle[:i])


def simple_oriented_cycles(A: BoundQuiver, limit: int = 10_000) -> CycleList:
    """All simple directed cycles as arrow tuples, each once up to rotation.

    Each cycle is rotated to start at its least arrow name.  Enumeration
    stops, with ``overflow`` set, once more than ``limit`` cycles are seen.
    """
    index = {v: i for i, v in enumerate(A.vertices)}
    found = CycleList()

    def dfs(start, v, on_path, arrows):
        for a in A.out_arrows(v):
            w = a.target
            if w == start:
                found.append(_rotate(arrows + [a.name]))
                if len(found) > limit:
                    return True
            elif index[w] > index[start] and w not in on_path:
                on_path.add(w)
                stop = dfs(start, w, on_path, arrows + [a.name])
                on_path.discard(w)
                if stop:
                    return True
        return False

    for s in A.vertices:
        if dfs(s, s, {s}, []):
            del found[limit:]
            found.overflow = True
            break
    found.sort()
    return found


def is_full_relation_cycle(A: BoundQuiver, cycle: tuple[str, ...]) -> bool:
    n = len(cycle)
    return all(A.is_relation(cycle[i], cycle[(i + 1) % n]) for i in range(n))


def full_relation_cycles(A: BoundQuiver, limit: int = 10_000) -> list[tuple[str, ...]]:
    """Simple oriented cycles in which every consecutive composition is a relation."""
    return [c for c in simple_oriented_cycles(A, limit) if is_full_relation_cycle(A, c)]


def relation_cycles(A: BoundQuiver) -> list[tuple[str, ...]]:
    """Cycles of the relation-successor map (arrow a -> b when ab is a relation).

    For gentle input the map is a partial function, so its cycles are
    arrow-disjoint.  Unlike ``full_relation_cycles`` these may revisit a
    vertex.
    """
    succ = {a.name: A.relation_successors(a.name) for a in A.arrows}
    if any(len(s) > 1 for s in succ.values()):
        raise QuiverError("relation successors are not unique; input is not gentle")
    seen: set[str] = set()
    cycles = []
    for a in A.arrows:
        if a.name in seen:
            continue
        walk, pos = [], {}
        cur = a.name
        while cur is not None and cur not in seen and cur not in pos:
            pos[cur] = len(walk)
            walk.append(cur)
            nxt = succ[cur]
            cur = nxt[0] if nxt else None
        if cur is not None and cur in pos:
            cycles.append(_rotate(walk[pos[cur]:]))
        seen.update(walk)
    return sorted(cycles)


def is_finite_dimensional(A: BoundQuiver) -> bool:
    """True iff no arbitrarily long path avoids the relations.

    Equivalent to acyclicity of the graph on arrows with an edge a -> b
    whenever ab is a nonzero path.
    """
    return _path_order(A) is not None


def _path_order(A: BoundQuiver):
    indeg = {a.name: len(A.path_predecessors(a.name)) for a in A.arrows}
    ready = sorted(n for n, d in indeg.items() if d == 0)
    order = []
    while ready:
        n = ready.pop()
        order.append(n)
        for b in A.path_successors(n):
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
    return order if len(order) == len(indeg) else None


class Path(NamedTuple):
    """A path of the bound quiver; trivial paths have ``arrows == ()``."""

    source: str
    target: str
    arrows: tuple[str, ...]

    def __len__(self):
        return len(self.arrows)


def trivial_path(v: str) -> Path:
    return Path(v, v, ())


def nonzero_paths(A: BoundQuiver) -> list[Path]:
    """Basis of kQ/I: trivial paths and all paths avoiding the relations."""
    if not is_finite_dimensional(A):
        raise InfiniteDimensionalError("bound quiver is not finite dimensional")
    out = [trivial_path(v) for v in A.vertices]
    stack = [(a.name,) for a in reversed(A.arrows)]
    while stack:
        p = stack.pop()
        out.append(Path(A.source(p[0]), A.target(p[-1]), p))
        for b in reversed(A.path_successors(p[-1])):
            stack.append(p + (b,))
    out.sort(key=lambda p: (p.source, p.target, len(p.arrows), p.arrows))
    return out


def multiply(A: BoundQuiver, p: Path, q: Path) -> Path | None:
    """Product pq in kQ/I of two nonzero paths, or None when it vanishes."""
    if p.target != q.source:
        return None
    if p.arrows and q.arrows and A.is_relation(p.arrows[-1], q.arrows[0]):
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


# -- Cartan matrices ------------------------------------------------------------

@dataclass(frozen=True)
class CartanMatrix:
    order: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def cartan_matrix(A: BoundQuiver) -> CartanMatrix:
    """Entry (x, y) counts nonzero paths from x to y, trivial path included."""
    order = _path_order(A)
    if order is None:
        raise InfiniteDimensionalError("Cartan matrix requires a finite dimensional algebra")
    # ends[a][y]: nonzero paths starting with arrow a and ending at y
    ends: dict[str, Counter] = {}
    for a in reversed(order):
        c = Counter({A.target(a): 1})
        for b in A.path_successors(a):
            c.update(ends[b])
        ends[a] = c
    idx = {v: i for i, v in enumerate(A.vertices)}
    n = len(idx)
    rows = [[0] * n for _ in range(n)]
    for x in A.vertices:
        rows[idx[x]][idx[x]] += 1
        for a in A.out_arrows(x):
            for y, k in ends[a.name].items():
                rows[idx[x]][idx[y]] += k
    return CartanMatrix(A.vertices, tuple(tuple(r) for r in rows))


def opposite(A: BoundQuiver) -> BoundQuiver:
    """Reverse every arrow; the relation ab becomes ba."""
    arrows = tuple(Arrow(a.name, a.target, a.source) for a in A.arrows)
    rels = tuple(Relation(r.second, r.first) for r in A.relations)
    return BoundQuiver(A.vertices, arrows, rels, A.name)
