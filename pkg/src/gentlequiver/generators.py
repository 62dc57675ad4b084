"""Random m-branched quivers and random mutation chains, for property tests."""

from __future__ import annotations

import itertools
import random

from .classification import is_m_branched
from .mutation import COTILT, TILT, MutationLog, moves, run_steps
from .quiver import Arrow, BoundQuiver, Relation, validate_gentle


def _local_relation_choices(ins, outs, forced):
    """Relation sets at one vertex keeping both gentle continuation rules."""
    pairs = [(a, b) for a in ins for b in outs]
    free = [p for p in pairs if p not in forced]
    choices = []
    for k in range(len(free) + 1):
        for extra in itertools.combinations(free, k):
            rel = set(forced) | set(extra)
            ok = True
            for a in ins:
                zero = sum((a, b) in rel for b in outs)
                if zero > 1 or len(outs) - zero > 1:
                    ok = False
            for b in outs:
                zero = sum((a, b) in rel for a in ins)
                if zero > 1 or len(ins) - zero > 1:
                    ok = False
            if ok:
                choices.append(rel)
    return choices


def random_m_branched(rng: random.Random, m: int, max_vertices: int = 12,
                      cycle_weight: float = 0.35, attempts: int = 200) -> BoundQuiver:
    """A connected m-branched quiver with at most ``max_vertices`` vertices.

    Grows a tree of (m+2)-cycles and single arrows glued at vertices, then
    picks relations vertex by vertex among the gentle local patterns.
    """
    L = m + 2
    for _ in range(attempts):
        target = rng.randint(1, max_vertices)
        vertices = ["x0"]
        arrows: list[Arrow] = []
        forced: set = set()
        indeg = {"x0": 0}
        outdeg = {"x0": 0}

        def new_vertex():
            v = f"x{len(vertices)}"
            vertices.append(v)
            indeg[v] = outdeg[v] = 0
            return v

        def add_arrow(s, t):
            arrows.append(Arrow(f"e{len(arrows)}", s, t))
            outdeg[s] += 1
            indeg[t] += 1
            return arrows[-1].name

        stuck = 0
        while len(vertices) < target and stuck < 20:
            v = rng.choice(vertices)
            room_cycle = len(vertices) + L - 1 <= target
            if room_cycle and rng.random() < cycle_weight and indeg[v] < 2 and outdeg[v] < 2:
                ring = [v] + [new_vertex() for _ in range(L - 1)]
                names = [add_arrow(ring[i], ring[(i + 1) % L]) for i in range(L)]
                forced |= {(names[i], names[(i + 1) % L]) for i in range(L)}
            elif rng.random() < 0.5 and outdeg[v] < 2:
                add_arrow(v, new_vertex())
            elif indeg[v] < 2:
                add_arrow(new_vertex(), v)
            else:
                stuck += 1

        relations = set()
        failed = False
        for v in vertices:
            ins = [a.name for a in arrows if a.target == v]
            outs = [a.name for a in arrows if a.source == v]
            local_forced = {p for p in forced if p[0] in ins and p[1] in outs}
            choices = _local_relation_choices(ins, outs, local_forced)
            if not choices:
                failed = True
                break
            relations |= rng.choice(choices)
        if failed:
            continue
        A = BoundQuiver(tuple(vertices), tuple(arrows),
                        tuple(Relation(*p) for p in relations), f"random_m{m}")
        if validate_gentle(A).is_gentle and is_m_branched(A, m):
            return A
    raise RuntimeError("could not generate an m-branched quiver")


def random_mutation_chain(rng: random.Random, A: BoundQuiver, length: int) -> MutationLog:
    """Up to ``length`` random tilts or cotilts; stops early when none applies."""
    steps = []
    B = A
    for _ in range(length):
        options = moves(B)
        if not options:
            break
        kind, v = rng.choice(options)
        log = run_steps(B, [(kind, v)])
        B = log.end
        steps.append((kind, v))
    return run_steps(A, steps)


__all__ = ["COTILT", "TILT", "random_m_branched", "random_mutation_chain"]
