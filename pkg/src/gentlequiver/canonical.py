"""Canonical forms of bound quivers by colour refinement and individualisation.

The bound quiver is encoded as a coloured digraph whose nodes are the
vertices and the arrows; edges are vertex -> arrow (source), arrow ->
vertex (target) and arrow -> arrow (relation).  Names do not enter the
canonical form, so two bound quivers are isomorphic iff their forms agree.
Search is exhaustive over refinement-equivalent choices, which is fine at
the sizes used here (a few dozen nodes).
"""

from __future__ import annotations

import hashlib

from .quiver import BoundQuiver

_SRC, _TGT, _REL = 0, 1, 2


def _graph(A: BoundQuiver):
    nodes = list(A.vertices) + [a.name for a in A.arrows]
    vid = {v: i for i, v in enumerate(A.vertices)}
    aid = {a.name: len(vid) + i for i, a in enumerate(A.arrows)}
    kinds = [0] * len(vid) + [1] * len(aid)
    edges = []
    for a in A.arrows:
        edges.append((vid[a.source], _SRC, aid[a.name]))
        edges.append((aid[a.name], _TGT, vid[a.target]))
    for r in A.relations:
        edges.append((aid[r.first], _REL, aid[r.second]))
    out = [[] for _ in nodes]
    inc = [[] for _ in nodes]
    for u, lab, w in edges:
        out[u].append((lab, w))
        inc[w].append((lab, u))
    return kinds, edges, out, inc


def _refine(colors, out, inc):
    n = len(colors)
    while True:
        sigs = [
            (colors[i],
             tuple(sorted((lab, colors[w]) for lab, w in out[i])),
             tuple(sorted((lab, colors[u]) for lab, u in inc[i])))
            for i in range(n)
        ]
        ranks = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _certificate(colors, kinds, edges):
    return (tuple(k for _, k in sorted(zip(colors, kinds))),
            tuple(sorted((colors[u], lab, colors[w]) for u, lab, w in edges)))


def canonical_form(A: BoundQuiver):
    kinds, edges, out, inc = _graph(A)
    if not kinds:
        return ((), ())
    best = None

    def search(colors):
        nonlocal best
        colors = _refine(colors, out, inc)
        if len(set(colors)) == len(colors):
            cert = _certificate(colors, kinds, edges)
            if best is None or cert < best:
                best = cert
            return
        cells = {}
        for i, c in enumerate(colors):
            cells.setdefault(c, []).append(i)
        target = min(c for c, members in cells.items() if len(members) > 1)
        for i in cells[target]:
            # individualised node sorts before the rest of its cell
            search([2 * c + (0 if j == i else 1) for j, c in enumerate(colors)])

    search(list(kinds))
    return best


def digest(A: BoundQuiver) -> str:
    return hashlib.sha256(repr(canonical_form(A)).encode()).hexdigest()[:16]


def isomorphic(A: BoundQuiver, B: BoundQuiver) -> bool:
    if (A.num_vertices, A.num_arrows, len(A.relations)) != (
            B.num_vertices, B.num_arrows, len(B.relations)):
        return False
    return canonical_form(A) == canonical_form(B)
