"""The Avella-Alaminos--Geiss invariant of a gentle bound quiver.

Permitted threads are maximal nonzero paths, forbidden threads maximal
chains of relations.  Threads are paired into orbits by matching endpoints
and signs; each orbit contributes (number of steps, total forbidden
length), and each cycle of relations contributes (0, its length).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .normal_forms import NormalFormSpec
from .quiver import (BoundQuiver, QuiverError, is_finite_dimensional,
                     relation_cycles, validate_gentle)

PERMITTED, FORBIDDEN = "permitted", "forbidden"
CONVENTIONS = ("paper", "ag")


class SignError(QuiverError):
    """The sign constraints are inconsistent (input is not gentle)."""


class PairingError(RuntimeError):
    """Orbit pairing found no candidate, or several, at some step."""


@dataclass(frozen=True)
class SignAssignment:
    sigma: dict
    epsilon: dict


def assign_signs(A: BoundQuiver, rng: random.Random | None = None) -> SignAssignment:
    """Solve the sign constraints by union-find with parity.

    Each free parity class gets +1 at its least variable (arrow name, with
    sigma before epsilon), or a random sign when ``rng`` is given.
    """
    parent: dict = {}
    parity: dict = {}  # value(x) = value(parent) * (-1)**parity

    def find(x):
        if parent.setdefault(x, x) == x:
            parity.setdefault(x, 0)
            return x, 0
        root, p = find(parent[x])
        parent[x] = root
        parity[x] ^= p
        return root, parity[x]

    def link(x, y, opposite):
        (rx, px), (ry, py) = find(x), find(y)
        want = 1 if opposite else 0
        if rx == ry:
            if px ^ py != want:
                raise SignError(f"sign constraints conflict between {x} and {y}")
            return
        parent[ry] = rx
        parity[ry] = px ^ py ^ want

    for a in A.arrows:
        find(("s", a.name))
        find(("e", a.name))
    for v in A.vertices:
        outs, ins = A.out_arrows(v), A.in_arrows(v)
        for i in range(1, len(outs)):
            link(("s", outs[0].name), ("s", outs[i].name), True)
        for i in range(1, len(ins)):
            link(("e", ins[0].name), ("e", ins[i].name), True)
        for a in ins:
            for b in A.path_successors(a.name):
                link(("s", b), ("e", a.name), True)

    def order(x):
        return (x[1], 0 if x[0] == "s" else 1)

    classes: dict = {}
    for x in parent:
        classes.setdefault(find(x)[0], []).append(x)
    value = {}
    for root in sorted(classes, key=order):
        members = classes[root]
        anchor = min(members, key=order)
        sign = rng.choice((1, -1)) if rng is not None else 1
        base = sign * (-1) ** find(anchor)[1]  # value of the root
        for x in members:
            value[x] = base * (-1) ** find(x)[1]
    sigma = {a.name: value[("s", a.name)] for a in A.arrows}
    epsilon = {a.name: value[("e", a.name)] for a in A.arrows}
    return SignAssignment(sigma, epsilon)


def check_signs(A: BoundQuiver, signs: SignAssignment) -> bool:
    for v in A.vertices:
        outs, ins = A.out_arrows(v), A.in_arrows(v)
        if len(outs) == 2 and signs.sigma[outs[0].name] == signs.sigma[outs[1].name]:
            return False
        if len(ins) == 2 and signs.epsilon[ins[0].name] == signs.epsilon[ins[1].name]:
            return False
    for a in A.arrows:
        for b in A.path_successors(a.name):
            if signs.sigma[b] != -signs.epsilon[a.name]:
                return False
    return True


@dataclass(frozen=True)
class Thread:
    kind: str
    body: tuple[str, ...]
    source: str
    target: str
    sigma: int
    epsilon: int
    at: str = ""
    slot: str = "default"

    @property
    def length(self) -> int:
        return len(self.body)

    @property
    def is_trivial(self) -> bool:
        return not self.body

    def key(self):
        return (self.body, self.at, self.slot)

    def label(self) -> str:
        if self.body:
            return "".join(self.body) if all(len(b) == 1 for b in self.body) else ".".join(self.body)
        letter = "h" if self.kind == PERMITTED else "p"
        suffix = "" if self.slot == "default" else ("+" if self.slot == "plus" else "-")
        return f"{letter}_{self.at}{suffix}"


def _chains(A: BoundQuiver, succ, pred) -> list[tuple[str, ...]]:
    out = []
    for a in A.arrows:
        if pred(a.name):
            continue
        chain = [a.name]
        nxt = succ(a.name)
        while nxt:
            chain.append(nxt[0])
            nxt = succ(nxt[0])
        out.append(tuple(chain))
    return out


def threads(A: BoundQuiver, signs: SignAssignment | None = None,
            convention: str = "paper") -> list[Thread]:
    """All permitted and forbidden threads, trivial ones included.

    Trivial threads sit at vertices with at most one incoming and at most
    one outgoing arrow.  With both arrows present, the ``paper`` convention
    puts a trivial permitted thread there when the composite is nonzero and
    a trivial forbidden one when it is zero; ``ag`` swaps the two.  A
    vertex with one arrow gets one of each, an isolated vertex two of each.
    Relation chains that close up into cycles are not threads.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown thread convention {convention!r}")
    if signs is None:
        signs = assign_signs(A)
    sg, ep = signs.sigma, signs.epsilon
    out: list[Thread] = []
    for body in _chains(A, A.path_successors, A.path_predecessors):
        out.append(Thread(PERMITTED, body, A.source(body[0]), A.target(body[-1]),
                          sg[body[0]], ep[body[-1]]))
    for body in _chains(A, A.relation_successors, A.relation_predecessors):
        out.append(Thread(FORBIDDEN, body, A.source(body[0]), A.target(body[-1]),
                          sg[body[0]], ep[body[-1]]))

    for v in A.vertices:
        ins, outs = A.in_arrows(v), A.out_arrows(v)
        if len(ins) > 1 or len(outs) > 1:
            continue
        if not ins and not outs:
            out += [Thread(PERMITTED, (), v, v, 1, -1, v, "plus"),
                    Thread(PERMITTED, (), v, v, -1, 1, v, "minus"),
                    Thread(FORBIDDEN, (), v, v, 1, 1, v, "plus"),
                    Thread(FORBIDDEN, (), v, v, -1, -1, v, "minus")]
            continue
        kinds = [PERMITTED, FORBIDDEN]
        if ins and outs:
            zero = A.is_relation(ins[0].name, outs[0].name)
            if convention == "ag":
                zero = not zero
            kinds = [FORBIDDEN] if zero else [PERMITTED]
        for kind in kinds:
            s = -sg[outs[0].name] if outs else None
            e = -ep[ins[0].name] if ins else None
            # a missing side: sigma = -epsilon (permitted), sigma = epsilon (forbidden)
            flip = -1 if kind == PERMITTED else 1
            if s is None:
                s = flip * e
            if e is None:
                e = flip * s
            out.append(Thread(kind, (), v, v, s, e, v))
    out.sort(key=lambda t: (t.kind, t.key()))
    return out


@dataclass(frozen=True)
class PhiInvariant:
    """Finite multiset of pairs (n, m), stored as sorted ((n, m), count) items."""

    items: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "PhiInvariant":
        return cls.from_counts(Counter(tuple(p) for p in pairs))

    @classmethod
    def from_counts(cls, counts) -> "PhiInvariant":
        return cls(tuple(sorted((tuple(k), int(v)) for k, v in dict(counts).items() if v)))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.items)

    def __getitem__(self, pair) -> int:
        return self.as_dict().get(tuple(pair), 0)

    def total_length(self) -> int:
        return sum(m * k for (_, m), k in self.items)

    def formal_sum(self) -> str:
        if not self.items:
            return "0"
        return " + ".join(f"{k}·({n},{m})" for (n, m), k in self.items)

    def to_json(self) -> list[list[int]]:
        return [[n, m, k] for (n, m), k in self.items]

    def __str__(self):
        return self.formal_sum()


@dataclass(frozen=True)
class Orbit:
    permitted: tuple[Thread, ...]
    forbidden: tuple[Thread, ...]

    @property
    def pair(self) -> tuple[int, int]:
        return (len(self.permitted), sum(p.length for p in self.forbidden))


def orbits(A: BoundQuiver, signs: SignAssignment | None = None,
           convention: str = "paper") -> list[Orbit]:
    """Run the thread pairing and return the orbits in discovery order."""
    report = validate_gentle(A)
    if not report.is_gentle:
        raise QuiverError(f"phi needs a gentle bound quiver: {report.violations[0].detail}")
    if not is_finite_dimensional(A):
        raise QuiverError("phi needs a finite dimensional bound quiver")
    ts = threads(A, signs, convention)
    permitted = [t for t in ts if t.kind == PERMITTED]
    by_end: dict = {}
    by_start: dict = {}
    for t in ts:
        if t.kind == FORBIDDEN:
            by_end.setdefault((t.target, t.epsilon), []).append(t)
        else:
            by_start.setdefault((t.source, t.sigma), []).append(t)

    def unique(cands, what):
        if len(cands) != 1:
            found = ", ".join(c.label() for c in cands) or "none"
            raise PairingError(f"expected exactly one {what}, found {found}")
        return cands[0]

    used_p: set = set()
    used_f: Counter = Counter()
    result = []
    for start in permitted:
        if start.key() in used_p:
            continue
        hs, ps = [], []
        h = start
        while True:
            if h.key() in used_p:
                raise PairingError(f"thread {h.label()} reached by two orbits")
            used_p.add(h.key())
            hs.append(h)
            p = unique(by_end.get((h.target, -h.epsilon), []),
                       f"forbidden thread ending at {h.target} after {h.label()}")
            used_f[(p.key())] += 1
            ps.append(p)
            h = unique(by_start.get((p.source, -p.sigma), []),
                       f"permitted thread starting at {p.source} after {p.label()}")
            if h == start:
                break
        result.append(Orbit(tuple(hs), tuple(ps)))
    forbidden = [t for t in ts if t.kind == FORBIDDEN]
    bad = [t.label() for t in forbidden if used_f[t.key()] != 1]
    if bad or sum(used_f.values()) != len(forbidden):
        raise PairingError(f"forbidden threads not used exactly once: {bad}")
    return result


def phi(A: BoundQuiver, signs: SignAssignment | None = None,
        convention: str = "paper") -> PhiInvariant:
    pairs = [o.pair for o in orbits(A, signs, convention)]
    pairs += [(0, len(c)) for c in relation_cycles(A)]
    result = PhiInvariant.from_pairs(pairs)
    if result.total_length() != A.num_arrows:
        raise PairingError(
            f"phi accounts for {result.total_length()} arrows, quiver has {A.num_arrows}")
    return result


def phi_closed_form(spec: NormalFormSpec) -> PhiInvariant:
    """phi of N_{r,s}: r copies of (0, m+2) and one (s+1-r, s-1-r(m+1))."""
    m, r, s = spec.m, spec.r, spec.s
    counts = Counter({(s + 1 - r, s - 1 - r * (m + 1)): 1})
    if r:
        counts[(0, m + 2)] += r
    return PhiInvariant.from_counts(counts)


def phi_equal(p: PhiInvariant, q: PhiInvariant) -> bool:
    return p.as_dict() == q.as_dict()
