"""Normal forms: r chained (m+2)-cycles with full relations plus a linear tail."""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import Arrow, BoundQuiver, Relation


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class NormalFormSpec:
    m: int
    r: int
    s: int

    def __post_init__(self):
        if self.m < 1:
            raise SpecError(f"m must be positive, got {self.m}")
        if self.r < 0:
            raise SpecError(f"r must be nonnegative, got {self.r}")
        if self.s < 1:
            raise SpecError(f"s must be positive, got {self.s}")
        if self.tail < 0:
            raise SpecError(
                f"s = {self.s} is too small for {self.r} cycles of length {self.m + 2}; "
                f"need s >= {self.r * (self.m + 1) + 1}")

    @property
    def tail(self) -> int:
        """Number of tail arrows, n = s - 1 - r(m+1)."""
        return self.s - 1 - self.r * (self.m + 1)

    @classmethod
    def from_tail(cls, m: int, r: int, n: int) -> "NormalFormSpec":
        return cls(m, r, n + 1 + r * (m + 1))


def make_normal_form(spec: NormalFormSpec) -> BoundQuiver:
    """Build N_{r,s}.

    Vertex ``v0`` carries the tail and the first cycle.  Cycle ``j`` runs
    through positions 0..m+1 starting at ``v{j-1}``; position 2 of cycle
    ``j`` is ``v{j}``, where cycle ``j+1`` is attached.  Arrow ``a{j}_{k}``
    leaves position k of cycle j; tail arrows ``b{t}: u{t} -> u{t-1}`` end
    at ``u0 = v0`` and carry no relations.
    """
    m, r, n = spec.m, spec.r, spec.tail
    L = m + 2
    vertices = ["v0"]
    arrows, relations = [], []
    for j in range(1, r + 1):
        pos = []
        for k in range(L):
            if k == 0:
                pos.append(f"v{j - 1}")
            elif k == 2 and j < r:
                pos.append(f"v{j}")
            else:
                pos.append(f"c{j}_{k}")
        vertices += pos[1:]
        for k in range(L):
            arrows.append(Arrow(f"a{j}_{k}", pos[k], pos[(k + 1) % L]))
            relations.append(Relation(f"a{j}_{k}", f"a{j}_{(k + 1) % L}"))
    tail = ["v0"] + [f"u{t}" for t in range(1, n + 1)]
    vertices += tail[1:]
    for t in range(1, n + 1):
        arrows.append(Arrow(f"b{t}", tail[t], tail[t - 1]))
    return BoundQuiver(tuple(vertices), tuple(arrows), tuple(relations),
                       f"N_m{m}_r{r}_s{spec.s}")


def linear_quiver(s: int, name: str = "") -> BoundQuiver:
    """Linear A_s oriented s -> s-1 -> ... -> 1, no relations."""
    vertices = [str(i) for i in range(1, s + 1)]
    arrows = [Arrow(f"a{i}", str(i + 1), str(i)) for i in range(1, s)]
    return BoundQuiver(tuple(vertices), tuple(arrows), (), name or f"A{s}")
