"""Hochschild cohomology of quadratic monomial algebras.

Cochains of degree n are E-bimodule maps from k Gamma_n to A, where
Gamma_0 = vertices, Gamma_1 = arrows and Gamma_n (n >= 2) is the set of
walks a_1 ... a_n with every a_i a_{i+1} a relation.  A basis of the
cochain space is given by pairs (gamma, p) with p a nonzero path parallel
to gamma.  The differential is

    d(f)(a_1 ... a_{n+1}) = a_1 f(a_2 ... a_{n+1}) + (-1)^{n+1} f(a_1 ... a_n) a_{n+1}.

Everything is exact: rationals in characteristic 0, residues mod p otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

from . import linalg
from .linalg import Field
from .quiver import (BoundQuiver, InfiniteDimensionalError, Path,
                     is_finite_dimensional, multiply, nonzero_paths, relation_cycles,
                     trivial_path)

Word = Union[str, tuple]  # a vertex (degree 0) or a tuple of arrow names


@dataclass(frozen=True)
class GammaSet:
    degree: int
    elements: tuple


@dataclass(frozen=True)
class CohomologyReport:
    dims: tuple[int, ...]
    characteristic: int
    ranks: tuple[int, ...]
    cochain_dims: tuple[int, ...]

    def __getitem__(self, n):
        return self.dims[n]


class CochainComplex:
    """The complex Hom_{E-E}(k Gamma_n, A) of a monomial quadratic algebra."""

    def __init__(self, A: BoundQuiver, characteristic: int = 0):
        if not is_finite_dimensional(A):
            raise InfiniteDimensionalError("Hochschild complex needs a finite dimensional algebra")
        self.A = A
        self.field = Field(characteristic)
        self._gamma = {0: tuple(A.vertices), 1: tuple((a.name,) for a in A.arrows)}
        self._diff: dict[int, list[list]] = {}
        self._rank: dict[int, int] = {}

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    @cached_property
    def _paths(self) -> dict[tuple[str, str], list[Path]]:
        out: dict = {}
        for p in nonzero_paths(self.A):
            out.setdefault((p.source, p.target), []).append(p)
        return out

    # -- words ------------------------------------------------------------------

    def ends(self, w: Word) -> tuple[str, str]:
        if isinstance(w, str):
            return (w, w)
        return (self.A.source(w[0]), self.A.target(w[-1]))

    def prefix(self, w: Word, k: int) -> Word:
        if isinstance(w, str):
            return w
        return w[:k] if k else self.A.source(w[0])

    def suffix(self, w: Word, k: int) -> Word:
        if isinstance(w, str):
            return w
        return w[len(w) - k:] if k else self.A.target(w[-1])

    def is_gamma_word(self, w: tuple) -> bool:
        return all(self.A.is_relation(w[i], w[i + 1]) for i in range(len(w) - 1))

    def gamma(self, n: int) -> tuple:
        if n not in self._gamma:
            prev = self.gamma(n - 1)
            self._gamma[n] = tuple(sorted(
                w + (b,) for w in prev for b in self.A.relation_successors(w[-1])))
        return self._gamma[n]

    def gamma_set(self, n: int) -> GammaSet:
        return GammaSet(n, self.gamma(n))

    def parallel_paths(self, w: Word) -> list[Path]:
        return self._paths.get(self.ends(w), [])

    def basis(self, n: int) -> list[tuple[Word, Path]]:
        return [(w, p) for w in self.gamma(n) for p in self.parallel_paths(w)]

    def basis_index(self, n: int) -> dict:
        key = ("index", n)
        cache = self.__dict__.setdefault("_index", {})
        if key not in cache:
            cache[key] = {b: i for i, b in enumerate(self.basis(n))}
        return cache[key]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    # -- differential -------------------------------------------------------------

    def differential(self, n: int) -> list[list[int]]:
        """Matrix of d^n: rows index basis(n+1), columns index basis(n)."""
        if n in self._diff:
            return self._diff[n]
        A = self.A
        cols = self.basis(n)
        rows_idx = self.basis_index(n + 1)
        M = [[0] * len(cols) for _ in range(len(rows_idx))]
        by_tail, by_head = {}, {}
        for w in self.gamma(n + 1):
            by_tail.setdefault(self.suffix(w, n), []).append(w)
            by_head.setdefault(self.prefix(w, n), []).append(w)
        sign = -1 if n % 2 == 0 else 1  # (-1)^(n+1)
        for j, (w, p) in enumerate(cols):
            for big in by_tail.get(w, ()):
                q = multiply(A, Path(A.source(big[0]), A.target(big[0]), big[:1]), p)
                if q is not None:
                    M[rows_idx[(big, q)]][j] += 1
            for big in by_head.get(w, ()):
                q = multiply(A, p, Path(A.source(big[-1]), A.target(big[-1]), big[-1:]))
                if q is not None:
                    M[rows_idx[(big, q)]][j] += sign
        self._diff[n] = M
        return M

    def rank(self, n: int) -> int:
        """Rank of d^n; zero for n < 0."""
        if n < 0:
            return 0
        if n not in self._rank:
            self._rank[n] = linalg.rank(self.differential(n), self.characteristic)
        return self._rank[n]

    def hh_dim(self, n: int) -> int:
        return self.dim(n) - self.rank(n) - self.rank(n - 1)

    def report(self, max_degree: int) -> CohomologyReport:
        dims = tuple(self.hh_dim(n) for n in range(max_degree + 1))
        return CohomologyReport(dims, self.characteristic,
                                tuple(self.rank(n) for n in range(max_degree + 1)),
                                tuple(self.dim(n) for n in range(max_degree + 1)))

    # -- cochains -------------------------------------------------------------------

    def cochain(self, n: int, values: dict) -> "Cochain":
        """Build a cochain from {word: {path: coefficient}}.

        Paths may be given as Path objects or as arrow tuples (empty tuple
        for the trivial path at the word's source).
        """
        idx = self.basis_index(n)
        vec = [self.field(0)] * len(idx)
        for w, vals in values.items():
            for p, c in vals.items():
                if not isinstance(p, Path):
                    s, t = self.ends(w)
                    p = Path(s, t, tuple(p))
                try:
                    vec[idx[(w, p)]] = self.field(vec[idx[(w, p)]] + c)
                except KeyError:
                    raise ValueError(f"{p} is not a nonzero path parallel to {w}") from None
        return Cochain(self, n, tuple(vec))

    def coboundary(self, f: "Cochain") -> "Cochain":
        M = self.differential(f.degree)
        vec = tuple(self.field(sum(row[j] * f.vector[j] for j in range(len(row)) if row[j]))
                    for row in M)
        return Cochain(self, f.degree + 1, vec)


@dataclass(frozen=True)
class Cochain:
    complex: CochainComplex
    degree: int
    vector: tuple

    def __post_init__(self):
        if len(self.vector) != self.complex.dim(self.degree):
            raise ValueError("cochain vector does not match the basis")

    def values(self) -> dict:
        """{word: {path: coefficient}} over nonzero coefficients."""
        out: dict = {}
        for (w, p), c in zip(self.complex.basis(self.degree), self.vector):
            if c != 0:
                out.setdefault(w, {})[p] = c
        return out

    def at(self, w: Word) -> dict:
        return self.values().get(w, {})

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.vector)

    def _check(self, other: "Cochain"):
        if other.complex is not self.complex:
            raise ValueError("cochains belong to different complexes")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        F = self.complex.field
        return Cochain(self.complex, self.degree,
                       tuple(F(a + b) for a, b in zip(self.vector, other.vector)))

    def scale(self, s) -> "Cochain":
        F = self.complex.field
        return Cochain(self.complex, self.degree, tuple(F(s * a) for a in self.vector))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)


def cup(f: Cochain, g: Cochain) -> Cochain:
    """(f u g)(a_1..a_{n+m}) = f(a_1..a_n) g(a_{n+1}..a_{n+m}), multiplied in A."""
    f._check(g)
    C, n, m = f.complex, f.degree, g.degree
    fv, gv = f.values(), g.values()
    out: dict = {}
    for w in C.gamma(n + m):
        left, right = fv.get(C.prefix(w, n), {}), gv.get(C.suffix(w, m), {})
        acc: dict = {}
        for p, a in left.items():
            for q, b in right.items():
                pq = multiply(C.A, p, q)
                if pq is not None:
                    acc[pq] = acc.get(pq, 0) + a * b
        if acc:
            out[w] = acc
    return C.cochain(n + m, out)


def circle_i(f: Cochain, g: Cochain, i: int) -> Cochain:
    """f o_i g: substitute g on letters i..i+m-1, keeping only arrow-valued terms."""
    f._check(g)
    C, n, m = f.complex, f.degree, g.degree
    d = n + m - 1
    out: dict = {}
    if m == 0 or not 1 <= i <= n:
        return C.cochain(d, {})
    fv, gv = f.values(), g.values()
    for w in C.gamma(d):
        sub = w[i - 1:i - 1 + m]
        acc: dict = {}
        for p, c in gv.get(sub, {}).items():
            if len(p.arrows) != 1:
                continue
            word = w[:i - 1] + p.arrows + w[i - 1 + m:]
            if not C.is_gamma_word(word):
                continue
            for q, b in fv.get(word, {}).items():
                acc[q] = acc.get(q, 0) + c * b
        if acc:
            out[w] = acc
    return C.cochain(d, out)


def circle_product(f: Cochain, g: Cochain) -> Cochain:
    n, m = f.degree, g.degree
    total = f.complex.cochain(max(n + m - 1, 0), {})
    for i in range(1, n + 1):
        term = circle_i(f, g, i)
        total = total + (term if ((i - 1) * (m - 1)) % 2 == 0 else term.scale(-1))
    return total


def bracket(f: Cochain, g: Cochain) -> Cochain:
    n, m = f.degree, g.degree
    sign = -1 if ((n - 1) * (m - 1)) % 2 == 0 else 1
    return circle_product(f, g) + circle_product(g, f).scale(sign)


def is_cocycle(f: Cochain) -> bool:
    return f.complex.coboundary(f).is_zero()


def _image_columns(C: CochainComplex, n: int) -> list[list]:
    if n == 0:
        return []
    M = C.differential(n - 1)
    return [[row[j] for row in M] for j in range(C.dim(n - 1))]


class NotACocycle(ValueError):
    pass


def is_coboundary(f: Cochain) -> bool:
    if not is_cocycle(f):
        raise NotACocycle("input is not a cocycle")
    if f.is_zero():
        return True
    cols = _image_columns(f.complex, f.degree)
    return bool(cols) and linalg.solve(cols, f.vector, f.complex.field) is not None


def class_equal_up_to_scalar(f: Cochain, g: Cochain):
    """A scalar s with [f] = s [g] in cohomology, or None."""
    f._check(g)
    for h in (f, g):
        if not is_cocycle(h):
            raise NotACocycle("input is not a cocycle")
    if f.degree != g.degree:
        return None
    cols = _image_columns(f.complex, f.degree) + [list(g.vector)]
    sol = linalg.solve(cols, f.vector, f.complex.field)
    return None if sol is None else sol[-1]


def hh_dims(A: BoundQuiver, max_degree: int, characteristic: int = 0) -> CohomologyReport:
    return CochainComplex(A, characteristic).report(max_degree)


def gamma_set(A: BoundQuiver, n: int) -> GammaSet:
    return CochainComplex(A).gamma_set(n)


def differential_matrix(A: BoundQuiver, n: int, characteristic: int = 0) -> list[list[int]]:
    C = CochainComplex(A, characteristic)
    F = C.field
    return [[F(x) for x in row] for row in C.differential(n)]


# -- the cycle generators F and G ------------------------------------------------------

def generator_degree(cycle_length: int, characteristic: int) -> int:
    """Least positive degree carrying the vertex-valued class of a relation cycle.

    The vertex-valued cochain on walks of length L around an L-cycle has
    coboundary (1 + (-1)^(L+1)) times an arrow, so it is a cocycle in
    degree L when L is even or 2 = 0, and otherwise first in degree 2L.
    """
    L = cycle_length
    return L if L % 2 == 0 or characteristic == 2 else 2 * L


def cycle_cochain(C: CochainComplex, cycle: tuple[str, ...], degree: int) -> Cochain:
    """Send every walk of length ``degree`` around ``cycle`` that closes up
    to the trivial path at its endpoint."""
    if degree % len(cycle):
        raise ValueError("degree must be a multiple of the cycle length")
    arrows = set(cycle)
    values = {}
    for w in C.gamma(degree):
        if set(w) <= arrows and C.ends(w)[0] == C.ends(w)[1]:
            values[w] = {trivial_path(C.ends(w)[0]): 1}
    return C.cochain(degree, values)


def arrow_cochain(C: CochainComplex, arrow: str) -> Cochain:
    return C.cochain(1, {(arrow,): {(arrow,): 1}})


def cycle_generators(C: CochainComplex, cycle: tuple[str, ...] | None = None):
    """(F, G, d) for a relation cycle: F in degree d, G picks out one arrow."""
    if cycle is None:
        cycles = relation_cycles(C.A)
        if not cycles:
            raise ValueError("no cycle with full relations")
        cycle = cycles[0]
    d = generator_degree(len(cycle), C.characteristic)
    return cycle_cochain(C, cycle, d), arrow_cochain(C, cycle[0]), d
