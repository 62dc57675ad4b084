"""Exact linear algebra over Z, Q and prime fields.

Matrices are lists of rows.  Characteristic 0 means the rationals; ranks
there use fraction-free (Bareiss) elimination on integer data.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_characteristic(p: int) -> int:
    if p != 0 and not _is_prime(p):
        raise ValueError(f"characteristic must be 0 or a prime, got {p}")
    return p


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for r in rows:
        dens = [x.denominator for x in r if isinstance(x, Fraction)]
        m = lcm(*dens) if dens else 1
        out.append([int(x * m) for x in r])
    return out


def rank_rational(rows: Sequence[Sequence]) -> int:
    """Rank over Q by Bareiss fraction-free elimination."""
    M = [r for r in _integer_rows(rows) if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        pr = M[rank]
        p = pr[col]
        for i in range(rank + 1, len(M)):
            ri = M[i]
            f = ri[col]
            if f == 0 and p == prev:
                continue
            M[i] = [(p * ri[j] - f * pr[j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == len(M):
            break
    return rank


def rank_mod_p(rows: Sequence[Sequence], p: int) -> int:
    M = []
    for r in rows:
        vals = []
        for x in r:
            if isinstance(x, Fraction):
                vals.append(x.numerator * pow(x.denominator, -1, p) % p)
            else:
                vals.append(x % p)
        if any(vals):
            M.append(vals)
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        pr = [x * inv % p for x in M[rank]]
        M[rank] = pr
        for i in range(rank + 1, len(M)):
            f = M[i][col]
            if f:
                M[i] = [(a - f * b) % p for a, b in zip(M[i], pr)]
        rank += 1
        if rank == len(M):
            break
    return rank


def rank(rows: Sequence[Sequence], characteristic: int = 0) -> int:
    if not rows or not len(rows[0]):
        return 0
    if characteristic == 0:
        return rank_rational(rows)
    return rank_mod_p(rows, characteristic)


class Field:
    """Scalars of Q (as Fraction) or of F_p (as reduced ints)."""

    def __init__(self, characteristic: int = 0):
        self.characteristic = check_characteristic(characteristic)

    def __repr__(self):
        return f"Field({self.characteristic})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if self.characteristic == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.characteristic)

    def reduce(self, x):
        return self(x)


def solve(columns: Sequence[Sequence], target: Sequence, field: Field):
    """Coefficients c with sum c_j * columns[j] == target, or None.

    Gauss-Jordan elimination over ``field`` on the augmented system.
    """
    n = len(target)
    k = len(columns)
    F = field
    M = [[F(columns[j][i]) for j in range(k)] + [F(target[i])] for i in range(n)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, n) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][col])
        M[r] = [F(x * inv) for x in M[r]]
        for i in range(n):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [F(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    if any(M[i][k] != 0 for i in range(r, n)):
        return None
    sol = [F(0)] * k
    for i, col in enumerate(pivots):
        sol[col] = M[i][k]
    return sol


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Bareiss elimination."""
    M = [list(map(int, r)) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(rows: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors d_1 | d_2 | ... of an integer matrix (zeros last)."""
    A = [list(map(int, r)) for r in rows]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    diag += [0] * (min(m, n) - len(diag))
    return diag


def unimodular_equivalent(a, b) -> bool:
    return len(a) == len(b) and smith_normal_form(a) == smith_normal_form(b)
