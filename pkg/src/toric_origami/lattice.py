"""Exact integer linear algebra: Smith and Hermite normal forms, kernels, ranks.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so every
operation is exact and never overflows.  Internally the algorithms work on
plain lists of lists, which is much faster than elementwise object arrays.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple

import numpy as np


def as_int_matrix(m, rows: int = None, cols: int = None) -> np.ndarray:
    """Coerce ``m`` to a 2-D object array of Python ints.

    ``rows``/``cols`` give the shape of an empty input, which numpy cannot
    infer from ``[]``.
    """
    if isinstance(m, np.ndarray) and m.ndim == 2:
        a = np.empty(m.shape, dtype=object)
        for idx, x in np.ndenumerate(m):
            a[idx] = _to_int(x)
        return a
    data = [list(r) for r in m]
    if not data:
        return np.empty((rows or 0, cols or 0), dtype=object)
    ncols = len(data[0])
    if any(len(r) != ncols for r in data):
        raise ValueError("ragged matrix")
    a = np.empty((len(data), ncols), dtype=object)
    for i, r in enumerate(data):
        for j, x in enumerate(r):
            a[i, j] = _to_int(x)
    return a


def _to_int(x) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"non-integer entry {x}")
        return int(x.numerator)
    i = int(x)
    if i != x:
        raise ValueError(f"non-integer entry {x}")
    return i


def identity(n: int) -> np.ndarray:
    return as_int_matrix([[int(i == j) for j in range(n)] for i in range(n)], n, n)


def _rows(m) -> Tuple[list, int, int]:
    a = as_int_matrix(m)
    r, c = a.shape
    return [list(a[i]) for i in range(r)], r, c


def _to_array(rows: list, r: int, c: int) -> np.ndarray:
    return as_int_matrix(rows, r, c)


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def determinant(m) -> int:
    """Determinant of a square integer matrix (Bareiss elimination)."""
    a, r, c = _rows(m)
    if r != c:
        raise ValueError("determinant of a non-square matrix")
    if r == 0:
        return 1
    sign, prev = 1, 1
    for k in range(r - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, r) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, r):
            for j in range(k + 1, r):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[r - 1][r - 1]


def rational_rank(m) -> int:
    """Rank over Q by fraction-free elimination."""
    a, r, c = _rows(m)
    rank = 0
    row = 0
    for col in range(c):
        piv = next((i for i in range(row, r) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        p = a[row][col]
        for i in range(row + 1, r):
            f = a[i][col]
            if f:
                a[i] = [p * x - f * y for x, y in zip(a[i], a[row])]
                g = 0
                for x in a[i]:
                    g = gcd(g, x)
                if g > 1:
                    a[i] = [x // g for x in a[i]]
        row += 1
        rank += 1
        if row == r:
            break
    return rank


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

class _SNF:
    """Smith reduction of a list-of-lists matrix, tracking the transforms.

    After ``run()``: ``d == u @ m @ v`` and ``uinv``/``vinv`` are the inverses.
    """

    def __init__(self, a, r, c, track=True):
        self.a, self.r, self.c = a, r, c
        self.track = track
        if track:
            self.u, self.uinv = _eye(r), _eye(r)
            self.v, self.vinv = _eye(c), _eye(c)

    # elementary operations -------------------------------------------------
    def add_row(self, dst, src, q):
        """row_dst += q * row_src."""
        a = self.a
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        if self.track:
            self.u[dst] = [x + q * y for x, y in zip(self.u[dst], self.u[src])]
            for row in self.uinv:
                row[src] -= q * row[dst]

    def add_col(self, dst, src, q):
        """col_dst += q * col_src."""
        for row in self.a:
            row[dst] += q * row[src]
        if self.track:
            for row in self.v:
                row[dst] += q * row[src]
            vi = self.vinv
            vi[src] = [x - q * y for x, y in zip(vi[src], vi[dst])]

    def swap_rows(self, i, j):
        if i == j:
            return
        a = self.a
        a[i], a[j] = a[j], a[i]
        if self.track:
            self.u[i], self.u[j] = self.u[j], self.u[i]
            for row in self.uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        if self.track:
            for row in self.v:
                row[i], row[j] = row[j], row[i]
            self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        if self.track:
            self.u[i] = [-x for x in self.u[i]]
            for row in self.uinv:
                row[i] = -row[i]

    # reduction -------------------------------------------------------------
    def run(self):
        a, r, c = self.a, self.r, self.c
        for t in range(min(r, c)):
            best = None
            for i in range(t, r):
                row = a[i]
                for j in range(t, c):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            self.swap_rows(t, best[1])
            self.swap_cols(t, best[2])
            while True:
                clean = True
                p = a[t][t]
                for i in range(t + 1, r):
                    if a[i][t]:
                        self.add_row(i, t, -(a[i][t] // p))
                        if a[i][t]:
                            clean = False
                for j in range(t + 1, c):
                    if a[t][j]:
                        self.add_col(j, t, -(a[t][j] // p))
                        if a[t][j]:
                            clean = False
                if not clean:
                    self._repivot(t)
                    continue
                bad = self._indivisible(t)
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if a[t][t] < 0:
                self.negate_row(t)
        return self

    def _repivot(self, t):
        a = self.a
        best = (abs(a[t][t]), t, t)
        for i in range(t + 1, self.r):
            if a[i][t] and abs(a[i][t]) < best[0]:
                best = (abs(a[i][t]), i, t)
        for j in range(t + 1, self.c):
            if a[t][j] and abs(a[t][j]) < best[0]:
                best = (abs(a[t][j]), t, j)
        self.swap_rows(t, best[1])
        self.swap_cols(t, best[2])

    def _indivisible(self, t):
        a = self.a
        p = a[t][t]
        for i in range(t + 1, self.r):
            row = a[i]
            for j in range(t + 1, self.c):
                if row[j] % p:
                    return i
        return None

    def diagonal(self):
        return [self.a[i][i] for i in range(min(self.r, self.c))]


def smith_normal_form(m) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form ``d = u @ m @ v`` with ``u``, ``v`` unimodular.

    The diagonal of ``d`` is non-negative with d1 | d2 | ...; pivots are
    chosen as the smallest nonzero absolute value, ties to the lowest
    (row, col).
    """
    a, r, c = _rows(m)
    s = _SNF(a, r, c).run()
    return _to_array(s.a, r, c), _to_array(s.u, r, r), _to_array(s.v, c, c)


def smith_decomposition(m):
    """Like :func:`smith_normal_form` but also returns ``u^-1`` and ``v^-1``."""
    a, r, c = _rows(m)
    s = _SNF(a, r, c).run()
    return (_to_array(s.a, r, c), _to_array(s.u, r, r), _to_array(s.v, c, c),
            _to_array(s.uinv, r, r), _to_array(s.vinv, c, c))


def smith_diagonal(m) -> list:
    """Nonzero invariant factors of ``m`` (no transforms tracked)."""
    a, r, c = _rows(m)
    s = _SNF(a, r, c, track=False).run()
    return [x for x in s.diagonal() if x]


# ---------------------------------------------------------------------------
# Hermite normal form and kernels
# ---------------------------------------------------------------------------

def _hnf_rows(a, r, c, u=None):
    """In-place row-style HNF; applies the same row operations to ``u``.

    Returns the rank.  Pivots are positive and entries above each pivot are
    reduced into ``[0, pivot)``.
    """
    def addrow(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        if u is not None:
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    row = 0
    for col in range(c):
        if row == r:
            break
        while True:
            nz = [i for i in range(row, r) if a[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][col]), i))
            swap(row, piv)
            done = True
            for i in range(row + 1, r):
                if a[i][col]:
                    addrow(i, row, -(a[i][col] // a[row][col]))
                    if a[i][col]:
                        done = False
            if done:
                break
        if a[row][col] == 0:
            continue
        if a[row][col] < 0:
            a[row] = [-x for x in a[row]]
            if u is not None:
                u[row] = [-x for x in u[row]]
        p = a[row][col]
        for i in range(row):
            q = a[i][col] // p
            if q:
                addrow(i, row, -q)
        row += 1
    return row


def hermite_normal_form(m) -> Tuple[np.ndarray, np.ndarray]:
    """Row-style Hermite normal form ``h = u @ m`` with ``u`` unimodular."""
    a, r, c = _rows(m)
    u = _eye(r)
    _hnf_rows(a, r, c, u)
    return _to_array(a, r, c), _to_array(u, r, r)


def integer_kernel(m) -> np.ndarray:
    """Basis (as columns) of the lattice ``{x in Z^cols : m x = 0}``.

    The basis is returned in Hermite-reduced form, so it is canonical.
    """
    a, r, c = _rows(m)
    at = [[a[i][j] for i in range(r)] for j in range(c)]
    u = _eye(c)
    rank = _hnf_rows(at, c, r, u)
    kernel = u[rank:]
    k = len(kernel)
    if k:
        _hnf_rows(kernel, k, c)
    return _to_array([[kernel[j][i] for j in range(k)] for i in range(c)], c, k)


def solve_unit(u: Sequence[int]) -> list:
    """An integer vector ``v`` with ``<v, u> = 1``; ``u`` must be primitive."""
    d, left, v = smith_normal_form([list(u)])
    if not d.shape[1] or d[0, 0] != 1:
        raise ValueError(f"{tuple(u)} is not primitive")
    # left is the 1x1 matrix (+1 or -1) with left * u * v = d
    sign = int(left[0, 0])
    return [sign * int(x) for x in v[:, 0]]


def solve_rational(a: Sequence[Sequence], b: Sequence):
    """Solve the square system ``a x = b`` over Q; ``None`` if singular."""
    n = len(a)
    rows = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for i in range(n):
            if i != col and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return [rows[i][n] for i in range(n)]


def matmul(*ms) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        out = as_int_matrix(out).dot(as_int_matrix(m))
    return as_int_matrix(out)


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk and every di >= 2."""

    free_rank: int = 0
    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for i, d in enumerate(factors):
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if i and d % factors[i - 1]:
                raise ValueError("invariant factors do not form a divisibility chain")

    @classmethod
    def free(cls, rank: int) -> "AbelianGroup":
        return cls(rank)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def torsion(self) -> "AbelianGroup":
        return AbelianGroup(0, self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.invariant_factors) <= 1

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        # direct sum; recompute invariant factors through a diagonal SNF
        diag = list(self.invariant_factors) + list(other.invariant_factors)
        n = len(diag)
        m = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
        factors = tuple(d for d in smith_diagonal(m) if d > 1) if n else ()
        return AbelianGroup(self.free_rank + other.free_rank, factors)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank,
                "invariant_factors": list(self.invariant_factors)}


def cokernel_structure(generators, n: int = None) -> AbelianGroup:
    """Isomorphism type of ``Z^n / (column span of generators)``."""
    g = as_int_matrix(generators, n, 0)
    if n is not None and g.shape[0] != n:
        raise ValueError(f"generators have {g.shape[0]} coordinates, expected {n}")
    n = g.shape[0]
    diag = smith_diagonal(g) if g.size else []
    return AbelianGroup(n - len(diag), tuple(d for d in diag if d > 1))
