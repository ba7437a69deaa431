"""Exact linear algebra: Smith normal form, solvers, and certificates.

Everything is pure Python over int and Fraction.  Matrices are lists of
lists (rows).  The solvers return either a particular solution plus a
kernel basis or an explicit obstruction functional that the caller (and
the test suite) can re-verify independently:

* over Q, a row r with r A = 0 and r b != 0;
* over Z, a rational row r with r A integral and r b not an integer.

Matrix sizes here stay in the hundreds, so cubic algorithms with small
pivots are fast enough; no numeric libraries are involved, which keeps
every certificate exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for k, a in enumerate(row):
            if a:
                rb = B[k]
                for j in range(cols):
                    if rb[j]:
                        acc[j] += a * rb[j]
        out.append(acc)
    return out


def mat_vec(A: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in A:
        s = 0
        for a, x in zip(row, v):
            if a and x:
                s += a * x
        out.append(s)
    return out


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)] if A else []


@dataclass
class SmithForm:
    """D = S A T with S, T unimodular; inverses accumulated alongside.

    D is rectangular diagonal with nonnegative entries d_0 | d_1 | ...
    """

    D: Matrix
    S: Matrix
    T: Matrix
    Sinv: Matrix
    Tinv: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithForm:
    r = len(A)
    c = len(A[0]) if r else 0
    D = [list(map(int, row)) for row in A]
    S, Sinv = identity_matrix(r), identity_matrix(r)
    T, Tinv = identity_matrix(c), identity_matrix(c)

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        S[i], S[j] = S[j], S[i]
        for row in Sinv:
            row[i], row[j] = row[j], row[i]

    def row_add(i, j, q):
        # row i += q * row j
        for t in range(c):
            D[i][t] += q * D[j][t]
        for t in range(r):
            S[i][t] += q * S[j][t]
        for row in Sinv:
            row[j] -= q * row[i]

    def row_neg(i):
        for t in range(c):
            D[i][t] = -D[i][t]
        for t in range(r):
            S[i][t] = -S[i][t]
        for row in Sinv:
            row[i] = -row[i]

    def col_swap(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in T:
            row[i], row[j] = row[j], row[i]
        Tinv[i], Tinv[j] = Tinv[j], Tinv[i]

    def col_add(i, j, q):
        # col i += q * col j
        for row in D:
            row[i] += q * row[j]
        for row in T:
            row[i] += q * row[j]
        for t in range(c):
            Tinv[j][t] -= q * Tinv[i][t]

    n = min(r, c)
    for k in range(n):
        while True:
            # smallest nonzero entry of the trailing block into the pivot
            best = None
            for i in range(k, r):
                for j in range(k, c):
                    v = D[i][j]
                    if v and (best is None or abs(v) < abs(best[0])):
                        best = (v, i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != k:
                row_swap(k, pi)
            if pj != k:
                col_swap(k, pj)
            if D[k][k] < 0:
                row_neg(k)
            dirty = False
            for i in range(k + 1, r):
                if D[i][k]:
                    q = D[i][k] // D[k][k]
                    row_add(i, k, -q)
                    if D[i][k]:
                        dirty = True
            for j in range(k + 1, c):
                if D[k][j]:
                    q = D[k][j] // D[k][k]
                    col_add(j, k, -q)
                    if D[k][j]:
                        dirty = True
            if dirty:
                continue
            # divisibility: fold any non-multiple into the pivot's column
            offender = None
            for i in range(k + 1, r):
                for j in range(k + 1, c):
                    if D[i][j] % D[k][k]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(k, offender, 1)
    return SmithForm(D, S, T, Sinv, Tinv)


# -- solvers ---------------------------------------------------------------


@dataclass
class Solution:
    """x0 + span(kernel) solves A x = b over the relevant ring."""

    x0: list
    kernel: list[list]


@dataclass
class Obstruction:
    """A functional certifying unsolvability; see check() for the sense."""

    functional: list[Fraction]
    ring: str

    def check(self, A: Sequence[Sequence[int]], b: Sequence) -> bool:
        r = self.functional
        rA = [sum(ri * aij for ri, aij in zip(r, col) if ri) for col in zip(*A)] if A and A[0] else []
        rb = sum(ri * bi for ri, bi in zip(r, b) if ri)
        if self.ring == "Q":
            return all(v == 0 for v in rA) and rb != 0
        return all(Fraction(v).denominator == 1 for v in rA) and Fraction(rb).denominator != 1


def _snf_kernel(f: SmithForm) -> list[list[int]]:
    r = len(f.D)
    c = len(f.D[0]) if f.D else 0
    diag = f.diagonal
    cols = [j for j in range(c) if j >= len(diag) or diag[j] == 0]
    return [[f.T[i][j] for i in range(c)] for j in cols]


def solve_int(A: Sequence[Sequence[int]], b: Sequence[int]) -> Solution | Obstruction:
    """All integer solutions of A x = b, or a rational obstruction row."""
    r = len(A)
    c = len(A[0]) if r else 0
    if r == 0:
        return Solution([], [[1 if i == j else 0 for i in range(c)] for j in range(c)])
    return solve_int_snf(smith_normal_form(A), b)


def solve_int_snf(f: SmithForm, b: Sequence[int]) -> Solution | Obstruction:
    """solve_int against a precomputed nonempty Smith form.

    Splitting the decomposition from the substitution lets callers solving
    many right-hand sides against one matrix pay for it once.
    """
    r = len(f.D)
    c = len(f.D[0]) if f.D else 0
    sb = mat_vec(f.S, b)
    diag = f.diagonal
    y = [0] * c
    for i in range(r):
        d = diag[i] if i < len(diag) else 0
        if d:
            if sb[i] % d:
                row = [Fraction(v, d) for v in f.S[i]]
                return Obstruction(row, "Z")
            y[i] = sb[i] // d
        elif sb[i]:
            # rationally inconsistent: rA = 0 with rb != 0
            return Obstruction([Fraction(v) for v in f.S[i]], "Q")
    x0 = mat_vec(f.T, y)
    return Solution(x0, _snf_kernel(f))


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Solution | Obstruction:
    """All rational solutions of A x = b, or a functional with rA=0, rb!=0."""
    r = len(A)
    c = len(A[0]) if r else 0
    M = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(A, b)]
    # track row ops so an inconsistent row yields a functional on the input
    ops = identity_matrix(r)
    ops = [[Fraction(v) for v in row] for row in ops]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(c):
        piv = next((i for i in range(row, r) if M[i][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        ops[row], ops[piv] = ops[piv], ops[row]
        inv = 1 / M[row][col]
        M[row] = [v * inv for v in M[row]]
        ops[row] = [v * inv for v in ops[row]]
        for i in range(r):
            if i != row and M[i][col]:
                q = M[i][col]
                M[i] = [a - q * p for a, p in zip(M[i], M[row])]
                ops[i] = [a - q * p for a, p in zip(ops[i], ops[row])]
        pivots.append((row, col))
        row += 1
        if row == r:
            break
    for i in range(row, r):
        if M[i][c]:
            return Obstruction(ops[i], "Q")
    x0 = [Fraction(0)] * c
    for i, col in pivots:
        x0[col] = M[i][c]
    pivot_cols = {col for _, col in pivots}
    kernel = []
    for free in range(c):
        if free in pivot_cols:
            continue
        v = [Fraction(0)] * c
        v[free] = Fraction(1)
        for i, col in pivots:
            v[col] = -M[i][free]
        kernel.append(v)
    return Solution(x0, kernel)


def kernel_int(A: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A:
        return []
    return _snf_kernel(smith_normal_form(A))


def kernel_mod_prime(A: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of the kernel of A over the field Z/p (p prime)."""
    r = len(A)
    c = len(A[0]) if r else 0
    M = [[v % p for v in row] for row in A]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(c):
        piv = next((i for i in range(row, r) if M[i][col] % p), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = pow(M[row][col], -1, p)
        M[row] = [(v * inv) % p for v in M[row]]
        for i in range(r):
            if i != row and M[i][col]:
                q = M[i][col]
                M[i] = [(a - q * b) % p for a, b in zip(M[i], M[row])]
        pivots.append((row, col))
        row += 1
        if row == r:
            break
    pivot_cols = {col for _, col in pivots}
    kernel = []
    for free in range(c):
        if free in pivot_cols:
            continue
        v = [0] * c
        v[free] = 1
        for i, col in pivots:
            v[col] = (-M[i][free]) % p
        kernel.append(v)
    return kernel


def kernel_mod(A: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Spanning set (not necessarily a basis) of ker A over Z/k."""
    r = len(A)
    c = len(A[0]) if r else 0
    lifted = [list(row) + [k if i == j else 0 for j in range(r)] for i, row in enumerate(A)]
    out = []
    seen = set()
    for v in kernel_int(lifted):
        w = tuple(u % k for u in v[:c])
        if any(w) and w not in seen:
            seen.add(w)
            out.append(list(w))
    return out


def solve_mod(A: Sequence[Sequence[int]], b: Sequence[int], k: int) -> Solution | None:
    """Solutions of A x = b over Z/k, via the integer lift [A | k I]."""
    r = len(A)
    if r == 0:
        return Solution([], [])
    lifted = [list(row) + [k if i == j else 0 for j in range(r)] for i, row in enumerate(A)]
    return solve_mod_snf(smith_normal_form(lifted), b, k)


def solve_mod_snf(f: SmithForm, b: Sequence[int], k: int) -> Solution | None:
    """solve_mod against a precomputed Smith form of the lift [A | k I]."""
    r = len(f.D)
    c = (len(f.D[0]) if f.D else 0) - r
    res = solve_int_snf(f, list(b))
    if isinstance(res, Obstruction):
        return None
    x0 = [v % k for v in res.x0[:c]]
    seen = set()
    kernel = []
    for v in res.kernel:
        w = tuple(u % k for u in v[:c])
        if any(w) and w not in seen:
            seen.add(w)
            kernel.append(list(w))
    return Solution(x0, kernel)


# -- lattice membership ----------------------------------------------------


@dataclass
class LatticePoint:
    """Witness that target = L u for the given integer u."""

    coords: list[int]


def lattice_member(L: Sequence[Sequence[int]], target: Sequence[int]) -> LatticePoint | Obstruction:
    """Is target in the integer column span of L?  Witness or functional."""
    res = solve_int(L, list(target))
    if isinstance(res, Obstruction):
        return res
    return LatticePoint(res.x0)


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith form, in divisibility order."""
    if not A or not A[0]:
        return []
    return [d for d in smith_normal_form(A).diagonal if d]
