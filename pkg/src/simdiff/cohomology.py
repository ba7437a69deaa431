"""Cochain complexes as integer matrices: cohomology and solvers.

The coboundary in each degree is a sparse integer matrix over the generator
bases.  Integer Smith form gives presentations H = Z^r + sum Z/d, coordinates
for classifying cocycles, and representative cocycles for each summand.
Rational cohomology rides on the integer computation (torsion dropped).

solve_coboundary answers "is this cochain a coboundary" with either a
primitive or a functional certificate; solve_closed_extension solves for
closed cochains on a product with prescribed values on a set of generators,
which is the workhorse behind homotopy existence and class equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Hashable, Mapping, Sequence

from .cochains import Cochain, Coefficients, INTEGERS, coboundary
from .complexes import ProductWithSimplex, Simplex, SimplicialSet, key_str
from .exact import (Matrix, Obstruction, Solution, mat_vec,
                    smith_normal_form, solve_int, solve_mod, solve_rational)


def delta_matrix(X: SimplicialSet, n: int) -> Matrix:
    """Matrix of delta: C^n -> C^{n+1}; rows index (n+1)-generators."""
    token = ("delta_matrix", n)
    if token not in X._cache:
        cols = {g: j for j, g in enumerate(X.generators(n))}
        rows = []
        for gen in X.generators(n + 1):
            row = [0] * len(cols)
            s = Simplex(gen)
            for i in range(n + 2):
                f = X.face(s, i)
                if not f.word:
                    row[cols[f.gen]] += (-1) ** i
            rows.append(row)
        X._cache[token] = rows
    return X._cache[token]


def vector_of(c: Cochain) -> list:
    gens = c.complex.generators(c.degree)
    return [c.values.get(g, 0) for g in gens]


def cochain_of(X: SimplicialSet, n: int, coeffs: Coefficients, vec: Sequence) -> Cochain:
    gens = X.generators(n)
    return Cochain(X, n, coeffs, {g: v for g, v in zip(gens, vec) if v})


@dataclass(frozen=True)
class GroupPresentation:
    """Z^free + sum Z/d + Q^divisible + (Q/Z)^circle, d's in divisor order."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    divisible_rank: int = 0
    circle_rank: int = 0

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} not in divisor order")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion factors must be >= 2")

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        if self.divisible_rank:
            parts += ["Q" if self.divisible_rank == 1 else f"Q^{self.divisible_rank}"]
        parts += ["Q/Z"] * self.circle_rank
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion),
                "divisible_rank": self.divisible_rank, "circle_rank": self.circle_rank,
                "pretty": str(self)}


@dataclass
class CoboundaryWitness:
    primitive: Cochain


@dataclass
class CoboundaryObstruction:
    """Functional on C^n refuting delta beta = target.

    ring records the sense of the certificate, not the ring asked for: "Q"
    means the pairing kills every coboundary and is nonzero on the target
    (refutes rational solvability, hence integral too); "Z" means the
    pairing is integral on integral coboundaries but not on the target.
    """

    functional: dict[Hashable, Fraction]
    ring: str

    def pairing(self, c: Cochain) -> Fraction:
        return sum((Fraction(v) * self.functional.get(g, Fraction(0))
                    for g, v in c.values.items()), Fraction(0))

    def refutes(self, target: Cochain) -> bool:
        val = self.pairing(target)
        probe = val != 0 if self.ring == "Q" else val.denominator != 1
        return probe

    def to_json(self) -> dict:
        order = {key_str(g): g for g in self.functional}
        return {"ring": self.ring,
                "functional": {i: str(self.functional[order[i]]) for i in sorted(order)}}


def solve_coboundary(target: Cochain, coeffs: Coefficients | None = None):
    """Find beta with delta beta = target, else a certificate.

    Returns CoboundaryWitness or CoboundaryObstruction.  The coefficient
    ring defaults to the target's own.
    """
    coeffs = coeffs or target.coeffs
    X = target.complex
    n = target.degree
    A = delta_matrix(X, n - 1) if n >= 1 else []
    b = vector_of(target)
    ngens = X.generators(n - 1) if n >= 1 else []
    if n < 1 or not ngens:
        if target.is_zero():
            return CoboundaryWitness(Cochain.zero(X, max(n - 1, 0), coeffs))
        first = next(iter(target.values))
        if coeffs.exact_field:
            return CoboundaryObstruction({first: Fraction(1)}, "Q")
        return CoboundaryObstruction({first: Fraction(1, 2 * abs(int(target.values[first])))}, "Z")
    if coeffs.kind == "Z":
        res = solve_int(A, [int(v) for v in b])
    elif coeffs.kind == "Zmod":
        res = solve_mod(A, [int(v) for v in b], coeffs.modulus)
        if res is None:
            return CoboundaryObstruction({}, coeffs.label())
    else:
        res = solve_rational(A, b)
    if isinstance(res, Obstruction):
        gens = X.generators(n)
        fun = {g: v for g, v in zip(gens, res.functional) if v}
        return CoboundaryObstruction(fun, res.ring)
    return CoboundaryWitness(cochain_of(X, n - 1, coeffs, res.x0))


def is_coboundary(target: Cochain, coeffs: Coefficients | None = None) -> bool:
    return isinstance(solve_coboundary(target, coeffs), CoboundaryWitness)


class CohomologyGroup:
    """H^n(X; Z) (or Q) with representatives and coordinates.

    The integer computation is done once; rational answers reuse it.
    """

    def __init__(self, X: SimplicialSet, n: int, coeffs: Coefficients):
        if coeffs.kind not in ("Z", "Q"):
            raise ValueError("cohomology groups are computed over Z or Q")
        self.complex = X
        self.degree = n
        self.coeffs = coeffs
        cgens = X.generators(n)
        c = len(cgens)
        rows_out = delta_matrix(X, n)
        if not rows_out:
            # no generators one degree up: everything is a cocycle
            self._snf_out = None
            kernel_cols = list(range(c))
            K = [[1 if i == j else 0 for j in kernel_cols] for i in range(c)]
        else:
            self._snf_out = smith_normal_form(rows_out)
            diag = self._snf_out.diagonal
            kernel_cols = [j for j in range(c) if j >= len(diag) or diag[j] == 0]
            K = [[self._snf_out.T[i][j] for j in kernel_cols] for i in range(c)]
        self._kernel_cols = kernel_cols
        self._K = K  # c x z, columns = cocycle basis
        z = len(kernel_cols)
        rows_in = delta_matrix(X, n - 1) if n >= 1 else []
        img_in_K: list[list[int]] = []
        if rows_in and rows_in[0]:
            for j in range(len(rows_in[0])):
                col = [rows_in[i][j] for i in range(len(rows_in))]
                img_in_K.append(self._kernel_coords(col))
        Y = [[img_in_K[j][i] for j in range(len(img_in_K))] for i in range(z)]
        if z and Y and Y[0]:
            self._snf_img = smith_normal_form(Y)
            dia = self._snf_img.diagonal
        else:
            self._snf_img = None
            dia = []
        self._img_diag = dia
        self._torsion_pos = [i for i, d in enumerate(dia) if d > 1]
        self._free_pos = [i for i in range(z) if i >= len(dia) or dia[i] == 0]
        torsion = tuple(dia[i] for i in self._torsion_pos)
        if coeffs.kind == "Q":
            self.presentation = GroupPresentation(free_rank=len(self._free_pos))
        else:
            self.presentation = GroupPresentation(free_rank=len(self._free_pos),
                                                  torsion=torsion)

    # -- internals ---------------------------------------------------------

    def _kernel_coords(self, vec: Sequence[int]) -> list[int]:
        """Coordinates of a cocycle vector in the kernel basis."""
        if self._snf_out is None:
            return list(vec)
        u = mat_vec(self._snf_out.Tinv, vec)
        members = set(self._kernel_cols)
        for j in range(len(u)):
            if j not in members and u[j]:
                raise ValueError("vector is not a cocycle")
        return [u[j] for j in self._kernel_cols]

    # -- public ------------------------------------------------------------

    @property
    def generators(self) -> list[Cochain]:
        """Representative cocycles: free summands first, then torsion."""
        out = []
        z = len(self._kernel_cols)
        for pos in self._free_pos + self._torsion_pos:
            if self._snf_img is not None:
                u = [self._snf_img.Sinv[i][pos] for i in range(z)]
            else:
                u = [1 if i == pos else 0 for i in range(z)]
            vec = mat_vec(self._K, u)
            out.append(cochain_of(self.complex, self.degree, INTEGERS, vec))
        return out

    def classify(self, c: Cochain) -> tuple[tuple, tuple]:
        """(free coords, torsion coords) of a cocycle's class."""
        if not coboundary(c).is_zero():
            raise ValueError("classify expects a cocycle")
        vec = vector_of(c)
        if self.coeffs.kind == "Q":
            denom = lcm(*(Fraction(v).denominator for v in vec)) if vec else 1
            ivec = [int(Fraction(v) * denom) for v in vec]
        else:
            denom = 1
            ivec = [int(v) for v in vec]
        u = self._kernel_coords(ivec)
        w = mat_vec(self._snf_img.S, u) if self._snf_img is not None else u
        if self.coeffs.kind == "Q":
            return tuple(Fraction(w[i], denom) for i in self._free_pos), ()
        free = tuple(w[i] for i in self._free_pos)
        torsion = tuple(w[i] % self._img_diag[i] for i in self._torsion_pos)
        return free, torsion

    def same_class(self, c1: Cochain, c2: Cochain) -> bool:
        return self.classify(c1) == self.classify(c2)


def cohomology(X: SimplicialSet, n: int, coeffs: Coefficients = INTEGERS) -> CohomologyGroup:
    token = ("cohomology", n, coeffs)
    if token not in X._cache:
        X._cache[token] = CohomologyGroup(X, n, coeffs)
    return X._cache[token]


# -- closed extensions with prescribed values ------------------------------


@dataclass
class PinnedSolution:
    """particular + integer/rational span of kernel, as cochains."""

    particular: Cochain
    kernel: list[Cochain]


@dataclass
class PinnedObstruction:
    functional: dict[Hashable, Fraction]
    ring: str


def solve_closed_extension(P: SimplicialSet, degree: int,
                           pins: Mapping[Hashable, object],
                           coeffs: Coefficients) -> PinnedSolution | PinnedObstruction:
    """All closed degree-`degree` cochains on P with prescribed generator values.

    pins maps generator keys to required values; remaining generators of the
    degree are free.  Returns the affine solution set or an obstruction
    functional on C^{degree+1} (pulled back from the closure rows).
    """
    gens = P.generators(degree)
    pinned = {g: coeffs.normalize(v) for g, v in pins.items()}
    free = [g for g in gens if g not in pinned]
    fid = {g: j for j, g in enumerate(free)}
    rows = []
    rhs = []
    out_gens = P.generators(degree + 1)
    for gen in out_gens:
        row = [0] * len(free)
        b = 0
        s = Simplex(gen)
        for i in range(degree + 2):
            f = P.face(s, i)
            if f.word:
                continue
            sign = (-1) ** i
            if f.gen in pinned:
                b -= sign * pinned[f.gen]
            else:
                row[fid[f.gen]] += sign
        rows.append(row)
        rhs.append(b)
    if coeffs.kind == "Z":
        res = solve_int(rows, [int(v) for v in rhs]) if rows else Solution([0] * 0, [])
    elif coeffs.kind == "Zmod":
        r = solve_mod(rows, [int(v) for v in rhs], coeffs.modulus) if rows else Solution([], [])
        if r is None:
            return PinnedObstruction({}, coeffs.label())
        res = r
    else:
        res = solve_rational(rows, rhs) if rows else Solution([], [])
    if isinstance(res, Obstruction):
        fun = {g: v for g, v in zip(out_gens, res.functional) if v}
        return PinnedObstruction(fun, res.ring)
    if not rows:
        # no closure constraints: all free generators are independent
        res = Solution([0] * len(free),
                       [[1 if i == j else 0 for i in range(len(free))]
                        for j in range(len(free))])
    vals = dict(pinned)
    for g, v in zip(free, res.x0):
        vals[g] = v
    particular = Cochain(P, degree, coeffs, vals)
    kernel = [Cochain(P, degree, coeffs, {g: v for g, v in zip(free, kv) if v})
              for kv in res.kernel]
    return PinnedSolution(particular, kernel)


def face_pins(cyl: ProductWithSimplex, faces: Mapping[int, Cochain]) -> dict:
    """Generator pins on X x Delta^k realizing prescribed face restrictions.

    faces maps i to the required (id x delta_i)# restriction, a cochain on
    X x Delta^{k-1} (on X itself for k = 1).  Overlaps must agree; a
    conflict raises ValueError, which callers surface as incompatible faces.
    """
    pins: dict = {}
    for i, F in faces.items():
        inc = cyl.face_inclusion(i)
        for g in inc.source.generators(F.degree):
            img = inc(Simplex(g))
            if img.word:
                if F.values.get(g):
                    raise ValueError(f"face {i} not normalized at {g!r}")
                continue
            v = F.values.get(g, F.coeffs.normalize(0))
            old = pins.get(img.gen)
            if old is not None and old != v:
                raise ValueError(f"faces disagree at generator {img.gen!r}")
            pins[img.gen] = v
    return pins
