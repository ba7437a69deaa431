"""Normalized cochains with exact coefficients.

Cochains are finitely supported maps on the nondegenerate generators of one
dimension; degenerate simplices evaluate to zero.  Coefficients are the
integers, the rationals (standing in for real forms), integers mod k, or
graded rationals (only the degree-0 part is ever nonzero for the ordinary
theories built here).

Real coefficients are modeled by exact rationals throughout, which is what
makes every identity in the test suite hold with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Mapping

from .complexes import ProductWithSimplex, Simplex, SimplicialMap, SimplicialSet, key_str


@dataclass(frozen=True)
class Coefficients:
    """Coefficient system: Z, Q, Z/k, or graded rationals.

    grading lists (degree, dimension) pairs and is only populated for the
    graded kind; arithmetic for graded coefficients is plain rational
    arithmetic in the single degree the ordinary theory occupies.
    """

    kind: str
    modulus: int = 0
    grading: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zmod", "gradedQ"):
            raise ValueError(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "Zmod" and self.modulus < 2:
            raise ValueError("Zmod needs modulus >= 2")

    @property
    def exact_field(self) -> bool:
        return self.kind in ("Q", "gradedQ")

    def normalize(self, v) -> Any:
        if self.kind in ("Q", "gradedQ"):
            return Fraction(v)
        if self.kind == "Zmod":
            return int(v) % self.modulus
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ValueError(f"non-integer value {v} for Z coefficients")
            return v.numerator
        return int(v)

    def negate(self, v):
        return self.normalize(-v)

    def label(self) -> str:
        if self.kind == "Zmod":
            return f"Z/{self.modulus}"
        return {"Z": "Z", "Q": "Q", "gradedQ": "Q-graded"}[self.kind]


INTEGERS = Coefficients("Z")
RATIONALS = Coefficients("Q")


def mod_coefficients(k: int) -> Coefficients:
    return Coefficients("Zmod", modulus=k)


def parse_coefficients(text: str) -> Coefficients:
    t = text.strip()
    if t in ("Z", "int", "integers"):
        return INTEGERS
    if t in ("Q", "rat", "rationals"):
        return RATIONALS
    if t.startswith("Z/"):
        return mod_coefficients(int(t[2:]))
    raise ValueError(f"cannot parse coefficients {text!r}")


def rationalized(A: Coefficients) -> Coefficients:
    """The graded rational coefficients A tensor Q, concentrated in degree 0."""
    rank = 1 if A.kind == "Z" else 0 if A.kind == "Zmod" else 1
    return Coefficients("gradedQ", grading=((0, rank),))


def embed_rational(A: Coefficients, v) -> Fraction:
    """The coefficient map A -> A tensor Q (kills torsion)."""
    if A.kind == "Zmod":
        return Fraction(0)
    return Fraction(v)


class Cochain:
    """A sparse normalized cochain of one degree on one complex."""

    __slots__ = ("complex", "degree", "coeffs", "values")

    def __init__(self, complex: SimplicialSet, degree: int, coeffs: Coefficients,
                 values: Mapping[Hashable, Any] | None = None):
        self.complex = complex
        self.degree = degree
        self.coeffs = coeffs
        vals: dict[Hashable, Any] = {}
        for gen, v in (values or {}).items():
            if complex.gen_dim(gen) != degree:
                raise ValueError(
                    f"value on {gen!r} of dim {complex.gen_dim(gen)} in degree {degree}")
            v = coeffs.normalize(v)
            if v:
                vals[gen] = v
        self.values = vals

    # -- basics ------------------------------------------------------------

    @classmethod
    def zero(cls, X: SimplicialSet, degree: int, coeffs: Coefficients) -> "Cochain":
        return cls(X, degree, coeffs)

    @classmethod
    def indicator(cls, X: SimplicialSet, gen: Hashable, coeffs: Coefficients,
                  value=1) -> "Cochain":
        return cls(X, X.gen_dim(gen), coeffs, {gen: value})

    def eval(self, s: Simplex):
        if s.word:
            return self.coeffs.normalize(0)
        return self.values.get(s.gen, self.coeffs.normalize(0))

    def is_zero(self) -> bool:
        return not self.values

    def support(self) -> list[Hashable]:
        order = {k: i for i, k in enumerate(self.complex.generators(self.degree))}
        return sorted(self.values, key=order.__getitem__)

    def _compatible(self, other: "Cochain") -> None:
        if (self.complex is not other.complex or self.degree != other.degree
                or self.coeffs != other.coeffs):
            raise ValueError("cochains live on different complexes, degrees, or coefficients")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        vals = dict(self.values)
        for g, v in other.values.items():
            vals[g] = vals.get(g, 0) + v
        return Cochain(self.complex, self.degree, self.coeffs, vals)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __neg__(self) -> "Cochain":
        return Cochain(self.complex, self.degree, self.coeffs,
                       {g: -v for g, v in self.values.items()})

    def scale(self, c) -> "Cochain":
        return Cochain(self.complex, self.degree, self.coeffs,
                       {g: v * c for g, v in self.values.items()})

    def map_values(self, fn, coeffs: Coefficients) -> "Cochain":
        """Apply a coefficient map (e.g. the rational embedding) valuewise."""
        return Cochain(self.complex, self.degree, coeffs,
                       {g: fn(v) for g, v in self.values.items()})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Cochain) and self.complex is other.complex
                and self.degree == other.degree and self.coeffs == other.coeffs
                and self.values == other.values)

    def __hash__(self):
        return hash((id(self.complex), self.degree,
                     tuple(sorted(((key_str(g), v) for g, v in self.values.items())))))

    def __repr__(self):
        n = len(self.values)
        return (f"<Cochain deg {self.degree} on {self.complex.name}"
                f" ({self.coeffs.label()}), {n} nonzero>")


def coboundary(c: Cochain) -> Cochain:
    """Alternating sum over faces, degree raised by one; delta delta = 0."""
    X = c.complex
    out: dict[Hashable, Any] = {}
    for gen in X.generators(c.degree + 1):
        s = Simplex(gen)
        total = 0
        for i in range(c.degree + 2):
            v = c.eval(X.face(s, i))
            total = total + v if i % 2 == 0 else total - v
        if total:
            out[gen] = total
    return Cochain(X, c.degree + 1, c.coeffs, out)


def is_closed(c: Cochain) -> bool:
    return c.degree >= c.complex.top_dim or coboundary(c).is_zero()


def pullback(f: SimplicialMap, c: Cochain) -> Cochain:
    """f^# c; normalization kills images that got degenerate."""
    if c.complex is not f.target:
        raise ValueError("cochain does not live on the target of the map")
    vals = {}
    for gen in f.source.generators(c.degree):
        v = c.eval(f(Simplex(gen)))
        if v:
            vals[gen] = v
    return Cochain(f.source, c.degree, c.coeffs, vals)


def fiber_integrate(z: Cochain, cyl: ProductWithSimplex) -> Cochain:
    """Slant product with the fundamental chain of Delta^k via shuffle cells.

    Lowers degree by k.  With F_i = id x delta_i (so for k = 1 the end
    inclusions are i_0 = F_1, i_1 = F_0), the boundary-term signs produced
    by the shuffle convention are

        delta(int_k z) = (-1)^(k+1) sum_i (-1)^i int_{k-1}(F_i# z)
                         + (-1)^k int_k(delta z)

    which for k = 1 reads delta(int z) = i_1# z - i_0# z - int(delta z).
    The k = 2, 3 signs are pinned down by randomized identities in the
    test suite; nothing downstream assumes any other convention.
    """
    k = cyl.k
    if z.complex is not cyl.complex:
        raise ValueError("cochain does not live on the given product")
    if z.degree < k:
        raise ValueError(f"cannot integrate degree {z.degree} over Delta^{k}")
    X = cyl.base
    out: dict[Hashable, Any] = {}
    for gen in X.generators(z.degree - k):
        total = 0
        for sign, cell in cyl.decomposition[gen]:
            v = z.values.get(cell)
            if v:
                total = total + v if sign > 0 else total - v
        if total:
            out[gen] = total
    return Cochain(X, z.degree - k, z.coeffs, out)


def random_cochain(X: SimplicialSet, degree: int, coeffs: Coefficients, rng,
                   low: int = -4, high: int = 4, density: float = 0.7) -> Cochain:
    vals = {}
    for gen in X.generators(degree):
        if rng.random() < density:
            vals[gen] = rng.randint(low, high)
    return Cochain(X, degree, coeffs, vals)


# -- JSON ------------------------------------------------------------------


def cochain_to_json(c: Cochain) -> dict:
    return {
        "complex": c.complex.name,
        "degree": c.degree,
        "coefficients": c.coeffs.label(),
        "values": [{"id": key_str(g), "value": str(c.values[g])}
                   for g in c.support()],
    }


def cochain_from_json(X: SimplicialSet, data: dict) -> Cochain:
    coeffs = parse_coefficients(data.get("coefficients", "Q"))
    ids = {key_str(g): g for g in X.generators()}
    valstr = {v["id"]: Fraction(v["value"]) for v in data.get("values", ())}
    try:
        vals = {ids[i]: v for i, v in valstr.items()}
    except KeyError as e:
        raise ValueError(f"cochain references unknown generator {e}") from None
    return Cochain(X, int(data["degree"]), coeffs, vals)
